#include "pmj/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pmj/errors.hpp"
#include "pmj/freeness.hpp"
#include "pmj/parallel.hpp"
#include "pmj/spectra.hpp"

namespace pmj::cli {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

json word_json(const ColoredWord& w) {
    std::vector<int> indices;
    for (std::size_t i = 0; i < w.size(); ++i) indices.push_back(w.index(i));
    return json{{"word", w.text()},
                {"colors", w.monomial().color_string()},
                {"indices", indices},
                {"catalan", w.pair_matched() && is_catalan(w)}};
}

json words_json(const Monomial& q, bool respect_indices) {
    json list = json::array();
    for (const ColoredWord& w : enumerate_pair_matched_words(q, respect_indices)) list.push_back(word_json(w));
    json out{{"monomial", q.to_string()}, {"respect_indices", respect_indices}, {"count", list.size()}};
    out["words"] = std::move(list);
    if (respect_indices && out["count"] == 0) out["alpha"] = 0.0;
    return out;
}

std::vector<TableResult> compute_tables(const LimitParams& params) {
    std::vector<TableResult> out;
    for (const GoldenRow& row : golden_rows()) {
        const ColoredWord w = ColoredWord::from_text(row.word, parse_monomial(row.monomial));
        TableResult r{row, p_limit(w, params), 0.0};
        r.abs_err = std::abs(r.computed.value - row.value());
        out.push_back(r);
    }
    return out;
}

std::string tables_csv(const std::vector<TableResult>& rows) {
    std::ostringstream os;
    os << "monomial,word,p_paper,p_computed,abs_err\n";
    for (const TableResult& r : rows) {
        os << csv_field(r.row.monomial) << ',' << csv_field(r.row.word) << ',' << format_double(r.row.value()) << ','
           << format_double(r.computed.value) << ',' << format_double(r.abs_err) << '\n';
    }
    return os.str();
}

namespace {

struct Settings {
    std::uint64_t seed{20120417};
    unsigned threads{0};
    double budget{kDefaultWorkBudget};
    std::string config;

    std::string q;
    std::string word;
    std::string method{"mc"};
    std::uint64_t samples{1'000'000};
    std::int64_t n{0};
    std::int64_t n1{0};
    std::int64_t n2{0};
    std::size_t reps{0};
    std::size_t lsd_reps{20};
    std::string dist{"gaussian"};
    bool no_indices{false};
    bool strict_budget{false};

    std::string kind_a{"T"};
    std::string kind_b{"H"};
    std::size_t bins{50};
    std::size_t kmax{6};
    std::string solver{"tridiagonal"};
    std::string sidecar;
    std::string role{"W"};
};

LimitMethod parse_method(const std::string& name) {
    if (name == "mc") return LimitMethod::MonteCarlo;
    if (name == "exact") return LimitMethod::ExactCount;
    throw InputError("unknown method '" + name + "' (expected mc or exact)");
}

InputDistribution parse_dist(const std::string& name) {
    if (auto d = distribution_from_name(name)) return *d;
    throw InputError("unknown distribution '" + name + "' (expected gaussian, rademacher or uniform)");
}

LinkKind parse_kind(const std::string& text) {
    if (text.size() == 1) {
        if (auto k = kind_from_char(text[0])) return *k;
    }
    throw InputError("unknown kind '" + text + "' (expected one of W T H R S)");
}

LimitParams limit_params(const Settings& s) {
    LimitParams p;
    p.method = parse_method(s.method);
    p.mc_samples = s.samples;
    p.seed = s.seed;
    p.work_budget = s.budget;
    p.fallback_to_mc = !s.strict_budget;
    if (s.n1 > 0 || s.n2 > 0) p.sizes = std::make_pair(s.n1, s.n2);
    return p;
}

json meta(const Settings& s, const std::optional<std::int64_t>& n, std::string_view method) {
    return json{{"seed", s.seed},
                {"n", n ? json(*n) : json(nullptr)},
                {"method", method},
                {"version", kVersion},
                {"work_budget", s.budget}};
}

void merge(json& into, const json& extra) {
    for (auto it = extra.begin(); it != extra.end(); ++it) into[it.key()] = it.value();
}

/// Fills options that were not given on the command line from a JSON object,
/// top-level keys first, then the section named after the subcommand.
void apply_config(const std::string& path, CLI::App& app, CLI::App* sub) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw InputError("config file must hold a JSON object");

    auto set = [&](CLI::App& target, const std::string& key, const json& value) {
        std::string name = "--" + key;
        for (char& c : name) {
            if (c == '_') c = '-';
        }
        CLI::Option* opt = target.get_option_no_throw(name);
        if (opt == nullptr && &target != &app) opt = app.get_option_no_throw(name);
        if (opt == nullptr) throw InputError("config key '" + key + "' is not an option");
        if (opt->count() > 0) return;
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        opt->run_callback();
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_object()) continue;
        if (it.key() == "config") continue;
        set(sub ? *sub : app, it.key(), it.value());
    }
    if (sub && j.contains(sub->get_name()) && j[sub->get_name()].is_object()) {
        for (auto it = j[sub->get_name()].begin(); it != j[sub->get_name()].end(); ++it) set(*sub, it.key(), it.value());
    }
}

/// Options that must be set by the command line or the config file.
void check_required(const CLI::App& sub) {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> kRequired = {
        {"words", {"--q"}},   {"pcw", {"--q", "--word"}},     {"alpha", {"--q"}},
        {"moments", {"--q", "--n", "--reps"}}, {"lsd", {"--n"}}, {"freeness", {"--q"}},
    };
    for (const auto& [name, options] : kRequired) {
        if (name != sub.get_name()) continue;
        for (const std::string& opt : options) {
            if (sub.get_option(opt)->count() == 0) throw InputError(opt + " is required");
        }
    }
}

int cmd_words(const Settings& s, std::ostream& out) {
    json j = words_json(parse_monomial(s.q), !s.no_indices);
    merge(j, meta(s, std::nullopt, "enumeration"));
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_tables(const Settings& s, std::ostream& out, std::ostream& err) {
    const LimitParams params = limit_params(s);
    const auto rows = compute_tables(params);
    json m = meta(s, std::nullopt, method_name(params.method));
    out << "# " << m.dump() << '\n' << tables_csv(rows);
    int bad = 0;
    for (const TableResult& r : rows) {
        if (r.abs_err > kTableTolerance) {
            err << "mismatch: " << r.row.monomial << ' ' << r.row.word << " computed " << format_double(r.computed.value)
                << " published " << format_double(r.row.value()) << '\n';
            ++bad;
        }
    }
    return bad == 0 ? kOk : kNumerical;
}

int cmd_pcw(const Settings& s, std::ostream& out) {
    const Monomial q = parse_monomial(s.q);
    const ColoredWord w = ColoredWord::from_text(s.word, q);
    if (!w.pair_matched()) throw InputError("word " + s.word + " is not pair-matched");
    const VolumeEstimate est = p_limit(w, limit_params(s));
    json j{{"monomial", q.to_string()},
           {"word", w.text()},
           {"catalan", is_catalan(w)},
           {"cases", est.cases},
           {"p", est.value},
           {"stderr", est.std_error}};
    merge(j, meta(s, est.method == LimitMethod::ExactCount ? std::optional(est.n_used) : std::nullopt,
                  method_name(est.method)));
    if (est.method == LimitMethod::MonteCarlo) {
        j["systems"] = est.systems;
        j["samples"] = est.samples;
    }
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_alpha(const Settings& s, std::ostream& out) {
    const Monomial q = parse_monomial(s.q);
    const VolumeEstimate est = alpha(q, limit_params(s));
    json j{{"q", q.to_string()},
           {"alpha", est.value},
           {"stderr", est.std_error},
           {"bound", alpha_bound(q)},
           {"words", enumerate_pair_matched_words(q, true).size()}};
    merge(j, meta(s, est.n_used ? std::optional(est.n_used) : std::nullopt, method_name(est.method)));
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_moments(const Settings& s, std::ostream& out, std::ostream& err) {
    const Monomial q = parse_monomial(s.q);
    if (s.n < 1) throw InputError("--n must be at least 1");
    if (s.reps < 1) throw InputError("--reps must be at least 1");
    const MomentEstimate est = empirical_trace_moment(q, s.n, parse_dist(s.dist), s.reps, s.seed);
    json j{{"q", q.to_string()}, {"n", s.n}, {"reps", s.reps}, {"dist", s.dist},
           {"mean", est.mean}, {"sd", est.stddev}};
    try {
        j["alpha_limit"] = alpha(q, limit_params(s)).value;
    } catch (const BudgetExceeded& e) {
        err << "alpha_limit skipped: " << e.what() << '\n';
        j["alpha_limit"] = nullptr;
    }
    merge(j, meta(s, s.n, "simulation"));
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_lsd(const Settings& s, std::ostream& out, std::ostream& err) {
    if (s.n < 2) throw InputError("--n must be at least 2");
    if (s.lsd_reps < 1) throw InputError("--reps must be at least 1");
    const auto solver = solver_from_name(s.solver);
    if (!solver) throw InputError("unknown solver '" + s.solver + "' (expected jacobi or tridiagonal)");

    SumLsdOptions opts;
    opts.kmax = s.kmax;
    opts.seed = s.seed;
    opts.histogram.bins = s.bins;
    opts.solver = *solver;
    opts.limit_params = limit_params(s);
    const LinkKind a = parse_kind(s.kind_a);
    const LinkKind b = parse_kind(s.kind_b);
    const SumLsdReport report = sum_lsd_report(a, b, s.n, parse_dist(s.dist), s.lsd_reps, opts);

    out << "bin_left,bin_right,count,density\n";
    const auto dens = report.histogram.densities();
    for (std::size_t i = 0; i < report.histogram.bins(); ++i) {
        out << format_double(report.histogram.edges[i]) << ',' << format_double(report.histogram.edges[i + 1]) << ','
            << report.histogram.counts[i] << ',' << format_double(dens[i]) << '\n';
    }

    json j{{"a", std::string(1, kind_char(a))},
           {"b", std::string(1, kind_char(b))},
           {"reps", s.lsd_reps},
           {"dist", s.dist},
           {"solver", solver_name(report.solver)},
           {"beta", report.beta},
           {"beta_stderr", report.beta_stderr},
           {"beta_predicted", report.beta_predicted},
           {"skewness", report.skewness},
           {"symmetric", report.odd_moments_vanish},
           {"even_growth_monotone", report.even_growth_monotone},
           {"min_eigenvalue", report.min_eigenvalue},
           {"max_eigenvalue", report.max_eigenvalue}};
    merge(j, meta(s, s.n, "simulation"));
    if (s.sidecar.empty()) {
        err << j.dump(2) << '\n';
    } else {
        std::ofstream side(s.sidecar);
        if (!side) throw InputError("cannot write " + s.sidecar);
        side << j.dump(2) << '\n';
    }
    return kOk;
}

int cmd_freeness(const Settings& s, std::ostream& out) {
    const Monomial q = parse_monomial(s.q);
    FreenessOptions opts;
    opts.role = parse_kind(s.role);
    opts.seed = s.seed;
    opts.limit_params = limit_params(s);
    if (s.reps > 0 && s.n < 1) throw InputError("--n must be at least 1 when --reps is positive");
    const FreenessReport r = freeness_report(q, s.n, parse_dist(s.dist), s.reps, opts);
    json j{{"q", q.to_string()},
           {"role", std::string(1, kind_char(opts.role))},
           {"alternating_form", r.alternating.monomial().to_string()},
           {"alpha", r.alpha.value},
           {"alpha_stderr", r.alpha.std_error},
           {"free_prediction", r.free_prediction},
           {"deviation", r.deviation},
           {"empirical", r.empirical ? json(r.empirical->mean) : json(nullptr)},
           {"empirical_sd", r.empirical ? json(r.empirical->stddev) : json(nullptr)},
           {"reps", s.reps},
           {"free_within_tol", r.free_within_tol}};
    merge(j, meta(s, s.reps > 0 ? std::optional(s.n) : std::nullopt, method_name(r.alpha.method)));
    out << j.dump(2) << '\n';
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Joint moments of patterned random matrices"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", s.seed, "Master RNG seed")->capture_default_str();
    app.add_option("--threads", s.threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--budget", s.budget, "Work budget for exact enumeration")->capture_default_str();
    app.add_option("--config", s.config, "JSON file with option defaults");
    app.set_version_flag("--version", std::string(kVersion));

    auto add_limit_opts = [&](CLI::App* c) {
        c->add_option("--method", s.method, "mc or exact")->capture_default_str();
        c->add_option("--samples", s.samples, "Monte Carlo samples per system")->capture_default_str();
        c->add_option("--n1", s.n1, "Smaller size for exact extrapolation");
        c->add_option("--n2", s.n2, "Larger size for exact extrapolation");
        c->add_flag("--strict-budget", s.strict_budget, "Fail instead of falling back to mc above the budget");
    };

    CLI::App* words = app.add_subcommand("words", "List pair-matched words of a monomial");
    words->add_option("--q", s.q, "Monomial, e.g. TTTTHH or 'W1 T1 W2 T1'");
    words->add_flag("--no-indices", s.no_indices, "Ignore copy indices");

    CLI::App* tables = app.add_subcommand("tables", "Recompute the published two-color tables as CSV");
    add_limit_opts(tables);

    CLI::App* pcw = app.add_subcommand("pcw", "Limit volume of one colored word");
    pcw->add_option("--q", s.q, "Monomial");
    pcw->add_option("--word", s.word, "Word, e.g. abab");
    add_limit_opts(pcw);

    CLI::App* alpha_cmd = app.add_subcommand("alpha", "Limit of the normalized trace of a monomial");
    alpha_cmd->add_option("--q", s.q, "Monomial");
    add_limit_opts(alpha_cmd);

    CLI::App* moments = app.add_subcommand("moments", "Simulated normalized trace of a monomial");
    moments->add_option("--q", s.q, "Monomial");
    moments->add_option("--n", s.n, "Matrix size");
    moments->add_option("--reps", s.reps, "Replicates");
    moments->add_option("--dist", s.dist, "gaussian, rademacher or uniform")->capture_default_str();
    add_limit_opts(moments);

    CLI::App* lsd = app.add_subcommand("lsd", "Averaged spectral histogram of (A + B)/sqrt(n)");
    lsd->add_option("--a", s.kind_a, "First kind")->capture_default_str();
    lsd->add_option("--b", s.kind_b, "Second kind")->capture_default_str();
    lsd->add_option("--n", s.n, "Matrix size");
    lsd->add_option("--reps", s.lsd_reps, "Replicates")->capture_default_str();
    lsd->add_option("--dist", s.dist, "gaussian, rademacher or uniform")->capture_default_str();
    lsd->add_option("--bins", s.bins, "Histogram bins")->capture_default_str();
    lsd->add_option("--kmax", s.kmax, "Highest moment reported")->capture_default_str();
    lsd->add_option("--solver", s.solver, "tridiagonal or jacobi")->capture_default_str();
    lsd->add_option("--sidecar", s.sidecar, "Path for the JSON summary (default: stderr)");
    add_limit_opts(lsd);

    CLI::App* freeness = app.add_subcommand("freeness", "Compare a mixed moment with the free prediction");
    freeness->add_option("--q", s.q, "Monomial");
    freeness->add_option("--n", s.n, "Matrix size for the simulated column");
    freeness->add_option("--reps", s.reps, "Replicates (0 skips simulation)");
    freeness->add_option("--dist", s.dist, "gaussian, rademacher or uniform")->capture_default_str();
    freeness->add_option("--role", s.role, "Kind placed in the semicircular role")->capture_default_str();
    add_limit_opts(freeness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        if (!s.config.empty()) apply_config(s.config, app, sub);
        if (sub != nullptr) check_required(*sub);
        set_worker_count(s.threads);

        if (sub == words) return cmd_words(s, out);
        if (sub == tables) return cmd_tables(s, out, err);
        if (sub == pcw) return cmd_pcw(s, out);
        if (sub == alpha_cmd) return cmd_alpha(s, out);
        if (sub == moments) return cmd_moments(s, out, err);
        if (sub == lsd) return cmd_lsd(s, out, err);
        if (sub == freeness) return cmd_freeness(s, out);
        err << "no subcommand\n";
        return kUsage;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return kNumerical;
    }
}

}  // namespace pmj::cli
