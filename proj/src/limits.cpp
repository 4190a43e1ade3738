#include "pmj/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "pmj/errors.hpp"
#include "pmj/parallel.hpp"
#include "pmj/rng.hpp"

namespace pmj {

// ---------------------------------------------------------------------------
// CaseLabel / AffineForm

std::string CaseLabel::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(cases[i]);
    }
    return out + ")";
}

AffineForm AffineForm::zero(std::size_t dims) { return AffineForm{std::vector<std::int64_t>(dims, 0), 0}; }

AffineForm AffineForm::unit(std::size_t dims, std::size_t slot) {
    AffineForm f = zero(dims);
    f.coeffs[slot] = 1;
    return f;
}

AffineForm& AffineForm::operator+=(const AffineForm& other) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
    constant += other.constant;
    return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& other) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
    constant -= other.constant;
    return *this;
}

AffineForm& AffineForm::operator*=(std::int64_t factor) {
    for (auto& c : coeffs) c *= factor;
    constant *= factor;
    return *this;
}

AffineForm& AffineForm::operator+=(std::int64_t c) {
    constant += c;
    return *this;
}

bool AffineForm::is_constant() const noexcept {
    return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
}

bool AffineForm::is_coordinate() const noexcept {
    if (constant != 0) return false;
    int ones = 0;
    for (std::int64_t c : coeffs) {
        if (c == 1) {
            ++ones;
        } else if (c != 0) {
            return false;
        }
    }
    return ones == 1;
}

double AffineForm::evaluate(const double* v) const noexcept {
    double acc = static_cast<double>(constant);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) acc += static_cast<double>(coeffs[i]) * v[i];
    }
    return acc;
}

std::string AffineForm::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const std::int64_t c = coeffs[i];
        if (c == 0) continue;
        if (any) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << '-';
        const std::int64_t mag = c < 0 ? -c : c;
        if (mag != 1) os << mag << '*';
        os << "s" << i;
        any = true;
    }
    if (constant != 0 || !any) {
        if (any) os << (constant > 0 ? " + " : " - ") << (constant < 0 ? -constant : constant);
        else os << constant;
    }
    return os.str();
}

const char* method_name(LimitMethod method) noexcept {
    return method == LimitMethod::MonteCarlo ? "mc" : "exact";
}

// ---------------------------------------------------------------------------
// ConstraintSystem

bool ConstraintSystem::identities_hold() const {
    if (!(closure == vertex_forms.front())) return false;
    return std::all_of(equalities.begin(), equalities.end(),
                       [](const auto& eq) { return eq.first == eq.second; });
}

std::vector<AffineForm> ConstraintSystem::nontrivial_forms() const {
    std::vector<AffineForm> out;
    for (std::size_t v : dependent) {
        const AffineForm& f = vertex_forms[v];
        if (f.is_coordinate()) continue;
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    return out;
}

std::vector<AffineForm> ConstraintSystem::canonical_key() const { return vertex_forms; }

// ---------------------------------------------------------------------------
// Case decomposition

namespace {

std::vector<int> case_options(LinkKind kind) {
    switch (kind) {
        case LinkKind::Toeplitz: return {1, -1};
        case LinkKind::Hankel: return {0};
        case LinkKind::ReverseCirculant: return {-1, 0, 1};
        case LinkKind::SymmetricCirculant: return {1, 2, 3, 4, 5, 6};
        case LinkKind::Wigner: return {1, 2};
    }
    return {};
}

void require_pair_matched(const ColoredWord& w) {
    if (w.size() == 0 || !w.pair_matched()) {
        throw InputError("word " + w.text() + " is not pair-matched");
    }
}

}  // namespace

std::vector<CaseLabel> build_cases(const ColoredWord& w) {
    require_pair_matched(w);
    const auto pairs = match_pairs(w);
    std::vector<CaseLabel> out{CaseLabel{}};
    for (const MatchPair& p : pairs) {
        const auto options = case_options(w.color(p.first));
        std::vector<CaseLabel> next;
        next.reserve(out.size() * options.size());
        for (const CaseLabel& prefix : out) {
            for (int o : options) {
                CaseLabel label = prefix;
                label.cases.push_back(o);
                next.push_back(std::move(label));
            }
        }
        out = std::move(next);
    }
    return out;
}

ConstraintSystem resolve_affine(const ColoredWord& w, const CaseLabel& label) {
    require_pair_matched(w);
    const auto pairs = match_pairs(w);
    if (label.cases.size() != pairs.size()) {
        throw InputError("case label " + label.to_string() + " does not fit word " + w.text());
    }

    const std::size_t len = w.size();
    const std::size_t dims = pairs.size() + 1;

    ConstraintSystem cs;
    cs.length = len;
    cs.vertex_forms.resize(len + 1);
    cs.vertex_forms[0] = AffineForm::unit(dims, 0);
    cs.generating.push_back(0);

    // second position -> match number
    std::vector<int> match_of_second(len, -1);
    for (std::size_t m = 0; m < pairs.size(); ++m) match_of_second[pairs[m].second] = static_cast<int>(m);

    auto& f = cs.vertex_forms;
    for (std::size_t vj = 1; vj <= len; ++vj) {
        const int m = match_of_second[vj - 1];
        if (m < 0) {
            f[vj] = AffineForm::unit(dims, cs.generating.size());
            cs.generating.push_back(vj);
            continue;
        }
        const std::size_t vi = pairs[static_cast<std::size_t>(m)].first + 1;  // vertex closing the first edge
        const int c = label.cases[static_cast<std::size_t>(m)];
        const AffineForm d1 = f[vi - 1] - f[vi];
        switch (w.color(vj - 1)) {
            case LinkKind::Toeplitz:
                // v_{i-1} - v_i = c (v_{j-1} - v_j)
                f[vj] = f[vj - 1] - c * d1;
                break;
            case LinkKind::Hankel:
                f[vj] = f[vi - 1] + f[vi] - f[vj - 1];
                break;
            case LinkKind::ReverseCirculant:
                // v_{i-1} + v_i - v_{j-1} - v_j = c
                f[vj] = f[vi - 1] + f[vi] - f[vj - 1];
                f[vj] += -c;
                break;
            case LinkKind::SymmetricCirculant: {
                // With d2 = v_{j-1} - v_j: 1) d1 = d2  2) d1 = -d2  3) d1 + d2 = 1
                // 4) d1 - d2 = 1  5) d2 - d1 = 1  6) -d1 - d2 = 1.
                static constexpr int kSign[7] = {0, -1, 1, 1, -1, -1, 1};
                static constexpr int kShift[7] = {0, 0, 0, -1, 1, -1, 1};
                f[vj] = f[vj - 1] + kSign[c] * d1;
                f[vj] += kShift[c];
                break;
            }
            case LinkKind::Wigner:
                if (c == 1) {
                    cs.equalities.emplace_back(f[vj - 1], f[vi - 1]);
                    f[vj] = f[vi];
                } else {
                    cs.equalities.emplace_back(f[vj - 1], f[vi]);
                    f[vj] = f[vi - 1];
                }
                break;
        }
        if (vj < len) cs.dependent.push_back(vj);
    }
    cs.closure = f[len];
    return cs;
}

VolumeEstimate case_volume_mc(const ConstraintSystem& cs, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw InputError("case_volume_mc needs at least one sample");
    VolumeEstimate est;
    est.method = LimitMethod::MonteCarlo;
    est.cases = 1;
    if (!cs.identities_hold()) return est;

    est.systems = 1;
    const auto forms = cs.nontrivial_forms();
    if (forms.empty()) {
        est.value = 1.0;
        return est;
    }

    constexpr std::uint64_t kBlock = 1u << 16;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::uint64_t> hits(blocks, 0);
    const std::size_t dims = cs.dims();

    parallel_for(blocks, [&](std::size_t b) {
        Engine engine = make_engine(seed, {b});
        const std::uint64_t begin = b * kBlock;
        const std::uint64_t end = std::min(samples, begin + kBlock);
        std::vector<double> v(dims);
        std::uint64_t local = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
            for (double& x : v) x = uniform01(engine);
            bool inside = true;
            for (const AffineForm& form : forms) {
                const double y = form.evaluate(v.data());
                if (y < 0.0 || y >= 1.0) {
                    inside = false;
                    break;
                }
            }
            local += inside ? 1 : 0;
        }
        hits[b] = local;
    });

    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    const double p = static_cast<double>(total) / static_cast<double>(samples);
    est.value = p;
    est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    est.samples = samples;
    return est;
}

std::vector<ConstraintSystem> surviving_systems(const ColoredWord& w) {
    std::vector<ConstraintSystem> out;
    std::set<std::vector<AffineForm>> seen;
    for (const CaseLabel& label : build_cases(w)) {
        ConstraintSystem cs = resolve_affine(w, label);
        if (!cs.identities_hold()) continue;
        if (!seen.insert(cs.canonical_key()).second) continue;
        out.push_back(std::move(cs));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact circuit counting

double exact_count_work(const ColoredWord& w, std::int64_t n) {
    require_pair_matched(w);
    double work = static_cast<double>(n);
    for (const MatchPair& p : match_pairs(w)) {
        work *= static_cast<double>(n) * property_b_bound(w.color(p.first));
    }
    return work;
}

namespace {

class CircuitCounter {
public:
    CircuitCounter(const ColoredWord& w, std::int64_t n, bool c2_only)
        : n_(n), len_(w.size()), c2_only_(c2_only), pi_(len_ + 1, 0), partner_vertex_(len_ + 1, 0),
          is_first_(len_ + 1, false), colors_(len_ + 1), targets_(len_ + 1) {
        for (const MatchPair& p : match_pairs(w)) {
            const std::size_t vi = p.first + 1;
            const std::size_t vj = p.second + 1;
            is_first_[vi] = true;
            partner_vertex_[vj] = vi;
        }
        for (std::size_t e = 1; e <= len_; ++e) colors_[e] = w.color(e - 1);
    }

    std::uint64_t run() {
        std::uint64_t total = 0;
        for (Vertex x = 0; x < n_; ++x) {
            pi_[0] = x;
            total += visit(1);
        }
        return total;
    }

private:
    std::uint64_t visit(std::size_t e) {
        const LinkKind kind = colors_[e];
        if (is_first_[e]) {
            std::uint64_t total = 0;
            for (Vertex x = 0; x < n_; ++x) {
                pi_[e] = x;
                targets_[e] = link_eval_unchecked(kind, n_, pi_[e - 1], x);
                total += visit(e + 1);
            }
            return total;
        }

        const std::size_t vi = partner_vertex_[e];
        if (kind == LinkKind::Wigner && c2_only_) {
            // (pi(i-1), pi(i)) = (pi(j), pi(j-1))
            if (pi_[e - 1] != pi_[vi]) return 0;
            const Vertex x = pi_[vi - 1];
            if (e == len_) return x == pi_[0] ? 1 : 0;
            pi_[e] = x;
            return visit(e + 1);
        }

        const LValue& target = targets_[vi];
        if (e == len_) {
            return link_eval_unchecked(kind, n_, pi_[e - 1], pi_[0]) == target ? 1 : 0;
        }
        std::uint64_t total = 0;
        for (Vertex x : link_solve_unchecked(kind, n_, pi_[e - 1], target)) {
            pi_[e] = x;
            total += visit(e + 1);
        }
        return total;
    }

    std::int64_t n_;
    std::size_t len_;
    bool c2_only_;
    std::vector<Vertex> pi_;
    std::vector<std::size_t> partner_vertex_;
    std::vector<bool> is_first_;
    std::vector<LinkKind> colors_;
    std::vector<LValue> targets_;
};

}  // namespace

std::uint64_t count_circuits_exact(const ColoredWord& w, std::int64_t n, const CountOptions& options) {
    require_pair_matched(w);
    if (n < 1) throw InputError("matrix size must be at least 1");
    const double work = exact_count_work(w, n);
    if (work > options.work_budget) {
        throw BudgetExceeded("exact count of " + w.text() + " at n=" + std::to_string(n) + " needs ~" +
                                 std::to_string(work) + " steps",
                             work, options.work_budget);
    }
    return CircuitCounter(w, n, options.wigner_c2_only).run();
}

std::pair<std::int64_t, std::int64_t> default_exact_sizes(std::size_t k) {
    if (k <= 2) return {40, 80};
    if (k == 3) return {24, 48};
    return {16, 32};
}

// ---------------------------------------------------------------------------
// Limits

namespace {

std::uint64_t word_seed(const ColoredWord& w, std::uint64_t master) {
    std::vector<std::int32_t> key;
    for (std::size_t i = 0; i < w.size(); ++i) {
        key.push_back(w.letters()[i]);
        key.push_back(static_cast<std::int32_t>(w.color(i)));
        key.push_back(w.index(i));
    }
    return derive_seed(master, {stable_hash(key.data(), key.size() * sizeof(std::int32_t))});
}

VolumeEstimate p_limit_mc(const ColoredWord& w, const LimitParams& params) {
    VolumeEstimate est;
    est.method = LimitMethod::MonteCarlo;
    est.cases = build_cases(w).size();
    const auto systems = surviving_systems(w);
    est.systems = systems.size();
    const std::uint64_t seed = word_seed(w, params.seed);
    double var = 0.0;
    for (std::size_t s = 0; s < systems.size(); ++s) {
        const VolumeEstimate part = case_volume_mc(systems[s], params.mc_samples, derive_seed(seed, {s}));
        est.value += part.value;
        var += part.std_error * part.std_error;
        est.samples += part.samples;
    }
    est.std_error = std::sqrt(var);
    return est;
}

}  // namespace

VolumeEstimate p_limit(const ColoredWord& w, const LimitParams& params) {
    require_pair_matched(w);
    if (params.method == LimitMethod::MonteCarlo) return p_limit_mc(w, params);

    const std::size_t k = w.size() / 2;
    const auto [n1, n2] = params.sizes.value_or(default_exact_sizes(k));
    if (n1 < 1 || n2 <= n1) throw InputError("exact extrapolation needs sizes 1 <= n1 < n2");
    const double work = exact_count_work(w, n1) + exact_count_work(w, n2);
    if (work > params.work_budget) {
        if (params.fallback_to_mc) return p_limit_mc(w, params);
        throw BudgetExceeded("exact extrapolation of " + w.text() + " exceeds the work budget", work,
                             params.work_budget);
    }

    CountOptions opts;
    opts.work_budget = params.work_budget;
    auto normalized = [&](std::int64_t n) {
        const double count = static_cast<double>(count_circuits_exact(w, n, opts));
        return count / std::pow(static_cast<double>(n), static_cast<double>(k + 1));
    };
    const double f1 = normalized(n1);
    const double f2 = normalized(n2);
    // Richardson step for an O(1/n) error: exact when n2 = 2 n1.
    const double r = static_cast<double>(n2) / static_cast<double>(n1);
    VolumeEstimate est;
    est.method = LimitMethod::ExactCount;
    est.value = (r * f2 - f1) / (r - 1.0);
    est.std_error = std::abs(f2 - f1);
    est.n_used = n2;
    est.cases = build_cases(w).size();
    return est;
}

VolumeEstimate alpha(const Monomial& q, const LimitParams& params) {
    VolumeEstimate total;
    total.method = params.method;
    double quad = 0.0;
    double lin = 0.0;
    for (const ColoredWord& w : enumerate_pair_matched_words(q, true)) {
        const VolumeEstimate p = p_limit(drop_indices(w), params);
        total.value += p.value;
        total.samples += p.samples;
        total.cases += p.cases;
        total.systems += p.systems;
        total.n_used = std::max(total.n_used, p.n_used);
        if (p.method == LimitMethod::MonteCarlo) {
            quad += p.std_error * p.std_error;
        } else {
            lin += p.std_error;
        }
    }
    total.std_error = lin + std::sqrt(quad);
    return total;
}

double alpha_bound(const Monomial& q) {
    const std::size_t k = q.size();
    if (k % 2 != 0) return 0.0;
    std::map<std::pair<int, int>, int> classes;
    int delta = 1;
    for (const Letter& l : q) {
        ++classes[{static_cast<int>(l.color), l.index}];
        delta = std::max(delta, property_b_bound(l.color));
    }
    for (const auto& [cls, count] : classes) {
        if (count % 2 != 0) return 0.0;
    }
    const double half = static_cast<double>(k / 2);
    // k! / ((k/2)! 2^{k/2}) = (k-1)!!
    double pairings = 1.0;
    for (std::size_t odd = k - 1; odd >= 1 && odd < k; odd -= 2) pairings *= static_cast<double>(odd);
    return pairings * std::pow(static_cast<double>(delta), half);
}

}  // namespace pmj
