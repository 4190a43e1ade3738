#include "pmj/freeness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmj/errors.hpp"
#include "pmj/parallel.hpp"

namespace pmj {

int PairPartition::partner(int x) const {
    for (const auto& [a, b] : pairs) {
        if (a == x) return b;
        if (b == x) return a;
    }
    throw InputError("element " + std::to_string(x) + " is not covered by " + to_string());
}

bool PairPartition::noncrossing() const noexcept {
    for (const auto& [a, b] : pairs) {
        for (const auto& [c, d] : pairs) {
            if (a < c && c < b && b < d) return false;
        }
    }
    return true;
}

std::string PairPartition::to_string() const {
    std::ostringstream os;
    if (pairs.empty()) return "()";
    for (const auto& [a, b] : pairs) os << '(' << a << ' ' << b << ')';
    return os.str();
}

namespace {

void nc2_rec(int lo, int hi, std::vector<std::pair<int, int>>& current,
             const std::function<void()>& emit) {
    if (lo > hi) {
        emit();
        return;
    }
    for (int j = lo + 1; j <= hi; j += 2) {
        current.emplace_back(lo, j);
        // Interior [lo+1, j-1] first, then the rest [j+1, hi].
        nc2_rec(lo + 1, j - 1, current, [&] { nc2_rec(j + 1, hi, current, emit); });
        current.pop_back();
    }
}

}  // namespace

std::vector<PairPartition> enumerate_nc2(int m) {
    if (m < 0) throw InputError("enumerate_nc2 needs m >= 0");
    std::vector<PairPartition> out;
    if (m % 2 != 0) return out;
    std::vector<std::pair<int, int>> current;
    nc2_rec(1, m, current, [&] {
        PairPartition p{m, current};
        std::sort(p.pairs.begin(), p.pairs.end());
        out.push_back(std::move(p));
    });
    return out;
}

std::vector<PairPartition> filter_colored(const std::vector<PairPartition>& partitions,
                                          const std::vector<int>& colors) {
    std::vector<PairPartition> out;
    for (const PairPartition& p : partitions) {
        if (static_cast<int>(colors.size()) != p.m) throw InputError("color list does not match partition size");
        const bool ok = std::all_of(p.pairs.begin(), p.pairs.end(), [&](const auto& pr) {
            return colors[static_cast<std::size_t>(pr.first - 1)] == colors[static_cast<std::size_t>(pr.second - 1)];
        });
        if (ok) out.push_back(p);
    }
    return out;
}

std::string CyclePermutation::to_string() const {
    std::ostringstream os;
    for (const auto& c : cycles) {
        os << '(';
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
        os << ')';
    }
    return os.str();
}

CyclePermutation sigma_gamma_cycles(const PairPartition& sigma, int m) {
    if (sigma.m != m) throw InputError("partition is not over {1..m}");
    std::vector<int> involution(static_cast<std::size_t>(m) + 1, 0);
    for (const auto& [a, b] : sigma.pairs) {
        involution[static_cast<std::size_t>(a)] = b;
        involution[static_cast<std::size_t>(b)] = a;
    }
    for (int x = 1; x <= m; ++x) {
        if (involution[static_cast<std::size_t>(x)] == 0) throw InputError("partition does not cover {1..m}");
    }
    auto next = [&](int x) { return involution[static_cast<std::size_t>(x % m + 1)]; };

    CyclePermutation out;
    std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
    for (int start = 1; start <= m; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cycle;
        for (int x = start; !seen[static_cast<std::size_t>(x)]; x = next(x)) {
            seen[static_cast<std::size_t>(x)] = true;
            cycle.push_back(x);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

Monomial AlternatingMonomial::monomial() const {
    std::vector<Letter> letters;
    for (std::size_t r = 0; r < role_letters.size(); ++r) {
        letters.push_back(role_letters[r]);
        letters.insert(letters.end(), blocks[r].begin(), blocks[r].end());
    }
    return Monomial(std::move(letters));
}

AlternatingMonomial decompose_alternating(const Monomial& q, LinkKind role) {
    const auto first = std::find_if(q.begin(), q.end(), [&](const Letter& l) { return l.color == role; });
    if (first == q.end()) {
        throw InputError("monomial " + q.to_string() + " has no " + std::string(kind_name(role)) + " letter");
    }
    AlternatingMonomial alt;
    alt.role = role;
    alt.rotation = static_cast<std::size_t>(first - q.begin());
    const Monomial rotated = q.rotated(alt.rotation);
    std::vector<Letter> block;
    for (const Letter& l : rotated) {
        if (l.color == role) {
            if (!alt.role_letters.empty()) alt.blocks.emplace_back(std::move(block));
            block.clear();
            alt.role_letters.push_back(l);
        } else {
            block.push_back(l);
        }
    }
    alt.blocks.emplace_back(std::move(block));
    return alt;
}

double free_moment_prediction(const AlternatingMonomial& q, const Marginal& marginal) {
    const int m = static_cast<int>(q.m());
    std::vector<int> colors;
    for (const Letter& l : q.role_letters) colors.push_back(l.index);

    double total = 0.0;
    for (const PairPartition& sigma : filter_colored(enumerate_nc2(m), colors)) {
        double product = 1.0;
        for (const auto& cycle : sigma_gamma_cycles(sigma, m).cycles) {
            std::vector<Letter> letters;
            for (int r : cycle) {
                const Monomial& b = q.blocks[static_cast<std::size_t>(r - 1)];
                letters.insert(letters.end(), b.begin(), b.end());
            }
            if (letters.empty()) continue;
            product *= marginal(Monomial(std::move(letters)));
            if (product == 0.0) break;
        }
        total += product;
    }
    return total;
}

double semicircle_moment(int k) {
    if (k < 0) throw InputError("moment order must be non-negative");
    if (k % 2 != 0) return 0.0;
    // Catalan(h) = prod_{i=2..h} (h + i) / i
    const int h = k / 2;
    double c = 1.0;
    for (int i = 2; i <= h; ++i) c = c * (h + i) / i;
    return std::round(c);
}

double AlphaMarginal::operator()(const Monomial& q) {
    if (q.empty()) return 1.0;
    const std::string key = q.to_string();
    for (const auto& [k, v] : cache_) {
        if (k == key) return v;
    }
    const double v = alpha(q, params_).value;
    cache_.emplace_back(key, v);
    return v;
}

FreenessReport freeness_report(const Monomial& q, std::int64_t n, InputDistribution dist, std::size_t reps,
                               const FreenessOptions& options) {
    FreenessReport report;
    report.q = q;
    report.alternating = decompose_alternating(q, options.role);
    report.alpha = alpha(q, options.limit_params);
    AlphaMarginal marginal(options.limit_params);
    report.free_prediction = free_moment_prediction(report.alternating, marginal.as_function());
    report.deviation = std::abs(report.alpha.value - report.free_prediction);
    report.free_within_tol = report.deviation <= options.tolerance;
    if (reps > 0) {
        report.empirical = empirical_trace_moment(q, n, dist, reps, options.seed);
        report.empirical_deviation = std::abs(report.empirical->mean - report.free_prediction);
    }
    return report;
}

bool has_broken_wigner_string(const ColoredWord& w) {
    for (const MatchPair& p : match_pairs(w)) {
        if (w.color(p.first) != LinkKind::Wigner) continue;
        std::vector<int> seen(static_cast<std::size_t>(w.letter_count()), 0);
        for (std::size_t i = p.first + 1; i < p.second; ++i) ++seen[static_cast<std::size_t>(w.letters()[i])];
        if (std::any_of(seen.begin(), seen.end(), [](int c) { return c == 1; })) return true;
    }
    return false;
}

std::vector<double> normalized_power_traces(const DenseMatrix& y, int kmax) {
    if (kmax < 1) return {};
    const double n = static_cast<double>(y.rows());
    const int half = (kmax + 1) / 2;
    std::vector<DenseMatrix> powers;
    powers.push_back(y);
    for (int p = 2; p <= half; ++p) powers.push_back(powers.back() * y);
    std::vector<double> out(static_cast<std::size_t>(kmax));
    out[0] = y.trace() / n;
    for (int k = 2; k <= kmax; ++k) {
        // Tr(Y^a Y^b) with a + b = k, a = floor(k/2), b = ceil(k/2).
        const int a = k / 2;
        const int b = k - a;
        out[static_cast<std::size_t>(k - 1)] =
            powers[static_cast<std::size_t>(a - 1)].cwiseProduct(powers[static_cast<std::size_t>(b - 1)]).sum() / n;
    }
    return out;
}

std::vector<FactorizationRow> trace_factorization_check(LinkKind kind, const std::vector<int>& powers,
                                                        const std::vector<std::int64_t>& sizes,
                                                        InputDistribution dist, std::size_t reps,
                                                        std::uint64_t seed) {
    if (powers.size() < 2) throw InputError("trace factorization needs at least two powers");
    if (reps < 2) throw InputError("trace factorization needs at least two replicates");
    for (int p : powers) {
        if (p < 1) throw InputError("powers must be positive");
    }
    const int kmax = *std::max_element(powers.begin(), powers.end());

    std::vector<FactorizationRow> rows;
    for (std::int64_t n : sizes) {
        std::vector<std::vector<double>> traces(reps);
        parallel_for(reps, [&](std::size_t r) {
            Engine engine = make_engine(seed, {static_cast<std::uint64_t>(n), r, static_cast<std::uint64_t>(kind)});
            const MatrixSample s = sample_matrix(kind, 1, n, dist, engine);
            const DenseMatrix y = s.entries / std::sqrt(static_cast<double>(n));
            const auto all = normalized_power_traces(y, kmax);
            for (int p : powers) traces[r].push_back(all[static_cast<std::size_t>(p - 1)]);
        });

        FactorizationRow row;
        row.n = n;
        std::vector<double> means(powers.size(), 0.0);
        for (const auto& t : traces) {
            double prod = 1.0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                prod *= t[i];
                means[i] += t[i] / static_cast<double>(reps);
            }
            row.joint_mean += prod / static_cast<double>(reps);
        }
        row.product_of_means = 1.0;
        for (double m : means) row.product_of_means *= m;
        row.gap = row.joint_mean - row.product_of_means;
        if (!rows.empty() && rows.back().gap != 0.0) row.ratio = std::abs(row.gap) / std::abs(rows.back().gap);
        rows.push_back(row);
    }
    return rows;
}

ConcentrationReport concentration_check(const Monomial& q, const std::vector<std::int64_t>& sizes,
                                        InputDistribution dist, std::size_t reps, std::uint64_t seed) {
    if (reps < 50) throw InputError("concentration check needs at least 50 replicates");
    ConcentrationReport report;
    for (std::int64_t n : sizes) {
        const auto values = trace_moment_replicates(q, n, dist, reps, derive_seed(seed, {static_cast<std::uint64_t>(n)}));
        const auto [mean, sd] = mean_and_stddev(values);
        double m4 = 0.0;
        for (double v : values) m4 += std::pow(v - mean, 4);
        m4 /= static_cast<double>(values.size());
        report.rows.push_back({n, mean, sd, m4});
    }
    if (report.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double count = 0;
        for (const auto& r : report.rows) {
            if (r.fourth_central <= 0.0) continue;
            const double x = std::log(static_cast<double>(r.n));
            const double y = std::log(r.fourth_central);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            count += 1;
        }
        const double denom = count * sxx - sx * sx;
        if (count >= 2 && denom != 0.0) report.log_log_slope = (count * sxy - sx * sy) / denom;
    }
    return report;
}

}  // namespace pmj
