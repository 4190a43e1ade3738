#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmj/limits.hpp"
#include "pmj/sampler.hpp"

namespace pmj {

/// Perfect matching of {1..m}; pairs (a, b) with a < b, sorted by a.
struct PairPartition {
    int m{0};
    std::vector<std::pair<int, int>> pairs;

    /// partner(x) for x in 1..m.
    int partner(int x) const;
    bool noncrossing() const noexcept;
    std::string to_string() const;
    friend bool operator==(const PairPartition&, const PairPartition&) = default;
};

/// Non-crossing pair partitions of {1..m}, Catalan(m/2) of them; empty for
/// odd m. m = 0 gives the single empty partition.
std::vector<PairPartition> enumerate_nc2(int m);

/// Keeps partitions whose pairs join equal colors; colors[r-1] is the
/// color of element r.
std::vector<PairPartition> filter_colored(const std::vector<PairPartition>& partitions,
                                          const std::vector<int>& colors);

/// Permutation of {1..m} in cycle form. Each cycle starts at its smallest
/// element and cycles are ordered by that element.
struct CyclePermutation {
    std::vector<std::vector<int>> cycles;

    std::size_t count() const noexcept { return cycles.size(); }
    std::string to_string() const;
};

/// Cycles of x -> sigma(gamma(x)) with gamma(x) = x + 1 mod m.
CyclePermutation sigma_gamma_cycles(const PairPartition& sigma, int m);

/// q rotated to start with a letter of `role` and cut as
/// R A^(1) R A^(2) ... R A^(m); each block A^(r) is the (possibly empty)
/// run of other letters after the r-th role letter.
struct AlternatingMonomial {
    LinkKind role{LinkKind::Wigner};
    std::vector<Letter> role_letters;
    std::vector<Monomial> blocks;
    std::size_t rotation{0};   ///< q.rotated(rotation) is the alternating form

    std::size_t m() const noexcept { return role_letters.size(); }
    Monomial monomial() const;
};

/// Throws InputError when q has no letter of `role`.
AlternatingMonomial decompose_alternating(const Monomial& q, LinkKind role = LinkKind::Wigner);

using Marginal = std::function<double(const Monomial&)>;

/// Sum over colored sigma in NC2(m) of the product over cycles c of sigma.gamma
/// of marginal(A^(c_1) A^(c_2) ...). Role letters are colored by index.
/// marginal(empty) is taken as 1 without calling it.
double free_moment_prediction(const AlternatingMonomial& q, const Marginal& marginal);

/// 0 for odd k, Catalan(k/2) otherwise.
double semicircle_moment(int k);

/// Memoizing limits::alpha keyed by monomial text.
class AlphaMarginal {
public:
    explicit AlphaMarginal(LimitParams params) : params_(std::move(params)) {}
    double operator()(const Monomial& q);
    Marginal as_function() {
        return [this](const Monomial& q) { return (*this)(q); };
    }

private:
    LimitParams params_;
    std::vector<std::pair<std::string, double>> cache_;
};

inline constexpr double kFreenessTolerance = 0.03;

struct FreenessOptions {
    LinkKind role{LinkKind::Wigner};
    std::uint64_t seed{20120417};
    LimitParams limit_params{};
    double tolerance{kFreenessTolerance};
};

struct FreenessReport {
    Monomial q;
    AlternatingMonomial alternating;
    VolumeEstimate alpha;
    double free_prediction{0.0};
    double deviation{0.0};                  ///< |alpha - free_prediction|
    std::optional<MomentEstimate> empirical;  ///< absent when reps = 0
    std::optional<double> empirical_deviation;
    bool free_within_tol{false};
};

/// Compares the combinatorial limit of q with the free prediction built from
/// marginal limits, plus a simulated estimate when reps > 0.
FreenessReport freeness_report(const Monomial& q, std::int64_t n, InputDistribution dist, std::size_t reps,
                               const FreenessOptions& options = {});

/// A Wigner match (i, j) whose strictly interior subword is not itself
/// pair-matched (some letter inside occurs once).
bool has_broken_wigner_string(const ColoredWord& w);

struct FactorizationRow {
    std::int64_t n{0};
    double joint_mean{0.0};          ///< mean of prod_i tr(X^k_i)
    double product_of_means{0.0};    ///< prod_i mean tr(X^k_i)
    double gap{0.0};                 ///< joint_mean - product_of_means
    std::optional<double> ratio;     ///< |gap| / |previous gap|
};

/// tr = (1/n) Tr of powers of X/sqrt(n) for one kind, per n in `sizes`.
std::vector<FactorizationRow> trace_factorization_check(LinkKind kind, const std::vector<int>& powers,
                                                        const std::vector<std::int64_t>& sizes,
                                                        InputDistribution dist, std::size_t reps,
                                                        std::uint64_t seed);

struct ConcentrationRow {
    std::int64_t n{0};
    double mean{0.0};
    double stddev{0.0};
    double fourth_central{0.0};
};

struct ConcentrationReport {
    std::vector<ConcentrationRow> rows;
    double log_log_slope{0.0};   ///< least squares slope of log fourth_central on log n
};

/// Requires reps >= 50.
ConcentrationReport concentration_check(const Monomial& q, const std::vector<std::int64_t>& sizes,
                                        InputDistribution dist, std::size_t reps, std::uint64_t seed);

/// (1/n) Tr(Y^k) for k = 1..kmax with Y symmetric.
std::vector<double> normalized_power_traces(const DenseMatrix& y, int kmax);

}  // namespace pmj
