#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmj/limits.hpp"
#include "pmj/sampler.hpp"

namespace pmj {

struct PolynomialTerm {
    double coefficient{1.0};
    Monomial monomial;
};

/// A real linear combination of monomials; must evaluate to a symmetric
/// matrix.
struct MatrixPolynomial {
    std::vector<PolynomialTerm> terms;

    std::string to_string() const;
};

/// "T + H", "TH + HT", "0.5*W1 W2 + 2*H". Terms are separated by '+', each
/// with an optional "<coefficient>*" prefix followed by a monomial.
MatrixPolynomial parse_polynomial(std::string_view text);

/// sum_t c_t * prod (A / sqrt(n)) over the sampled matrices. Throws
/// InputError when a symbol has no sample or the result is not symmetric
/// (max |M - M^T| > 1e-10 max |M|).
DenseMatrix eval_polynomial(const MatrixPolynomial& p, const SampleFamily& samples, std::int64_t n);

struct JacobiOptions {
    double tol{1e-10};
    int max_sweeps{50};
    std::int64_t size_cap{1200};
};

/// Cyclic Jacobi. Iterates until the off-diagonal Frobenius norm is at most
/// tol * ||M||_F; eigenvalues ascending. Throws NumericalError (carrying the
/// final off-diagonal norm) after max_sweeps, InputError for a non-square,
/// non-symmetric or oversized matrix.
std::vector<double> eigenvalues_symmetric(const DenseMatrix& m, const JacobiOptions& options = {});

/// Householder tridiagonalization followed by implicit symmetric QR
/// (Eigen's SelfAdjointEigenSolver); eigenvalues ascending. Same input
/// checks as eigenvalues_symmetric, without the size cap.
std::vector<double> eigenvalues_tridiagonal(const DenseMatrix& m);

enum class EigenSolver { Jacobi, Tridiagonal };

std::string_view solver_name(EigenSolver solver) noexcept;
std::optional<EigenSolver> solver_from_name(std::string_view name) noexcept;

struct Histogram {
    std::vector<double> edges;               ///< bins + 1 ascending edges
    std::vector<std::uint64_t> counts;
    std::uint64_t total{0};
    bool density{true};

    std::size_t bins() const noexcept { return counts.size(); }
    /// counts / (total * width) per bin.
    std::vector<double> densities() const;
};

struct HistogramOptions {
    std::size_t bins{50};
    /// Defaults to [min, max] padded by 1% of the span on each side.
    std::optional<std::pair<double, double>> range;
};

/// Density histogram of a spectrum. Bins are [left, right); the last bin
/// also takes its right edge. Values outside an explicit range are dropped.
Histogram esd(std::span<const double> eigenvalues, const HistogramOptions& options = {});
Histogram esd(const DenseMatrix& m, const HistogramOptions& options = {});

struct SpectrumSummary {
    std::vector<double> eigenvalues;   ///< ascending
    std::vector<double> moments;       ///< moments[k-1] = (1/n) sum lambda^k, k = 1..K
    double min{0.0};
    double max{0.0};
};

SpectrumSummary summarize_spectrum(std::vector<double> eigenvalues, std::size_t kmax);

struct SumLsdOptions {
    std::size_t kmax{6};
    std::uint64_t seed{20120417};
    HistogramOptions histogram{};
    /// Moment predictions from limits are computed for k <= this order.
    std::size_t predict_up_to{4};
    LimitParams limit_params{};
    /// Jacobi costs O(n^3) per sweep with a large constant; the
    /// tridiagonal route is the practical choice from n of a few hundred.
    EigenSolver solver{EigenSolver::Tridiagonal};
    JacobiOptions jacobi{};
};

/// Averaged ESD of (A + B)/sqrt(n) over replicates, where A and B are
/// independent samples of the two kinds (indices 1 and 2 when the kinds
/// coincide).
struct SumLsdReport {
    LinkKind kind_a{LinkKind::Toeplitz};
    LinkKind kind_b{LinkKind::Hankel};
    std::int64_t n{0};
    std::size_t reps{0};
    InputDistribution dist{InputDistribution::Gaussian};
    std::uint64_t seed{0};
    EigenSolver solver{EigenSolver::Tridiagonal};
    Histogram histogram;
    std::vector<double> beta;            ///< beta[k-1], averaged over replicates
    std::vector<double> beta_stderr;     ///< replicate sd / sqrt(reps); 0 for one replicate
    std::vector<double> beta_predicted;  ///< limit values for k = 1..predict_up_to
    double skewness{0.0};
    bool odd_moments_vanish{false};      ///< odd k: |beta_k| <= 0.05 * max(1, beta_{k+1}^{k/(k+1)})
    bool even_growth_monotone{false};    ///< beta_{2k}^{1/(2k)} non-decreasing
    double min_eigenvalue{0.0};
    double max_eigenvalue{0.0};
};

/// Tolerance used for the odd-moment flag.
inline constexpr double kOddMomentTolerance = 0.05;

SumLsdReport sum_lsd_report(LinkKind a, LinkKind b, std::int64_t n, InputDistribution dist, std::size_t reps,
                            const SumLsdOptions& options = {});

/// Limit of (1/n) Tr(((A + B)/sqrt(n))^k): sum of alpha over the 2^k words.
VolumeEstimate sum_moment_limit(LinkKind a, LinkKind b, std::size_t k, const LimitParams& params = {});

}  // namespace pmj
