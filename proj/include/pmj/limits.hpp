#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmj/algebra.hpp"

namespace pmj {

/// Per-match case of the volume decomposition, one entry per match pair
/// (ordered as match_pairs()). Encoding by color of the match:
///   Toeplitz            +1 / -1   sign relating the two differences
///   Hankel               0        single case
///   ReverseCirculant    -1, 0, +1 wrap offset of the sums
///   SymmetricCirculant   1 .. 6   the six linear relations
///   Wigner               1 = C1 (same orientation), 2 = C2 (reversed)
struct CaseLabel {
    std::vector<int> cases;

    std::string to_string() const;
    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

/// Integer affine form c_0 v_{s0} + ... + c_k v_{sk} + b over the generating
/// coordinates. Every relation the link functions produce has integer
/// coefficients, so equality tests are exact.
struct AffineForm {
    std::vector<std::int64_t> coeffs;
    std::int64_t constant{0};

    static AffineForm zero(std::size_t dims);
    static AffineForm unit(std::size_t dims, std::size_t slot);

    AffineForm& operator+=(const AffineForm& other);
    AffineForm& operator-=(const AffineForm& other);
    AffineForm& operator*=(std::int64_t factor);
    AffineForm& operator+=(std::int64_t c);

    friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
    friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
    friend AffineForm operator*(std::int64_t f, AffineForm a) { return a *= f; }
    friend bool operator==(const AffineForm&, const AffineForm&) = default;
    friend auto operator<=>(const AffineForm&, const AffineForm&) = default;

    bool is_constant() const noexcept;
    /// A single coordinate with coefficient 1 and no offset.
    bool is_coordinate() const noexcept;
    double evaluate(const double* v) const noexcept;
    std::string to_string() const;
};

/// The linear system for one case of one word. Vertices are 0..2k; vertex i
/// closes edge i (the letter at 0-based word position i-1).
struct ConstraintSystem {
    std::size_t length{0};                       ///< 2k
    std::vector<std::size_t> generating;         ///< vertex ids, starts with 0; slot s <-> generating[s]
    std::vector<AffineForm> vertex_forms;        ///< form of every vertex 0..2k
    std::vector<std::size_t> dependent;          ///< non-generating vertices below 2k
    std::vector<std::pair<AffineForm, AffineForm>> equalities;  ///< must hold identically (Wigner cases)
    AffineForm closure;                          ///< form of v_{2k}; must equal v_0

    std::size_t dims() const noexcept { return generating.size(); }

    /// Closure and every equality hold as identities of affine forms.
    /// When false the case lies on a measure-zero slice.
    bool identities_hold() const;

    /// Dependent forms that are not trivially inside [0, 1).
    std::vector<AffineForm> nontrivial_forms() const;

    /// Key for merging literally identical systems.
    std::vector<AffineForm> canonical_key() const;
};

enum class LimitMethod { MonteCarlo, ExactCount };

const char* method_name(LimitMethod method) noexcept;

struct VolumeEstimate {
    double value{0.0};
    double std_error{0.0};
    LimitMethod method{LimitMethod::MonteCarlo};
    std::int64_t n_used{0};       ///< ExactCount only (the larger size)
    std::uint64_t samples{0};     ///< MonteCarlo only (total over systems)
    std::size_t cases{0};         ///< case labels considered
    std::size_t systems{0};       ///< surviving, deduplicated systems
};

inline constexpr double kDefaultWorkBudget = 5e9;

struct LimitParams {
    LimitMethod method{LimitMethod::MonteCarlo};
    std::uint64_t mc_samples{1'000'000};
    std::uint64_t seed{20120417};
    /// Sizes (n, 2n) for exact extrapolation; defaults depend on k.
    std::optional<std::pair<std::int64_t, std::int64_t>> sizes;
    double work_budget{kDefaultWorkBudget};
    /// When exact extrapolation would exceed the budget, use Monte Carlo.
    bool fallback_to_mc{true};
};

/// Cartesian product of the per-match case sets.
std::vector<CaseLabel> build_cases(const ColoredWord& w);

/// Walks vertices 1..2k expressing each dependent vertex as an affine form
/// of earlier generating vertices under `label`.
ConstraintSystem resolve_affine(const ColoredWord& w, const CaseLabel& label);

/// Lebesgue volume of {v_S in [0,1)^{k+1} : every dependent form in [0,1)}
/// by Monte Carlo; exactly 0 when an identity fails and exactly 1 when no
/// dependent form can leave the cube.
VolumeEstimate case_volume_mc(const ConstraintSystem& cs, std::uint64_t samples, std::uint64_t seed);

/// Surviving systems of w after identity filtering and deduplication.
std::vector<ConstraintSystem> surviving_systems(const ColoredWord& w);

/// Operation estimate n^{k+1} * Delta^k for count_circuits_exact.
double exact_count_work(const ColoredWord& w, std::int64_t n);

struct CountOptions {
    double work_budget{kDefaultWorkBudget};
    /// Restrict Wigner matches to the reversed (C2) orientation.
    bool wigner_c2_only{false};
};

/// |Pi*_C(w)| for size n: circuits pi with pi(0) = pi(2k) whose L-values agree
/// on every match. Throws BudgetExceeded above the work budget.
std::uint64_t count_circuits_exact(const ColoredWord& w, std::int64_t n, const CountOptions& options = {});

/// Default (n, 2n) for exact extrapolation at half-length k.
std::pair<std::int64_t, std::int64_t> default_exact_sizes(std::size_t k);

/// p_C(w) by Monte Carlo volume summation or by Richardson extrapolation
/// 2 f(2n) - f(n) of f(n) = |Pi*_C(w)| / n^{1+k}.
VolumeEstimate p_limit(const ColoredWord& w, const LimitParams& params = {});

/// alpha(q) = sum over index-respecting pair-matched words of p_C(psi(w)).
VolumeEstimate alpha(const Monomial& q, const LimitParams& params = {});

/// k! Delta^{k/2} / ((k/2)! 2^{k/2}), or 0 for odd length / odd index counts.
double alpha_bound(const Monomial& q);

}  // namespace pmj
