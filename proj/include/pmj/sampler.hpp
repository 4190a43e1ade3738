#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pmj/algebra.hpp"
#include "pmj/rng.hpp"

namespace pmj {

/// Mean 0, variance 1 input laws.
enum class InputDistribution { Gaussian, Rademacher, UniformSym };

std::string_view distribution_name(InputDistribution dist) noexcept;
std::optional<InputDistribution> distribution_from_name(std::string_view name) noexcept;

double draw_input(InputDistribution dist, Engine& engine);

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One realization of a patterned matrix. Entries are unscaled: entry (i, j)
/// is the input value attached to L(i, j).
struct MatrixSample {
    LinkKind kind{LinkKind::Wigner};
    int index{1};
    std::int64_t n{0};
    DenseMatrix entries;
    std::int64_t inputs_drawn{0};
};

/// Draws one input per distinct L-value (in L-value id order) and fills the
/// matrix by lookup.
MatrixSample sample_matrix(LinkKind kind, int index, std::int64_t n, InputDistribution dist, Engine& engine);

/// Samples keyed by (color, index).
using SampleFamily = std::map<std::pair<LinkKind, int>, MatrixSample>;

/// One replicate: a matrix for every distinct symbol of q, each drawn from
/// the substream (seed, replicate, kind, index).
SampleFamily sample_family(const Monomial& q, std::int64_t n, InputDistribution dist, std::uint64_t seed,
                           std::uint64_t replicate);

/// Tr(A_1 ... A_k) / n^{1 + k/2} with A_i the unscaled samples.
double normalized_trace(const Monomial& q, const SampleFamily& samples);

struct MomentEstimate {
    double mean{0.0};
    double stddev{0.0};
    std::size_t reps{0};
    std::int64_t n{0};
    std::uint64_t seed{0};
};

/// Per-replicate values of normalized_trace, replicate r drawn from the
/// substreams of (seed, r).
std::vector<double> trace_moment_replicates(const Monomial& q, std::int64_t n, InputDistribution dist,
                                            std::size_t reps, std::uint64_t seed);

MomentEstimate empirical_trace_moment(const Monomial& q, std::int64_t n, InputDistribution dist, std::size_t reps,
                                      std::uint64_t seed);

/// Sample mean and (n-1)-normalized standard deviation.
std::pair<double, double> mean_and_stddev(const std::vector<double>& values);

}  // namespace pmj
