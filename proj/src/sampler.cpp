#include "pmj/sampler.hpp"

#include <cmath>

#include "pmj/errors.hpp"
#include "pmj/parallel.hpp"

namespace pmj {

std::string_view distribution_name(InputDistribution dist) noexcept {
    switch (dist) {
        case InputDistribution::Gaussian: return "gaussian";
        case InputDistribution::Rademacher: return "rademacher";
        case InputDistribution::UniformSym: return "uniform";
    }
    return "?";
}

std::optional<InputDistribution> distribution_from_name(std::string_view name) noexcept {
    for (auto d : {InputDistribution::Gaussian, InputDistribution::Rademacher, InputDistribution::UniformSym}) {
        if (name == distribution_name(d)) return d;
    }
    return std::nullopt;
}

double draw_input(InputDistribution dist, Engine& engine) {
    switch (dist) {
        case InputDistribution::Gaussian: {
            // Marsaglia polar method on our own uniforms so the stream is
            // identical across standard library implementations.
            for (;;) {
                const double u = 2.0 * uniform01(engine) - 1.0;
                const double v = 2.0 * uniform01(engine) - 1.0;
                const double s = u * u + v * v;
                if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
        case InputDistribution::Rademacher:
            return (engine() >> 63) ? 1.0 : -1.0;
        case InputDistribution::UniformSym:
            return std::sqrt(3.0) * (2.0 * uniform01(engine) - 1.0);
    }
    return 0.0;
}

MatrixSample sample_matrix(LinkKind kind, int index, std::int64_t n, InputDistribution dist, Engine& engine) {
    if (n < 1) throw InputError("matrix size must be at least 1");
    if (index < 1) throw InputError("matrix index must be positive");

    const std::int64_t count = distinct_lvalue_count(kind, n);
    std::vector<double> inputs(static_cast<std::size_t>(count));
    for (double& x : inputs) x = draw_input(dist, engine);

    MatrixSample s{kind, index, n, DenseMatrix(n, n), count};
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = i; j < n; ++j) {
            const double x = inputs[static_cast<std::size_t>(lvalue_id(link_eval_unchecked(kind, n, i, j), n))];
            s.entries(i, j) = x;
            s.entries(j, i) = x;
        }
    }
    return s;
}

SampleFamily sample_family(const Monomial& q, std::int64_t n, InputDistribution dist, std::uint64_t seed,
                           std::uint64_t replicate) {
    SampleFamily family;
    for (const Letter& l : q) {
        const auto key = std::make_pair(l.color, l.index);
        if (family.count(key)) continue;
        Engine engine = make_engine(seed, {replicate, static_cast<std::uint64_t>(l.color),
                                           static_cast<std::uint64_t>(l.index)});
        family.emplace(key, sample_matrix(l.color, l.index, n, dist, engine));
    }
    return family;
}

double normalized_trace(const Monomial& q, const SampleFamily& samples) {
    if (q.empty()) return 1.0;
    auto at = [&](std::size_t i) -> const DenseMatrix& {
        const auto it = samples.find({q[i].color, q[i].index});
        if (it == samples.end()) throw InputError("no sample for symbol in " + q.to_string());
        return it->second.entries;
    };
    const DenseMatrix& first = at(0);
    const auto n = static_cast<double>(first.rows());
    const std::size_t k = q.size();

    double trace = 0.0;
    if (k == 1) {
        trace = first.trace();
    } else {
        DenseMatrix prod = first;
        for (std::size_t i = 1; i + 1 < k; ++i) prod = prod * at(i);
        // Tr(P A) = sum_ij P_ij A_ji and A is symmetric.
        trace = prod.cwiseProduct(at(k - 1)).sum();
    }
    return trace / std::pow(n, 1.0 + 0.5 * static_cast<double>(k));
}

std::vector<double> trace_moment_replicates(const Monomial& q, std::int64_t n, InputDistribution dist,
                                            std::size_t reps, std::uint64_t seed) {
    if (reps < 1) throw InputError("at least one replicate is required");
    std::vector<double> values(reps);
    parallel_for(reps, [&](std::size_t r) {
        values[r] = normalized_trace(q, sample_family(q, n, dist, seed, r));
    });
    return values;
}

std::pair<double, double> mean_and_stddev(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

MomentEstimate empirical_trace_moment(const Monomial& q, std::int64_t n, InputDistribution dist, std::size_t reps,
                                      std::uint64_t seed) {
    const auto values = trace_moment_replicates(q, n, dist, reps, seed);
    const auto [mean, sd] = mean_and_stddev(values);
    return MomentEstimate{mean, sd, reps, n, seed};
}

}  // namespace pmj
