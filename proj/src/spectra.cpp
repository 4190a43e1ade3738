#include "pmj/spectra.hpp"

#include <algorithm>
#include <cctype>
#include <locale>
#include <tuple>
#include <cmath>
#include <sstream>

#include "pmj/errors.hpp"
#include "pmj/parallel.hpp"

namespace pmj {

// ---------------------------------------------------------------------------
// Polynomials

std::string MatrixPolynomial::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        if (terms[i].coefficient != 1.0) os << terms[i].coefficient << '*';
        os << terms[i].monomial.to_string();
    }
    return os.str();
}

MatrixPolynomial parse_polynomial(std::string_view text) {
    MatrixPolynomial p;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t plus = std::min(text.find('+', start), text.size());
        std::string_view term = text.substr(start, plus - start);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.front()))) term.remove_prefix(1);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) term.remove_suffix(1);
        if (term.empty()) throw InputError("empty term in polynomial '" + std::string(text) + "'");

        PolynomialTerm t;
        if (const std::size_t star = term.find('*'); star != std::string_view::npos) {
            std::string coeff(term.substr(0, star));
            std::istringstream is(coeff);
            is.imbue(std::locale::classic());
            if (!(is >> t.coefficient) || !(is >> std::ws).eof()) {
                throw InputError("bad coefficient '" + coeff + "'");
            }
            term.remove_prefix(star + 1);
        }
        t.monomial = parse_monomial(term);
        p.terms.push_back(std::move(t));
        start = plus + 1;
    }
    if (p.terms.empty()) throw InputError("empty polynomial");
    return p;
}

DenseMatrix eval_polynomial(const MatrixPolynomial& p, const SampleFamily& samples, std::int64_t n) {
    if (p.terms.empty()) throw InputError("empty polynomial");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    DenseMatrix out = DenseMatrix::Zero(n, n);
    for (const PolynomialTerm& t : p.terms) {
        DenseMatrix prod;
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            const Letter& l = t.monomial[i];
            const auto it = samples.find({l.color, l.index});
            if (it == samples.end() || it->second.n != n) {
                throw InputError("no size-" + std::to_string(n) + " sample for a symbol of " + t.monomial.to_string());
            }
            if (i == 0) prod = scale * it->second.entries;
            else prod = (prod * it->second.entries) * scale;
        }
        out += t.coefficient * prod;
    }
    const double top = out.cwiseAbs().maxCoeff();
    const double asym = (out - out.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * top) {
        throw InputError("polynomial " + p.to_string() + " does not evaluate to a symmetric matrix");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Jacobi

namespace {

void require_symmetric(const DenseMatrix& m) {
    if (m.cols() != m.rows()) throw InputError("eigenvalues need a square matrix");
    if (m.size() == 0) return;
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw InputError("eigenvalues need a symmetric matrix");
    }
}

}  // namespace

std::string_view solver_name(EigenSolver solver) noexcept {
    return solver == EigenSolver::Jacobi ? "jacobi" : "tridiagonal";
}

std::optional<EigenSolver> solver_from_name(std::string_view name) noexcept {
    if (name == "jacobi") return EigenSolver::Jacobi;
    if (name == "tridiagonal") return EigenSolver::Tridiagonal;
    return std::nullopt;
}

std::vector<double> eigenvalues_tridiagonal(const DenseMatrix& m) {
    require_symmetric(m);
    if (m.rows() == 0) return {};
    const Eigen::MatrixXd col = m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(col, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("tridiagonal QR did not converge", 0.0);
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> eigenvalues_symmetric(const DenseMatrix& m, const JacobiOptions& options) {
    const std::int64_t n = m.rows();
    require_symmetric(m);
    if (n > options.size_cap) {
        throw InputError("matrix size " + std::to_string(n) + " exceeds the eigensolver cap " +
                         std::to_string(options.size_cap));
    }
    if (n == 0) return {};
    const double fro = m.norm();

    DenseMatrix a = m;
    auto off_norm = [&] {
        double s = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        }
        return std::sqrt(2.0 * s);
    };
    const double target = options.tol * fro;

    double off = off_norm();
    int sweep = 0;
    while (off > target) {
        if (sweep == options.max_sweeps) {
            throw NumericalError("Jacobi did not converge in " + std::to_string(options.max_sweeps) + " sweeps", off);
        }
        ++sweep;
        for (std::int64_t p = 0; p < n - 1; ++p) {
            for (std::int64_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                double* rp = a.row(p).data();
                double* rq = a.row(q).data();
                for (std::int64_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double xp = rp[r];
                    const double xq = rq[r];
                    rp[r] = c * xp - s * xq;
                    rq[r] = s * xp + c * xq;
                    a(r, p) = rp[r];
                    a(r, q) = rq[r];
                }
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
        off = off_norm();
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

// ---------------------------------------------------------------------------
// Histograms and moments

std::vector<double> Histogram::densities() const {
    std::vector<double> d(counts.size(), 0.0);
    if (total == 0) return d;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double width = edges[b + 1] - edges[b];
        d[b] = static_cast<double>(counts[b]) / (static_cast<double>(total) * width);
    }
    return d;
}

Histogram esd(std::span<const double> eigenvalues, const HistogramOptions& options) {
    if (options.bins == 0) throw InputError("histogram needs at least one bin");
    if (eigenvalues.empty()) throw InputError("histogram of an empty spectrum");

    double lo = 0.0;
    double hi = 0.0;
    if (options.range) {
        std::tie(lo, hi) = *options.range;
        if (!(hi > lo)) throw InputError("histogram range must be increasing");
    } else {
        const auto [mn, mx] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
        const double pad = 0.01 * (*mx - *mn);
        lo = *mn - pad;
        hi = *mx + pad;
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
    }

    Histogram h;
    const std::size_t bins = options.bins;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    }
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double x : eigenvalues) {
        if (x < lo || x > hi) continue;
        auto b = static_cast<std::size_t>((x - lo) / width);
        if (b >= bins) b = bins - 1;
        // Floating point division can land one bin off near an edge.
        while (b > 0 && x < h.edges[b]) --b;
        while (b + 1 < bins && x >= h.edges[b + 1]) ++b;
        ++h.counts[b];
        ++h.total;
    }
    return h;
}

Histogram esd(const DenseMatrix& m, const HistogramOptions& options) {
    const auto eig = eigenvalues_symmetric(m);
    return esd(std::span<const double>(eig), options);
}

SpectrumSummary summarize_spectrum(std::vector<double> eigenvalues, std::size_t kmax) {
    SpectrumSummary s;
    std::sort(eigenvalues.begin(), eigenvalues.end());
    s.moments.assign(kmax, 0.0);
    if (!eigenvalues.empty()) {
        s.min = eigenvalues.front();
        s.max = eigenvalues.back();
        for (double x : eigenvalues) {
            double p = 1.0;
            for (std::size_t k = 0; k < kmax; ++k) {
                p *= x;
                s.moments[k] += p;
            }
        }
        for (double& m : s.moments) m /= static_cast<double>(eigenvalues.size());
    }
    s.eigenvalues = std::move(eigenvalues);
    return s;
}

// ---------------------------------------------------------------------------
// Sums of two ensembles

namespace {

std::pair<Letter, Letter> sum_letters(LinkKind a, LinkKind b) {
    return {Letter{a, 1}, Letter{b, a == b ? 2 : 1}};
}

}  // namespace

VolumeEstimate sum_moment_limit(LinkKind a, LinkKind b, std::size_t k, const LimitParams& params) {
    const auto [la, lb] = sum_letters(a, b);
    VolumeEstimate total;
    total.method = params.method;
    double var = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<Letter> letters;
        for (std::size_t i = 0; i < k; ++i) letters.push_back((mask >> i) & 1u ? lb : la);
        const VolumeEstimate part = alpha(Monomial(std::move(letters)), params);
        total.value += part.value;
        var += part.std_error * part.std_error;
        total.samples += part.samples;
        total.systems += part.systems;
        total.cases += part.cases;
    }
    total.std_error = std::sqrt(var);
    return total;
}

SumLsdReport sum_lsd_report(LinkKind a, LinkKind b, std::int64_t n, InputDistribution dist, std::size_t reps,
                            const SumLsdOptions& options) {
    if (reps < 1) throw InputError("at least one replicate is required");
    if (n < 2) throw InputError("matrix size must be at least 2");
    const auto [la, lb] = sum_letters(a, b);
    MatrixPolynomial poly;
    poly.terms.push_back({1.0, Monomial({la})});
    poly.terms.push_back({1.0, Monomial({lb})});
    const Monomial symbols({la, lb});

    std::vector<std::vector<double>> spectra(reps);
    parallel_for(reps, [&](std::size_t r) {
        const SampleFamily family = sample_family(symbols, n, dist, options.seed, r);
        const DenseMatrix sum = eval_polynomial(poly, family, n);
        spectra[r] = options.solver == EigenSolver::Jacobi ? eigenvalues_symmetric(sum, options.jacobi)
                                                           : eigenvalues_tridiagonal(sum);
    });

    SumLsdReport report;
    report.kind_a = a;
    report.kind_b = b;
    report.n = n;
    report.reps = reps;
    report.dist = dist;
    report.seed = options.seed;
    report.solver = options.solver;

    std::vector<double> pooled;
    pooled.reserve(static_cast<std::size_t>(n) * reps);
    const std::size_t kmax = std::max<std::size_t>(options.kmax, 3);
    report.beta.assign(kmax, 0.0);
    report.beta_stderr.assign(kmax, 0.0);
    std::vector<std::vector<double>> per_rep(kmax);
    for (const auto& eig : spectra) {
        pooled.insert(pooled.end(), eig.begin(), eig.end());
        const SpectrumSummary s = summarize_spectrum(eig, kmax);
        for (std::size_t k = 0; k < kmax; ++k) per_rep[k].push_back(s.moments[k]);
    }
    for (std::size_t k = 0; k < kmax; ++k) {
        const auto [mean, sd] = mean_and_stddev(per_rep[k]);
        report.beta[k] = mean;
        report.beta_stderr[k] = sd / std::sqrt(static_cast<double>(reps));
    }
    std::sort(pooled.begin(), pooled.end());
    report.min_eigenvalue = pooled.front();
    report.max_eigenvalue = pooled.back();
    report.histogram = esd(std::span<const double>(pooled), options.histogram);

    const double m1 = report.beta[0];
    const double var = report.beta[1] - m1 * m1;
    const double central3 = report.beta[2] - 3.0 * m1 * report.beta[1] + 2.0 * m1 * m1 * m1;
    report.skewness = var > 0.0 ? central3 / std::pow(var, 1.5) : 0.0;

    report.odd_moments_vanish = true;
    for (std::size_t k = 1; k + 1 <= kmax; k += 2) {
        const double kd = static_cast<double>(k);
        const double scale = std::pow(std::max(report.beta[k], 0.0), kd / (kd + 1.0));
        if (std::abs(report.beta[k - 1]) > kOddMomentTolerance * std::max(scale, 1.0)) {
            report.odd_moments_vanish = false;
        }
    }
    report.even_growth_monotone = true;
    double prev = 0.0;
    for (std::size_t k = 2; k <= kmax; k += 2) {
        const double root = std::pow(std::max(report.beta[k - 1], 0.0), 1.0 / static_cast<double>(k));
        if (root < prev) report.even_growth_monotone = false;
        prev = root;
    }

    for (std::size_t k = 1; k <= std::min(options.predict_up_to, kmax); ++k) {
        report.beta_predicted.push_back(sum_moment_limit(a, b, k, options.limit_params).value);
    }
    return report;
}

}  // namespace pmj
