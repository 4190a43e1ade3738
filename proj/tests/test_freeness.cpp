#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "pmj/errors.hpp"
#include "pmj/freeness.hpp"

using namespace pmj;

namespace {

std::uint64_t catalan(int k) {
    std::uint64_t c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / static_cast<std::uint64_t>(i + 2);
    return c;
}

LimitParams mc(std::uint64_t samples) {
    LimitParams p;
    p.mc_samples = samples;
    return p;
}

/// Every word over {W, other} of the given length using both letters.
std::vector<Monomial> mixed_words(char other, std::size_t len) {
    std::vector<Monomial> out;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << len); ++mask) {
        std::string s;
        for (std::size_t i = 0; i < len; ++i) s += (mask >> i) & 1U ? 'W' : other;
        out.push_back(parse_monomial(s));
    }
    return out;
}

}  // namespace

TEST_CASE("enumerate_nc2 sizes and contents") {
    CHECK(enumerate_nc2(0).size() == 1);
    CHECK(enumerate_nc2(3).empty());
    const auto two = enumerate_nc2(2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].pairs == std::vector<std::pair<int, int>>{{1, 2}});
    for (int m = 2; m <= 12; m += 2) {
        const auto nc = enumerate_nc2(m);
        std::size_t brute = 0;
        for (const auto& p : oracle::all_matchings(m)) brute += oracle::crossing(p) ? 0 : 1;
        CHECK(nc.size() == brute);
        CHECK(nc.size() == catalan(m / 2));
        std::set<std::string> distinct;
        for (const auto& p : nc) {
            CHECK(p.noncrossing());
            CHECK(!oracle::crossing(p.pairs));
            distinct.insert(p.to_string());
        }
        CHECK(distinct.size() == nc.size());
    }
}

TEST_CASE("filter_colored") {
    CHECK(filter_colored(enumerate_nc2(2), {1, 2}).empty());
    CHECK(filter_colored(enumerate_nc2(2), {1, 1}).size() == 1);
    const auto nested = filter_colored(enumerate_nc2(4), {1, 2, 2, 1});
    REQUIRE(nested.size() == 1);
    CHECK(nested[0].pairs == std::vector<std::pair<int, int>>{{1, 4}, {2, 3}});
    CHECK(filter_colored(enumerate_nc2(4), {1, 1, 1, 1}).size() == 2);
}

TEST_CASE("sigma gamma cycles") {
    PairPartition s2{2, {{1, 2}}};
    CHECK(sigma_gamma_cycles(s2, 2).to_string() == "(1)(2)");
    PairPartition s4{4, {{1, 2}, {3, 4}}};
    const CyclePermutation c = sigma_gamma_cycles(s4, 4);
    CHECK(c.to_string() == "(1)(2 4)(3)");
    std::multiset<std::size_t> lengths;
    for (const auto& cyc : c.cycles) lengths.insert(cyc.size());
    CHECK(lengths == std::multiset<std::size_t>{1, 1, 2});
    CHECK(oracle::sigma_gamma_cycle_count(s4.pairs, 4) == 3);
}

TEST_CASE("cycle-count law holds exhaustively for m <= 8") {
    for (int m = 2; m <= 8; m += 2) {
        for (const auto& pairs : oracle::all_matchings(m)) {
            const PairPartition p{m, pairs};
            const auto cyc = sigma_gamma_cycles(p, m);
            std::vector<int> seen;
            for (const auto& c : cyc.cycles) seen.insert(seen.end(), c.begin(), c.end());
            std::sort(seen.begin(), seen.end());
            std::vector<int> all(static_cast<std::size_t>(m));
            std::iota(all.begin(), all.end(), 1);
            REQUIRE(seen == all);
            CHECK(static_cast<int>(cyc.count()) == oracle::sigma_gamma_cycle_count(pairs, m));
            CHECK((static_cast<int>(cyc.count()) == 1 + m / 2) == !oracle::crossing(pairs));
        }
    }
}

TEST_CASE("decompose_alternating") {
    const AlternatingMonomial a = decompose_alternating(parse_monomial("TWWT"));
    CHECK(a.m() == 2);
    CHECK(a.monomial() == parse_monomial("WWTT"));
    CHECK(a.blocks[0].empty());
    CHECK(a.blocks[1] == parse_monomial("TT"));
    CHECK(parse_monomial("TWWT").rotated(a.rotation) == a.monomial());
    const AlternatingMonomial t = decompose_alternating(parse_monomial("HTHT"), LinkKind::Toeplitz);
    CHECK(t.monomial() == parse_monomial("THTH"));
    CHECK(t.blocks[0] == parse_monomial("H"));
    CHECK_THROWS_AS(decompose_alternating(parse_monomial("THTH")), InputError);
}

TEST_CASE("free_moment_prediction examples") {
    AlphaMarginal marg(mc(100'000));
    CHECK(free_moment_prediction(decompose_alternating(parse_monomial("WWTT")), marg.as_function()) ==
          doctest::Approx(1.0));
    CHECK(free_moment_prediction(decompose_alternating(parse_monomial("WTWT")), marg.as_function()) == 0.0);
    int calls = 0;
    const Marginal counting = [&](const Monomial&) {
        ++calls;
        return 7.0;
    };
    CHECK(free_moment_prediction(decompose_alternating(parse_monomial("WWWW")), counting) == 2.0);
    CHECK(calls == 0);
    CHECK(free_moment_prediction(decompose_alternating(parse_monomial("W1 W2 W1 W2")), counting) == 0.0);
    CHECK(free_moment_prediction(decompose_alternating(parse_monomial("W1 W2 W2 W1")), counting) == 1.0);
}

TEST_CASE("semicircle moments") {
    CHECK(semicircle_moment(3) == 0.0);
    for (int k = 0; k <= 8; ++k) {
        CHECK(semicircle_moment(k) == doctest::Approx(oracle::semicircle_moment_quadrature(k)).epsilon(1e-6));
    }
    CHECK(semicircle_moment(2) == 1.0);
    CHECK(semicircle_moment(4) == 2.0);
}

TEST_CASE("alpha of pure Wigner powers is Catalan") {
    for (int k = 1; k <= 3; ++k) {
        const Monomial q = parse_monomial(std::string(static_cast<std::size_t>(2 * k), 'W'));
        CHECK(std::abs(alpha(q, mc(100'000)).value - semicircle_moment(2 * k)) <= 0.03);
    }
}

TEST_CASE("freeness_report examples") {
    FreenessOptions opts;
    opts.limit_params = mc(200'000);
    const FreenessReport a = freeness_report(parse_monomial("WTWT"), 200, InputDistribution::Gaussian, 40, opts);
    CHECK(a.alpha.value == 0.0);
    CHECK(a.free_prediction == 0.0);
    REQUIRE(a.empirical.has_value());
    CHECK(std::abs(a.empirical->mean) <= 0.1);
    CHECK(a.free_within_tol);

    const FreenessReport b = freeness_report(parse_monomial("WWHH"), 0, InputDistribution::Gaussian, 0, opts);
    CHECK(b.alpha.value == doctest::Approx(1.0));
    CHECK(b.free_prediction == doctest::Approx(1.0));
    CHECK(!b.empirical.has_value());
    CHECK(b.free_within_tol);

    FreenessOptions toeplitz = opts;
    toeplitz.role = LinkKind::Toeplitz;
    const FreenessReport c = freeness_report(parse_monomial("THTH"), 0, InputDistribution::Gaussian, 0, toeplitz);
    CHECK(std::abs(c.deviation - 2.0 / 3.0) <= 0.02);
    CHECK(!c.free_within_tol);

    CHECK_THROWS_AS(freeness_report(parse_monomial("THTH"), 0, InputDistribution::Gaussian, 0, opts), InputError);
}

TEST_CASE("freeness identity for short mixed monomials") {
    AlphaMarginal marg(mc(200'000));
    for (char other : std::string("THRS")) {
        for (std::size_t len = 2; len <= 4; ++len) {
            for (const Monomial& q : mixed_words(other, len)) {
                const double lhs = alpha(q, mc(200'000)).value;
                const double rhs = free_moment_prediction(decompose_alternating(q), marg.as_function());
                CAPTURE(q.to_string());
                CHECK(std::abs(lhs - rhs) <= kFreenessTolerance);
            }
        }
    }
    for (const char* text : {"WWWWTT", "WTTWHH", "WRWRWW", "WSSWSS", "WTWTWT", "WHHWWW"}) {
        const Monomial q = parse_monomial(text);
        if (q.color_string().find_first_not_of('W') == std::string::npos) continue;
        std::set<char> kinds(q.color_string().begin(), q.color_string().end());
        if (kinds.size() != 2) continue;
        const double lhs = alpha(q, mc(200'000)).value;
        const double rhs = free_moment_prediction(decompose_alternating(q), marg.as_function());
        CAPTURE(text);
        CHECK(std::abs(lhs - rhs) <= kFreenessTolerance);
    }
}

TEST_CASE("broken Wigner strings have zero limit") {
    std::size_t broken = 0;
    for (char other : std::string("THRS")) {
        for (std::size_t len = 2; len <= 6; len += 2) {
            for (const Monomial& q : mixed_words(other, len)) {
                for (const ColoredWord& w : enumerate_pair_matched_words(q, true)) {
                    if (!has_broken_wigner_string(w)) continue;
                    ++broken;
                    const VolumeEstimate p = p_limit(w, mc(50'000));
                    CAPTURE(w.text());
                    CHECK(p.value <= 3.0 * p.std_error + 1e-12);
                }
            }
        }
    }
    CHECK(broken > 0);
    CHECK(has_broken_wigner_string(ColoredWord::from_text("abab", parse_monomial("WTWT"))));
    CHECK(!has_broken_wigner_string(ColoredWord::from_text("abba", parse_monomial("WTTW"))));
}

TEST_CASE("restricting Wigner matches to C2 costs o(n^{1+k})") {
    CountOptions c2;
    c2.wigner_c2_only = true;
    std::size_t checked = 0;
    for (char other : std::string("THRS")) {
        for (std::size_t len = 4; len <= 6; len += 2) {
            for (const Monomial& q : mixed_words(other, len)) {
                for (const ColoredWord& w : enumerate_pair_matched_words(q, true)) {
                    if (has_broken_wigner_string(w)) continue;
                    const double k = static_cast<double>(len) / 2.0;
                    double rel[2];
                    for (int s = 0; s < 2; ++s) {
                        const std::int64_t n = 6 << s;
                        const double full = static_cast<double>(count_circuits_exact(w, n));
                        const double part = static_cast<double>(count_circuits_exact(w, n, c2));
                        REQUIRE(part <= full);
                        rel[s] = (full - part) / std::pow(static_cast<double>(n), 1.0 + k);
                    }
                    CAPTURE(w.text());
                    if (rel[0] == 0.0) {
                        CHECK(rel[1] == 0.0);
                    } else {
                        CHECK(rel[1] < rel[0]);
                        ++checked;
                    }
                }
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("trace factorization gaps shrink") {
    const std::vector<std::int64_t> sizes{100, 200, 400};
    const auto check = [&](LinkKind kind, std::vector<int> powers, std::uint64_t seed) {
        const auto rows = trace_factorization_check(kind, powers, sizes, InputDistribution::Gaussian, 200, seed);
        REQUIRE(rows.size() == 3);
        CHECK(!rows[0].ratio.has_value());
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CAPTURE(i);
            CHECK(std::abs(rows[i].gap) < std::abs(rows[i - 1].gap));
            REQUIRE(rows[i].ratio.has_value());
        }
    };
    check(LinkKind::Toeplitz, {2, 2}, 11);
    check(LinkKind::Hankel, {2, 4}, 12);
    check(LinkKind::Wigner, {2, 2}, 13);
}

TEST_CASE("concentration of trace moments") {
    const std::vector<std::int64_t> sizes{64, 128, 256};
    for (const char* text : {"TT", "THTH", "WW"}) {
        const auto rep = concentration_check(parse_monomial(text), sizes, InputDistribution::Gaussian, 200, 21);
        REQUIRE(rep.rows.size() == 3);
        CAPTURE(text);
        for (std::size_t i = 1; i < rep.rows.size(); ++i) {
            CHECK(rep.rows[i].fourth_central < rep.rows[i - 1].fourth_central);
        }
        CHECK(rep.log_log_slope < 0.0);
    }
    CHECK_THROWS_AS(concentration_check(parse_monomial("TT"), sizes, InputDistribution::Gaussian, 49, 1), InputError);
}

TEST_CASE("normalized_power_traces") {
    DenseMatrix y(2, 2);
    y << 0, 1, 1, 0;
    const auto t = normalized_power_traces(y, 4);
    CHECK(t == std::vector<double>{0.0, 1.0, 0.0, 1.0});
}
