#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pmj/errors.hpp"
#include "pmj/golden.hpp"
#include "pmj/limits.hpp"

using namespace pmj;

namespace {

ColoredWord word(std::string_view q, std::string_view text) {
    return ColoredWord::from_text(text, parse_monomial(q));
}

LimitParams mc(std::uint64_t samples = 200'000) {
    LimitParams p;
    p.mc_samples = samples;
    return p;
}

LimitParams exact() {
    LimitParams p;
    p.method = LimitMethod::ExactCount;
    return p;
}

std::uint64_t brute(const ColoredWord& w, std::int64_t n) {
    return oracle::brute_force_circuits(w.monomial().color_string(), w.letters(), n);
}

/// Richardson value 2 f(2n) - f(n) from brute-force counts.
double brute_limit(const ColoredWord& w, std::int64_t n) {
    const double k = static_cast<double>(w.size() / 2);
    const double f1 = static_cast<double>(brute(w, n)) / std::pow(static_cast<double>(n), k + 1);
    const double f2 = static_cast<double>(brute(w, 2 * n)) / std::pow(static_cast<double>(2 * n), k + 1);
    return 2 * f2 - f1;
}

}  // namespace

TEST_CASE("AffineForm arithmetic is exact") {
    AffineForm a = AffineForm::unit(3, 0);
    AffineForm b = AffineForm::unit(3, 2);
    AffineForm c = a + b - 2 * b;
    c += 1;
    CHECK(c.coeffs == std::vector<std::int64_t>{1, 0, -1});
    CHECK(c.constant == 1);
    CHECK(c.to_string() == "s0 - s2 + 1");
    CHECK(a.is_coordinate());
    CHECK_FALSE(c.is_coordinate());
    CHECK(AffineForm::zero(2).is_constant());
    const double v[3] = {0.25, 0.5, 0.75};
    CHECK(c.evaluate(v) == doctest::Approx(0.5));
    CHECK((c - c) == AffineForm::zero(3));
}

TEST_CASE("build_cases sizes") {
    CHECK(build_cases(word("THTH", "abab")).size() == 2);
    CHECK(build_cases(word("RHRH", "abab")).size() == 3);
    CHECK(build_cases(word("HHSHHS", "aabccb")).size() == 6);
    CHECK(build_cases(word("WTTW", "abba")).size() == 4);
    CHECK(build_cases(word("SSRRTTWW", "aabbccdd")).size() == 6 * 3 * 2 * 2);
    for (const CaseLabel& l : build_cases(word("TSTS", "abab"))) CHECK(l.cases.size() == 2);
    CHECK_THROWS_AS(build_cases(word("TTT", "aaa")), InputError);
}

TEST_CASE("resolve_affine: a single match closes for exactly one case") {
    // aa: v2 must reduce to v0, which picks the reflecting case of each kind
    const std::vector<std::pair<LinkKind, int>> expected = {
        {LinkKind::Toeplitz, -1}, {LinkKind::Hankel, 0}, {LinkKind::ReverseCirculant, 0},
        {LinkKind::SymmetricCirculant, 2}, {LinkKind::Wigner, 2}};
    for (const auto& [k, label] : expected) {
        const ColoredWord w(std::vector<int>{0, 0}, Monomial({Letter{k, 1}, Letter{k, 1}}));
        int surviving = 0;
        for (const CaseLabel& l : build_cases(w)) {
            const ConstraintSystem cs = resolve_affine(w, l);
            CHECK(cs.dims() == 2);
            CHECK(cs.dependent.empty());
            if (cs.identities_hold()) {
                ++surviving;
                CHECK(l.cases[0] == label);
            }
        }
        CHECK(surviving == 1);
        CHECK(p_limit(w, mc(1000)).value == 1.0);
    }
}

TEST_CASE("resolve_affine: Toeplitz abab closes only for the sign pattern (-1,-1)") {
    // v3 = v2 - l1 (v0 - v1), v4 = v3 - l2 (v1 - v2); v4 == v0 forces l1 = l2 = -1
    const ColoredWord w = word("TTTT", "abab");
    int surviving = 0;
    for (const CaseLabel& l : build_cases(w)) {
        const ConstraintSystem cs = resolve_affine(w, l);
        CHECK(cs.generating == std::vector<std::size_t>{0, 1, 2});
        if (cs.identities_hold()) {
            ++surviving;
            CHECK(l.cases == std::vector<int>{-1, -1});
            CHECK(cs.vertex_forms[3].to_string() == "s0 - s1 + s2");
        }
    }
    CHECK(surviving == 1);
    // brute-force circuits agree with the surviving volume 2/3
    CHECK(brute_limit(w, 24) == doctest::Approx(2.0 / 3.0).epsilon(0.02));
    CHECK(p_limit(w, mc()).value == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("resolve_affine: WTWT has no surviving case and vanishes in the limit") {
    const ColoredWord w = word("WTWT", "abab");
    for (const CaseLabel& l : build_cases(w)) {
        const ConstraintSystem cs = resolve_affine(w, l);
        CHECK(cs.equalities.size() == 1);
        CHECK_FALSE(cs.identities_hold());
        CHECK(case_volume_mc(cs, 10, 1).value == 0.0);
    }
    const double f50 = static_cast<double>(count_circuits_exact(w, 50)) / std::pow(50.0, 3);
    const double f100 = static_cast<double>(count_circuits_exact(w, 100)) / std::pow(100.0, 3);
    CHECK(f100 < 0.6 * f50);
    CHECK(f100 < 0.05);
    CHECK(p_limit(w, mc()).value == 0.0);
}

TEST_CASE("case_volume_mc") {
    const ColoredWord aabb = word("TTHH", "aabb");
    for (const CaseLabel& l : build_cases(aabb)) {
        const ConstraintSystem cs = resolve_affine(aabb, l);
        const VolumeEstimate v = case_volume_mc(cs, 100, 7);
        if (cs.identities_hold()) {
            CHECK(v.value == 1.0);
            CHECK(v.std_error == 0.0);
        } else {
            CHECK(v.value == 0.0);
        }
    }
    const ColoredWord thth = word("THTH", "abab");
    double sum = 0.0;
    double var = 0.0;
    for (const ConstraintSystem& cs : surviving_systems(thth)) {
        const VolumeEstimate v = case_volume_mc(cs, 400'000, 11);
        sum += v.value;
        var += v.std_error * v.std_error;
    }
    CHECK(std::abs(sum - 2.0 / 3.0) <= 3.0 * std::sqrt(var));
    CHECK_THROWS_AS(case_volume_mc(resolve_affine(thth, build_cases(thth)[0]), 0, 1), InputError);
}

TEST_CASE("case_volume_mc is deterministic in the seed") {
    const auto systems = surviving_systems(word("TTHTTH", "abcabc"));
    REQUIRE_FALSE(systems.empty());
    const VolumeEstimate a = case_volume_mc(systems[0], 150'000, 99);
    const VolumeEstimate b = case_volume_mc(systems[0], 150'000, 99);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("count_circuits_exact examples") {
    for (LinkKind k : kAllKinds) {
        const ColoredWord w(std::vector<int>{0, 0}, Monomial({Letter{k, 1}, Letter{k, 1}}));
        CHECK(count_circuits_exact(w, 7) == 49);
    }
    const ColoredWord thth = word("THTH", "abab");
    CHECK(count_circuits_exact(thth, 12) == brute(thth, 12));

    const ColoredWord aabb = word("TTHH", "aabb");
    CHECK(count_circuits_exact(aabb, 20) == brute(aabb, 20));
    const double e20 = static_cast<double>(count_circuits_exact(aabb, 20)) / std::pow(20.0, 3) - 1.0;
    const double e40 = static_cast<double>(count_circuits_exact(aabb, 40)) / std::pow(40.0, 3) - 1.0;
    CHECK(std::abs(e40) <= std::abs(e20));
    CHECK(std::abs(e40) * 40 <= std::abs(e20) * 20 * 1.1);  // O(1/n)
    CHECK(std::abs(e40) < 0.1);
}

TEST_CASE("count_circuits_exact matches brute force on length-6 words") {
    for (std::string_view q : {"TTHTTH", "HHRHHR", "SSSSHH", "WTWTWW", "RSRSRS"}) {
        for (const ColoredWord& w : enumerate_pair_matched_words(parse_monomial(q), true)) {
            for (std::int64_t n : {1, 3, 5}) {
                CAPTURE(q);
                CAPTURE(w.text());
                CAPTURE(n);
                REQUIRE(count_circuits_exact(w, n) == brute(w, n));
            }
        }
    }
}

TEST_CASE("work budget guard") {
    const ColoredWord w = word("TTTTTTTT", "abcdabcd");
    CountOptions tight;
    tight.work_budget = 1e6;
    CHECK_THROWS_AS(count_circuits_exact(w, 100, tight), BudgetExceeded);
    CHECK(exact_count_work(w, 10) == doctest::Approx(std::pow(10.0, 5) * 16));

    LimitParams p = exact();
    p.work_budget = 1e3;
    p.fallback_to_mc = false;
    CHECK_THROWS_AS(p_limit(word("THTH", "abab"), p), BudgetExceeded);
    p.fallback_to_mc = true;
    p.mc_samples = 50'000;
    const VolumeEstimate v = p_limit(word("THTH", "abab"), p);
    CHECK(v.method == LimitMethod::MonteCarlo);
    CHECK(v.value == doctest::Approx(2.0 / 3.0).epsilon(0.03));
}

TEST_CASE("p_limit examples, both methods") {
    struct Case {
        std::string_view q, w;
        double p;
    };
    for (const Case& c : {Case{"THTH", "abab", 2.0 / 3.0}, Case{"RHRH", "abab", 0.0}, Case{"RRHRRH", "abcabc", 2.0 / 3.0},
                          Case{"HHRHHR", "abcabc", 0.5}, Case{"SSSSHH", "ababcc", 1.0}}) {
        CAPTURE(c.q);
        CAPTURE(c.w);
        CHECK(std::abs(p_limit(word(c.q, c.w), mc()).value - c.p) <= 0.02);
        CHECK(std::abs(p_limit(word(c.q, c.w), exact()).value - c.p) <= 0.05);
    }
}

TEST_CASE("Catalan words have limit one") {
    for (std::string_view q : {"TTHH", "WWTT", "RSSR", "TTHTTH", "SSWWSS", "HRRHWW"}) {
        for (const ColoredWord& w : enumerate_pair_matched_words(parse_monomial(q), true)) {
            if (!is_catalan(w)) continue;
            CAPTURE(w.text());
            CHECK(p_limit(w, mc(20'000)).value == doctest::Approx(1.0).epsilon(0.01));
        }
    }
}

TEST_CASE("Catalan floor on exact counts") {
    for (std::string_view q : {"TTHH", "THHT", "WWRR", "SSHSSH", "TWWTHH"}) {
        for (const ColoredWord& w : enumerate_pair_matched_words(parse_monomial(q), true)) {
            if (!is_catalan(w)) continue;
            const std::size_t k = w.size() / 2;
            for (std::int64_t n : {3, 8, 13}) {
                const auto floor = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), static_cast<double>(k + 1)));
                CHECK(count_circuits_exact(w, n) >= floor);
            }
        }
    }
}

TEST_CASE("alpha examples") {
    CHECK(alpha(parse_monomial("THTH"), mc()).value == doctest::Approx(2.0 / 3.0).epsilon(0.02));
    CHECK(alpha(parse_monomial("TTT"), mc()).value == 0.0);
    CHECK(alpha(parse_monomial("T1 T1 T2 T2"), mc()).value == 1.0);
    CHECK(alpha(parse_monomial("T1 T2 T1 T2"), mc()).value == doctest::Approx(2.0 / 3.0).epsilon(0.02));
    CHECK(alpha(parse_monomial("WWWW"), mc()).value == doctest::Approx(2.0).epsilon(0.005));

    // Oracle: the only index-respecting words, limits from brute-force counts.
    CHECK(brute_limit(word("TTTT", "aabb"), 20) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(brute_limit(word("TTTT", "abab"), 20) == doctest::Approx(2.0 / 3.0).epsilon(0.02));
    CHECK(std::abs(brute_limit(word("WWWW", "abab"), 20)) < 0.02);
}

TEST_CASE("alpha_bound") {
    CHECK(alpha_bound(parse_monomial("THTH")) == 12.0);
    CHECK(alpha_bound(parse_monomial("WHWH")) == 3.0);
    CHECK(alpha_bound(parse_monomial("THT")) == 0.0);
    CHECK(alpha_bound(parse_monomial("T1 T2")) == 0.0);
    CHECK(alpha_bound(parse_monomial("TTTTTT")) == 15.0 * 8.0);
}

TEST_CASE("alpha stays under its bound for short two-kind monomials") {
    const std::string kinds = "WTHRS";
    for (char x : kinds) {
        for (char y : kinds) {
            if (y <= x) continue;
            for (int mask = 0; mask < 16; ++mask) {
                std::string q;
                for (int i = 0; i < 4; ++i) q += (mask >> i) & 1 ? y : x;
                const Monomial m = parse_monomial(q);
                const VolumeEstimate a = alpha(m, mc(20'000));
                CAPTURE(q);
                CHECK(a.value <= alpha_bound(m) + 0.02);
                CHECK(a.value >= 0.0);
            }
        }
    }
}

TEST_CASE("MC and exact extrapolation agree on the table words") {
    for (const GoldenRow& row : golden_rows()) {
        const ColoredWord w = word(row.monomial, row.word);
        const VolumeEstimate a = p_limit(w, mc());
        const VolumeEstimate b = p_limit(w, exact());
        CAPTURE(row.monomial);
        CAPTURE(row.word);
        CHECK(std::abs(a.value - b.value) <= 3.0 * (a.std_error + b.std_error) + 1e-9);
        const double cap = std::pow(2.0, static_cast<double>(w.size() / 2));
        CHECK(a.value >= 0.0);
        CHECK(a.value <= cap);
    }
}

TEST_CASE("limits are invariant under rotation") {
    for (std::size_t i = 0; i < 14; ++i) {
        const GoldenRow& row = golden_rows()[i];
        const ColoredWord w = word(row.monomial, row.word);
        const VolumeEstimate base = p_limit(w, mc(100'000));
        for (std::size_t s = 1; s < w.size(); ++s) {
            const VolumeEstimate r = p_limit(cyclic_rotate(w, s), mc(100'000));
            CAPTURE(row.monomial);
            CAPTURE(row.word);
            CAPTURE(s);
            CHECK(std::abs(r.value - base.value) <= 3.0 * (r.std_error + base.std_error) + 1e-9);
        }
    }
}

TEST_CASE("indices enter only through the word set") {
    // p of an indexed word equals p of its index-free image
    const Monomial q = parse_monomial("T1 H1 T2 H1 T2 T1");
    for (const ColoredWord& w : enumerate_pair_matched_words(q, true)) {
        CHECK(count_circuits_exact(w, 6) == count_circuits_exact(drop_indices(w), 6));
    }
}
