#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "roadnet/rng.hpp"
#include "roadnet/stats.hpp"

using namespace roadnet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("regularized incomplete beta against reference values") {
    // I_0.8(5,2) = 0.65536 exactly; the others are pinned from SciPy's betainc
    CHECK_THAT(ibeta(5, 2, 0.8), WithinRel(0.65536, 1e-12));
    CHECK_THAT(ibeta(0.5, 0.5, 0.3), WithinRel(0.369010119565545, 1e-10));
    CHECK_THAT(ibeta(20, 30, 0.4), WithinRel(0.507700199657648, 1e-10));
    CHECK(ibeta(2, 3, 0.0) == 0.0);
    CHECK(ibeta(2, 3, 1.0) == 1.0);
}

TEST_CASE("t and F tail probabilities against reference values") {
    CHECK_THAT(t_two_tailed_p(2.5, 10), WithinRel(0.0314468442366088, 1e-10));
    CHECK_THAT(t_two_tailed_p(-2.5, 10), WithinRel(0.0314468442366088, 1e-10));
    CHECK_THAT(t_two_tailed_p(0.7, 3), WithinRel(0.534326998304764, 1e-10));
    CHECK(t_two_tailed_p(0.0, 7) == 1.0);  // CDF_t(0) = 0.5
    CHECK_THAT(f_upper_tail_p(3.2, 4, 17), WithinRel(0.0394025703646655, 1e-10));
    CHECK_THAT(f_upper_tail_p(0.5, 2, 8), WithinRel(0.624295076969974, 1e-10));
}

TEST_CASE("anova: identical groups give F = 0 and p = 1") {
    const std::vector<std::vector<double>> groups = {{1, 2, 3}, {1, 2, 3}};
    const auto r = one_way_anova(groups);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK_FALSE(r.degenerate);  // within-variance is nonzero, so not a degenerate case
}

TEST_CASE("anova: all groups constant and equal is the degenerate case") {
    const std::vector<std::vector<double>> groups = {{2, 2, 2}, {2, 2, 2}};
    const auto r = one_way_anova(groups);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.degenerate);
}

TEST_CASE("anova: constant groups with different means have F = inf, p = 0") {
    const std::vector<std::vector<double>> groups = {{1, 1, 1}, {2, 2, 2}};
    const auto r = one_way_anova(groups);
    CHECK(std::isinf(r.statistic));
    CHECK(r.p_value == 0.0);
    CHECK(r.degenerate);
}

TEST_CASE("anova: two-group F equals the square of the unpaired t statistic") {
    Rng rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a, b;
        const std::size_t na = 3 + rng.below(20), nb = 3 + rng.below(20);
        for (std::size_t i = 0; i < na; ++i) a.push_back(rng.unit() * 10);
        for (std::size_t i = 0; i < nb; ++i) b.push_back(rng.unit() * 10 + 1);
        const std::vector<std::vector<double>> groups = {a, b};
        const auto r = one_way_anova(groups);

        // unpaired (pooled-variance) t statistic computed directly
        auto mean = [](const std::vector<double>& v) {
            double s = 0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        const double ma = mean(a), mb = mean(b);
        double ssa = 0, ssb = 0;
        for (double x : a) ssa += (x - ma) * (x - ma);
        for (double x : b) ssb += (x - mb) * (x - mb);
        const double sp2 = (ssa + ssb) / static_cast<double>(na + nb - 2);
        const double t = (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
        CHECK_THAT(r.statistic, WithinRel(t * t, 1e-9));
    }
}

TEST_CASE("anova: separated groups with tiny jitter give a vanishing p") {
    const std::vector<std::vector<double>> groups = {
        {1e-6, -1e-6, 2e-6, -2e-6}, {10.0 - 1e-6, 10.0 + 1e-6, 10.0 - 2e-6, 10.0 + 2e-6}};
    const auto r = one_way_anova(groups);
    CHECK_FALSE(r.degenerate);
    CHECK(r.p_value < 1e-10);
}

TEST_CASE("paired t-test degenerate conventions") {
    const std::vector<double> a = {1, 2, 3, 4};
    SECTION("equal samples: t = 0, p = 1, flagged") {
        const auto r = paired_t_test(a, a);
        CHECK(r.statistic == 0.0);
        CHECK(r.p_value == 1.0);
        CHECK(r.degenerate);
    }
    SECTION("constant nonzero differences: t = +-inf, p = 0, flagged") {
        std::vector<double> b = {0, 1, 2, 3};
        const auto r = paired_t_test(a, b);
        CHECK(std::isinf(r.statistic));
        CHECK(r.statistic > 0);
        CHECK(r.p_value == 0.0);
        CHECK(r.degenerate);
    }
}

TEST_CASE("paired t-test pinned oracle case") {
    // reference values from SciPy's ttest_rel
    const std::vector<double> a = {2.1, 3.4, 1.9, 4.0, 2.8};
    const std::vector<double> b = {1.61, 2.88, 1.43, 3.49, 2.32};
    const auto r = paired_t_test(a, b);
    CHECK_THAT(r.statistic, WithinRel(53.2693899624986, 1e-9));
    CHECK_THAT(r.p_value, WithinRel(7.4339686088131e-07, 1e-6));
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("symmetric differences produce p near 1") {
    const std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> b = {1.5, 1.5, 3.5, 3.5};  // differences -0.5, 0.5, -0.5, 0.5
    const auto r = paired_t_test(a, b);
    CHECK(r.statistic == 0.0);
    CHECK_THAT(r.p_value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("wilcoxon: all-equal samples are degenerate") {
    const std::vector<double> a = {1, 2, 3};
    const auto r = wilcoxon_signed_rank(a, a);
    CHECK(r.p_value == 1.0);
    CHECK(r.degenerate);
}

TEST_CASE("wilcoxon exact: five all-positive differences give p = 2/32") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {0, 0, 0, 0, 0};
    const auto r = wilcoxon_signed_rank(a, b);
    CHECK(r.statistic == 0.0);  // W- = 0
    CHECK(r.p_value == 0.0625);
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("wilcoxon exact DP matches direct sign enumeration with ties") {
    Rng rng(77);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 3 + rng.below(9);
        std::vector<double> a(n), b(n, 0.0);
        for (auto& v : a) {
            // coarse grid forces plenty of |d| ties
            v = (1.0 + static_cast<double>(rng.below(4))) * (rng.chance(0.5) ? 1 : -1);
        }
        const auto r = wilcoxon_signed_rank(a, b);

        // Independent oracle: enumerate all 2^n sign assignments of the
        // doubled midranks and count W+ <= observed.
        std::vector<double> absd(n);
        for (std::size_t i = 0; i < n; ++i) absd[i] = std::fabs(a[i]);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return absd[x] < absd[y]; });
        std::vector<double> rank(n);
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && absd[order[j + 1]] == absd[order[i]]) ++j;
            for (std::size_t p = i; p <= j; ++p)
                rank[order[p]] = static_cast<double>(i + j + 2) / 2.0;
            i = j + 1;
        }
        double w_plus = 0, w_total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            w_total += rank[i];
            if (a[i] > 0) w_plus += rank[i];
        }
        const double w_obs = std::min(w_plus, w_total - w_plus);
        std::size_t below = 0;
        for (std::size_t mask = 0; mask < (1ull << n); ++mask) {
            double w = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ull << i)) w += rank[i];
            if (w <= w_obs + 1e-12) ++below;
        }
        const double p_oracle =
            std::min(1.0, 2.0 * static_cast<double>(below) / std::pow(2.0, static_cast<double>(n)));
        CHECK_THAT(r.p_value, WithinAbs(p_oracle, 1e-12));
    }
}

TEST_CASE("wilcoxon pinned 100-sample oracle case") {
    // Deterministic data from the pinned counter-based PRNG; reference p from
    // SciPy's wilcoxon with the continuity-corrected normal approximation.
    std::vector<double> x(100), y(100);
    for (std::size_t i = 0; i < 100; ++i) {
        x[i] = unit_at(42, 2 * i);
        y[i] = unit_at(42, 2 * i + 1) * 0.9;
    }
    const auto r = wilcoxon_signed_rank(x, y);
    CHECK(r.statistic == 2160.0);
    CHECK_THAT(r.p_value, WithinAbs(0.210107678709992, 1e-3));
}

TEST_CASE("p-values stay within [0, 1] on random inputs") {
    Rng rng(31337);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 2 + rng.below(40);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.unit() * 100;
            b[i] = rng.unit() * 100;
        }
        const auto t = paired_t_test(a, b);
        const auto w = wilcoxon_signed_rank(a, b);
        CHECK(t.p_value >= 0.0);
        CHECK(t.p_value <= 1.0);
        CHECK(w.p_value >= 0.0);
        CHECK(w.p_value <= 1.0);
        if (n >= 2) {
            const std::vector<std::vector<double>> groups = {a, b};
            const auto f = one_way_anova(groups);
            CHECK(f.p_value >= 0.0);
            CHECK(f.p_value <= 1.0);
        }
    }
}
