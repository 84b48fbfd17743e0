#ifndef ROADNET_STATS_HPP
#define ROADNET_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "roadnet/errors.hpp"

namespace roadnet {

// Self-contained test statistics. The t and F tails reduce to the
// regularized incomplete beta function, evaluated by a modified-Lentz
// continued fraction to absolute tolerance 1e-12.

namespace detail {

inline double ibeta_cf(double a, double b, double x) {
    constexpr double kTol = 1e-12;
    constexpr double kTiny = 1e-300;
    constexpr int kMaxIter = 500;
    // Continued fraction 1/(1 + d1/(1 + d2/(1 + ...))) with the standard
    // even/odd coefficients.
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double result = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        // even step
        double coef = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + coef * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + coef / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        result *= d * c;
        // odd step
        coef = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + coef * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + coef / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        result *= delta;
        if (std::fabs(delta - 1.0) < kTol) break;
    }
    return result;
}

} // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double ibeta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ibeta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // The continued fraction converges fastest below the mean; use the
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other side.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::ibeta_cf(a, b, x) / a;
    return 1.0 - front * detail::ibeta_cf(b, a, 1.0 - x) / b;
}

/// Two-tailed p for a Student t statistic with df degrees of freedom.
inline double t_two_tailed_p(double t, double df) {
    if (std::isinf(t)) return 0.0;
    return ibeta(df / 2.0, 0.5, df / (df + t * t));
}

/// Upper-tail p for an F statistic with (d1, d2) degrees of freedom.
inline double f_upper_tail_p(double f, double d1, double d2) {
    if (std::isinf(f)) return 0.0;
    if (f <= 0.0) return 1.0;
    return ibeta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Statistic + p-value; `degenerate` marks the conventioned edge cases
/// (all-equal data, zero variance) rather than silently returning them.
struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool degenerate = false;
};

/// Classical one-way ANOVA: F = MS_between / MS_within.
inline TestResult one_way_anova(std::span<const std::vector<double>> groups) {
    if (groups.size() < 2) throw DomainError("one_way_anova: need at least 2 groups");
    std::size_t total_n = 0;
    double grand_sum = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw DomainError("one_way_anova: each group needs >= 2 values");
        total_n += g.size();
        grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
    }
    const double grand_mean = grand_sum / static_cast<double>(total_n);
    double ss_between = 0.0, ss_within = 0.0;
    for (const auto& g : groups) {
        const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
        ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
        for (double v : g) ss_within += (v - mean) * (v - mean);
    }
    const double df_between = static_cast<double>(groups.size() - 1);
    const double df_within = static_cast<double>(total_n - groups.size());
    if (ss_within == 0.0) {
        if (ss_between == 0.0) return {0.0, 1.0, true};
        return {std::numeric_limits<double>::infinity(), 0.0, true};
    }
    const double f = (ss_between / df_between) / (ss_within / df_within);
    return {f, f_upper_tail_p(f, df_between, df_within), false};
}

/// Paired two-tailed t-test on differences a - b.
inline TestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("paired_t_test: unequal lengths");
    const std::size_t n = a.size();
    if (n < 2) throw DomainError("paired_t_test: need >= 2 pairs");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    if (ss == 0.0) {
        if (mean == 0.0) return {0.0, 1.0, true};
        return {mean > 0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity(),
                0.0, true};
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
    return {t, t_two_tailed_p(t, static_cast<double>(n - 1)), false};
}

namespace detail {

// Midranks of |d|, doubled so ties (.5 ranks) stay integral for the exact
// null distribution.
inline std::vector<std::uint32_t> doubled_midranks(const std::vector<double>& absd) {
    const std::size_t n = absd.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return absd[i] < absd[j]; });
    std::vector<std::uint32_t> rank2(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && absd[order[j + 1]] == absd[order[i]]) ++j;
        // midrank of positions i..j (1-based) is (i + j + 2) / 2; doubled: i + j + 2
        const auto doubled = static_cast<std::uint32_t>(i + j + 2);
        for (std::size_t p = i; p <= j; ++p) rank2[order[p]] = doubled;
        i = j + 1;
    }
    return rank2;
}

// P(W2+ <= w2) under the exact signed-rank null: subset-sum counting DP over
// the observed doubled ranks.
inline double exact_signed_rank_cdf(const std::vector<std::uint32_t>& rank2, std::uint64_t w2) {
    std::uint64_t total = 0;
    for (auto r : rank2) total += r;
    std::vector<double> count(total + 1, 0.0);
    count[0] = 1.0;
    for (auto r : rank2)
        for (std::uint64_t s = total; s >= r; --s) count[s] += count[s - r];
    double below = 0.0;
    for (std::uint64_t s = 0; s <= std::min<std::uint64_t>(w2, total); ++s) below += count[s];
    return below / std::pow(2.0, static_cast<double>(rank2.size()));
}

} // namespace detail

/// Wilcoxon signed-rank test, two-tailed. Zero differences are dropped;
/// |d| ties get midranks; W = min(W+, W-). Exact null distribution for
/// n <= 25, otherwise normal approximation with continuity and tie
/// corrections.
inline TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("wilcoxon_signed_rank: unequal lengths");
    std::vector<double> d;
    d.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    if (d.empty()) return {0.0, 1.0, true};

    const std::size_t n = d.size();
    std::vector<double> absd(n);
    for (std::size_t i = 0; i < n; ++i) absd[i] = std::fabs(d[i]);
    const auto rank2 = detail::doubled_midranks(absd);

    std::uint64_t w2_plus = 0, w2_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        w2_total += rank2[i];
        if (d[i] > 0) w2_plus += rank2[i];
    }
    const std::uint64_t w2_minus = w2_total - w2_plus;
    const std::uint64_t w2 = std::min(w2_plus, w2_minus);
    const double w = static_cast<double>(w2) / 2.0;

    if (n <= 25) {
        const double p = std::min(1.0, 2.0 * detail::exact_signed_rank_cdf(rank2, w2));
        return {w, p, false};
    }

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double tie_term = 0.0;
    {
        std::vector<std::uint32_t> sorted(rank2.begin(), rank2.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    const double z = (static_cast<double>(w) - mean + 0.5) / std::sqrt(var);
    const double p = std::min(1.0, 2.0 * normal_cdf(z));
    return {w, p, false};
}

} // namespace roadnet

#endif // ROADNET_STATS_HPP
