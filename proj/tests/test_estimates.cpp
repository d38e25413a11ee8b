#include <catch2/catch_amalgamated.hpp>

#include <weilforge/estimates.hpp>

using namespace weilforge;
using E = WeilElementQ;

TEST_CASE("catalan recurrence") {
    SeriesTable t;
    REQUIRE(t.catalan(0) == 0);
    REQUIRE(t.catalan(1) == 1);
    REQUIRE(t.catalan(2) == 1);
    REQUIRE(t.catalan(3) == 2);
    REQUIRE(t.catalan(4) == 5);
    REQUIRE(t.catalan(8) == 429);
}

TEST_CASE("b, c, b^m tables") {
    SeriesTable t;
    REQUIRE(t.b(1, 7) == 1);
    REQUIRE(t.b(2, 0) == Rational(1, 2));
    REQUIRE(t.b(2, 1) == Rational(3, 2));
    REQUIRE(t.b(0, 3) == 0);
    REQUIRE(t.b(3, -1) == 0);
    REQUIRE(t.c(1, 5) == 1);
    REQUIRE(t.c(2, 0) == 1);
    REQUIRE(t.bm(2, 1, 4) == 1);
    REQUIRE(t.bm(2, 2, 0) == 1);
    // all values nonnegative on a block
    for (long k = 1; k <= 8; ++k)
        for (long n = 0; n <= 8; ++n) {
            REQUIRE(t.b(k, n) >= 0);
            REQUIRE(t.c(k, n) >= 0);
            REQUIRE(t.bm(2, k, n) >= 0);
        }
}

TEST_CASE("g-recurrence identity on truncated series") {
    // g_k = (1/2k) sum_p (2 + z d/dz)(g_p g_{k-p}) termwise through order 12
    SeriesTable t;
    for (long k = 2; k <= 6; ++k)
        for (long n = 0; n <= 12; ++n) {
            Rational lhs = t.b(k, n);
            Rational rhs;
            for (long p = 1; p <= k - 1; ++p) {
                // coefficient of z^n in (2 + z d/dz)(g_p g_{k-p})
                Rational conv;
                for (long q = 0; q <= n; ++q) conv += t.b(p, q) * t.b(k - p, n - q);
                rhs += Rational(2 + n, 2 * k) * conv;
            }
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("generating bounds hold termwise") {
    SeriesTable t;
    auto rep = check_generating_bounds(t, 12, 12, 2);
    REQUIRE(rep.majorant_ok);
    REQUIRE(rep.bm_ok);
    REQUIRE(rep.smallest_C > 0);
    // spot values from the majorant: b(3,3) <= a_3 binom(7,4) = 70
    REQUIRE(t.b(3, 3) <= Rational(70));
    REQUIRE(binomial(7, 4) == 35);
}

namespace {
struct Bundle {
    MetricJet<RatC> metric;
    ConnectionSolution<RatC> sol;
    PolarizationSolution<RatC> pol;
};
Bundle fs_bundle(int order) {
    auto m = builtin_example<RatC>("fubini-study", 1, order);
    auto sol = solve_connection(levi_civita(m), order);
    auto pol = solve_polarization(sol, m, order);
    return {m, sol, pol};
}
}  // namespace

TEST_CASE("norm tables and total.ne.total") {
    auto b = fs_bundle(4);
    auto t = measure_norms(b.sol, &b.pol, 2);
    REQUIRE(t.total_ne_total_ok);
    // FS at order 0 has vanishing Christoffels, so D_{1,1} vanishes on V3
    // and the first curvature data sits at D_{1,2}: ||D_{1,2}||_{1,1} = 2
    auto it = t.plain.find({1, 2, 1, 1});
    REQUIRE(it != t.plain.end());
    REQUIRE(it->second == Catch::Approx(2.0));
    // flat input: all D_{k,n} with k >= 2 vanish
    auto mf = builtin_example<RatC>("flat", 1, 4);
    auto solf = solve_connection(levi_civita(mf), 4);
    auto tf = measure_norms<RatC>(solf, nullptr, 1);
    for (const auto& [key, v] : tf.plain) {
        auto [k, nn, p, q] = key;
        if (k >= 2) REQUIRE(v == 0.0);
    }
}

TEST_CASE("fitted constants and bound verification") {
    auto b = fs_bundle(5);
    auto t = measure_norms(b.sol, &b.pol, 2);
    auto f = fit_constants(b.sol, t, &b.pol);
    REQUIRE(f.K >= 1.0);
    REQUIRE(f.K1 > 3 * f.K);
    REQUIRE(f.C0 >= 1.0);
    SeriesTable s;
    auto rep = verify_bounds(t, f, s);
    REQUIRE(rep.all_ok);
    // halving K must produce violations somewhere
    auto f2 = f;
    f2.K /= 2;
    f2.C0 = 1.0;
    auto rep2 = verify_bounds(t, f2, s);
    REQUIRE(!rep2.all_ok);
}

TEST_CASE("sigma_tot norm constant") {
    // in the orthonormal-monomial normalization the degree-2 generator
    // piece gives exactly sqrt(2) in one variable
    REQUIRE(fit_K<RatC>(1) == Catch::Approx(std::sqrt(2.0)));
    double k2 = fit_K<RatC>(2);
    REQUIRE(k2 >= std::sqrt(2.0) - 1e-12);
    REQUIRE(k2 <= 2.0 + 1e-12);
}

TEST_CASE("radius estimates") {
    auto mf = builtin_example<RatC>("flat", 1, 4);
    auto solf = solve_connection(levi_civita(mf), 4);
    auto tf = measure_norms<RatC>(solf, nullptr, 1);
    auto ff = fit_constants(solf, tf);
    auto rf = estimate_radius(solf, ff);
    REQUIRE(std::isinf(rf.empirical));

    auto b = fs_bundle(5);
    auto t = measure_norms(b.sol, &b.pol, 2);
    auto f = fit_constants(b.sol, t, &b.pol);
    auto r = estimate_radius(b.sol, f);
    REQUIRE(r.empirical > 0);
    REQUIRE(std::isfinite(r.empirical));
    REQUIRE(r.empirical >= r.theoretical);
    REQUIRE(theoretical_radius(1, 1) == Catch::Approx(1.0 / 108.0));

    // monotonicity of the finite-order proxy: the sup over n can only grow
    double sup = 0;
    for (size_t i = 0; i < r.theta_norms.size(); ++i) {
        double v = r.theta_norms[i];
        if (v > 0) sup = std::max(sup, std::pow(v, 1.0 / (i + 1)));
        // radius proxy from the prefix is non-increasing
        if (sup > 0) REQUIRE(1.0 / sup <= (i == 0 ? INFINITY : 1.0 / (sup - 1e-15)));
    }

    REQUIRE_THROWS_AS(estimate_radius(solve_connection(levi_civita(mf), 2), ff),
                      std::invalid_argument);
}

TEST_CASE("geometric envelopes across k") {
    auto b = fs_bundle(5);
    auto t = measure_norms(b.sol, &b.pol, 1);
    auto f = fit_constants(b.sol, t, &b.pol);
    for (const auto& [key, v] : t.plain) {
        auto [k, nn, p, q] = key;
        if (p == 1 && q == 1 && nn >= 1) REQUIRE(v < std::pow(f.C1, nn));
    }
    for (const auto& [key, v] : t.omega) {
        auto [k, nn] = key;
        if (nn >= 1) REQUIRE(v < std::pow(f.C3, nn));
    }
}
