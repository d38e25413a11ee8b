#include <catch2/catch_amalgamated.hpp>

#include <weilforge/connection.hpp>

using namespace weilforge;
using E = WeilElementQ;

namespace {
ConnectionSolution<RatC> solve_named(const char* name, int dim, int order) {
    auto m = builtin_example<RatC>(name, dim, order);
    return solve_connection(levi_civita(m), order);
}
}  // namespace

TEST_CASE("flat input solves to zero higher orders") {
    auto sol = solve_named("flat", 1, 4);
    for (int k = 2; k <= 4; ++k) {
        REQUIRE(sol.d_of_s[k][0].is_zero());
        REQUIRE(sol.d_of_sb[k][0].is_zero());
    }
    REQUIRE(flatness_certified_zero(sol));
    REQUIRE(linearity_residual(sol) == 0.0);
}

TEST_CASE("fubini-study order-0 D2 value") {
    auto sol = solve_named("fubini-study", 1, 4);
    // flatness + linearity force D2(s) = (2/3)(s^2 dzb + s sb dz) + higher
    E s = E::generator(1, {Kind::V3h, 1});
    E sb = E::generator(1, {Kind::V3a, 1});
    E dz = E::generator(1, {Kind::V1h, 1});
    E dzb = E::generator(1, {Kind::V1a, 1});
    E lead = sol.d_of_s[2][0].filter([](const Monomial& m) { return m.total_degree() == 3; });
    E expect = (s * s * dzb + s * sb * dz).scaled(RatC(Rational(2, 3)));
    REQUIRE(lead == expect);
}

TEST_CASE("solution invariants: reality, weak Hodgeness, iota parity, reduction") {
    for (const char* name : {"fubini-study", "poincare"}) {
        auto sol = solve_named(name, 1, 4);
        for (int k = 0; k <= sol.order; ++k) {
            E ds = sol.d_of_s[k][0];
            E dsb = sol.d_of_sb[k][0];
            // reality: D(conj s) = conj(D s) with conj(s) = -sb
            REQUIRE(dsb == -ds.conj());
            REQUIRE(weakly_hodge_image(ds, kind_hodge(Kind::V3h)));
            // iota parity D_k^iota = (-1)^{k+1} D_k (images in B^1)
            E it = ds.iota();
            REQUIRE(it == (k % 2 == 0 ? -ds : ds).scaled(RatC(Rational(-1))));
        }
        // reduction identity: the aug-degree-1 image returns Gamma bit-exactly
        auto d1 = connection_derivation_unchecked(sol.reduction);
        REQUIRE(sol.d_of_s[1][0] == d1.image({Kind::V3h, 1}).truncated(sol.order + 1));
    }
}

TEST_CASE("flatness and linearity certificates for FS and Poincare") {
    for (const char* name : {"fubini-study", "poincare"}) {
        auto sol = solve_named(name, 1, 5);
        REQUIRE(flatness_certified_zero(sol));
        REQUIRE(linearity_residual(sol) == 0.0);
        // truncation edge: nothing beyond the certified window is claimed
        for (const auto& e : flatness_residual(sol))
            if (!e.certified) REQUIRE(e.n >= sol.order + 1);
    }
}

TEST_CASE("hand-perturbed solutions break the certificates") {
    auto sol = solve_named("fubini-study", 1, 4);
    // a C-closed but sigma_tot-nonclosed perturbation of D2: s^2 dz is
    // weakly Hodge from s, C-closed (C(s^2 dz) = 2 s dz dz = 0 in dim 1)
    E s = E::generator(1, {Kind::V3h, 1});
    E dz = E::generator(1, {Kind::V1h, 1});
    auto pert = sol;
    pert.d_of_s[2][0] += s * s * dz;
    pert.d_of_sb[2][0] = -pert.d_of_s[2][0].conj();
    REQUIRE(linearity_residual(pert) > 0.0);
    // breaking D0 breaks linearity immediately
    auto bad0 = sol;
    bad0.d_of_s[0][0] = bad0.d_of_s[0][0].scaled(RatC(Rational(2)));
    REQUIRE(linearity_residual(bad0) > 0.0);
}

TEST_CASE("product metric block structure") {
    auto sol = solve_named("product", 2, 3);
    REQUIRE(flatness_certified_zero(sol));
    // the flat factor's generators stay flat
    for (int k = 2; k <= 3; ++k) {
        REQUIRE(sol.d_of_s[k][1].is_zero());
        REQUIRE(sol.d_of_sb[k][1].is_zero());
    }
    // and the FS factor's images never involve the flat factor's generators
    for (int k = 2; k <= 3; ++k)
        for (const auto& [m, c] : sol.d_of_s[k][0].terms()) {
            for (Kind kk : {Kind::V2h, Kind::V2a, Kind::V3h, Kind::V3a, Kind::V1h, Kind::V1a})
                REQUIRE(m.exp({kk, 2}) == 0);
        }
}

TEST_CASE("reduced square agrees with the Kahlerian detector") {
    auto fs = levi_civita(builtin_example<RatC>("fubini-study", 1, 4));
    REQUIRE(reduced_square(fs).zero);

    auto g2 = levi_civita(builtin_example<RatC>("fubini-study", 2, 3));
    auto tor = g2;
    tor.gamma10[0][0][1] += E::one(2);
    auto rt = reduced_square(tor);
    REQUIRE(!rt.zero);
    REQUIRE(rt.torsion_block > 0);

    auto r20 = g2;
    r20.gamma10[0][0][0] += E::generator(2, {Kind::V2h, 2});
    auto rr = reduced_square(r20);
    REQUIRE(!rr.zero);
    REQUIRE(rr.r20_block > 0);

    // an injected (0,1) part lands in the torsion block
    auto hol = fs;
    hol.gamma01[0][0][0] = E::one(1);
    auto rh = reduced_square(hol);
    REQUIRE(!rh.zero);
    REQUIRE(rh.torsion_block > 0);
}

TEST_CASE("brute force oracle agrees with the solver") {
    for (const char* name : {"flat", "fubini-study", "poincare"}) {
        auto gamma = levi_civita(builtin_example<RatC>(name, 1, 3));
        BruteForceInfo info;
        auto brute = brute_force_solve(gamma, 3, &info);
        auto fast = solve_connection(gamma, 3);
        for (int k = 0; k <= 3; ++k) {
            REQUIRE(brute.d_of_s[k][0] == fast.d_of_s[k][0]);
            REQUIRE(brute.d_of_sb[k][0] == fast.d_of_sb[k][0]);
        }
        for (int nullity : info.stage_nullity) REQUIRE(nullity == 0);
    }
}

TEST_CASE("poincare solution is the fs solution under the zb sign flip") {
    auto fs = solve_named("fubini-study", 1, 4);
    auto pc = solve_named("poincare", 1, 4);
    // the algebra automorphism zb -> -zb, sb -> -sb, dzb -> -dzb
    auto flip = [](const E& x) {
        E out(x.dim());
        for (const auto& [m, c] : x.terms()) {
            int neg = m.degree_of_kind(Kind::V2a) + m.degree_of_kind(Kind::V3a) +
                      m.degree_of_kind(Kind::V1a);
            out.add_term(m, (neg % 2) ? -c : c);
        }
        return out;
    };
    // D^P = flip . D^FS . flip, and flip(sb) = -sb
    for (int k = 0; k <= 4; ++k) {
        REQUIRE(pc.d_of_s[k][0] == flip(fs.d_of_s[k][0]));
        REQUIRE(pc.d_of_sb[k][0] == -flip(fs.d_of_sb[k][0]));
    }
}

TEST_CASE("D2 formula of the curvature map") {
    // D2 = (1/3) sigma . R with R = -(D1 . D1), exactly, for every
    // Kahlerian input in the example set
    auto sg = canonical_sigma<RatC>(1);
    for (const char* name : {"flat", "fubini-study", "poincare"}) {
        auto gamma = levi_civita(builtin_example<RatC>(name, 1, 4));
        auto sol = solve_connection(gamma, 4);
        auto R = curvature_split(gamma);
        int tcap = sol.order + 1;
        E lhs = sol.d_of_s[2][0];
        E rhs = sg.apply(R.r_of_s[0]).scaled(RatC(Rational(1, 3))).truncated(tcap);
        REQUIRE(lhs == rhs);
    }
    auto sg2 = canonical_sigma<RatC>(2);
    auto gamma2 = levi_civita(builtin_example<RatC>("product", 2, 4));
    auto sol2 = solve_connection(gamma2, 4);
    auto R2 = curvature_split(gamma2);
    for (int i = 0; i < 2; ++i)
        REQUIRE(sol2.d_of_s[2][i] ==
                sg2.apply(R2.r_of_s[i]).scaled(RatC(Rational(1, 3))).truncated(5));
}

TEST_CASE("solver rejects non-kahlerian input") {
    auto g2 = levi_civita(builtin_example<RatC>("fubini-study", 2, 3));
    g2.gamma10[0][0][1] += E::one(2);
    REQUIRE_THROWS_AS(solve_connection(g2, 3), std::domain_error);
}

TEST_CASE("theta series") {
    auto flat = solve_named("flat", 1, 4);
    auto th = hodge_connection_series(flat);
    for (int n = 1; n <= 4; ++n)
        for (const auto& e : th.theta[n]) REQUIRE(e.is_zero());

    auto fs = solve_named("fubini-study", 1, 4);
    auto thf = hodge_connection_series(fs);
    // Theta_1 carries exactly the order-0 Christoffel block, which vanishes
    // for Fubini-Study in this chart; Theta_2 picks up the -2 zb term
    REQUIRE(thf.theta[1][0] == fs.slice(1, 1, Kind::V3h, 1));
    REQUIRE(thf.theta[1][0].is_zero());
    REQUIRE(!thf.theta[2][0].is_zero());

    // a connection with a nonzero constant Christoffel exposes Theta_1
    ChristoffelJet<RatC> cj(1, 3);
    cj.gamma10[0][0][0] = E::one(1);
    auto solc = solve_connection(cj, 3);
    auto thc = hodge_connection_series(solc);
    E s = E::generator(1, {Kind::V3h, 1});
    E dz = E::generator(1, {Kind::V1h, 1});
    REQUIRE(thc.theta[1][0] == -(s * dz));
}
