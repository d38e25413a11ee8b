#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <weilforge/hodge_maps.hpp>
#include <weilforge/wk_basis.hpp>

using namespace weilforge;
using E = WeilElementQ;

TEST_CASE("W_k dual basis and gamma embeddings") {
    WkDualBasis w3(3);
    REQUIRE(w3.dimension() == 4);
    for (int p = 0; p <= 3; ++p) {
        auto u = w3.basis_element(p);
        REQUIRE(u.hodge() == HodgeBidegree{-p, p - 3});
        REQUIRE(wk_conj(u) == WkIndex{3, 3 - p});
    }
    REQUIRE_THROWS(w3.basis_element(4));

    REQUIRE(gamma_embed(GammaSide::Left, {0, 0}) == WkIndex{1, 1});
    REQUIRE(gamma_embed(GammaSide::Right, {0, 0}) == WkIndex{1, 0});
    REQUIRE_THROWS(gamma_embed(GammaSide::Left, {1, 2}));

    // can . (gamma_l x gamma_l) = gamma_l^2 . can on u_0^(1) x u_0^(1)
    WkIndex a{1, 0}, b{1, 0};
    WkIndex lhs = wk_can(gamma_embed(GammaSide::Left, a), gamma_embed(GammaSide::Left, b));
    WkIndex rhs = gamma_embed(GammaSide::Left, gamma_embed(GammaSide::Left, wk_can(a, b)));
    REQUIRE(lhs == rhs);
}

TEST_CASE("cap-cup exactness for all p,q <= 6") {
    for (int p = 0; p <= 6; ++p)
        for (int q = 0; q <= 6; ++q) {
            auto rep = verify_cap_cup(p, q);
            REQUIRE(rep.exact);
            REQUIRE(rep.sum_dim == p + q + 1);
            REQUIRE(rep.intersection_dim == 1);
        }
    REQUIRE(verify_cap_cup(1, 1).intersection_rep == 1);
    REQUIRE(verify_cap_cup(2, 2).intersection_rep == 2);
    REQUIRE(verify_cap_cup(0, 3).exact);
}

namespace {
// the canonical weakly Hodge map C restricted to S^1, as a basis-image map
WeaklyHodgeMap<RatC> c_on_s1(int n) {
    WeaklyHodgeMap<RatC> f;
    f.dim = n;
    f.source_weight = 0;
    f.target_weight = 1;
    for (int i = 1; i <= n; ++i) {
        f.set(Monomial::gen(n, {Kind::V3h, i}), E::generator(n, {Kind::V1h, i}));
        f.set(Monomial::gen(n, {Kind::V3a, i}), -E::generator(n, {Kind::V1a, i}));
    }
    return f;
}
}  // namespace

TEST_CASE("H-type components of C") {
    auto f = c_on_s1(1);
    REQUIRE(f.is_weakly_hodge());
    auto comps = f.h_type_components();
    REQUIRE(comps.size() == 2);
    // the (0,1) component is supported on S^{1,-1}, the (1,0) one on S^{-1,1}
    Monomial s = Monomial::gen(1, {Kind::V3h, 1});
    Monomial sb = Monomial::gen(1, {Kind::V3a, 1});
    for (auto& [deg, comp] : comps) {
        if (deg == HodgeBidegree{0, 1}) {
            REQUIRE(comp.images.at(s) == E::generator(1, {Kind::V1h, 1}));
            REQUIRE(comp.images.at(sb).is_zero());
        } else {
            REQUIRE(deg == HodgeBidegree{1, 0});
            REQUIRE(comp.images.at(s).is_zero());
            REQUIRE(comp.images.at(sb) == -E::generator(1, {Kind::V1a, 1}));
        }
    }
    // the components sum back to f
    for (auto& [m, img] : f.images) {
        E sum(1);
        for (auto& [deg, comp] : comps) sum += comp.images.at(m);
        REQUIRE(sum == img);
    }
    REQUIRE(f.is_real());
}

TEST_CASE("identity on a weight-0 space has a single (0,0) component") {
    WeaklyHodgeMap<RatC> id;
    id.dim = 1;
    id.source_weight = 0;
    id.target_weight = 0;
    Monomial s = Monomial::gen(1, {Kind::V3h, 1});
    id.set(s, E::monomial(s, RatC::one()));
    auto comps = id.h_type_components();
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0].first == HodgeBidegree{0, 0});
    // negative weight difference is rejected
    WeaklyHodgeMap<RatC> bad = id;
    bad.target_weight = -1;
    REQUIRE_THROWS_AS(bad.h_type_components(), std::domain_error);
}

TEST_CASE("totalization of C lands in the o part") {
    auto f = c_on_s1(1);
    E s = E::generator(1, {Kind::V3h, 1});
    E sb = E::generator(1, {Kind::V3a, 1});
    E ts = f.totalize(s);
    REQUIRE(ts.size() == 1);
    REQUIRE(ts.terms().begin()->first.u == 0);
    E tsb = f.totalize(sb);
    REQUIRE(tsb.size() == 1);
    REQUIRE(tsb.terms().begin()->first.u == 1);
    REQUIRE(tsb.terms().begin()->second == -RatC::one());
}

TEST_CASE("totalization is functorial on random weakly Hodge maps") {
    // random maps between S-parts of weights 0 -> w1 -> w1+w2, built from
    // monomial images with admissible Hodge shifts
    std::mt19937 rng(5);
    int n = 1;
    auto rand_coeff = [&]() {
        return RatC(Rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3));
    };
    for (int trial = 0; trial < 20; ++trial) {
        // f: S^1 (weight 0) -> B^1 (weight 1), g: B^1 -> B^2 by wedging dz/dzb
        WeaklyHodgeMap<RatC> f = c_on_s1(n);
        for (auto& [m, img] : f.images) img = img.scaled(rand_coeff());
        WeaklyHodgeMap<RatC> g;
        g.dim = n;
        g.source_weight = 1;
        g.target_weight = 2;
        E dz = E::generator(n, {Kind::V1h, 1}), dzb = E::generator(n, {Kind::V1a, 1});
        E s = E::generator(n, {Kind::V3h, 1}), sb = E::generator(n, {Kind::V3a, 1});
        for (auto& [m, img] : f.images) {
            for (auto& [tm, tc] : img.terms()) {
                E base = E::monomial(tm, RatC::one());
                // wedge with a real combination keeps weak Hodgeness
                g.set(tm, (s * dzb * base).scaled(rand_coeff()) +
                              (sb * dz * base).scaled(rand_coeff()));
            }
        }
        if (!g.is_weakly_hodge()) continue;
        auto gf = compose(g, f);
        E x = E::generator(n, {Kind::V3h, 1});
        REQUIRE(gf.totalize(x) == g.totalize(f.totalize(x)));
        E xb = E::generator(n, {Kind::V3a, 1});
        REQUIRE(gf.totalize(xb) == g.totalize(f.totalize(xb)));
    }
}
