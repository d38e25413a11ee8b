// Order-by-order solver for the unique flat linear extended connection
// with a given Kahlerian reduction, plus its certification operations:
// flatness and linearity residuals, the reduced-algebra square, the
// brute-force oracle and the Taylor-coefficient series of the solution.
//
// Stage k >= 2 of the recursion:
//   R_k(s) = sum_{p=1}^{k-1} D_p^tot(D_{k-p}^tot(s)),   C(R_k(s)) = 0,
//   D_k(s) = -h^{-1}(sigma_tot(R_k(s))),
// followed by the exact checks C(D_k(s)) = -R_k(s) and sigma_tot(D_k(s)) = 0.
// Solutions are stored undressed (projection u_p -> 1); the totalization is
// recovered canonically when composing.
#pragma once

#include <string>
#include <vector>

#include "jets.hpp"
#include "total_weil.hpp"

namespace weilforge {

template <class K>
struct ConnectionSolution {
    int dim = 0;
    int order = 0;  // aug orders 0..order; total degree kept through order+1
    ChristoffelJet<K> reduction;
    std::vector<std::vector<WeilElement<K>>> d_of_s;   // [k][i]
    std::vector<std::vector<WeilElement<K>>> d_of_sb;  // [k][i]

    const WeilElement<K>& image(int k, Kind kind, int i) const {
        return kind == Kind::V3h ? d_of_s[k][i - 1] : d_of_sb[k][i - 1];
    }

    // The aug-degree-k piece as a plain derivation (z -> dz sits in k = 1).
    Derivation<K> derivation(int k) const {
        Derivation<K> d(dim, Parity::Odd);
        for (int kk = 0; kk < kKindCount; ++kk) d.set_zero_on(static_cast<Kind>(kk));
        if (k == 1)
            for (int i = 1; i <= dim; ++i) {
                d.set_image({Kind::V2h, i}, WeilElement<K>::generator(dim, {Kind::V1h, i}));
                d.set_image({Kind::V2a, i}, WeilElement<K>::generator(dim, {Kind::V1a, i}));
            }
        for (int i = 1; i <= dim; ++i) {
            d.set_image({Kind::V3h, i}, d_of_s[k][i - 1]);
            d.set_image({Kind::V3a, i}, d_of_sb[k][i - 1]);
        }
        return d;
    }

    Derivation<K> full_derivation() const {
        Derivation<K> d(dim, Parity::Odd);
        for (int kk = 0; kk < kKindCount; ++kk) d.set_zero_on(static_cast<Kind>(kk));
        for (int i = 1; i <= dim; ++i) {
            d.set_image({Kind::V2h, i}, WeilElement<K>::generator(dim, {Kind::V1h, i}));
            d.set_image({Kind::V2a, i}, WeilElement<K>::generator(dim, {Kind::V1a, i}));
            WeilElement<K> is(dim), isb(dim);
            for (int k = 0; k <= order; ++k) {
                is += d_of_s[k][i - 1];
                isb += d_of_sb[k][i - 1];
            }
            d.set_image({Kind::V3h, i}, is);
            d.set_image({Kind::V3a, i}, isb);
        }
        return d;
    }

    // total-degree-raise-n slice of D_k on a V3 generator
    WeilElement<K> slice(int k, int n, Kind kind, int i) const {
        return image(k, kind, i).filter(
            [&](const Monomial& m) { return m.total_degree() == n + 1; });
    }
};

// projection P: u_p -> 1
template <class K>
WeilElement<K> undress(const WeilElement<K>& x) {
    WeilElement<K> out(x.dim());
    for (const auto& [m, c] : x.terms()) {
        Monomial b = m;
        b.u = -1;
        out.add_term(b, c);
    }
    return out;
}

template <class K>
bool element_is_real(const WeilElement<K>& x) {
    return x.conj() == x;
}

// weakly Hodge audit: every term of D(s) shifts the Hodge type of its
// source by (1,0) or (0,1)
template <class K>
bool weakly_hodge_image(const WeilElement<K>& img, HodgeBidegree src) {
    for (const auto& [m, c] : img.terms()) {
        HodgeBidegree sh = m.hodge() - src;
        // undressed images: the plain type shift of a weight-1 map ranges
        // over (1,0) and (0,1)
        if (!(sh == HodgeBidegree{1, 0} || sh == HodgeBidegree{0, 1})) return false;
    }
    return true;
}

template <class K>
ConnectionSolution<K> solve_connection(const ChristoffelJet<K>& gamma, int order) {
    if (order < 2) throw std::invalid_argument("solve needs order >= 2");
    {
        auto rep = verify_kahlerian(gamma);
        if (!rep.pass) throw std::domain_error("non-Kahlerian input: " + rep.first_failure);
    }
    int n = gamma.dim;
    int tcap = order + 1;  // value-side total degree cap
    ConnectionSolution<K> sol;
    sol.dim = n;
    sol.order = order;
    sol.reduction = gamma;
    sol.d_of_s.assign(order + 1, std::vector<WeilElement<K>>(n, WeilElement<K>::zero(n)));
    sol.d_of_sb = sol.d_of_s;

    auto C = canonical_C<K>(n);
    for (int i = 1; i <= n; ++i) {
        sol.d_of_s[0][i - 1] = C.image({Kind::V3h, i});
        sol.d_of_sb[0][i - 1] = C.image({Kind::V3a, i});
    }
    auto d1 = connection_derivation_unchecked(gamma);
    for (int i = 1; i <= n; ++i) {
        sol.d_of_s[1][i - 1] = d1.image({Kind::V3h, i}).truncated(tcap);
        sol.d_of_sb[1][i - 1] = d1.image({Kind::V3a, i}).truncated(tcap);
    }

    std::vector<Derivation<K>> ops;
    ops.push_back(sol.derivation(0));
    ops.push_back(sol.derivation(1));

    for (int k = 2; k <= order; ++k) {
        for (Kind kind : {Kind::V3h, Kind::V3a}) {
            for (int i = 1; i <= n; ++i) {
                WeilElement<K> s = WeilElement<K>::generator(n, {kind, i});
                WeilElement<K> rk(n);
                for (int p = 1; p <= k - 1; ++p)
                    rk += ops[p].apply_tot(ops[k - p].apply_tot(s).truncated(tcap)).truncated(tcap);
                if (!apply_C_tot(rk).truncated(tcap).is_zero())
                    throw std::domain_error("flatness obstruction at order " + std::to_string(k));
                WeilElement<K> y = sigma_tot(rk, false);
                WeilElement<K> x = y.is_zero() ? y : h_invert(y);
                x = -x;
                // certificates of the homotopy solve
                if (!sigma_tot(x, false).is_zero())
                    throw std::logic_error("linearity certificate failed");
                if (!(apply_C_tot(x) == -rk))
                    throw std::logic_error("flatness certificate failed");
                (kind == Kind::V3h ? sol.d_of_s : sol.d_of_sb)[k][i - 1] = undress(x);
            }
        }
        ops.push_back(sol.derivation(k));
    }
    return sol;
}

struct ResidualEntry {
    int k = 0;  // augmentation degree of the value
    int n = 0;  // total degree of the value
    double norm = 0.0;
    bool certified = true;
};

// norms of the graded components of (D.D)(s_i); certified window:
// value aug degree <= order+1 and total degree <= order+1
template <class K>
std::vector<ResidualEntry> flatness_residual(const ConnectionSolution<K>& sol) {
    int n = sol.dim;
    int tcap = sol.order + 1;
    std::vector<Derivation<K>> ops;
    for (int k = 0; k <= sol.order; ++k) ops.push_back(sol.derivation(k));
    std::map<std::pair<int, int>, double> acc;
    for (Kind kind : {Kind::V3h, Kind::V3a}) {
        for (int i = 1; i <= n; ++i) {
            WeilElement<K> s = WeilElement<K>::generator(n, {kind, i});
            for (int m = 0; m <= 2 * sol.order; ++m) {
                WeilElement<K> f(n);
                for (int p = 0; p <= sol.order; ++p) {
                    int q = m - p;
                    if (q < 0 || q > sol.order) continue;
                    f += ops[p].apply(ops[q].apply(s).truncated(tcap)).truncated(tcap);
                }
                for (const auto& [mm, c] : f.terms()) {
                    auto key = std::make_pair(mm.aug_degree(), mm.total_degree());
                    acc[key] += c.abs2_d();
                }
            }
        }
    }
    std::vector<ResidualEntry> out;
    for (auto& [key, sq] : acc) {
        ResidualEntry e;
        e.k = key.first;
        e.n = key.second;
        e.norm = std::sqrt(sq);
        e.certified = key.first <= sol.order + 1 && key.second <= sol.order + 1;
        out.push_back(e);
    }
    return out;
}

// exact zero test of the certified flatness window
template <class K>
bool flatness_certified_zero(const ConnectionSolution<K>& sol) {
    for (const auto& e : flatness_residual(sol))
        if (e.certified && e.norm != 0.0) return false;
    return true;
}

// || s - 1/2 sigma((D - D^iota) s) || summed over the V3 generators
template <class K>
double linearity_residual(const ConnectionSolution<K>& sol) {
    int n = sol.dim;
    auto sg = canonical_sigma<K>(n);
    double acc = 0;
    for (Kind kind : {Kind::V3h, Kind::V3a}) {
        for (int i = 1; i <= n; ++i) {
            WeilElement<K> s = WeilElement<K>::generator(n, {kind, i});
            WeilElement<K> half(n);
            for (int k = 0; k <= sol.order; k += 2) half += sol.image(k, kind, i);
            WeilElement<K> resid = s - sg.apply(half);
            acc += resid.norm_d();
        }
    }
    return acc;
}

struct ReducedSquareReport {
    bool zero = true;
    double torsion_block = 0;   // Lambda^2 components
    double r20_block = 0;       // S^{1,-1} (x) Lambda^{2,0} and conjugate
    double total = 0;
};

// (C + nabla)^2 on the reduced Weil algebra (plain augmentation bidegrees
// (>=2,>=1) and (>=1,>=2) quotiented away)
template <class K>
ReducedSquareReport reduced_square(const ChristoffelJet<K>& gamma) {
    int n = gamma.dim;
    auto d1 = connection_derivation_unchecked(gamma);
    auto C = canonical_C<K>(n);
    Derivation<K> dt(n, Parity::Odd);
    for (int kk = 0; kk < kKindCount; ++kk) dt.set_zero_on(static_cast<Kind>(kk));
    for (int i = 1; i <= n; ++i) {
        dt.set_image({Kind::V2h, i}, WeilElement<K>::generator(n, {Kind::V1h, i}));
        dt.set_image({Kind::V2a, i}, WeilElement<K>::generator(n, {Kind::V1a, i}));
        dt.set_image({Kind::V3h, i},
                     C.image({Kind::V3h, i}) + d1.image({Kind::V3h, i}));
        dt.set_image({Kind::V3a, i},
                     C.image({Kind::V3a, i}) + d1.image({Kind::V3a, i}));
    }
    ReducedSquareReport rep;
    auto in_ideal = [](const Monomial& m) {
        auto a = m.aug_plain();
        return (a.p >= 2 && a.q >= 1) || (a.p >= 1 && a.q >= 2);
    };
    int tcap = (gamma.order - 1) + 3;  // certified coefficient window
    for (Kind kind : {Kind::V3h, Kind::V3a}) {
        for (int i = 1; i <= n; ++i) {
            WeilElement<K> sq =
                dt.apply(dt.apply(WeilElement<K>::generator(n, {kind, i}))).truncated(tcap);
            WeilElement<K> red = sq.filter([&](const Monomial& m) { return !in_ideal(m); });
            if (!red.is_zero()) rep.zero = false;
            for (const auto& [m, c] : red.terms()) {
                double v = std::sqrt(c.abs2_d());
                rep.total += v;
                int v3 = m.degree_of_kind(Kind::V3h) + m.degree_of_kind(Kind::V3a);
                if (v3 == 0) rep.torsion_block += v;
                else rep.r20_block += v;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// brute-force oracle: solves the stages as generic linear systems over the
// candidate monomial spaces, independent of sigma_tot / h

struct BruteForceInfo {
    std::vector<int> stage_unknowns;
    std::vector<int> stage_nullity;  // must be all zero (uniqueness)
};

template <class K>
ConnectionSolution<K> brute_force_solve(const ChristoffelJet<K>& gamma, int order,
                                        BruteForceInfo* info = nullptr) {
    if (gamma.dim != 1 || order > 3)
        throw std::invalid_argument("brute-force oracle is desk-scale: dim 1, order <= 3");
    {
        auto rep = verify_kahlerian(gamma);
        if (!rep.pass) throw std::domain_error("non-Kahlerian input: " + rep.first_failure);
    }
    int n = gamma.dim;
    int tcap = order + 1;
    ConnectionSolution<K> sol;
    sol.dim = n;
    sol.order = order;
    sol.reduction = gamma;
    sol.d_of_s.assign(order + 1, std::vector<WeilElement<K>>(n, WeilElement<K>::zero(n)));
    sol.d_of_sb = sol.d_of_s;
    auto C = canonical_C<K>(n);
    auto d1 = connection_derivation_unchecked(gamma);
    for (int i = 1; i <= n; ++i) {
        sol.d_of_s[0][i - 1] = C.image({Kind::V3h, i});
        sol.d_of_sb[0][i - 1] = C.image({Kind::V3a, i});
        sol.d_of_s[1][i - 1] = d1.image({Kind::V3h, i}).truncated(tcap);
        sol.d_of_sb[1][i - 1] = d1.image({Kind::V3a, i}).truncated(tcap);
    }
    auto sg = canonical_sigma<K>(n);

    for (int k = 2; k <= order; ++k) {
        // candidate monomials for D_k(s): undressed B^1, aug degree k+1,
        // weakly Hodge relative to s, total degree <= order+1
        HodgeBidegree src = kind_hodge(Kind::V3h);
        PieceSpec sp;
        sp.dim = n;
        sp.max_total = tcap;
        sp.form_degree = 1;
        sp.aug_degree = k + 1;
        sp.dressed = false;
        std::vector<Monomial> cand;
        for (const auto& m : enumerate_monomials(sp)) {
            HodgeBidegree sh = m.hodge() - src;
            if (sh == HodgeBidegree{1, 0} || sh == HodgeBidegree{0, 1}) cand.push_back(m);
        }
        // R_k from the already known stages
        WeilElement<K> s = WeilElement<K>::generator(n, {Kind::V3h, 1});
        WeilElement<K> rk(n);
        std::vector<Derivation<K>> ops;
        for (int p = 0; p < k; ++p) ops.push_back(sol.derivation(p));
        for (int p = 1; p <= k - 1; ++p)
            rk += ops[p].apply(ops[k - p].apply(s).truncated(tcap)).truncated(tcap);

        // rows: coefficients of C(X) + R_k = 0 and (k even) sigma(X) = 0
        std::map<Monomial, int> rowidx;
        auto row_of = [&](const Monomial& m, int block) {
            Monomial key = m;
            key.exps.push_back(static_cast<uint8_t>(block));  // cheap block tag
            auto it = rowidx.find(key);
            if (it == rowidx.end()) it = rowidx.emplace(key, static_cast<int>(rowidx.size())).first;
            return it->second;
        };
        std::vector<std::map<int, K>> cols(cand.size());
        for (size_t j = 0; j < cand.size(); ++j) {
            WeilElement<K> x = WeilElement<K>::monomial(cand[j], K::one());
            WeilElement<K> cx = C.apply(x);
            for (const auto& [m, c] : cx.terms()) cols[j][row_of(m, 0)] += c;
            if (k % 2 == 0) {
                WeilElement<K> sx = sg.apply(x);
                for (const auto& [m, c] : sx.terms()) cols[j][row_of(m, 1)] += c;
            }
        }
        // fix the row space after collecting all rows from columns and rhs
        for (const auto& [m, c] : rk.terms()) row_of(m, 0);
        int rows = static_cast<int>(rowidx.size());
        DenseMatrix<K> A(rows, static_cast<int>(cand.size()));
        for (size_t j = 0; j < cand.size(); ++j)
            for (auto& [r, v] : cols[j]) A.at(r, static_cast<int>(j)) = v;
        std::vector<K> b(rows, K::zero());
        {
            // reconstruct row keys for the rhs
            for (const auto& [m, c] : rk.terms()) {
                Monomial key = m;
                key.exps.push_back(0);
                b[rowidx.at(key)] = -c;
            }
        }
        int nullity = 0;
        auto x = solve(A, b, &nullity);
        if (!x) throw std::domain_error("brute-force system inconsistent (no flat extension)");
        if (nullity != 0) throw std::domain_error("brute-force solution space not unique");
        if (info) {
            info->stage_unknowns.push_back(static_cast<int>(cand.size()));
            info->stage_nullity.push_back(nullity);
        }
        WeilElement<K> dk(n);
        for (size_t j = 0; j < cand.size(); ++j) dk.add_term(cand[j], (*x)[j]);
        sol.d_of_s[k][0] = dk;
        sol.d_of_sb[k][0] = -dk.conj();
        // the conjugate stage must satisfy its own flatness equation
        WeilElement<K> sb = WeilElement<K>::generator(n, {Kind::V3a, 1});
        WeilElement<K> rkb(n);
        for (int p = 1; p <= k - 1; ++p)
            rkb += ops[p].apply(ops[k - p].apply(sb).truncated(tcap)).truncated(tcap);
        if (!(C.apply(sol.d_of_sb[k][0]) == -rkb))
            throw std::logic_error("conjugate flatness equation failed in the oracle");
    }
    return sol;
}

// Taylor-coefficient series Theta_n = sum_k D_{k,n} restricted to V3,
// realized as norms of the assembled Hom(V3, B^0 (x) V1) matrices.
template <class K>
struct HodgeConnectionSeries {
    int dim = 0;
    int orders = 0;
    // theta[n][i]: sum_k D_{k,n}(s_i) for n >= 1 (i runs over s then sb)
    std::vector<std::vector<WeilElement<K>>> theta;
};

template <class K>
HodgeConnectionSeries<K> hodge_connection_series(const ConnectionSolution<K>& sol) {
    HodgeConnectionSeries<K> out;
    out.dim = sol.dim;
    out.orders = sol.order;
    out.theta.assign(sol.order + 1, {});
    for (int nn = 1; nn <= sol.order; ++nn) {
        for (Kind kind : {Kind::V3h, Kind::V3a}) {
            for (int i = 1; i <= sol.dim; ++i) {
                WeilElement<K> acc(sol.dim);
                for (int k = 0; k <= sol.order; ++k) acc += sol.slice(k, nn, kind, i);
                out.theta[nn].push_back(acc);
            }
        }
    }
    return out;
}

}  // namespace weilforge
