// Polarization solver: extends the solved connection to the V4-generated
// module of relative forms via D(th) = -d^r(D(s)), then solves
//   Omega_0 = omega,  Omega_1 = 0,
//   Omega_k = -(1/k) sigma_tot( sum_{p<k} D^tot_{k-p}(Omega_p) ),
// certifying C-closedness of every right-hand side, Hodge type (1,1),
// reality and vanishing of the solved orders of D(Omega).
#pragma once

#include <string>
#include <vector>

#include "connection.hpp"
#include "norms.hpp"

namespace weilforge {

// The aug-degree-k pieces of the extended connection as derivations on the
// V4-extended algebra.
template <class K>
std::vector<Derivation<K>> extend_derivation_to_LL(const ConnectionSolution<K>& sol) {
    int n = sol.dim;
    auto dr = canonical_dr<K>(n);
    std::vector<Derivation<K>> ops;
    for (int k = 0; k <= sol.order; ++k) {
        Derivation<K> d = sol.derivation(k);
        for (int i = 1; i <= n; ++i) {
            d.set_image({Kind::V4h, i}, -dr.apply(sol.d_of_s[k][i - 1]));
            d.set_image({Kind::V4a, i}, -dr.apply(sol.d_of_sb[k][i - 1]));
        }
        ops.push_back(std::move(d));
    }
    return ops;
}

// {D, d^r} evaluated on all generators and a few products; identically zero
// for a correctly extended derivation.
template <class K>
bool commutes_with_dr(const std::vector<Derivation<K>>& ops) {
    int n = ops.front().dim();
    auto dr = canonical_dr<K>(n);
    for (const auto& d : ops)
        for (int kk = 0; kk < kKindCount; ++kk)
            for (int i = 1; i <= n; ++i) {
                Gen g{static_cast<Kind>(kk), i};
                WeilElement<K> x = WeilElement<K>::generator(n, g);
                if (!(d.apply(dr.apply(x)) + dr.apply(d.apply(x))).is_zero()) return false;
            }
    return true;
}

template <class K>
struct PolarizationSolution {
    int dim = 0;
    int order = 0;
    int total_cap = 0;
    std::vector<WeilElement<K>> omega;  // [k], elements of L^2 (x) B^0
};

template <class K>
bool hodge_type_11(const WeilElement<K>& x) {
    for (const auto& [m, c] : x.terms())
        if (!(m.hodge() == HodgeBidegree{1, 1})) return false;
    return true;
}

// omega written in the th-frame: i sum g_{i jbar} th_i thb_j.
template <class K>
WeilElement<K> kahler_form_in_frame(const MetricJet<K>& m) {
    int n = m.dim;
    WeilElement<K> out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            out += (m.g[i - 1][j - 1] * WeilElement<K>::generator(n, {Kind::V4h, i}) *
                    WeilElement<K>::generator(n, {Kind::V4a, j}))
                       .scaled(K::i());
    return out;
}

template <class K>
PolarizationSolution<K> solve_polarization(const ConnectionSolution<K>& sol,
                                           const MetricJet<K>& metric, int order) {
    if (order > sol.order)
        throw std::invalid_argument("polarization order exceeds the solved connection order");
    int n = sol.dim;
    if (metric.dim != n) throw std::invalid_argument("dimension mismatch");
    if (!metric.is_hermitian()) throw std::domain_error("metric jet is not Hermitian");
    if (!metric.positive_definite_at_origin())
        throw std::domain_error("form not positive at the base point");
    if (!metric_parallel(metric, sol.reduction)) throw std::domain_error("form not parallel");

    int tcap = order;  // total-degree cap of the Omega_k
    auto ops = extend_derivation_to_LL(sol);
    PolarizationSolution<K> pol;
    pol.dim = n;
    pol.order = order;
    pol.total_cap = tcap;
    pol.omega.assign(order + 1, WeilElement<K>::zero(n));
    pol.omega[0] = kahler_form_in_frame(metric).truncated(tcap);
    if (!hodge_type_11(pol.omega[0])) throw std::domain_error("form is not of type (1,1)");

    // parallel-form gate, restated on the Weil algebra side: the aug-1
    // component of D(Omega_0) vanishes
    {
        WeilElement<K> d0 = ops[1].apply_tot(pol.omega[0]).truncated(tcap);
        WeilElement<K> aug1 = d0.filter([](const Monomial& m) { return m.aug_degree() == 1; });
        if (!aug1.is_zero()) throw std::domain_error("form not parallel");
    }

    for (int k = 2; k <= order; ++k) {
        WeilElement<K> gamma(n);
        for (int p = 0; p <= k - 1; ++p) {
            if (pol.omega[p].is_zero()) continue;
            gamma += ops[k - p].apply_tot(pol.omega[p]).truncated(tcap);
        }
        if (!apply_C_tot(gamma).truncated(tcap).is_zero())
            throw std::domain_error("polarization obstruction at order " + std::to_string(k));
        WeilElement<K> om = sigma_tot(gamma, false).scaled(-(K::one() / K::from_int(k)));
        // h acts as k id on this piece; cross-check the homotopy identity
        if (!(apply_C_tot(om) == -gamma)) throw std::logic_error("polarization solve failed");
        if (!hodge_type_11(om)) throw std::logic_error("Omega_k left type (1,1)");
        if (!(om.conj() == om)) throw std::logic_error("Omega_k reality failed");
        pol.omega[k] = om;
    }
    return pol;
}

// norms of the augmentation components of D(Omega); certified zero through
// the solved order within the total-degree window
template <class K>
std::vector<ResidualEntry> holomorphy_residual(const ConnectionSolution<K>& sol,
                                               const PolarizationSolution<K>& pol) {
    auto ops = extend_derivation_to_LL(sol);
    int n = sol.dim;
    std::map<std::pair<int, int>, double> acc;
    for (int m = 0; m <= 2 * pol.order; ++m) {
        WeilElement<K> comp(n);
        for (int p = 0; p <= pol.order; ++p) {
            int k = m - p;
            if (k < 0 || k > sol.order) continue;
            if (pol.omega[p].is_zero()) continue;
            comp += ops[k].apply_tot(pol.omega[p]).truncated(pol.total_cap);
        }
        comp = comp.filter([&](const Monomial& mm) { return mm.aug_degree() == m; });
        for (const auto& [mm, c] : comp.terms())
            acc[{m, mm.total_degree()}] += c.abs2_d();
    }
    std::vector<ResidualEntry> out;
    for (auto& [key, sq] : acc) {
        ResidualEntry e;
        e.k = key.first;
        e.n = key.second;
        e.norm = std::sqrt(sq);
        e.certified = key.first <= pol.order && key.second <= pol.total_cap;
        out.push_back(e);
    }
    return out;
}

template <class K>
bool holomorphy_certified_zero(const ConnectionSolution<K>& sol,
                               const PolarizationSolution<K>& pol) {
    for (const auto& e : holomorphy_residual(sol, pol))
        if (e.certified && e.norm != 0.0) return false;
    return true;
}

template <class K>
struct KahlerFormReport {
    WeilElement<K> omega_I;
    std::vector<ResidualEntry> closedness;  // per (aug, total) component
    bool restriction_matches = false;       // omega_I at aug degree 0 == omega
};

// omega_I = (Omega + nu(Omega)) / 2 with nu the plain complex conjugation
// (iota^* composed with the algebra conjugation); the closedness residual
// evaluates the (1,0)-shift component combination of d omega_I.
template <class K>
KahlerFormReport<K> kahler_form_reconstruct(const ConnectionSolution<K>& sol,
                                            const PolarizationSolution<K>& pol) {
    int n = sol.dim;
    KahlerFormReport<K> rep;
    WeilElement<K> omega(n);
    for (int k = 0; k <= pol.order; ++k) omega += pol.omega[k];
    WeilElement<K> nu = omega.conj().iota();  // plain bar
    rep.omega_I = (omega + nu).scaled(K::one() / K::from_int(2));
    rep.restriction_matches =
        rep.omega_I.filter([](const Monomial& m) { return m.aug_degree() == 0; }) ==
        pol.omega[0];

    auto ops = extend_derivation_to_LL(sol);
    auto shift10 = [&](const WeilElement<K>& x) {
        // the Hodge (1,0)-shift part of D applied to x
        WeilElement<K> out(n);
        for (const auto& [m, c] : x.terms()) {
            WeilElement<K> one = WeilElement<K>::monomial(m, c);
            HodgeBidegree h0 = m.hodge();
            for (int k = 0; k <= sol.order; ++k) {
                WeilElement<K> img = ops[k].apply(one);
                for (const auto& [tm, tc] : img.terms())
                    if (tm.hodge() - h0 == HodgeBidegree{1, 0}) out.add_term(tm, tc);
            }
        }
        return out;
    };
    auto bar = [](const WeilElement<K>& x) { return x.conj().iota(); };
    WeilElement<K> combo = shift10(rep.omega_I) + bar(shift10(bar(rep.omega_I)));
    combo = combo.truncated(pol.total_cap);
    std::map<std::pair<int, int>, double> acc;
    for (const auto& [m, c] : combo.terms())
        acc[{m.aug_degree(), m.total_degree()}] += c.abs2_d();
    for (auto& [key, sq] : acc) {
        ResidualEntry e;
        e.k = key.first;
        e.n = key.second;
        e.norm = std::sqrt(sq);
        e.certified = key.first <= pol.order && key.second <= pol.total_cap;
        rep.closedness.push_back(e);
    }
    return rep;
}

struct PositivityReport {
    bool positive = false;
    double eigenvalue_floor = 0.0;
};

// At augmentation and total degree zero the polarization pairing reduces to
// the positive definiteness of omega(0).
template <class K>
PositivityReport positivity_check(const PolarizationSolution<K>& pol) {
    int n = pol.dim;
    CMatrix H(n, n);
    H.setZero();
    for (const auto& [m, c] : pol.omega[0].terms()) {
        if (m.total_degree() != 0) continue;
        int i = -1, j = -1;
        for (int t = 1; t <= n; ++t) {
            if (m.exp({Kind::V4h, t})) i = t - 1;
            if (m.exp({Kind::V4a, t})) j = t - 1;
        }
        if (i < 0 || j < 0) continue;
        // omega_0 = i H_{ij} th_i thb_j
        H(i, j) = (c * (-K::i())).to_complex();
    }
    PositivityReport rep;
    auto ev = hermitian_eigenvalues(H);
    rep.eigenvalue_floor = ev.empty() ? 0.0 : ev.front();
    rep.positive = rep.eigenvalue_floor > 0;
    return rep;
}

// brute-force stagewise solve of D(Omega) = 0 over type-(1,1) candidate
// monomials; independent of sigma_tot and h
template <class K>
PolarizationSolution<K> brute_force_polarization(const ConnectionSolution<K>& sol,
                                                 const MetricJet<K>& metric, int order,
                                                 std::vector<int>* nullities = nullptr) {
    if (sol.dim != 1 || order > 3)
        throw std::invalid_argument("brute-force oracle is desk-scale: dim 1, order <= 3");
    int n = sol.dim;
    int tcap = order;
    auto ops = extend_derivation_to_LL(sol);
    PolarizationSolution<K> pol;
    pol.dim = n;
    pol.order = order;
    pol.total_cap = tcap;
    pol.omega.assign(order + 1, WeilElement<K>::zero(n));
    pol.omega[0] = kahler_form_in_frame(metric).truncated(tcap);
    auto C = canonical_C<K>(n);
    for (int k = 1; k <= order; ++k) {
        // candidates: L-degree 2, form degree 0, aug k, type (1,1)
        PieceSpec sp;
        sp.dim = n;
        sp.max_total = tcap;
        sp.form_degree = 0;
        sp.aug_degree = k;
        sp.dressed = false;
        sp.include_v4 = true;
        std::vector<Monomial> cand;
        for (const auto& m : enumerate_monomials(sp))
            if (m.l_degree() == 2 && m.hodge() == HodgeBidegree{1, 1}) cand.push_back(m);
        WeilElement<K> gamma(n);
        for (int p = 0; p <= k - 1; ++p) {
            WeilElement<K> d = ops[k - p].apply(pol.omega[p]).truncated(tcap);
            gamma += d;
        }
        // rows: C(X) = -gamma on the aug-k component
        std::map<Monomial, int> rowidx;
        auto row_of = [&](const Monomial& m) {
            auto it = rowidx.find(m);
            if (it == rowidx.end()) it = rowidx.emplace(m, static_cast<int>(rowidx.size())).first;
            return it->second;
        };
        std::vector<std::map<int, K>> cols(cand.size());
        for (size_t j = 0; j < cand.size(); ++j) {
            WeilElement<K> cx = C.apply(WeilElement<K>::monomial(cand[j], K::one()));
            for (const auto& [m, c] : cx.terms()) cols[j][row_of(m)] += c;
        }
        for (const auto& [m, c] : gamma.terms()) row_of(m);
        DenseMatrix<K> A(static_cast<int>(rowidx.size()), static_cast<int>(cand.size()));
        for (size_t j = 0; j < cand.size(); ++j)
            for (auto& [r, v] : cols[j]) A.at(r, static_cast<int>(j)) = v;
        std::vector<K> b(static_cast<int>(rowidx.size()), K::zero());
        for (const auto& [m, c] : gamma.terms()) b[rowidx.at(m)] = -c;
        int nullity = 0;
        auto x = solve(A, b, &nullity);
        if (!x) throw std::domain_error("no type-(1,1) solution at order " + std::to_string(k));
        if (nullity != 0) throw std::domain_error("polarization solution space not unique");
        if (nullities) nullities->push_back(nullity);
        WeilElement<K> om(n);
        for (size_t j = 0; j < cand.size(); ++j) om.add_term(cand[j], (*x)[j]);
        pol.omega[k] = om;
    }
    return pol;
}

}  // namespace weilforge
