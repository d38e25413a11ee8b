// Kahler input layer: metric jets in a single chart centered at the
// expansion point, Levi-Civita data, curvature splitting and the
// Kahlerian-condition detector. Power series live in the V2 generators of
// the Weil algebra, so all series arithmetic is WeilElement arithmetic.
//
// Conventions (validated by the D2-formula identity downstream):
//   connection derivation   D1(s_l) = -sum_{k,i} Gamma^k_{li} s_k dz_i,
//   split curvature map     R = -(D1 . D1),
// so the (1,1) part of R has index form d/dzb Gamma with the 2-form written
// dzb ^ dz.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "linalg.hpp"
#include "weil_element.hpp"

namespace weilforge {

template <class K>
WeilElement<K> series_derivative(const WeilElement<K>& f, Kind k, int index) {
    WeilElement<K> out(f.dim());
    for (const auto& [m, c] : f.terms()) {
        int e = m.exp({k, index});
        if (!e) continue;
        Monomial r = m;
        r.exps[r.slot({k, index})] -= 1;
        out.add_term(r, c * K::from_int(e));
    }
    return out;
}

// 1/f for a series with invertible constant term, truncated.
template <class K>
WeilElement<K> series_inverse(const WeilElement<K>& f, int order) {
    int n = f.dim();
    Monomial unit = Monomial::unit(n);
    auto it = f.terms().find(unit);
    if (it == f.terms().end() || it->second.is_zero())
        throw std::domain_error("series has no invertible constant term");
    K c0 = it->second;
    WeilElement<K> tail = (f - WeilElement<K>::monomial(unit, c0)).scaled(K::one() / c0);
    WeilElement<K> acc = WeilElement<K>::one(n);
    WeilElement<K> pw = WeilElement<K>::one(n);
    for (int j = 1; j <= order; ++j) {
        pw = (pw * (-tail)).truncated(order);
        if (pw.is_zero()) break;
        acc += pw;
    }
    return acc.scaled(K::one() / c0).truncated(order);
}

template <class K>
struct MetricJet {
    int dim = 0;
    int order = 0;
    std::vector<std::vector<WeilElement<K>>> g;  // g[i][j] = g_{i jbar}

    MetricJet() = default;
    MetricJet(int n, int N)
        : dim(n), order(N), g(n, std::vector<WeilElement<K>>(n, WeilElement<K>::zero(n))) {}

    bool is_hermitian() const {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (!(g[i][j] == g[j][i].conj())) return false;
        return true;
    }

    DenseMatrix<K> value_at_origin() const {
        DenseMatrix<K> m(dim, dim);
        Monomial unit = Monomial::unit(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                auto it = g[i][j].terms().find(unit);
                if (it != g[i][j].terms().end()) m.at(i, j) = it->second;
            }
        return m;
    }

    // Leading principal minors of g(0); all positive iff positive definite.
    bool positive_definite_at_origin() const;

    // Inverse metric as a series matrix: ginv[l][k] = g^{k lbar}, i.e.
    // sum_l ginv[l][k] g[m][l] = delta_{km}.
    std::vector<std::vector<WeilElement<K>>> inverse_series() const {
        int n = dim;
        DenseMatrix<K> A0 = value_at_origin();
        // exact inverse of the constant term
        DenseMatrix<K> inv0(n, n);
        for (int c = 0; c < n; ++c) {
            std::vector<K> e(n, K::zero());
            e[c] = K::one();
            auto x = solve(A0, e);
            if (!x) throw std::domain_error("degenerate metric");
            for (int r = 0; r < n; ++r) inv0.at(r, c) = (*x)[r];
        }
        // N = A0^{-1} (A - A0); Ainv = (sum (-N)^j) A0^{-1}
        auto mat_zero = [&] {
            return std::vector<std::vector<WeilElement<K>>>(
                n, std::vector<WeilElement<K>>(n, WeilElement<K>::zero(n)));
        };
        Monomial unit = Monomial::unit(n);
        auto Nm = mat_zero();
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                WeilElement<K> acc(n);
                for (int l = 0; l < n; ++l) {
                    WeilElement<K> tail = g[l][c];
                    auto it = tail.terms().find(unit);
                    if (it != tail.terms().end())
                        tail -= WeilElement<K>::monomial(unit, it->second);
                    acc += tail.scaled(inv0.at(r, l));
                }
                Nm[r][c] = acc.truncated(order);
            }
        auto acc = mat_zero();
        auto pw = mat_zero();
        for (int r = 0; r < n; ++r) {
            acc[r][r] = WeilElement<K>::one(n);
            pw[r][r] = WeilElement<K>::one(n);
        }
        for (int j = 1; j <= order; ++j) {
            auto nx = mat_zero();
            bool nz = false;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    WeilElement<K> s(n);
                    for (int l = 0; l < n; ++l) s += (pw[r][l] * (-Nm[l][c])).truncated(order);
                    nx[r][c] = s;
                    nz = nz || !s.is_zero();
                }
            pw = nx;
            if (!nz) break;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) acc[r][c] += pw[r][c];
        }
        // Ainv = acc * inv0
        auto out = mat_zero();
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                WeilElement<K> s(n);
                for (int l = 0; l < n; ++l) s += acc[r][l].scaled(inv0.at(l, c));
                out[r][c] = s.truncated(order);
            }
        return out;
    }

};

template <class K>
bool MetricJet<K>::positive_definite_at_origin() const {
    DenseMatrix<K> A = value_at_origin();
    // Hermitian positive definiteness via exact leading principal minors
    // (the minors of a Hermitian matrix are real).
    for (int k = 1; k <= dim; ++k) {
        DenseMatrix<K> sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.at(i, j) = A.at(i, j);
        // determinant by elimination
        K det = K::one();
        for (int c = 0; c < k; ++c) {
            int p = -1;
            for (int r = c; r < k; ++r)
                if (!sub.at(r, c).is_zero()) { p = r; break; }
            if (p < 0) return false;
            if (p != c) {
                for (int j = 0; j < k; ++j) std::swap(sub.at(p, j), sub.at(c, j));
                det = -det;
            }
            det = det * sub.at(c, c);
            K inv = K::one() / sub.at(c, c);
            for (int r = c + 1; r < k; ++r) {
                K f = sub.at(r, c) * inv;
                for (int j = c; j < k; ++j) sub.at(r, j) = sub.at(r, j) - f * sub.at(c, j);
            }
        }
        auto z = det.to_complex();
        if (!(z.real() > 0)) return false;
    }
    return true;
}

template <class K>
struct ChristoffelJet {
    int dim = 0;
    int order = 0;  // series order of the coefficients
    // gamma10[k][l][i]: coefficient series of  D1(s_l) ∋ -gamma10 s_k dz_i
    std::vector<std::vector<std::vector<WeilElement<K>>>> gamma10;
    // optional (0,1) connection-form part: D1(s_l) ∋ -gamma01 s_k dzb_j;
    // nonzero entries violate holomorphy (nabla^{0,1} != dbar)
    std::vector<std::vector<std::vector<WeilElement<K>>>> gamma01;

    ChristoffelJet() = default;
    ChristoffelJet(int n, int N) : dim(n), order(N) {
        gamma10.assign(n, std::vector<std::vector<WeilElement<K>>>(
                              n, std::vector<WeilElement<K>>(n, WeilElement<K>::zero(n))));
        gamma01 = gamma10;
    }
    bool has_antiholomorphic_part() const {
        for (auto& a : gamma01)
            for (auto& b : a)
                for (auto& c : b)
                    if (!c.is_zero()) return true;
        return false;
    }
};

// Levi-Civita data of a metric jet: Gamma^k_{ij} = sum_l g^{k lbar} d_i g_{j lbar}.
template <class K>
ChristoffelJet<K> levi_civita(const MetricJet<K>& m) {
    if (!m.positive_definite_at_origin()) throw std::domain_error("degenerate metric");
    int n = m.dim;
    auto ginv = m.inverse_series();  // ginv[l][k] = g^{k lbar}
    ChristoffelJet<K> out(n, m.order - 1);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                WeilElement<K> s(n);
                for (int l = 0; l < n; ++l)
                    s += (ginv[l][k] * series_derivative(m.g[j][l], Kind::V2h, i + 1))
                             .truncated(out.order);
                out.gamma10[k][j][i] = s;  // symmetric in (j, i) for Kahler input
            }
    return out;
}

// The derivation of the Weil algebra induced by a connection jet:
// z -> dz, zb -> dzb, s_l -> -Gamma^k_{li} s_k dz_i (- gamma01 terms),
// sb by the conjugate formula, zero on one-forms. No Kahlerian gate; the
// public solver checks the gate itself.
template <class K>
Derivation<K> connection_derivation_unchecked(const ChristoffelJet<K>& cj) {
    int n = cj.dim;
    Derivation<K> d(n, Parity::Odd);
    for (int k = 0; k < kKindCount; ++k) d.set_zero_on(static_cast<Kind>(k));
    for (int i = 1; i <= n; ++i) {
        d.set_image({Kind::V2h, i}, WeilElement<K>::generator(n, {Kind::V1h, i}));
        d.set_image({Kind::V2a, i}, WeilElement<K>::generator(n, {Kind::V1a, i}));
    }
    // D1(s_l) = -sum_{i,j} Gamma^l_{ij} s_i dz_j: the upper Christoffel
    // index contracts with the source generator (cotangent-frame dual of
    // the tangent connection)
    for (int l = 1; l <= n; ++l) {
        WeilElement<K> img(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                WeilElement<K> si_dzj = WeilElement<K>::generator(n, {Kind::V3h, i}) *
                                        WeilElement<K>::generator(n, {Kind::V1h, j});
                img -= cj.gamma10[l - 1][i - 1][j - 1] * si_dzj;
                WeilElement<K> si_dzbj = WeilElement<K>::generator(n, {Kind::V3h, i}) *
                                         WeilElement<K>::generator(n, {Kind::V1a, j});
                img -= cj.gamma01[l - 1][i - 1][j - 1] * si_dzbj;
            }
        d.set_image({Kind::V3h, l}, img);
        d.set_image({Kind::V3a, l}, -img.conj());
    }
    return d;
}

template <class K>
struct CurvatureJet {
    int dim = 0;
    // full curvature map images R(s_l) = -(D1 D1)(s_l) in B^2
    std::vector<WeilElement<K>> r_of_s;
    WeilElement<K> part(int l, int holforms, int antiforms) const {
        return r_of_s[l].filter([&](const Monomial& m) {
            return m.degree_of_kind(Kind::V1h) == holforms &&
                   m.degree_of_kind(Kind::V1a) == antiforms;
        });
    }
    WeilElement<K> r20(int l) const { return part(l, 2, 0); }
    WeilElement<K> r11(int l) const { return part(l, 1, 1); }
    WeilElement<K> r02(int l) const { return part(l, 0, 2); }
};

template <class K>
CurvatureJet<K> curvature_split(const ChristoffelJet<K>& cj) {
    int n = cj.dim;
    auto d1 = connection_derivation_unchecked(cj);
    CurvatureJet<K> out;
    out.dim = n;
    // the curvature series is certified only through coefficient degree
    // order-1: the d Gamma part needs one more Gamma order than stored
    int tcap = (cj.order - 1) + 3;
    for (int l = 1; l <= n; ++l) {
        WeilElement<K> s = WeilElement<K>::generator(n, {Kind::V3h, l});
        out.r_of_s.push_back((-d1.apply(d1.apply(s))).truncated(tcap));
    }
    return out;
}

struct KahlerianReport {
    bool pass = true;
    std::string first_failure;
};

// Kahlerian detector: T = 0 (index symmetry and no (0,1) connection part)
// and R^{2,0} = 0 through the available order.
template <class K>
KahlerianReport verify_kahlerian(const ChristoffelJet<K>& cj) {
    KahlerianReport rep;
    int n = cj.dim;
    for (int k = 0; k < n && rep.pass; ++k)
        for (int i = 0; i < n && rep.pass; ++i)
            for (int j = 0; j < i; ++j)
                if (!(cj.gamma10[k][i][j] == cj.gamma10[k][j][i])) {
                    rep.pass = false;
                    rep.first_failure = "torsion nonzero: Gamma^" + std::to_string(k + 1) + "_{" +
                                        std::to_string(i + 1) + std::to_string(j + 1) +
                                        "} asymmetric";
                    break;
                }
    if (rep.pass && cj.has_antiholomorphic_part()) {
        rep.pass = false;
        int ord = 0;
        for (auto& a : cj.gamma01)
            for (auto& b : a)
                for (auto& c : b)
                    for (auto& [m, co] : c.terms()) ord = std::max(ord, m.total_degree());
        rep.first_failure = "holomorphy violated at order " + std::to_string(ord);
    }
    if (rep.pass) {
        auto R = curvature_split(cj);
        for (int l = 0; l < n; ++l)
            if (!R.r20(l).is_zero()) {
                rep.pass = false;
                rep.first_failure = "R^{2,0} nonzero on s" + std::to_string(l + 1);
                break;
            }
    }
    return rep;
}

// nabla g = 0 to the available order: d_k g_{i jbar} = Gamma^l_{ki} g_{l jbar}.
template <class K>
bool metric_parallel(const MetricJet<K>& m, const ChristoffelJet<K>& cj) {
    int n = m.dim;
    int ord = cj.order;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                WeilElement<K> lhs =
                    series_derivative(m.g[i][j], Kind::V2h, k + 1).truncated(ord);
                WeilElement<K> rhs(n);
                for (int l = 0; l < n; ++l) rhs += (cj.gamma10[l][i][k] * m.g[l][j]).truncated(ord);
                if (!(lhs == rhs)) return false;
            }
    return true;
}

// Built-in example geometries.
template <class K>
MetricJet<K> builtin_example(const std::string& name, int dim, int order) {
    MetricJet<K> m(dim, order);
    auto rho = [&] {
        WeilElement<K> r(dim);
        for (int i = 1; i <= dim; ++i)
            r += WeilElement<K>::generator(dim, {Kind::V2h, i}) *
                 WeilElement<K>::generator(dim, {Kind::V2a, i});
        return r;
    };
    if (name == "flat") {
        for (int i = 0; i < dim; ++i) m.g[i][i] = WeilElement<K>::one(dim);
        return m;
    }
    if (name == "fubini-study" || name == "poincare") {
        bool fs = name == "fubini-study";
        WeilElement<K> r = rho();
        if (!fs) r = -r;
        WeilElement<K> inv = series_inverse(WeilElement<K>::one(dim) + r, order);
        WeilElement<K> inv2 = (inv * inv).truncated(order);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                WeilElement<K> e(dim);
                if (i == j) e += inv;
                WeilElement<K> cross = (WeilElement<K>::generator(dim, {Kind::V2h, j + 1}) *
                                        WeilElement<K>::generator(dim, {Kind::V2a, i + 1}) * inv2)
                                           .truncated(order);
                m.g[i][j] = fs ? e - cross : e + cross;
            }
        return m;
    }
    if (name == "product") {
        if (dim < 2) throw std::invalid_argument("product needs dim >= 2");
        MetricJet<K> fs1 = builtin_example<K>("fubini-study", 1, order);
        for (int i = 0; i < dim; ++i) m.g[i][i] = WeilElement<K>::one(dim);
        // re-express the 1-dim FS block in the dim-variable algebra
        WeilElement<K> blk(dim);
        for (const auto& [mono, c] : fs1.g[0][0].terms()) {
            Monomial mm(dim);
            mm.exps[mm.slot({Kind::V2h, 1})] = mono.exps[mono.slot({Kind::V2h, 1})];
            mm.exps[mm.slot({Kind::V2a, 1})] = mono.exps[mono.slot({Kind::V2a, 1})];
            blk.add_term(mm, c);
        }
        m.g[0][0] = blk;
        return m;
    }
    throw std::invalid_argument("unknown example name: " + name);
}

}  // namespace weilforge
