// Dual universal Hodge structures W_k^* and the gamma embeddings.
//
// W_k^* has basis u_0,...,u_k with u_p of Hodge bidegree (-p, p-k); the
// basis is declared orthonormal, the product is can(u_p, u_q) = u_{p+q},
// gamma_l(u_p) = u_{p+1} and gamma_r(u_p) = u_p (one level up), and the
// real structure is u_p -> u_{k-p}.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "generators.hpp"
#include "linalg.hpp"
#include "scalar.hpp"

namespace weilforge {

struct WkIndex {
    int level = 0;  // k
    int p = 0;      // 0..k
    HodgeBidegree hodge() const { return {-p, p - level}; }
    friend bool operator<(WkIndex a, WkIndex b) {
        if (a.level != b.level) return a.level < b.level;
        return a.p < b.p;
    }
    friend bool operator==(WkIndex a, WkIndex b) { return a.level == b.level && a.p == b.p; }
    std::string name() const {
        return "u" + std::to_string(p) + "^(" + std::to_string(level) + ")";
    }
};

enum class GammaSide { Left, Right };

inline WkIndex gamma_embed(GammaSide side, WkIndex u) {
    if (u.p < 0 || u.p > u.level) throw std::out_of_range("u index out of range");
    return side == GammaSide::Left ? WkIndex{u.level + 1, u.p + 1} : WkIndex{u.level + 1, u.p};
}

inline WkIndex wk_can(WkIndex a, WkIndex b) { return {a.level + b.level, a.p + b.p}; }
inline WkIndex wk_conj(WkIndex u) { return {u.level, u.level - u.p}; }

struct WkDualBasis {
    int k = 0;
    explicit WkDualBasis(int level) : k(level) {
        if (level < 0) throw std::invalid_argument("negative level");
    }
    int dimension() const { return k + 1; }
    WkIndex basis_element(int p) const {
        if (p < 0 || p > k) throw std::out_of_range("u index out of range");
        return {k, p};
    }
};

struct CapCupReport {
    int p = 0, q = 0;
    bool exact = false;
    int sum_dim = 0;        // dim(im gamma_l + im gamma_r)
    int intersection_dim = 0;
    int intersection_rep = -1;  // index of the spanning u when 1-dimensional
};

// Exactness of 0 -> C -> W_p^* (+) W_q^* -> W_{p+q}^* -> 0 with
// gamma_l^q on the first summand and gamma_r^p on the second.
inline CapCupReport verify_cap_cup(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("cap-cup needs p,q >= 0");
    CapCupReport rep;
    rep.p = p;
    rep.q = q;
    int k = p + q;
    // columns: images of the p+q+2 basis vectors in W_{p+q}^*
    DenseMatrix<RatC> m(k + 1, p + q + 2);
    for (int i = 0; i <= p; ++i) {
        WkIndex u{p, i};
        for (int t = 0; t < q; ++t) u = gamma_embed(GammaSide::Left, u);
        m.at(u.p, i) = RatC::one();
    }
    for (int j = 0; j <= q; ++j) {
        WkIndex u{q, j};
        for (int t = 0; t < p; ++t) u = gamma_embed(GammaSide::Right, u);
        m.at(u.p, p + 1 + j) = RatC::one();
    }
    rep.sum_dim = rank(m);
    rep.intersection_dim = (p + 1) + (q + 1) - rep.sum_dim;
    rep.exact = (rep.sum_dim == k + 1) && (rep.intersection_dim == 1);
    if (rep.exact) rep.intersection_rep = q;  // gamma_l^q(u_0) = u_q = gamma_r^p(u_q)
    return rep;
}

}  // namespace weilforge
