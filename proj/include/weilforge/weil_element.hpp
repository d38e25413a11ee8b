// Sparse elements of the free graded-commutative algebra on the generator
// kinds of generators.hpp, with an optional symmetric-power dressing index
// for totalized elements (an element of B^k_tot carries u_p^{(k)}, stored as
// the index p; the level is always the B-form degree of the monomial).
//
// Monomials are kept canonical: factors ordered by (kind, index), even kinds
// first. Products of canonical monomials pick up the Koszul sign from the
// interleave of their odd factors.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "generators.hpp"
#include "scalar.hpp"

namespace weilforge {

struct Monomial {
    int dim = 0;
    std::vector<uint8_t> exps;  // [kind][index-1], odd kinds have exp <= 1
    int16_t u = -1;             // dressing index; -1 = undressed

    Monomial() = default;
    explicit Monomial(int n) : dim(n), exps(static_cast<size_t>(kKindCount) * n, 0) {}

    static Monomial unit(int n) { return Monomial(n); }
    static Monomial gen(int n, Gen g) {
        Monomial m(n);
        m.exps[m.slot(g)] = 1;
        return m;
    }

    size_t slot(Gen g) const {
        assert(g.index >= 1 && g.index <= dim);
        return static_cast<size_t>(static_cast<int>(g.kind)) * dim + (g.index - 1);
    }
    int exp(Gen g) const { return exps[slot(g)]; }

    bool dressed() const { return u >= 0; }

    // the level-0 dressing u_0^(0) is the unit of W_0^*; keep such
    // monomials in the undressed form
    void normalize() {
        if (u == 0 && form_degree() == 0) u = -1;
    }

    int degree_of_kind(Kind k) const {
        int d = 0;
        for (int i = 0; i < dim; ++i) d += exps[static_cast<size_t>(static_cast<int>(k)) * dim + i];
        return d;
    }
    int form_degree() const { return degree_of_kind(Kind::V1h) + degree_of_kind(Kind::V1a); }
    int l_degree() const { return degree_of_kind(Kind::V4h) + degree_of_kind(Kind::V4a); }
    int antihol_form_degree() const { return degree_of_kind(Kind::V1a); }
    int odd_degree() const { return form_degree() + l_degree(); }

    int total_degree() const {
        int d = 0;
        for (int k = 0; k < kKindCount; ++k)
            if (kind_total_degree(static_cast<Kind>(k)))
                d += degree_of_kind(static_cast<Kind>(k));
        return d;
    }
    HodgeBidegree hodge() const {
        HodgeBidegree h;
        for (int k = 0; k < kKindCount; ++k) {
            int d = degree_of_kind(static_cast<Kind>(k));
            auto hb = kind_hodge(static_cast<Kind>(k));
            h.p += d * hb.p;
            h.q += d * hb.q;
        }
        if (dressed()) {
            h.p -= u;
            h.q += u - form_degree();
        }
        return h;
    }
    // Plain augmentation bidegree of the underlying (undressed) monomial;
    // this is the bigrading whose Gamma-transport cuts out the ideal I_tot.
    AugBidegree aug_plain() const {
        AugBidegree a;
        for (int k = 0; k < kKindCount; ++k) {
            int d = degree_of_kind(static_cast<Kind>(k));
            auto ab = kind_aug(static_cast<Kind>(k));
            a.p += d * ab.p;
            a.q += d * ab.q;
        }
        return a;
    }
    // Dressed-table bidegree: u_0-dressings count (1,0), u_1-dressings (0,1).
    AugBidegree aug_dressed() const {
        if (!dressed()) return aug_plain();
        int v3h = degree_of_kind(Kind::V3h), v3a = degree_of_kind(Kind::V3a);
        return {v3h + form_degree() - u, v3a + u};
    }
    int aug_degree() const { return aug_plain().degree(); }

    int iota_sign() const {
        return (degree_of_kind(Kind::V3h) + degree_of_kind(Kind::V3a)) % 2 ? -1 : +1;
    }

    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.exps != b.exps) return a.exps < b.exps;
        return a.u < b.u;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.dim == b.dim && a.exps == b.exps && a.u == b.u;
    }

    // List of odd factors in canonical order.
    std::vector<Gen> odd_factors() const {
        std::vector<Gen> v;
        for (int k = 0; k < kKindCount; ++k) {
            Kind kk = static_cast<Kind>(k);
            if (!kind_odd(kk)) continue;
            for (int i = 1; i <= dim; ++i)
                if (exp({kk, i})) v.push_back({kk, i});
        }
        return v;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < kKindCount; ++k) {
            Kind kk = static_cast<Kind>(k);
            for (int i = 1; i <= dim; ++i) {
                int e = exp({kk, i});
                if (!e) continue;
                if (!first) os << " ";
                first = false;
                os << Gen{kk, i}.name();
                if (e > 1) os << "^" << e;
            }
        }
        if (first) os << "1";
        if (dressed()) os << " @u" << u;
        return os.str();
    }
};

// Koszul sign of the product a*b of canonical monomials (0 if an odd factor
// repeats): parity of inversions between the odd words of a and b.
inline int product_sign(const Monomial& a, const Monomial& b) {
    auto oa = a.odd_factors();
    auto ob = b.odd_factors();
    long inv = 0;
    for (const Gen& gb : ob) {
        for (const Gen& ga : oa) {
            if (gb == ga) return 0;
            if (gb < ga) ++inv;
        }
    }
    return (inv % 2) ? -1 : +1;
}

template <class K>
class WeilElement {
  public:
    using Scalar = K;
    using Map = std::map<Monomial, K>;

    WeilElement() = default;
    explicit WeilElement(int n) : dim_(n) {}

    static WeilElement zero(int n) { return WeilElement(n); }
    static WeilElement one(int n) {
        WeilElement e(n);
        e.terms_[Monomial::unit(n)] = K::one();
        return e;
    }
    static WeilElement generator(int n, Gen g, K c = K::one()) {
        WeilElement e(n);
        e.add_term(Monomial::gen(n, g), c);
        return e;
    }
    static WeilElement monomial(const Monomial& m, K c) {
        WeilElement e(m.dim);
        e.add_term(m, c);
        return e;
    }

    int dim() const { return dim_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(Monomial m, const K& c) {
        if (c.is_zero()) return;
        m.normalize();
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WeilElement& operator+=(const WeilElement& o) {
        assert(dim_ == o.dim_ || o.terms_.empty() || terms_.empty());
        if (dim_ == 0) dim_ = o.dim_;
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    WeilElement& operator-=(const WeilElement& o) {
        if (dim_ == 0) dim_ = o.dim_;
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend WeilElement operator+(WeilElement a, const WeilElement& b) { a += b; return a; }
    friend WeilElement operator-(WeilElement a, const WeilElement& b) { a -= b; return a; }
    WeilElement operator-() const {
        WeilElement r(dim_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    WeilElement scaled(const K& c) const {
        WeilElement r(dim_);
        if (c.is_zero()) return r;
        for (auto& [m, co] : terms_) {
            K v = co * c;
            if (!v.is_zero()) r.terms_.emplace(m, v);
        }
        return r;
    }

    friend bool operator==(const WeilElement& a, const WeilElement& b) {
        return (a - b).is_zero();
    }

    friend WeilElement operator*(const WeilElement& a, const WeilElement& b) {
        assert(a.dim_ == b.dim_ || a.is_zero() || b.is_zero());
        WeilElement r(a.dim_ ? a.dim_ : b.dim_);
        for (auto& [ma, ca] : a.terms_) {
            for (auto& [mb, cb] : b.terms_) {
                int sg = product_sign(ma, mb);
                if (!sg) continue;
                Monomial m(r.dim_);
                bool dead = false;
                for (size_t i = 0; i < m.exps.size(); ++i) {
                    int e = ma.exps[i] + mb.exps[i];
                    Kind kk = static_cast<Kind>(i / a.dim_);
                    if (kind_odd(kk) && e > 1) { dead = true; break; }
                    m.exps[i] = static_cast<uint8_t>(e);
                }
                if (dead) continue;
                if (ma.u < 0 && mb.u < 0) m.u = -1;
                else m.u = static_cast<int16_t>(std::max<int>(ma.u, 0) + std::max<int>(mb.u, 0));
                K c = ca * cb;
                if (sg < 0) c = -c;
                r.add_term(m, c);
            }
        }
        return r;
    }

    // conj = complex conjugation combined with iota^*: negates V3 factors,
    // swaps holomorphic/antiholomorphic kinds, conjugates coefficients and
    // flips a dressing index p to (level - p).
    WeilElement conj() const {
        WeilElement r(dim_);
        for (auto& [m, c] : terms_) {
            Monomial mc(dim_);
            for (int k = 0; k < kKindCount; ++k) {
                Kind kk = static_cast<Kind>(k);
                Kind sw = kind_conj(kk);
                for (int i = 0; i < dim_; ++i)
                    mc.exps[static_cast<size_t>(static_cast<int>(sw)) * dim_ + i] =
                        m.exps[static_cast<size_t>(k) * dim_ + i];
            }
            mc.u = m.dressed() ? static_cast<int16_t>(m.form_degree() - m.u) : int16_t(-1);
            // reordering an odd word under the h<->a swap: the canonical word
            // reverses within conjugate kind pairs; count the sign exactly.
            int sg = conj_reorder_sign(m) * m.iota_sign();
            K c2 = c.conj();
            if (sg < 0) c2 = -c2;
            r.add_term(mc, c2);
        }
        return r;
    }

    WeilElement iota() const {
        WeilElement r(dim_);
        for (auto& [m, c] : terms_) {
            K c2 = c;
            if (m.iota_sign() < 0) c2 = -c2;
            r.terms_.emplace(m, c2);
        }
        return r;
    }

    WeilElement filtered(bool (*pred)(const Monomial&)) const {
        WeilElement r(dim_);
        for (auto& [m, c] : terms_)
            if (pred(m)) r.terms_.emplace(m, c);
        return r;
    }
    template <class F>
    WeilElement filter(F&& pred) const {
        WeilElement r(dim_);
        for (auto& [m, c] : terms_)
            if (pred(m)) r.terms_.emplace(m, c);
        return r;
    }

    // Drop monomials whose total degree exceeds the cutoff (series truncation).
    WeilElement truncated(int max_total_degree) const {
        return filter([&](const Monomial& m) { return m.total_degree() <= max_total_degree; });
    }

    double norm_d() const {
        double s = 0;
        for (auto& [m, c] : terms_) s += c.abs2_d();
        return std::sqrt(s);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : terms_) {
            if (!first) os << "  +  ";
            first = false;
            os << "(" << c.str() << ") " << m.str();
        }
        return os.str();
    }

  private:
    static int conj_reorder_sign(const Monomial& m) {
        // Images of the odd factors under the kind swap, then parity of the
        // permutation sorting them back to canonical order.
        auto odd = m.odd_factors();
        std::vector<Gen> img;
        img.reserve(odd.size());
        for (Gen g : odd) img.push_back({kind_conj(g.kind), g.index});
        long inv = 0;
        for (size_t i = 0; i < img.size(); ++i)
            for (size_t j = i + 1; j < img.size(); ++j)
                if (img[j] < img[i]) ++inv;
        return (inv % 2) ? -1 : +1;
    }

    int dim_ = 0;
    Map terms_;
};

using WeilElementQ = WeilElement<RatC>;

}  // namespace weilforge
