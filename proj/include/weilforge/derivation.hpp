// Graded derivations of the Weil algebra, given by generator images and
// extended by the Leibniz rule; totalized application dresses each image
// term by its Hodge-type shift (type (a,b) multiplies the dressing by
// gamma_l^a gamma_r^b, i.e. bumps the u index by a).
#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

#include "weil_element.hpp"

namespace weilforge {

enum class Parity { Even, Odd };

template <class K>
class Derivation {
  public:
    using Element = WeilElement<K>;

    Derivation(int n, Parity par) : dim_(n), parity_(par) {
        for (auto& v : images_) v.clear();
    }

    int dim() const { return dim_; }
    Parity parity() const { return parity_; }

    void set_zero_on(Kind k) {
        images_[static_cast<int>(k)].assign(dim_, Element::zero(dim_));
    }
    void set_image(Gen g, Element e) {
        auto& v = images_[static_cast<int>(g.kind)];
        if (v.empty()) v.assign(dim_, Element::zero(dim_));
        v[g.index - 1] = std::move(e);
    }
    bool defined_on(Kind k) const { return !images_[static_cast<int>(k)].empty(); }
    const Element& image(Gen g) const {
        const auto& v = images_[static_cast<int>(g.kind)];
        if (v.empty())
            throw std::domain_error("derivation has no image for generator " + g.name());
        return v[g.index - 1];
    }

    // Leibniz application to an undressed element.
    Element apply(const Element& x) const {
        Element out(dim_);
        for (const auto& [m, c] : x.terms()) out += apply_monomial(m, c);
        return out;
    }

    // Totalized application: sources may be dressed; every image term is
    // dressed by its Hodge-type shift relative to the source monomial.
    Element apply_tot(const Element& x) const {
        Element out(dim_);
        for (const auto& [m, c] : x.terms()) {
            Monomial bare = m;
            int u0 = m.dressed() ? m.u : 0;
            bare.u = -1;
            Element img = apply_monomial(bare, c);
            HodgeBidegree h0 = bare.hodge();
            for (const auto& [tm, tc] : img.terms()) {
                HodgeBidegree shift = tm.hodge() - h0;
                if (shift.p < 0 || shift.q < 0)
                    throw std::domain_error("image term has a negative Hodge shift");
                Monomial dressed = tm;
                dressed.u = static_cast<int16_t>(u0 + shift.p);
                if (dressed.u < 0 || dressed.u > dressed.form_degree())
                    throw std::domain_error("dressing index out of range after application");
                out.add_term(dressed, tc);
            }
        }
        return out;
    }

    friend Derivation anticommutator(const Derivation& P, const Derivation& Q) {
        if (P.parity_ != Parity::Odd || Q.parity_ != Parity::Odd)
            throw std::domain_error("anticommutator expects odd derivations");
        Derivation r(P.dim_, Parity::Even);
        for (int k = 0; k < kKindCount; ++k) {
            Kind kk = static_cast<Kind>(k);
            if (!P.defined_on(kk) || !Q.defined_on(kk)) continue;
            r.set_zero_on(kk);
            for (int i = 1; i <= P.dim_; ++i) {
                Gen g{kk, i};
                r.set_image(g, P.apply(Q.image(g)) + Q.apply(P.image(g)));
            }
        }
        return r;
    }

  private:
    Element apply_monomial(const Monomial& m, const K& c) const {
        Element out(dim_);
        // split into the even block and the odd word
        Monomial even(dim_);
        for (int k = 0; k < kKindCount; ++k) {
            Kind kk = static_cast<Kind>(k);
            if (kind_odd(kk)) continue;
            for (int i = 0; i < dim_; ++i)
                even.exps[static_cast<size_t>(k) * dim_ + i] =
                    m.exps[static_cast<size_t>(k) * dim_ + i];
        }
        auto odd = m.odd_factors();
        Monomial odd_mono(dim_);
        for (Gen g : odd) odd_mono.exps[odd_mono.slot(g)] = 1;
        Element odd_elt = Element::monomial(odd_mono, K::one());

        // even factors: prefix is even, no sign
        for (int k = 0; k < kKindCount; ++k) {
            Kind kk = static_cast<Kind>(k);
            if (kind_odd(kk) || !defined_on(kk)) continue;
            for (int i = 1; i <= dim_; ++i) {
                Gen g{kk, i};
                int e = m.exp(g);
                if (!e) continue;
                const Element& img = image(g);
                if (img.is_zero()) continue;
                Monomial reduced = even;
                reduced.exps[reduced.slot(g)] -= 1;
                Element term = Element::monomial(reduced, c * K::from_int(e)) * img * odd_elt;
                out += term;
            }
        }
        // odd factors: Koszul sign from the odd prefix when the derivation is odd
        for (size_t j = 0; j < odd.size(); ++j) {
            Gen g = odd[j];
            if (!defined_on(g.kind))
                throw std::domain_error("derivation has no image for generator " + g.name());
            const Element& img = image(g);
            if (img.is_zero()) continue;
            K coeff = c;
            if (parity_ == Parity::Odd && (j % 2)) coeff = -coeff;
            Monomial pre(dim_), suf(dim_);
            for (size_t t = 0; t < j; ++t) pre.exps[pre.slot(odd[t])] = 1;
            for (size_t t = j + 1; t < odd.size(); ++t) suf.exps[suf.slot(odd[t])] = 1;
            Element term = Element::monomial(even, coeff) *
                           Element::monomial(pre, K::one()) * img *
                           Element::monomial(suf, K::one());
            out += term;
        }
        return out;
    }

    int dim_;
    Parity parity_;
    std::array<std::vector<Element>, kKindCount> images_;
};

// C(s_i) = dz_i, C(sb_i) = -dzb_i, zero on the other generators.
template <class K>
Derivation<K> canonical_C(int n) {
    Derivation<K> d(n, Parity::Odd);
    for (int k = 0; k < kKindCount; ++k) d.set_zero_on(static_cast<Kind>(k));
    for (int i = 1; i <= n; ++i) {
        d.set_image({Kind::V3h, i}, WeilElement<K>::generator(n, {Kind::V1h, i}));
        d.set_image({Kind::V3a, i}, -WeilElement<K>::generator(n, {Kind::V1a, i}));
    }
    return d;
}

// sigma(dz_i) = s_i, sigma(dzb_i) = -sb_i, zero elsewhere (the inverse of C
// on one-forms extended as an odd derivation; not weakly Hodge).
template <class K>
Derivation<K> canonical_sigma(int n) {
    Derivation<K> d(n, Parity::Odd);
    for (int k = 0; k < kKindCount; ++k) d.set_zero_on(static_cast<Kind>(k));
    for (int i = 1; i <= n; ++i) {
        d.set_image({Kind::V1h, i}, WeilElement<K>::generator(n, {Kind::V3h, i}));
        d.set_image({Kind::V1a, i}, -WeilElement<K>::generator(n, {Kind::V3a, i}));
    }
    return d;
}

// Relative de Rham differential: d^r(s_i) = th_i, d^r(sb_i) = thb_i.
template <class K>
Derivation<K> canonical_dr(int n) {
    Derivation<K> d(n, Parity::Odd);
    for (int k = 0; k < kKindCount; ++k) d.set_zero_on(static_cast<Kind>(k));
    for (int i = 1; i <= n; ++i) {
        d.set_image({Kind::V3h, i}, WeilElement<K>::generator(n, {Kind::V4h, i}));
        d.set_image({Kind::V3a, i}, WeilElement<K>::generator(n, {Kind::V4a, i}));
    }
    return d;
}

// iota^*-conjugate of a derivation: g -> iota(D(iota(g))).
template <class K>
Derivation<K> iota_conjugate(const Derivation<K>& d) {
    Derivation<K> r(d.dim(), d.parity());
    for (int k = 0; k < kKindCount; ++k) {
        Kind kk = static_cast<Kind>(k);
        if (!d.defined_on(kk)) continue;
        r.set_zero_on(kk);
        for (int i = 1; i <= d.dim(); ++i) {
            Gen g{kk, i};
            WeilElement<K> img = d.image(g).iota();
            if (kind_iota_sign(kk) < 0) img = -img;
            r.set_image(g, img);
        }
    }
    return r;
}

}  // namespace weilforge
