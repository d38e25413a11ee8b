// Weakly Hodge maps between graded pieces of the Weil algebra, their
// H-type component decomposition and their totalization (the Gamma
// functor on maps). Maps are stored by monomial images and extended
// linearly.
#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "weil_element.hpp"
#include "wk_basis.hpp"

namespace weilforge {

template <class K>
struct WeaklyHodgeMap {
    using Element = WeilElement<K>;

    int dim = 0;
    int source_weight = 0;
    int target_weight = 0;
    std::map<Monomial, Element> images;

    int weight() const { return target_weight - source_weight; }

    void set(const Monomial& m, Element img) { images[m] = std::move(img); }

    Element apply(const Element& x) const {
        Element out(dim);
        for (const auto& [m, c] : x.terms()) {
            auto it = images.find(m);
            if (it == images.end())
                throw std::domain_error("map not defined on " + m.str());
            out += it->second.scaled(c);
        }
        return out;
    }

    // H-type component of bidegree (a, b): the image terms shifted by (a, b).
    Element component(const Monomial& m, int a, int b) const {
        auto it = images.find(m);
        if (it == images.end()) throw std::domain_error("map not defined on " + m.str());
        HodgeBidegree h0 = m.hodge();
        Element out(dim);
        for (const auto& [tm, tc] : it->second.terms()) {
            HodgeBidegree sh = tm.hodge() - h0;
            if (sh.p == a && sh.q == b) out.add_term(tm, tc);
        }
        return out;
    }

    // All (a, b) components as maps, a+b = weight, a,b >= 0.
    std::vector<std::pair<HodgeBidegree, WeaklyHodgeMap>> h_type_components() const {
        int w = weight();
        if (w < 0) throw std::domain_error("no weakly Hodge maps of negative weight");
        std::vector<std::pair<HodgeBidegree, WeaklyHodgeMap>> out;
        for (int a = 0; a <= w; ++a) {
            WeaklyHodgeMap comp;
            comp.dim = dim;
            comp.source_weight = source_weight;
            comp.target_weight = target_weight;
            for (const auto& [m, img] : images) comp.images[m] = component(m, a, w - a);
            out.push_back({HodgeBidegree{a, w - a}, std::move(comp)});
        }
        return out;
    }

    // Every image term must shift Hodge type by (a, b) with a, b >= 0,
    // a + b = weight.
    bool is_weakly_hodge() const {
        if (weight() < 0) return false;
        for (const auto& [m, img] : images) {
            HodgeBidegree h0 = m.hodge();
            for (const auto& [tm, tc] : img.terms()) {
                HodgeBidegree sh = tm.hodge() - h0;
                if (sh.p < 0 || sh.q < 0 || sh.p + sh.q != weight()) return false;
            }
        }
        return true;
    }

    // Reality: the (a,b) and (b,a) components are conjugate,
    // f^{b,a} = conj . f^{a,b} . conj on every basis monomial.
    bool is_real() const {
        for (const auto& [m, img] : images) {
            Element cm = Element::monomial(m, K::one()).conj();
            if (cm.size() != 1) return false;
            const auto& [mc, cc] = *cm.terms().begin();
            auto it = images.find(mc);
            if (it == images.end()) return false;
            if (!(it->second.scaled(cc).conj() == img)) return false;
        }
        return true;
    }

    // Totalization on a dressed source element: each image term of type
    // shift (a, b) is dressed by gamma_l^a gamma_r^b.
    Element totalize(const Element& x) const {
        Element out(dim);
        for (const auto& [m, c] : x.terms()) {
            Monomial bare = m;
            int u0 = m.dressed() ? m.u : 0;
            bare.u = -1;
            auto it = images.find(bare);
            if (it == images.end()) throw std::domain_error("map not defined on " + bare.str());
            HodgeBidegree h0 = bare.hodge();
            for (const auto& [tm, tc] : it->second.terms()) {
                HodgeBidegree sh = tm.hodge() - h0;
                if (sh.p < 0 || sh.q < 0) throw std::domain_error("negative Hodge shift");
                Monomial d = tm;
                d.u = static_cast<int16_t>(u0 + sh.p);
                out.add_term(d, tc * c);
            }
        }
        return out;
    }

    friend WeaklyHodgeMap compose(const WeaklyHodgeMap& g, const WeaklyHodgeMap& f) {
        WeaklyHodgeMap r;
        r.dim = f.dim;
        r.source_weight = f.source_weight;
        r.target_weight = g.target_weight;
        for (const auto& [m, img] : f.images) r.images[m] = g.apply(img);
        return r;
    }
};

}  // namespace weilforge
