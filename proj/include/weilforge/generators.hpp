// Generators of the (totalized, L-extended) Weil algebra at a point and
// their grading tables.
//
//   V2h/V2a  z_i, zb_i    base coordinates           even, total degree 1
//   V3h/V3a  s_i, sb_i    conormal generators        even, total degree 1
//   V1h/V1a  dz_i, dzb_i  1-form generators          odd,  total degree 1
//   V4h/V4a  th_i, thb_i  relative 1-forms d^r(s_i)  odd,  total degree 0
//
// Hodge bidegrees: z,zb (0,0); s (1,-1); sb (-1,1); dz,th (1,0); dzb,thb (0,1).
// Augmentation bidegrees: s,dz (1,0); sb,dzb (0,1); z,zb,th,thb (0,0).
// iota^* is -1 on V3, +1 elsewhere.  The real structure is
// conj = (complex conjugation, h<->a swap) composed with iota^*.
#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace weilforge {

enum class Kind : uint8_t { V2h = 0, V2a, V3h, V3a, V4h, V4a, V1h, V1a };
inline constexpr int kKindCount = 8;

// Canonical factor order within a monomial: the enum order above, index
// ascending within each kind. Odd kinds come after the evens so that odd
// prefixes are contiguous: V4h < V4a < V1h < V1a.
inline constexpr bool kind_odd(Kind k) {
    return k == Kind::V4h || k == Kind::V4a || k == Kind::V1h || k == Kind::V1a;
}
inline constexpr Kind kind_conj(Kind k) {
    switch (k) {
        case Kind::V2h: return Kind::V2a;
        case Kind::V2a: return Kind::V2h;
        case Kind::V3h: return Kind::V3a;
        case Kind::V3a: return Kind::V3h;
        case Kind::V4h: return Kind::V4a;
        case Kind::V4a: return Kind::V4h;
        case Kind::V1h: return Kind::V1a;
        case Kind::V1a: return Kind::V1h;
    }
    return k;
}

struct HodgeBidegree {
    int p = 0;
    int q = 0;
    int weight() const { return p + q; }
    HodgeBidegree conj() const { return {q, p}; }
    friend HodgeBidegree operator+(HodgeBidegree a, HodgeBidegree b) {
        return {a.p + b.p, a.q + b.q};
    }
    friend HodgeBidegree operator-(HodgeBidegree a, HodgeBidegree b) {
        return {a.p - b.p, a.q - b.q};
    }
    friend bool operator==(HodgeBidegree a, HodgeBidegree b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(HodgeBidegree a, HodgeBidegree b) { return !(a == b); }
};

struct AugBidegree {
    int p = 0;
    int q = 0;
    int degree() const { return p + q; }
    friend AugBidegree operator+(AugBidegree a, AugBidegree b) {
        return {a.p + b.p, a.q + b.q};
    }
    friend bool operator==(AugBidegree a, AugBidegree b) { return a.p == b.p && a.q == b.q; }
};

inline constexpr HodgeBidegree kind_hodge(Kind k) {
    switch (k) {
        case Kind::V2h: case Kind::V2a: return {0, 0};
        case Kind::V3h: return {1, -1};
        case Kind::V3a: return {-1, 1};
        case Kind::V1h: case Kind::V4h: return {1, 0};
        case Kind::V1a: case Kind::V4a: return {0, 1};
    }
    return {0, 0};
}

// Plain augmentation bidegree (the grading of the non-totalized algebra).
inline constexpr AugBidegree kind_aug(Kind k) {
    switch (k) {
        case Kind::V3h: case Kind::V1h: return {1, 0};
        case Kind::V3a: case Kind::V1a: return {0, 1};
        default: return {0, 0};
    }
}

inline constexpr int kind_total_degree(Kind k) {
    return (k == Kind::V4h || k == Kind::V4a) ? 0 : 1;
}
inline constexpr int kind_iota_sign(Kind k) {
    return (k == Kind::V3h || k == Kind::V3a) ? -1 : +1;
}
// B-form degree (the Weil-algebra grading); V4 counts in the L-grading instead.
inline constexpr int kind_form_degree(Kind k) {
    return (k == Kind::V1h || k == Kind::V1a) ? 1 : 0;
}
inline constexpr int kind_l_degree(Kind k) {
    return (k == Kind::V4h || k == Kind::V4a) ? 1 : 0;
}

inline const char* kind_name(Kind k) {
    static constexpr std::array<const char*, kKindCount> names = {
        "z", "zb", "s", "sb", "th", "thb", "dz", "dzb"};
    return names[static_cast<int>(k)];
}

// A single generator: kind plus 1-based coordinate index.
struct Gen {
    Kind kind;
    int index;  // 1..dim
    friend bool operator==(Gen a, Gen b) { return a.kind == b.kind && a.index == b.index; }
    friend bool operator<(Gen a, Gen b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.index < b.index;
    }
    std::string name() const { return std::string(kind_name(kind)) + std::to_string(index); }
};

}  // namespace weilforge
