// Recursive sequences controlling the norm estimates: Catalan numbers a_n,
// the majorant tables b_{k,n}, c_{k,n}, b^m_{k,n} (exact rationals; the
// b-recurrence produces genuine fractions, e.g. b_{2,0} = 1/2), and the
// termwise generating-function bounds.
#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace weilforge {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

class SeriesTable {
  public:
    // Catalan: a_1 = 1, a_n = sum_{1<=k<=n-1} a_k a_{n-k}, a_{<=0} = 0
    Rational catalan(long n) {
        if (n <= 0) return 0;
        auto it = a_.find(n);
        if (it != a_.end()) return it->second;
        Rational v;
        if (n == 1) v = 1;
        else
            for (long k = 1; k <= n - 1; ++k) v += catalan(k) * catalan(n - k);
        a_.emplace(n, v);
        return v;
    }

    // b_{k,n} = sum_{1<=p<=k-1, 0<=q<=n} ((q+1)/k) b_{p,q} b_{k-p,n-q};
    // b_{1,n} = 1 for n >= 0
    Rational b(long k, long n) {
        if (k <= 0 || n < 0) return 0;
        if (k == 1) return 1;
        auto it = b_.find({k, n});
        if (it != b_.end()) return it->second;
        Rational v;
        for (long p = 1; p <= k - 1; ++p)
            for (long q = 0; q <= n; ++q) {
                Rational t = b(p, q) * b(k - p, n - q);
                if (t != 0) v += Rational(q + 1, k) * t;
            }
        b_.emplace(std::make_pair(k, n), v);
        return v;
    }

    // c_{k,n} = sum c_{p,q} b_{k-p,n-q} for k >= 2; c_{k,n} = b_{k,n} for k <= 1
    Rational c(long k, long n) {
        if (k <= 1) return b(k, n);
        if (n < 0) return 0;
        auto it = c_.find({k, n});
        if (it != c_.end()) return it->second;
        Rational v;
        for (long p = 1; p <= k - 1; ++p)
            for (long q = 0; q <= n; ++q) v += c(p, q) * b(k - p, n - q);
        c_.emplace(std::make_pair(k, n), v);
        return v;
    }

    // b^m_{k,n} = sum ((q + m(k-p))/k) b^m_{p,q} b_{k-p,n-q}; b^m_{1,n} = 1
    Rational bm(long m, long k, long n) {
        if (k <= 0 || n < 0) return 0;
        if (k == 1) return 1;
        auto it = bm_.find({m, k, n});
        if (it != bm_.end()) return it->second;
        Rational v;
        for (long p = 1; p <= k - 1; ++p)
            for (long q = 0; q <= n; ++q) {
                Rational t = bm(m, p, q) * b(k - p, n - q);
                if (t != 0) v += Rational(q + m * (k - p), k) * t;
            }
        bm_.emplace(std::make_tuple(m, k, n), v);
        return v;
    }

  private:
    std::map<long, Rational> a_;
    std::map<std::pair<long, long>, Rational> b_;
    std::map<std::pair<long, long>, Rational> c_;
    std::map<std::tuple<long, long, long>, Rational> bm_;
};

struct GeneratingBoundReport {
    bool majorant_ok = true;   // b_{k,n} <= a_k binom(n+2k-2, 2k-2)
    bool bm_ok = true;         // b^m_{k,n} <= (2m)^{k-1} c_{k,n} b_{k,n}
    Rational smallest_C;       // smallest C with b_{k,n} < C 6^{n+k} on the range
    long first_fail_k = -1, first_fail_n = -1;
};

inline GeneratingBoundReport check_generating_bounds(SeriesTable& t, long k_max, long n_max,
                                                     long m_max = 2) {
    GeneratingBoundReport rep;
    rep.smallest_C = 0;
    for (long k = 1; k <= k_max; ++k)
        for (long n = 0; n <= n_max; ++n) {
            Rational bb = t.b(k, n);
            Rational maj = t.catalan(k) * Rational(binomial(n + 2 * k - 2, 2 * k - 2));
            if (bb > maj) {
                rep.majorant_ok = false;
                rep.first_fail_k = k;
                rep.first_fail_n = n;
            }
            Rational pow6 = 1;
            for (long i = 0; i < n + k; ++i) pow6 *= 6;
            Rational needed = bb / pow6;
            if (needed > rep.smallest_C) rep.smallest_C = needed;
            for (long m = 1; m <= m_max; ++m) {
                Rational lhs = t.bm(m, k, n);
                Rational pw = 1;
                for (long i = 0; i < k - 1; ++i) pw *= 2 * m;
                if (lhs > pw * t.c(k, n) * bb) rep.bm_ok = false;
            }
        }
    return rep;
}

}  // namespace weilforge
