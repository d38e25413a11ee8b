// Scalar types for the graded algebra kernels: exact complex rationals
// (default everywhere, including all acceptance tests) and complex doubles
// with a pruning tolerance for irrational inputs.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace weilforge {

using Rational = boost::multiprecision::cpp_rational;

// Exact complex rational. Field operations only; no ordering.
struct RatC {
    Rational re;
    Rational im;

    RatC() = default;
    RatC(long r) : re(r), im(0) {}
    RatC(Rational r) : re(std::move(r)), im(0) {}
    RatC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static RatC zero() { return RatC(); }
    static RatC one() { return RatC(1); }
    static RatC i() { return RatC(Rational(0), Rational(1)); }
    static RatC from_int(long v) { return RatC(v); }
    static RatC from_ratio(long n, long d) { return RatC(Rational(n, d)); }

    bool is_zero() const { return re == 0 && im == 0; }

    RatC operator-() const { return RatC(-re, -im); }
    RatC conj() const { return RatC(re, -im); }

    RatC& operator+=(const RatC& o) { re += o.re; im += o.im; return *this; }
    RatC& operator-=(const RatC& o) { re -= o.re; im -= o.im; return *this; }

    friend RatC operator+(RatC a, const RatC& b) { a += b; return a; }
    friend RatC operator-(RatC a, const RatC& b) { a -= b; return a; }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return RatC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend RatC operator/(const RatC& a, const RatC& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero");
        return RatC((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    friend bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RatC& a, const RatC& b) { return !(a == b); }

    double abs2_d() const {
        return static_cast<double>(re) * static_cast<double>(re) +
               static_cast<double>(im) * static_cast<double>(im);
    }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
    std::string str() const {
        std::ostringstream os;
        os << re;
        if (im != 0) os << (im > 0 ? "+" : "") << im << "i";
        return os.str();
    }
};

// Complex double scalar; is_zero uses a global pruning tolerance.
struct CxD {
    std::complex<double> v;

    CxD() : v(0.0) {}
    CxD(long r) : v(double(r)) {}
    CxD(double r) : v(r) {}
    CxD(std::complex<double> z) : v(z) {}

    static double& tolerance() {
        static double tol = 1e-10;
        return tol;
    }
    static CxD zero() { return CxD(); }
    static CxD one() { return CxD(1.0); }
    static CxD i() { return CxD(std::complex<double>(0.0, 1.0)); }
    static CxD from_int(long n) { return CxD(double(n)); }
    static CxD from_ratio(long n, long d) { return CxD(double(n) / double(d)); }

    bool is_zero() const { return std::abs(v) <= tolerance(); }

    CxD operator-() const { return CxD(-v); }
    CxD conj() const { return CxD(std::conj(v)); }

    CxD& operator+=(const CxD& o) { v += o.v; return *this; }
    CxD& operator-=(const CxD& o) { v -= o.v; return *this; }
    friend CxD operator+(CxD a, const CxD& b) { a += b; return a; }
    friend CxD operator-(CxD a, const CxD& b) { a -= b; return a; }
    friend CxD operator*(const CxD& a, const CxD& b) { return CxD(a.v * b.v); }
    friend CxD operator/(const CxD& a, const CxD& b) { return CxD(a.v / b.v); }
    friend bool operator==(const CxD& a, const CxD& b) { return std::abs(a.v - b.v) <= tolerance(); }
    friend bool operator!=(const CxD& a, const CxD& b) { return !(a == b); }

    double abs2_d() const { return std::norm(v); }
    std::complex<double> to_complex() const { return v; }
    std::string str() const {
        std::ostringstream os;
        os << v.real();
        if (v.imag() != 0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
        return os.str();
    }
};

}  // namespace weilforge
