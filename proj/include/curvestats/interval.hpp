#pragma once

#include "curvestats/rational.hpp"

namespace curvestats {

/// Closed interval with exact rational endpoints. All operations round
/// outward, so a value known to lie in the input intervals is guaranteed
/// to lie in the result.
struct Interval {
    Rational lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rational v) : lo(v), hi(v) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    Rational radius() const { return (hi - lo) / 2; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval operator*(const Interval& o) const;
    Interval operator*(const Rational& c) const {
        return c >= 0 ? Interval{lo * c, hi * c} : Interval{hi * c, lo * c};
    }
    Interval operator+(const Rational& c) const { return {lo + c, hi + c}; }

    /// 1/x for sign-definite intervals.
    Interval reciprocal() const;

    Interval pow(unsigned long e) const;  // requires lo >= 0

    /// Shorten the endpoint representations: round lo down and hi up on a
    /// grid of ~10^-(digits) relative spacing. The value set only grows.
    Interval compress(int digits) const;
};

/// e^x as a certified interval with relative width <= 10^-digits.
Interval exp_interval(const Rational& x, int digits);

/// A real number carried with a rigorous error radius.
struct CertifiedReal {
    Rational center;
    Rational radius;

    double value() const { return to_double(center); }
    double error() const { return to_double(radius); }
    Interval interval() const { return {center - radius, center + radius}; }

    /// |center - v| <= radius + slack?
    bool consistent_with(const Rational& v, const Rational& slack = 0) const {
        Rational d = center - v;
        if (d < 0) d = -d;
        return d <= radius + slack;
    }
};

inline CertifiedReal to_certified(const Interval& iv) { return {iv.midpoint(), iv.radius()}; }

}  // namespace curvestats
