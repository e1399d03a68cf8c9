#include "curvestats/interval.hpp"

#include <algorithm>
#include <cmath>

namespace curvestats {

Interval Interval::operator*(const Interval& o) const {
    Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min({a, b, c, d}), std::max({a, b, c, d})};
}

Interval Interval::reciprocal() const {
    if (lo <= 0 && hi >= 0) throw std::domain_error("Interval::reciprocal: interval contains zero");
    return {Rational(1) / hi, Rational(1) / lo};
}

Interval Interval::pow(unsigned long e) const {
    if (lo < 0) throw std::domain_error("Interval::pow: negative base");
    Interval r{Rational(1)};
    Interval b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Interval Interval::compress(int digits) const {
    if (hi == 0 && lo == 0) return *this;
    // decimal exponent of the larger endpoint magnitude
    Rational mag = std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
    int e10 = static_cast<int>(std::floor(log_rational(mag) / std::log(10.0)));
    long k = static_cast<long>(digits) - e10 + 2;
    Integer num, den;
    if (k >= 0) {
        den = integer_pow(10, static_cast<unsigned long>(k));
        num = 1;
    } else {
        num = integer_pow(10, static_cast<unsigned long>(-k));
        den = 1;
    }
    Rational step(num, den);  // grid spacing 10^-k
    auto floor_div = [](const Rational& x, const Rational& s) {
        Integer n = numerator(x) * denominator(s), d = denominator(x) * numerator(s);
        Integer q = n / d;
        if ((n < 0) != (d < 0) && q * d != n) q -= 1;
        return q;
    };
    Rational nlo = Rational(floor_div(lo, step)) * step;
    Rational nhi = Rational(floor_div(hi, step)) * step;
    if (nhi < hi) nhi += step;
    return {nlo, nhi};
}

namespace {

// e^r for rational r in [0, 1], relative width <= 10^-digits.
Interval exp_taylor_unit(const Rational& r, int digits) {
    Rational term = 1, sum = 1;
    Rational tol = Rational(1, integer_pow(10, static_cast<unsigned long>(digits) + 2));
    unsigned long k = 0;
    do {
        ++k;
        term *= r;
        term /= Integer(k);
        sum += term;
    } while (term > tol || k < 2);
    // ratio of consecutive terms is r/(k+1) <= 1/2 once k >= 1, so the
    // dropped tail is at most twice the next term
    Rational next = term * r / Integer(k + 1);
    return {sum, sum + 2 * next};
}

}  // namespace

Interval exp_interval(const Rational& x, int digits) {
    if (digits <= 0) throw std::invalid_argument("exp_interval: precision must be positive");
    if (x < 0) return exp_interval(-x, digits + 2).reciprocal().compress(digits + 1);
    if (x > 100000) throw std::domain_error("exp_interval: argument too large");
    Integer n = numerator(x) / denominator(x);  // floor for x >= 0
    Rational r = x - Rational(n);
    unsigned long ni = n.convert_to<unsigned long>();
    int guard = 10 + static_cast<int>(std::ceil(std::log10(static_cast<double>(ni) + 2.0)));
    Interval frac = exp_taylor_unit(r, digits + guard);
    if (ni == 0) return frac.compress(digits + 1);
    Interval e1 = exp_taylor_unit(Rational(1), digits + guard);
    Interval result = e1.pow(ni) * frac;
    return result.compress(digits + 1);
}

}  // namespace curvestats
