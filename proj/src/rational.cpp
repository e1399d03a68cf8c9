#include "curvestats/rational.hpp"

#include <cmath>

namespace curvestats {

Integer integer_pow(Integer base, unsigned long e) {
    Integer r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Rational rational_pow(const Rational& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rational_pow: zero to negative power");
        Rational inv = Rational(denominator(base), numerator(base));
        return rational_pow(inv, -e);
    }
    Rational r = 1, b = base;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

Integer factorial(unsigned long n) {
    Integer r = 1;
    for (unsigned long i = 2; i <= n; ++i) r *= i;
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer c = 1;
    for (unsigned long i = 1; i <= k; ++i) {
        c *= (n - k + i);
        c /= i;  // exact: c is C(n-k+i, i) after this step
    }
    return c;
}

double log_integer(const Integer& x) {
    if (x <= 0) throw std::domain_error("log_integer: nonpositive argument");
    unsigned bits = boost::multiprecision::msb(x);  // index of highest set bit
    if (bits <= 900) return std::log(x.convert_to<double>());
    Integer top = x >> (bits - 63);
    return std::log(top.convert_to<double>()) + (static_cast<double>(bits) - 63.0) * std::log(2.0);
}

double log_rational(const Rational& x) {
    if (x <= 0) throw std::domain_error("log_rational: nonpositive argument");
    return log_integer(numerator(x)) - log_integer(denominator(x));
}

double to_double(const Rational& x) {
    Integer num = numerator(x), den = denominator(x);
    bool neg = num < 0;
    if (neg) num = -num;
    if (num == 0) return 0.0;
    long bn = boost::multiprecision::msb(num), bd = boost::multiprecision::msb(den);
    long sn = std::max<long>(0, bn - 63), sd = std::max<long>(0, bd - 63);
    double dn = Integer(num >> sn).convert_to<double>();
    double dd = Integer(den >> sd).convert_to<double>();
    double v = std::ldexp(dn / dd, static_cast<int>(sn - sd));
    return neg ? -v : v;
}

std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_fraction: zero denominator");
    return Rational(num, den);
}

std::string to_decimal_string(const Rational& r, int digits) {
    if (digits < 0) throw std::invalid_argument("to_decimal_string: negative digit count");
    Integer num = numerator(r), den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    Integer scale = integer_pow(10, static_cast<unsigned long>(digits));
    // round(num*scale/den) with ties away from zero
    Integer scaled = (2 * num * scale + den) / (2 * den);
    Integer ip = scaled / scale, fp = scaled % scale;
    std::string out = (neg && scaled != 0 ? "-" : "") + ip.str();
    if (digits > 0) {
        std::string frac = fp.str();
        out += "." + std::string(digits - frac.size(), '0') + frac;
    }
    return out;
}

}  // namespace curvestats
