#include "curvestats/exactcomb.hpp"

#include <cassert>

namespace curvestats::exactcomb {

std::vector<Integer> partition_numbers(int D) {
    if (D < 0) throw std::invalid_argument("partition_numbers: D must be nonnegative");
    std::vector<Integer> p(static_cast<size_t>(D) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= D; ++part)
        for (int i = part; i <= D; ++i) p[i] += p[i - part];
    return p;
}

std::vector<Integer> graded_dimensions(int n, int D) {
    if (n < 0 || D < 0) throw std::invalid_argument("graded_dimensions: negative argument");
    std::vector<Integer> v(static_cast<size_t>(D) + 1, 0);
    v[0] = 1;
    for (int rep = 0; rep < n; ++rep)
        for (int i = 1; i <= D; ++i) v[i] += v[i - 1];
    for (int j = 1; j <= D; ++j)
        for (int i = j; i <= D; ++i) v[i] += v[i - j];
    return v;
}

TruncatedSeries multiset_series(int n, int D) {
    if (n < 0 || D < 0) throw std::invalid_argument("multiset_series: negative argument");
    TruncatedSeries s(D);
    s.set_coeff(0, 1);
    Integer c = 1;  // C(n+j-1, j), updated incrementally
    for (int j = 1; j <= D; ++j) {
        c *= n + j - 1;
        c /= j;
        s.set_coeff(j, Rational(c));
    }
    return s;
}

TruncatedSeries hilbert_series(int n, int D) {
    auto dims = graded_dimensions(n, D);
    TruncatedSeries s(2 * D);
    for (int i = 0; i <= D; ++i) s.set_coeff(2 * i, Rational(dims[i]));
    return s;
}

Rational lambda_of_q(const Integer& q) {
    if (q < 2) throw std::domain_error("lambda_of_q: q must be at least 2");
    Rational lam = Rational(q) + 1 + Rational(1, q - 1);
    assert(lam == Rational(q * q, q - 1));
    return lam;
}

Integer stirling2(int n, int k) {
    if (k < 1 || k > n) throw std::domain_error("stirling2: requires 1 <= k <= n");
    // S(i, j) = j S(i-1, j) + S(i-1, j-1), one rolling row
    std::vector<Integer> row(static_cast<size_t>(k) + 1, 0);
    row[0] = 1;  // S(0, 0); S(i, 0) = 0 once i > 0
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) row[j] = Integer(j) * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

Rational predicted_moment(int n, const Integer& q) {
    if (n < 1) throw std::domain_error("predicted_moment: n must be positive");
    Rational lam = lambda_of_q(q);
    Rational acc = 0, lpow = 1;
    for (int i = 1; i <= n; ++i) {
        lpow *= lam;
        acc += Rational(stirling2(n, i)) * lpow;
    }
    return acc;
}

Rational predicted_falling_moment(int n, const Integer& q) {
    if (n < 0) throw std::domain_error("predicted_falling_moment: n must be nonnegative");
    return rational_pow(lambda_of_q(q), n);
}

Rational hs_ratio_closed_form(int n, const Integer& q) {
    if (n < 0) throw std::domain_error("hs_ratio_closed_form: n must be nonnegative");
    if (q < 2) throw std::domain_error("hs_ratio_closed_form: q must be at least 2");
    Rational one_minus = 1 - Rational(1, q);
    Rational r = rational_pow(Rational(q), n) * rational_pow(one_minus, -static_cast<long>(n));
    assert(r == rational_pow(lambda_of_q(q), n));
    return r;
}

CertifiedReal poisson_pmf(int n, const Rational& lambda, int digits) {
    return CertifiedPoisson(lambda, digits).pmf(n);
}

CertifiedPoisson::CertifiedPoisson(Rational lambda, int digits) : lambda_(std::move(lambda)), digits_(digits) {
    if (lambda_ <= 0) throw std::domain_error("CertifiedPoisson: lambda must be positive");
    if (digits_ <= 0) throw std::invalid_argument("CertifiedPoisson: precision must be positive");
    exp_neg_lambda_ = exp_interval(-lambda_, digits_ + 6);
}

Interval CertifiedPoisson::pmf_interval(int n) const {
    if (n < 0) throw std::domain_error("CertifiedPoisson::pmf: n must be nonnegative");
    Rational coef = rational_pow(lambda_, n) / Rational(factorial(static_cast<unsigned long>(n)));
    return exp_neg_lambda_ * coef;
}

CertifiedReal CertifiedPoisson::pmf(int n) const { return to_certified(pmf_interval(n)); }

CertifiedReal CertifiedPoisson::raw_moment(int order) const {
    if (order < 0) throw std::domain_error("CertifiedPoisson::raw_moment: negative order");
    // beyond N = max(4 lambda, 2 order) the term ratio is at most
    // e^{1/2} * 1/4 < 1/2, so the tail is geometric
    double lam = to_double(lambda_);
    int N = static_cast<int>(std::ceil(4.0 * lam)) + 2 * order + 64;
    Interval acc{Rational(0)};
    for (int k = 0; k <= N; ++k) {
        Rational kp = rational_pow(Rational(k), order);
        acc = acc + pmf_interval(k) * kp;
    }
    // tail <= 2 (N+1)^order pmf(N+1): successive ratio ((k+1)/k)^order lam/(k+1) <= 1/2
    Rational head = rational_pow(Rational(N + 1), order);
    Interval tail{Rational(0), pmf_interval(N + 1).hi * head * 2};
    return to_certified((acc + tail).compress(digits_ + 4));
}

CertifiedReal CertifiedPoisson::pmf_sum(int n_max) const {
    Interval acc{Rational(0)};
    for (int k = 0; k <= n_max; ++k) acc = acc + pmf_interval(k);
    return to_certified(acc);
}

}  // namespace curvestats::exactcomb
