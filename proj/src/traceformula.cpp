#include "curvestats/traceformula.hpp"

#include "curvestats/exactcomb.hpp"

#include <algorithm>
#include <cmath>

namespace curvestats::traceformula {

int dimension_d(int g, int n) {
    if (g < 2) throw std::domain_error("dimension_d: formula stated for g >= 2");
    if (n < 0) throw std::domain_error("dimension_d: n must be nonnegative");
    return 3 * g - 3 + n;
}

int stable_cutoff(int g) { return (g - 1) / 3; }

Rational stable_trace_normalized(int g, int n, const Integer& q) {
    if (g < 2) throw std::domain_error("stable_trace_normalized: g >= 2 required");
    int J = stable_cutoff(g);
    auto dims = exactcomb::graded_dimensions(n, J);
    Rational acc = 0, qinv = Rational(1, q), qpow = 1;
    for (int j = 0; j <= J; ++j) {
        acc += qpow * Rational(dims[j]);
        qpow *= qinv;
    }
    return acc;
}

Rational unstable_tail_exact(int g, int n, const Integer& q) {
    if (g < 2) throw std::domain_error("unstable_tail_exact: g >= 2 required");
    int J = stable_cutoff(g);
    int d = dimension_d(g, n);
    auto dims = exactcomb::graded_dimensions(n, d);
    Rational acc = 0, qinv = Rational(1, q);
    Rational qpow = rational_pow(qinv, J + 1);
    for (int j = J + 1; j <= d; ++j) {
        acc += qpow * Rational(dims[j]);
        qpow *= qinv;
    }
    return acc;
}

double subexp_constant(int n, int scan_limit) {
    if (scan_limit < 1) throw std::invalid_argument("subexp_constant: scan limit must be >= 1");
    auto dims = exactcomb::graded_dimensions(n, scan_limit);
    std::vector<double> logdim(dims.size()), sqrti(dims.size());
    for (int i = 1; i <= scan_limit; ++i) {
        logdim[i] = log_integer(dims[i]);
        sqrti[i] = std::sqrt(static_cast<double>(i));
    }
    auto dominates = [&](double c) {
        for (int i = 1; i <= scan_limit; ++i)
            if (c * sqrti[i] < logdim[i]) return false;
        return true;
    };
    double lo = 0.0, hi = 1.0;
    while (!dominates(hi)) hi *= 2;
    for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
        double mid = 0.5 * (lo + hi);
        (dominates(mid) ? hi : lo) = mid;
    }
    // smallest value on the 3-decimal grid that still dominates
    double c = std::floor(hi * 1000.0) / 1000.0;
    while (!dominates(c)) c += 0.001;
    return c;
}

double unstable_tail_bound(int g, int n, const Integer& q) {
    int J = stable_cutoff(g);
    int d = dimension_d(g, n);
    double c = subexp_constant(n, d);
    double lq = log_integer(q);
    double acc = 0;
    for (int j = J + 1; j <= d; ++j) acc += std::exp(c * std::sqrt(static_cast<double>(j)) - j * lq);
    return acc;
}

double cohomology_log_bound(int g, int n) {
    if (g < 1) throw std::domain_error("cohomology_log_bound: g >= 1 required");
    if (n < 0) throw std::domain_error("cohomology_log_bound: n >= 0 required");
    double marked = n * std::log(2.0 + 2.0 * g);
    double fact_log;
    if (g <= 50) {
        fact_log = log_integer(factorial(static_cast<unsigned long>(12 * g)));
    } else {
        fact_log = std::lgamma(12.0 * g + 1.0);
    }
    return marked + fact_log;
}

bool threshold_inequality_holds(double K, int n, long g) {
    double lhs = (static_cast<double>((g - 1) / 3) - g / 6.0) * K * std::log(static_cast<double>(g));
    double rhs = n * std::log(2.0 * g + 2.0) + 12.0 * g * std::log(12.0 * g);
    return lhs > rhs;
}

KPrimeReport kprime_search(double K, int n, long g_max) {
    if (K <= 144.0) throw std::domain_error("kprime_search: requires K > 144");
    if (g_max < 2) throw std::invalid_argument("kprime_search: g_max too small");
    KPrimeReport rep;
    rep.K = K;
    rep.n = n;
    rep.g_max = g_max;
    long dense_end = std::min<long>(g_max, 3000);
    for (long g = 2; g <= dense_end; ++g) rep.sampled.push_back(g);
    double g0f = static_cast<double>(dense_end);
    while (true) {
        g0f *= 1.05;
        long g = static_cast<long>(g0f);
        if (g > g_max) break;
        if (g > rep.sampled.back()) rep.sampled.push_back(g);
    }
    if (rep.sampled.back() != g_max) rep.sampled.push_back(g_max);

    for (long g : rep.sampled) {
        bool ok = threshold_inequality_holds(K, n, g);
        if (!ok) {
            rep.violations.push_back(g);
            rep.last_violation = g;
        } else if (rep.first_pass < 0) {
            rep.first_pass = g;
        }
    }
    for (long g : rep.sampled) {
        if (g > rep.last_violation && threshold_inequality_holds(K, n, g)) {
            rep.g0 = g;
            rep.found = true;
            break;
        }
    }
    return rep;
}

Rational ratio_prediction(int g, int n, const Integer& q) {
    Rational num = stable_trace_normalized(g, n, q);
    Rational den = stable_trace_normalized(g, 0, q);
    return rational_pow(Rational(q), n) * num / den;
}

TraceProfile make_trace_profile(int g, int n, const Integer& q) {
    TraceProfile t;
    t.g = g;
    t.n = n;
    t.q = q;
    t.d = dimension_d(g, n);
    t.stable_normalized = stable_trace_normalized(g, n, q);
    t.unstable_tail = unstable_tail_exact(g, n, q);
    t.unstable_bound = unstable_tail_bound(g, n, q);
    t.cohomology_log = cohomology_log_bound(g, n);
    t.weight_cutoff = t.d - stable_cutoff(g);
    return t;
}

}  // namespace curvestats::traceformula
