#pragma once

#include "curvestats/rational.hpp"

#include <vector>

namespace curvestats::traceformula {

/// Relative dimension 3g - 3 + n, valid for g >= 2.
int dimension_d(int g, int n);

/// Largest coweight index in the stable range: floor((g-1)/3).
int stable_cutoff(int g);

/// sum_{j=0}^{floor((g-1)/3)} q^-j dim_{2j}, exact. Equals the stable trace
/// divided by q^{d_{g,n}}.
Rational stable_trace_normalized(int g, int n, const Integer& q);

/// Envelope of the normalized unstable trace: the same summand over
/// j = floor((g-1)/3)+1 .. d_{g,n}. Upper bound, not the trace itself:
/// the true cohomology images can only be smaller.
Rational unstable_tail_exact(int g, int n, const Integer& q);

/// Smallest c (3 decimal places, bisection) with dim_{2i} <= exp(c sqrt(i))
/// for 1 <= i <= scan_limit.
double subexp_constant(int n, int scan_limit);

/// Numeric counterpart of unstable_tail_exact with dims replaced by the
/// exp(c_n sqrt(j)) envelope; dominates the exact tail.
double unstable_tail_bound(int g, int n, const Integer& q);

/// n ln(2+2g) + ln((12g)!); exact big-integer factorial for g <= 50,
/// log-gamma beyond.
double cohomology_log_bound(int g, int n);

/// Left/right sides of the threshold inequality at q = g^K, in log space:
/// (floor((g-1)/3) - g/6) K ln g  vs  n ln(2g+2) + 12g ln(12g).
bool threshold_inequality_holds(double K, int n, long g);

struct KPrimeReport {
    bool found = false;
    long g0 = -1;          // first sampled g after which every sampled g passes
    long first_pass = -1;  // first sampled g that passes at all
    long last_violation = -1;
    std::vector<long> sampled;
    std::vector<long> violations;  // sampled g where the inequality fails
    double K = 0;
    int n = 0;
    long g_max = 0;
};

/// Sweep g over [2, g_max] (dense up to 3000, geometric beyond), find the
/// first g0 from which the inequality holds at every sampled point.
KPrimeReport kprime_search(double K, int n, long g_max);

/// q^n stable(g,n,q) / stable(g,0,q), exact.
Rational ratio_prediction(int g, int n, const Integer& q);

struct TraceProfile {
    int g = 0;
    int n = 0;
    Integer q;
    int d = 0;
    Rational stable_normalized;
    Rational unstable_tail;     // exact envelope value
    double unstable_bound = 0;  // exp(c_n sqrt(j)) envelope
    double cohomology_log = 0;
    int weight_cutoff = 0;  // d - floor((g-1)/3), the coweight where the bound takes over
};

TraceProfile make_trace_profile(int g, int n, const Integer& q);

}  // namespace curvestats::traceformula
