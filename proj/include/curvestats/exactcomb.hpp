#pragma once

#include "curvestats/interval.hpp"
#include "curvestats/rational.hpp"
#include "curvestats/series.hpp"

#include <vector>

namespace curvestats::exactcomb {

/// Partition numbers p(0..D) by bounded dynamic programming.
std::vector<Integer> partition_numbers(int D);

/// Graded dimensions of the kappa/psi polynomial ring: the coefficient of
/// z^{2i} in its Hilbert series, for i = 0..D. Computed from the product
/// of geometric factors (n copies of 1/(1-u) and 1/(1-u^j) for j <= D;
/// factors with j > D cannot touch these degrees).
std::vector<Integer> graded_dimensions(int n, int D);

/// Q_n: coefficient of z^j is the number of j-multisets on n elements,
/// C(n+j-1, j); Q_0 = 1.
TruncatedSeries multiset_series(int n, int D);

/// Hilbert series in z, truncated at degree 2D; odd coefficients vanish.
TruncatedSeries hilbert_series(int n, int D);

/// q + 1 + 1/(q-1); equals q^2/(q-1) exactly (asserted).
Rational lambda_of_q(const Integer& q);

/// Partitions of {1..n} into k nonempty blocks, additive recurrence.
Integer stirling2(int n, int k);

/// Predicted n-th raw moment: sum_i {n i} lambda^i.
Rational predicted_moment(int n, const Integer& q);

/// Predicted n-th falling moment: lambda^n.
Rational predicted_falling_moment(int n, const Integer& q);

/// q^n (1 - q^-1)^-n, the telescoped graded-dimension ratio; equals
/// lambda^n exactly (asserted).
Rational hs_ratio_closed_form(int n, const Integer& q);

/// lambda^n e^-lambda / n! with a certified error radius; the radius is
/// below 10^-digits in absolute terms (the value never exceeds 1).
CertifiedReal poisson_pmf(int n, const Rational& lambda, int digits = 50);

/// Reusable certified Poisson reference: shares one e^-lambda evaluation
/// across pmf and tail-bounded moment sums.
class CertifiedPoisson {
public:
    CertifiedPoisson(Rational lambda, int digits = 50);

    const Rational& lambda() const { return lambda_; }
    CertifiedReal pmf(int n) const;

    /// Sum of k^order pmf(k) over k = 0..cutoff plus a rigorous bound on the
    /// dropped tail, as one certified value.
    CertifiedReal raw_moment(int order) const;

    /// Certified sum of pmf over n = 0..n_max.
    CertifiedReal pmf_sum(int n_max) const;

private:
    Interval pmf_interval(int n) const;
    Rational lambda_;
    int digits_;
    Interval exp_neg_lambda_;
};

/// Exact or approximate moments indexed 1..n_max, tagged with which.
struct MomentVector {
    enum class Kind { Exact, Approximate };
    Kind kind = Kind::Exact;
    std::vector<Rational> exact;   // used when kind == Exact
    std::vector<double> approx;    // used when kind == Approximate

    int max_order() const {
        return static_cast<int>(kind == Kind::Exact ? exact.size() : approx.size());
    }
};

}  // namespace curvestats::exactcomb
