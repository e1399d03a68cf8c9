#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvestats/exactcomb.hpp"
#include "curvestats/interval.hpp"
#include "curvestats/rational.hpp"
#include "curvestats/series.hpp"

#include "oracles.hpp"

using namespace curvestats;
namespace ec = curvestats::exactcomb;

TEST_CASE("rational helpers") {
    CHECK(to_fraction_string(Rational(81, 4)) == "81/4");
    CHECK(parse_fraction("81/4") == Rational(81, 4));
    CHECK(parse_fraction("-7") == Rational(-7));
    CHECK(to_decimal_string(Rational(1, 3), 6) == "0.333333");
    CHECK(to_decimal_string(Rational(2, 3), 6) == "0.666667");
    CHECK(to_decimal_string(Rational(-1, 8), 3) == "-0.125");
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(3, 7) == 0);
    CHECK(factorial(12) == Integer("479001600"));
    CHECK(to_double(Rational(1, 4)) == 0.25);
    // huge magnitudes stay finite and accurate
    Rational big = Rational(integer_pow(10, 400), integer_pow(7, 300));
    double lg = log_rational(big);
    CHECK(lg == doctest::Approx(400 * std::log(10.0) - 300 * std::log(7.0)).epsilon(1e-12));
}

TEST_CASE("partition numbers against enumeration") {
    auto p = ec::partition_numbers(40);
    CHECK(ec::partition_numbers(0) == std::vector<Integer>{1});
    CHECK(p[4] == 5);    // enumeration: 4, 3+1, 2+2, 2+1+1, 1+1+1+1
    CHECK(p[10] == 42);
    for (int i = 0; i <= 40; ++i) CHECK(p[static_cast<size_t>(i)] == Integer(oracles::count_partitions(i)));
    CHECK_THROWS_AS(ec::partition_numbers(-1), std::invalid_argument);
}

TEST_CASE("multiset series against enumeration") {
    auto q1 = ec::multiset_series(1, 20);
    for (int j = 0; j <= 20; ++j) CHECK(q1.coeff(j) == 1);
    CHECK(ec::multiset_series(2, 5).coeff(3) == 4);  // aaa, aab, abb, bbb
    CHECK(ec::multiset_series(3, 5).coeff(2) == 6);
    auto q0 = ec::multiset_series(0, 8);
    CHECK(q0.coeff(0) == 1);
    for (int j = 1; j <= 8; ++j) CHECK(q0.coeff(j) == 0);
    for (int n = 0; n <= 4; ++n)
        for (int j = 0; j <= 7; ++j)
            CHECK(ec::multiset_series(n, 8).coeff(j) == Integer(oracles::count_multisets(n, j)));
}

TEST_CASE("hilbert series: dimensions, parity, product identity") {
    auto p = ec::partition_numbers(50);
    auto hs0 = ec::hilbert_series(0, 50);
    CHECK(hs0.coeff(0) == 1);
    CHECK(hs0.coeff(8) == 5);  // z^8 coefficient is p(4)
    for (int i = 0; i <= 50; ++i) CHECK(hs0.coeff(2 * i) == Rational(p[static_cast<size_t>(i)]));
    CHECK(ec::hilbert_series(1, 10).coeff(2) == 2);  // kappa_1 and psi_1

    for (int n = 0; n <= 8; ++n) {
        const int D = 40;
        auto hs = ec::hilbert_series(n, D);
        // independent route: multiset and partition series composed in z^2
        TruncatedSeries ps(D);
        for (int j = 0; j <= D; ++j) ps.set_coeff(j, Rational(p[static_cast<size_t>(j)]));
        auto rhs = ec::multiset_series(n, D).inflate_square() * ps.inflate_square();
        CHECK(hs == rhs);
        for (int d = 1; d <= 2 * D; d += 2) CHECK(hs.coeff(d) == 0);
    }
}

TEST_CASE("series arithmetic") {
    TruncatedSeries one = TruncatedSeries::one(6);
    TruncatedSeries geo = one;
    geo.mul_geometric_inverse(1);
    for (int d = 0; d <= 6; ++d) CHECK(geo.coeff(d) == 1);
    auto sq = geo * geo;
    for (int d = 0; d <= 6; ++d) CHECK(sq.coeff(d) == d + 1);
    CHECK(geo.evaluate(Rational(1, 2)) == Rational(127, 64));
    auto infl = geo.inflate_square();
    CHECK(infl.truncation_order() == 12);
    CHECK(infl.coeff(4) == 1);
    CHECK(infl.coeff(5) == 0);
}

TEST_CASE("lambda of q") {
    CHECK(ec::lambda_of_q(2) == Rational(4));
    CHECK(ec::lambda_of_q(3) == Rational(9, 2));
    CHECK(ec::lambda_of_q(4) == Rational(16, 3));
    for (long q = 2; q <= 60; ++q)
        CHECK(ec::lambda_of_q(q) == Rational(Integer(q) * q, Integer(q) - 1));
    CHECK_THROWS_AS(ec::lambda_of_q(1), std::domain_error);
}

TEST_CASE("stirling numbers of the second kind") {
    for (int n = 1; n <= 10; ++n) CHECK(ec::stirling2(n, n) == 1);
    CHECK(ec::stirling2(3, 2) == 3);
    CHECK(ec::stirling2(4, 2) == 7);
    for (int n = 1; n <= 9; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(ec::stirling2(n, k) == Integer(oracles::count_set_partitions(n, k)));
    CHECK_THROWS_AS(ec::stirling2(3, 4), std::domain_error);
    CHECK_THROWS_AS(ec::stirling2(3, 0), std::domain_error);
}

TEST_CASE("predicted moments") {
    CHECK(ec::predicted_moment(1, 2) == Rational(4));
    CHECK(ec::predicted_moment(2, 2) == Rational(20));   // lambda^2 + lambda at lambda = 4
    CHECK(ec::predicted_moment(3, 2) == Rational(116));  // lambda^3 + 3 lambda^2 + lambda
    CHECK(ec::predicted_falling_moment(1, 2) == Rational(4));
    CHECK(ec::predicted_falling_moment(2, 3) == Rational(81, 4));
    CHECK(ec::predicted_falling_moment(0, 5) == Rational(1));
}

TEST_CASE("falling and raw moments are two bases for the same data") {
    // (x)_n = sum_k s(n, k) x^k with signed first-kind Stirling numbers
    auto s1 = oracles::stirling1_table(8);
    for (long q : {2L, 3L, 5L}) {
        for (int n = 1; n <= 8; ++n) {
            Rational lhs = ec::predicted_falling_moment(n, q);
            Rational rhs = 0;
            for (int k = 1; k <= n; ++k)
                rhs += Rational(s1[static_cast<size_t>(n)][static_cast<size_t>(k)]) * ec::predicted_moment(k, q);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("closed-form ratio") {
    CHECK(ec::hs_ratio_closed_form(0, 7) == 1);
    CHECK(ec::hs_ratio_closed_form(1, 2) == Rational(4));
    CHECK(ec::hs_ratio_closed_form(2, 3) == Rational(81, 4));
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L})
        for (int n = 0; n <= 10; ++n)
            CHECK(ec::hs_ratio_closed_form(n, q) == ec::predicted_falling_moment(n, q));
}

TEST_CASE("truncated ratio converges to the closed form") {
    const Integer q = 2;
    auto dims = ec::graded_dimensions(5, 220);
    auto partial = [&](int n, int D) {
        auto dn = ec::graded_dimensions(n, D);
        Rational acc = 0, qpow = 1, qinv = Rational(1, q);
        for (int j = 0; j <= D; ++j) {
            acc += qpow * Rational(dn[static_cast<size_t>(j)]);
            qpow *= qinv;
        }
        return acc;
    };
    (void)dims;
    for (int n = 1; n <= 3; ++n) {
        Rational target = ec::hs_ratio_closed_form(n, q);
        Rational prev_err = -1;
        for (int D : {20, 60, 120}) {
            Rational ratio = rational_pow(Rational(q), n) * partial(n, D) / partial(0, D);
            Rational err = ratio - target;
            if (err < 0) err = -err;
            if (prev_err >= 0) CHECK(err <= prev_err);
            prev_err = err;
        }
        CHECK(prev_err < Rational(1, 1000000));
    }
}

TEST_CASE("interval exponential is certified") {
    // e to 30 digits: 2.718281828459045235360287471353
    Interval e = exp_interval(Rational(1), 30);
    Rational e_ref = parse_fraction("2718281828459045235360287471353") / integer_pow(10, 30);
    CHECK(e.lo <= e_ref);
    CHECK(e.hi >= e_ref);
    CHECK(e.width() < Rational(1, integer_pow(10, 28)));
    // exp(-x) * exp(x) contains 1
    Interval prod = exp_interval(Rational(-7, 3), 40) * exp_interval(Rational(7, 3), 40);
    CHECK(prod.contains(1));
    // large argument: relative width stays certified
    Interval big = exp_interval(Rational(250), 30);
    CHECK(big.width() / big.lo < Rational(1, integer_pow(10, 25)));
    CHECK_THROWS_AS(exp_interval(Rational(1), 0), std::invalid_argument);
}

TEST_CASE("poisson pmf with certified radius") {
    // high-precision reference for e^-4, 50 digits
    Rational e4 = parse_fraction("1831563888873418029371802127324124221191206755348") /
                  integer_pow(10, 50);
    auto p0 = ec::poisson_pmf(0, Rational(4), 50);
    Rational diff = p0.center - e4;
    if (diff < 0) diff = -diff;
    CHECK(diff <= p0.radius + Rational(1, integer_pow(10, 49)));
    CHECK(p0.radius < Rational(1, integer_pow(10, 50)));

    ec::CertifiedPoisson pois(Rational(4), 55);
    auto total = pois.pmf_sum(200);
    Rational gap = total.center - 1;
    if (gap < 0) gap = -gap;
    CHECK(gap <= total.radius + Rational(1, integer_pow(10, 50)));

    // mode at floor(lambda): pmf(4) maximal (ties with pmf(3) at lambda = 4)
    auto p4 = pois.pmf(4);
    for (int n = 0; n <= 60; ++n) {
        auto pn = pois.pmf(n);
        CHECK(p4.center + p4.radius + pn.radius >= pn.center);
    }
    CHECK(pois.pmf(3).center == p4.center);

    CHECK_THROWS_AS(ec::poisson_pmf(1, Rational(0), 30), std::domain_error);
    CHECK_THROWS_AS(ec::poisson_pmf(1, Rational(4), 0), std::invalid_argument);
}

TEST_CASE("certified poisson moments match the exact prediction") {
    ec::CertifiedPoisson pois(ec::lambda_of_q(2), 50);
    for (int n = 1; n <= 4; ++n) {
        auto m = pois.raw_moment(n);
        CHECK(m.consistent_with(ec::predicted_moment(n, 2)));
        CHECK(m.radius < Rational(1, integer_pow(10, 20)));
    }
}
