#pragma once

#include "curvestats/rational.hpp"

#include <vector>

namespace curvestats {

/// Power-series prefix with exact rational coefficients, degrees 0..D.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int truncation_order, const Rational& constant = 0)
        : coeffs_(static_cast<size_t>(check_order(truncation_order)) + 1, Rational(0)) {
        coeffs_[0] = constant;
    }

    static TruncatedSeries one(int truncation_order) { return TruncatedSeries(truncation_order, 1); }

    int truncation_order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& coeff(int d) const { return coeffs_.at(static_cast<size_t>(d)); }
    void set_coeff(int d, const Rational& v) { coeffs_.at(static_cast<size_t>(d)) = v; }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator+(const TruncatedSeries& o) const;

    /// Multiply in place by 1/(1 - z^k): running sums with stride k.
    void mul_geometric_inverse(int k);

    /// Substitute z -> z^2, doubling the truncation order.
    TruncatedSeries inflate_square() const;

    Rational evaluate(const Rational& z) const;

    bool operator==(const TruncatedSeries& o) const { return coeffs_ == o.coeffs_; }

private:
    static int check_order(int d) {
        if (d < 0) throw std::invalid_argument("TruncatedSeries: negative truncation order");
        return d;
    }
    std::vector<Rational> coeffs_;
};

}  // namespace curvestats
