#include "curvestats/series.hpp"

namespace curvestats {

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    int D = std::min(truncation_order(), o.truncation_order());
    TruncatedSeries r(D);
    for (int i = 0; i <= D; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; i + j <= D; ++j) {
            if (o.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    int D = std::min(truncation_order(), o.truncation_order());
    TruncatedSeries r(D);
    for (int i = 0; i <= D; ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return r;
}

void TruncatedSeries::mul_geometric_inverse(int k) {
    if (k <= 0) throw std::invalid_argument("mul_geometric_inverse: stride must be positive");
    int D = truncation_order();
    for (int d = k; d <= D; ++d) coeffs_[d] += coeffs_[d - k];
}

TruncatedSeries TruncatedSeries::inflate_square() const {
    TruncatedSeries r(2 * truncation_order());
    for (int d = 0; d <= truncation_order(); ++d) r.coeffs_[2 * d] = coeffs_[d];
    return r;
}

Rational TruncatedSeries::evaluate(const Rational& z) const {
    Rational acc = 0;
    for (int d = truncation_order(); d >= 0; --d) acc = acc * z + coeffs_[d];
    return acc;
}

}  // namespace curvestats
