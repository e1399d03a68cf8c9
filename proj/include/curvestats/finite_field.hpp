#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace curvestats {

/// F_{p^k} with elements indexed 0..q-1; index digits in base p are the
/// coefficients of the residue polynomial. The modulus is the canonical
/// minimal one: the first monic degree-k polynomial (coefficients read as
/// a base-p integer) that is primitive and norm-compatible with the
/// canonical moduli of all subfields, so subfield embeddings are plain
/// discrete-log multiplications. Recorded in every serialized report.
class FiniteField {
public:
    using Elem = uint32_t;

    /// Cached per (p, k); the reference stays valid for the process lifetime.
    static const FiniteField& get(int p, int k);

    int characteristic() const { return p_; }
    int degree() const { return k_; }
    long size() const { return q_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long c) const;

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[static_cast<size_t>(a) * q_ + b];
        return add_slow(a, b);
    }
    Elem neg(Elem a) const { return neg_table_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        long s = static_cast<long>(log_[a]) + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[static_cast<size_t>(s)];
    }
    Elem inv(Elem a) const;
    Elem pow(Elem a, long long e) const;

    /// 0 for zero, +1 for nonzero squares, -1 otherwise (odd q only).
    int quadratic_character(Elem a) const;

    /// Trace to the prime field, returned as an integer in [0, p).
    int absolute_trace(Elem a) const { return trace_table_[a]; }

    Elem frobenius(Elem a) const { return frob_table_[a]; }

    /// Multiplicative generator (the class of x; the modulus is primitive).
    Elem generator() const { return k_ == 1 ? exp_[1] : from_poly_x(); }

    const std::vector<int>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    /// Index-to-index map realizing the canonical inclusion into a field
    /// with the same characteristic and degree a multiple of this one's.
    std::vector<Elem> embedding_into(const FiniteField& big) const;

    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

private:
    FiniteField(int p, int k);
    Elem add_slow(Elem a, Elem b) const;
    Elem from_poly_x() const { return static_cast<Elem>(p_); }

    int p_, k_;
    long q_;
    std::vector<int> modulus_;  // ascending coefficients, length k+1, monic
    std::vector<Elem> exp_;     // exp_[i] = x^i, i in 0..q-2
    std::vector<uint32_t> log_;
    std::vector<Elem> neg_table_, frob_table_;
    std::vector<uint8_t> trace_table_;
    std::vector<Elem> add_table_;  // only for small q
};

/// Horner evaluation of a polynomial with coefficients in the field.
FiniteField::Elem eval_poly(const FiniteField& F, const std::vector<FiniteField::Elem>& coeffs,
                            FiniteField::Elem x);

int poly_degree(const std::vector<FiniteField::Elem>& coeffs);

}  // namespace curvestats
