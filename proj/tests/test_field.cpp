#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvestats/finite_field.hpp"
#include "curvestats/rng.hpp"

using namespace curvestats;
using Elem = FiniteField::Elem;

namespace {

void check_axioms(const FiniteField& F, int trials) {
    Xoshiro256pp rng(2024, static_cast<uint64_t>(F.size()));
    long q = F.size();
    for (int t = 0; t < trials; ++t) {
        Elem a = static_cast<Elem>(rng.next() % q);
        Elem b = static_cast<Elem>(rng.next() % q);
        Elem c = static_cast<Elem>(rng.next() % q);
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        CHECK(F.add(a, F.neg(a)) == 0);
        CHECK(F.sub(a, a) == 0);
        // Frobenius is a ring endomorphism
        CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
        CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
        CHECK(F.frobenius(a) == F.pow(a, F.characteristic()));
    }
    CHECK(F.add(0, 0) == 0);
    CHECK(F.mul(1, 1) == 1);
    for (long a = 1; a < q; ++a) CHECK(F.mul(static_cast<Elem>(a), F.inv(static_cast<Elem>(a))) == 1);
    CHECK_THROWS_AS(F.inv(0), std::domain_error);
}

}  // namespace

TEST_CASE("field axioms across characteristics and degrees") {
    for (auto [p, kmax] : std::vector<std::pair<int, int>>{{2, 8}, {3, 6}, {5, 4}, {7, 3}}) {
        for (int k = 1; k <= kmax; ++k) {
            const FiniteField& F = FiniteField::get(p, k);
            CHECK(F.characteristic() == p);
            CHECK(F.degree() == k);
            check_axioms(F, 100);
        }
    }
}

TEST_CASE("modulus is monic of the right degree and recorded") {
    const FiniteField& F = FiniteField::get(3, 4);
    CHECK(F.modulus().size() == 5);
    CHECK(F.modulus().back() == 1);
    CHECK(!F.modulus_string().empty());
    // the generator x really has full multiplicative order
    Elem g = F.generator();
    long order = 1;
    Elem cur = g;
    while (cur != 1) {
        cur = F.mul(cur, g);
        ++order;
    }
    CHECK(order == F.size() - 1);
}

TEST_CASE("quadratic character marks exactly the squares") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {3, 4}}) {
        const FiniteField& F = FiniteField::get(p, k);
        long q = F.size();
        std::vector<char> is_square(static_cast<size_t>(q), 0);
        for (long a = 0; a < q; ++a)
            is_square[F.mul(static_cast<Elem>(a), static_cast<Elem>(a))] = 1;
        CHECK(F.quadratic_character(0) == 0);
        long plus = 0;
        for (long a = 1; a < q; ++a) {
            int chi = F.quadratic_character(static_cast<Elem>(a));
            CHECK(chi == (is_square[static_cast<size_t>(a)] ? 1 : -1));
            plus += chi == 1;
        }
        CHECK(plus == (q - 1) / 2);
    }
    CHECK_THROWS_AS(FiniteField::get(2, 2).quadratic_character(1), std::domain_error);
}

TEST_CASE("absolute trace") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {2, 6}, {3, 2}, {5, 2}}) {
        const FiniteField& F = FiniteField::get(p, k);
        long q = F.size();
        std::vector<long> counts(static_cast<size_t>(p), 0);
        for (long a = 0; a < q; ++a) {
            int tr = F.absolute_trace(static_cast<Elem>(a));
            CHECK(tr >= 0);
            CHECK(tr < p);
            CHECK(F.absolute_trace(F.frobenius(static_cast<Elem>(a))) == tr);
            ++counts[static_cast<size_t>(tr)];
        }
        // trace is a surjective linear form: each value hit q/p times
        for (int v = 0; v < p; ++v) CHECK(counts[static_cast<size_t>(v)] == q / p);
        Xoshiro256pp rng(7, 0);
        for (int t = 0; t < 50; ++t) {
            Elem a = static_cast<Elem>(rng.next() % q), b = static_cast<Elem>(rng.next() % q);
            CHECK(F.absolute_trace(F.add(a, b)) == (F.absolute_trace(a) + F.absolute_trace(b)) % p);
        }
    }
}

TEST_CASE("subfield embeddings are compatible ring maps") {
    struct Case {
        int p, k_small, k_big;
    };
    for (auto [p, ks, kb] : std::vector<Case>{{2, 1, 4}, {2, 2, 4}, {2, 2, 8}, {3, 1, 2}, {3, 2, 4}, {5, 1, 4}, {3, 2, 8}}) {
        const FiniteField& S = FiniteField::get(p, ks);
        const FiniteField& B = FiniteField::get(p, kb);
        auto phi = S.embedding_into(B);
        CHECK(phi[0] == 0);
        CHECK(phi[1] == 1);
        for (long a = 0; a < S.size(); ++a)
            for (long b = 0; b < S.size(); ++b) {
                CHECK(phi[S.add(static_cast<Elem>(a), static_cast<Elem>(b))] ==
                      B.add(phi[static_cast<size_t>(a)], phi[static_cast<size_t>(b)]));
                CHECK(phi[S.mul(static_cast<Elem>(a), static_cast<Elem>(b))] ==
                      B.mul(phi[static_cast<size_t>(a)], phi[static_cast<size_t>(b)]));
            }
        // embedded elements are fixed by Frobenius^k_small
        for (long a = 0; a < S.size(); ++a) {
            Elem img = phi[static_cast<size_t>(a)];
            Elem it = img;
            for (int i = 0; i < ks; ++i) it = B.frobenius(it);
            CHECK(it == img);
        }
    }
    // tower compatibility: F_2 -> F_4 -> F_16 equals F_2 -> F_16
    const FiniteField& F2 = FiniteField::get(2, 1);
    const FiniteField& F4 = FiniteField::get(2, 2);
    const FiniteField& F16 = FiniteField::get(2, 4);
    auto a_ = F2.embedding_into(F4);
    auto b_ = F4.embedding_into(F16);
    auto c_ = F2.embedding_into(F16);
    for (long x = 0; x < 2; ++x) CHECK(b_[a_[static_cast<size_t>(x)]] == c_[static_cast<size_t>(x)]);
    CHECK_THROWS_AS(F4.embedding_into(FiniteField::get(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(F4.embedding_into(FiniteField::get(3, 2)), std::invalid_argument);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(FiniteField::get(4, 1), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(FiniteField::get(2, 25), std::invalid_argument);  // too large
    CHECK(eval_poly(FiniteField::get(2, 1), {1, 1, 1}, 1) == 1);      // 1 + 1 + 1 over F_2
    CHECK(poly_degree({0, 0, 1, 0}) == 2);
    CHECK(poly_degree({0, 0}) == -1);
}
