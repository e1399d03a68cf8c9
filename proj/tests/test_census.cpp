#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvestats/census.hpp"
#include "curvestats/finite_field.hpp"

#include "orbit_check.hpp"

#include <map>

using namespace curvestats;
namespace cs = curvestats::census;
using Elem = FiniteField::Elem;

namespace {

// Brute-force singular-point search over extensions F_{q^k}, k <= max_k.
// Independent of the library's gcd/discriminant predicates.

std::vector<Elem> embed_poly(const FiniteField& F, const FiniteField& E, const std::vector<Elem>& a) {
    auto phi = F.embedding_into(E);
    std::vector<Elem> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = phi[a[i]];
    return out;
}

std::vector<Elem> formal_derivative(const FiniteField& E, const std::vector<Elem>& a) {
    std::vector<Elem> d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(E.mul(E.from_int(static_cast<long>(i)), a[i]));
    return d;
}

// affine model y^2 + h(x) y - f(x) = 0; true iff some extension point is singular
bool has_affine_singularity(const FiniteField& F, const std::vector<Elem>& h,
                            const std::vector<Elem>& f, int max_k) {
    for (int k = 1; k <= max_k; ++k) {
        const FiniteField& E = FiniteField::get(F.characteristic(), F.degree() * k);
        auto hE = embed_poly(F, E, h), fE = embed_poly(F, E, f);
        auto hpE = formal_derivative(E, hE), fpE = formal_derivative(E, fE);
        for (long xi = 0; xi < E.size(); ++xi) {
            Elem x = static_cast<Elem>(xi);
            Elem hx = eval_poly(E, hE, x), fx = eval_poly(E, fE, x);
            Elem hpx = eval_poly(E, hpE, x), fpx = eval_poly(E, fpE, x);
            for (long yi = 0; yi < E.size(); ++yi) {
                Elem y = static_cast<Elem>(yi);
                if (E.sub(E.add(E.mul(y, y), E.mul(hx, y)), fx) != 0) continue;
                if (E.add(E.mul(E.from_int(2), y), hx) != 0) continue;
                if (E.sub(E.mul(hpx, y), fpx) != 0) continue;
                return true;
            }
        }
    }
    return false;
}

// point at infinity of the weighted degree-6 model, via the reversed pair
bool has_infinity_singularity_g2(const FiniteField& F, const std::vector<Elem>& h,
                                 const std::vector<Elem>& f) {
    const FiniteField& E = FiniteField::get(F.characteristic(), F.degree() * 2);
    auto phi = F.embedding_into(E);
    Elem h3 = phi[h[3]], h2 = phi[h[2]], f6 = phi[f[6]], f5 = phi[f[5]];
    for (long vi = 0; vi < E.size(); ++vi) {
        Elem v = static_cast<Elem>(vi);
        if (E.sub(E.add(E.mul(v, v), E.mul(h3, v)), f6) != 0) continue;
        if (E.add(E.mul(E.from_int(2), v), h3) != 0) continue;
        if (E.sub(E.mul(h2, v), f5) != 0) continue;
        return true;
    }
    return false;
}

bool brute_smooth_genus2(const FiniteField& F, const std::vector<Elem>& h,
                         const std::vector<Elem>& f) {
    if (has_affine_singularity(F, h, f, F.characteristic() == 2 ? 6 : 6)) return false;
    if (has_infinity_singularity_g2(F, h, f)) return false;
    return true;
}

}  // namespace

TEST_CASE("hand-checked point counts: y^2 + y = x^5 over F_2") {
    auto c = cs::CurveEquation::genus2({1, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0});
    const FiniteField& F2 = FiniteField::get(2, 1);
    CHECK(cs::is_smooth(c, F2));
    CHECK(cs::point_count(c, F2, 1) == 3);  // x=0 gives 2 points, x=1 none, one at infinity
    CHECK(cs::point_count(c, F2, 2) == 5);
    CHECK(cs::point_count(c, F2, 3) == 9);   // forced by zeta: s_3 = 0
    CHECK(cs::point_count(c, F2, 4) == 33);  // s_4 = -16
    CHECK_THROWS_AS(cs::point_count(c, F2, 5), std::invalid_argument);
}

TEST_CASE("genus-2 smoothness predicate matches brute force, char 2") {
    const FiniteField& F = FiniteField::get(2, 1);
    long smooth = 0;
    for (long hi = 0; hi < 16; ++hi)
        for (long fi = 0; fi < 128; ++fi) {
            std::vector<Elem> h(4), f(7);
            for (int i = 0; i < 4; ++i) h[static_cast<size_t>(i)] = (hi >> i) & 1;
            for (int i = 0; i < 7; ++i) f[static_cast<size_t>(i)] = (fi >> i) & 1;
            auto c = cs::CurveEquation::genus2(h, f);
            bool lib = cs::is_smooth(c, F);
            bool brute = brute_smooth_genus2(F, c.h, c.f);
            CHECK(lib == brute);
            smooth += lib;
        }
    CHECK(smooth == 768);
}

TEST_CASE("genus-2 smoothness predicate matches brute force, q = 3") {
    const FiniteField& F = FiniteField::get(3, 1);
    long smooth = 0;
    for (long fi = 0; fi < 2187; ++fi) {
        std::vector<Elem> f(7);
        long t = fi;
        for (auto& cc : f) {
            cc = static_cast<Elem>(t % 3);
            t /= 3;
        }
        auto c = cs::CurveEquation::genus2({}, f);
        bool lib = cs::is_smooth(c, F);
        bool brute = brute_smooth_genus2(F, c.h, c.f);
        CHECK(lib == brute);
        smooth += lib;
    }
    CHECK(smooth == 1296);
}

TEST_CASE("genus-1 discriminant matches brute-force singular search") {
    for (int p : {2, 3}) {
        const FiniteField& F = FiniteField::get(p, 1);
        long q = F.size();
        long space = q * q * q * q * q;
        long smooth = 0;
        for (long idx = 0; idx < space; ++idx) {
            std::array<Elem, 5> a{};
            long t = idx;
            for (auto& cc : a) {
                cc = static_cast<Elem>(t % q);
                t /= q;
            }
            auto c = cs::CurveEquation::genus1(a);
            bool lib = cs::is_smooth(c, F);
            // plane-cubic infinity point [0:1:0] is always smooth
            bool brute = !has_affine_singularity(F, c.h, c.f, 4);
            CHECK(lib == brute);
            smooth += lib;
        }
        CHECK(smooth == q * q * q * q * (q - 1));
    }
}

TEST_CASE("weighted distributions: frozen desk-scale values") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    const FiniteField& F3 = FiniteField::get(3, 1);

    auto g2q2 = cs::weighted_distribution(cs::CurveKind::Genus2Hyperelliptic, F2);
    CHECK(g2q2.smooth_count == 768);
    CHECK(g2q2.candidate_count == 2048);
    CHECK(g2q2.total_mass == Rational(8));
    std::map<long, Integer> expect2{{0, 16}, {1, 96}, {2, 192}, {3, 160}, {4, 192}, {5, 96}, {6, 16}};
    CHECK(g2q2.counts == expect2);
    CHECK(g2q2.group.order == 96);

    auto g2q3 = cs::weighted_distribution(cs::CurveKind::Genus2Hyperelliptic, F3);
    CHECK(g2q3.smooth_count == 1296);
    CHECK(g2q3.total_mass == Rational(27));
    std::map<long, Integer> expect3{{0, 19},  {1, 72},  {2, 180}, {3, 248}, {4, 258},
                                    {5, 248}, {6, 180}, {7, 72},  {8, 19}};
    CHECK(g2q3.counts == expect3);
    CHECK(g2q3.group.order == 48);

    auto g1q2 = cs::weighted_distribution(cs::CurveKind::Genus1Weierstrass, F2);
    CHECK(g1q2.total_mass == Rational(2));
    std::map<long, Integer> expect1{{1, 2}, {2, 4}, {3, 4}, {4, 4}, {5, 2}};
    CHECK(g1q2.counts == expect1);

    // worker split cannot change exact counts
    auto par = cs::weighted_distribution(cs::CurveKind::Genus2Hyperelliptic, F3, 3);
    CHECK(par.counts == g2q3.counts);
    CHECK(par.total_mass == g2q3.total_mass);
}

TEST_CASE("genus-1 mass equals q") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const FiniteField& F = FiniteField::get(p, k);
        auto dist = cs::weighted_distribution(cs::CurveKind::Genus1Weierstrass, F);
        CHECK(dist.total_mass == Rational(F.size()));
    }
}

TEST_CASE("full census: weil, zeta, dual-path moments") {
    const FiniteField& F2 = FiniteField::get(2, 1);
    auto rep = cs::run_census(cs::CurveKind::Genus2Hyperelliptic, F2, 3, 4);
    CHECK(rep.weil_checked == 768 * 4);
    CHECK(rep.weil_passed == rep.weil_checked);
    CHECK(rep.zeta_checked == 768);
    CHECK(rep.zeta_passed == 768);
    CHECK(rep.dual_paths_agree);
    REQUIRE(rep.falling.exact.size() == 3);
    CHECK(rep.falling.exact[0] == Rational(3));
    CHECK(rep.falling.exact[1] == Rational(63, 8));
    CHECK(rep.falling.exact[2] == Rational(69, 4));
    CHECK(rep.raw.exact[0] == Rational(3));

    auto rep3 = cs::run_census(cs::CurveKind::Genus2Hyperelliptic, FiniteField::get(3, 1), 3, 4, 2);
    CHECK(rep3.zeta_passed == rep3.zeta_checked);
    CHECK(rep3.weil_passed == rep3.weil_checked);
    CHECK(rep3.dual_paths_agree);
    CHECK(rep3.falling.exact[0] == Rational(4));
    CHECK(rep3.falling.exact[1] == Rational(404, 27));
    CHECK(rep3.falling.exact[2] == Rational(152, 3));

    auto rep1 = cs::run_census(cs::CurveKind::Genus1Weierstrass, F2, 2, 4);
    CHECK(rep1.zeta_passed == rep1.zeta_checked);
    CHECK(rep1.falling.exact[0] == Rational(3));
}

TEST_CASE("zeta helper identities") {
    // N_k of y^2 + y = x^5: s_1 = s_2 = 0
    auto pred = cs::zeta_predict_34(2, 3, 5);
    CHECK(pred[0] == 9);
    CHECK(pred[1] == 33);
    CHECK(cs::zeta_predict_genus1(2, 3, 2) == 5);  // supersingular: s_1 = 0, s_2 = -4
    CHECK_THROWS_AS(cs::zeta_predict_genus1(2, 3, 5), std::invalid_argument);
}

TEST_CASE("orbit-stabilizer validation reproduces the group orders") {
    for (int p : {2, 3}) {
        auto res = orbit_check::check_genus1(FiniteField::get(p, 1));
        CHECK(res.sum_matches);
        CHECK(res.stabilizer_ok);
        CHECK(res.smooth_invariant);
        CHECK(res.count_invariant);
    }
    auto g2q2 = orbit_check::check_genus2(FiniteField::get(2, 1));
    CHECK(g2q2.sum_matches);
    CHECK(g2q2.stabilizer_ok);
    CHECK(g2q2.smooth_invariant);
    CHECK(g2q2.count_invariant);
    CHECK(g2q2.num_orbits == 56);
    auto g2q3 = orbit_check::check_genus2(FiniteField::get(3, 1));
    CHECK(g2q3.sum_matches);
    CHECK(g2q3.stabilizer_ok);
    CHECK(g2q3.smooth_invariant);
    CHECK(g2q3.count_invariant);
    CHECK(g2q3.num_orbits == 126);
}

TEST_CASE("guards and errors") {
    CHECK_THROWS_AS(cs::candidate_space_size(cs::CurveKind::Genus2Hyperelliptic, FiniteField::get(2, 3)),
                    std::invalid_argument);  // 8^11 > 2^32
    CHECK_THROWS_AS(cs::parse_kind("genus9"), std::invalid_argument);
    CHECK(cs::parse_kind("genus1") == cs::CurveKind::Genus1Weierstrass);
    CHECK(cs::group_order(cs::CurveKind::Genus2Hyperelliptic, FiniteField::get(3, 1)).order == 48);
    CHECK(cs::group_order(cs::CurveKind::Genus1Weierstrass, FiniteField::get(3, 1)).order == 54);
}
