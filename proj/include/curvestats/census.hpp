#pragma once

#include "curvestats/exactcomb.hpp"
#include "curvestats/finite_field.hpp"
#include "curvestats/rational.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace curvestats::census {

enum class CurveKind { Genus1Weierstrass, Genus2Hyperelliptic };

CurveKind parse_kind(const std::string& name);  // "genus1" | "genus2"
std::string kind_name(CurveKind kind);
int genus_of(CurveKind kind);

/// Normal-form equation. Genus 1: long Weierstrass a1,a2,a3,a4,a6.
/// Genus 2: y^2 + h(x) y = f(x) with deg h <= 3, deg f <= 6 (odd
/// characteristic normal form has h = 0 and f squarefree of degree 5/6).
struct CurveEquation {
    CurveKind kind;
    std::array<FiniteField::Elem, 5> a{};   // genus 1 coefficients
    std::vector<FiniteField::Elem> h, f;    // hyperelliptic pair (also derived for genus 1)

    static CurveEquation genus1(const std::array<FiniteField::Elem, 5>& coeffs);
    static CurveEquation genus2(std::vector<FiniteField::Elem> h, std::vector<FiniteField::Elem> f);
};

struct GroupSpec {
    Integer order;
    std::string formula;
};

/// Order of the coefficient-transformation group of the normal form.
GroupSpec group_order(CurveKind kind, const FiniteField& F);

bool is_smooth(const CurveEquation& c, const FiniteField& F);

long candidate_space_size(CurveKind kind, const FiniteField& F);

/// Stream every smooth equation of the kind, each exactly once.
/// Guard: candidate space must fit in 2^32.
void enumerate_curves(CurveKind kind, const FiniteField& F,
                      const std::function<void(const CurveEquation&)>& yield);

/// Points on the smooth projective model over F_{q^ext}; ext in 1..4.
long point_count(const CurveEquation& c, const FiniteField& F, int ext);

/// N_{k} for k = 3, 4 forced by (N_1, N_2) through the functional equation
/// of the genus-2 L-polynomial (c3 = q c1, c4 = q^2).
std::array<long, 2> zeta_predict_34(long q, long N1, long N2);

/// Genus 1: N_k for k >= 2 forced by N_1 (alpha beta = q).
long zeta_predict_genus1(long q, long N1, int k);

struct WeightedDistribution {
    CurveKind kind;
    int p = 0, k = 0;
    long q = 0;
    std::string modulus;
    GroupSpec group;
    long candidate_count = 0;
    long smooth_count = 0;
    std::map<long, Integer> counts;    // N_1 -> number of smooth equations
    std::map<long, Rational> masses;   // counts / |G|
    Rational total_mass;
};

/// 1/#Aut measure realized as (equation count)/(group order) per value.
WeightedDistribution weighted_distribution(CurveKind kind, const FiniteField& F, int workers = 1);

/// E[(N)_r] for r = 1..n_max from the histogram, exact.
exactcomb::MomentVector empirical_falling_moments(const WeightedDistribution& dist, int n_max);
exactcomb::MomentVector empirical_raw_moments(const WeightedDistribution& dist, int n_max);

struct CensusReport {
    WeightedDistribution dist;
    int max_ext = 4;
    long zeta_checked = 0, zeta_passed = 0;
    long weil_checked = 0, weil_passed = 0;
    std::vector<Rational> falling_direct;  // second path: sum over equations of (N)_r / |G| / mass
    exactcomb::MomentVector falling;       // histogram path
    exactcomb::MomentVector raw;
    bool dual_paths_agree = false;
};

/// Full census with per-curve Hasse-Weil and zeta functional-equation
/// checks over extensions 1..max_ext, and falling moments computed by two
/// independent routes.
CensusReport run_census(CurveKind kind, const FiniteField& F, int n_max = 4, int max_ext = 4,
                        int workers = 1);

}  // namespace curvestats::census
