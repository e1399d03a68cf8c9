#include "curvestats/census.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace curvestats::census {

namespace {

using Elem = FiniteField::Elem;
using Poly = std::vector<Elem>;

Poly derivative(const FiniteField& F, const Poly& a) {
    Poly d;
    for (size_t i = 1; i < a.size(); ++i)
        d.push_back(F.mul(F.from_int(static_cast<long>(i)), a[i]));
    while (!d.empty() && d.back() == 0) d.pop_back();
    return d;
}

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const FiniteField& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return trim(std::move(r));
}

Poly poly_mod(const FiniteField& F, Poly a, const Poly& b) {
    a = trim(std::move(a));
    Elem lead_inv = F.inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        Elem c = F.mul(a.back(), lead_inv);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_gcd(const FiniteField& F, Poly a, Poly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int degree(const Poly& a) { return poly_degree(a); }

}  // namespace

CurveKind parse_kind(const std::string& name) {
    if (name == "genus1") return CurveKind::Genus1Weierstrass;
    if (name == "genus2") return CurveKind::Genus2Hyperelliptic;
    throw std::invalid_argument("unsupported curve kind: " + name);
}

std::string kind_name(CurveKind kind) {
    return kind == CurveKind::Genus1Weierstrass ? "genus1" : "genus2";
}

int genus_of(CurveKind kind) { return kind == CurveKind::Genus1Weierstrass ? 1 : 2; }

CurveEquation CurveEquation::genus1(const std::array<Elem, 5>& coeffs) {
    CurveEquation c;
    c.kind = CurveKind::Genus1Weierstrass;
    c.a = coeffs;
    // y^2 + (a1 x + a3) y = x^3 + a2 x^2 + a4 x + a6
    c.h = {coeffs[2], coeffs[0]};
    c.f = {coeffs[4], coeffs[3], coeffs[1], 1};
    return c;
}

CurveEquation CurveEquation::genus2(Poly h, Poly f) {
    CurveEquation c;
    c.kind = CurveKind::Genus2Hyperelliptic;
    c.h = std::move(h);
    c.f = std::move(f);
    c.h.resize(4, 0);
    c.f.resize(7, 0);
    return c;
}

GroupSpec group_order(CurveKind kind, const FiniteField& F) {
    Integer q(F.size());
    if (kind == CurveKind::Genus1Weierstrass)
        return {q * q * q * (q - 1), "q^3(q-1)"};
    Integer gl2 = (q * q - 1) * (q * q - q);
    if (F.characteristic() == 2)
        return {gl2 * q * q * q * q, "(q^2-1)(q^2-q)q^4"};
    return {gl2, "(q^2-1)(q^2-q)"};
}

namespace {

bool genus1_smooth(const CurveEquation& c, const FiniteField& F) {
    Elem a1 = c.a[0], a2 = c.a[1], a3 = c.a[2], a4 = c.a[3], a6 = c.a[4];
    auto C = [&](long v) { return F.from_int(v); };
    Elem b2 = F.add(F.mul(a1, a1), F.mul(C(4), a2));
    Elem b4 = F.add(F.mul(C(2), a4), F.mul(a1, a3));
    Elem b6 = F.add(F.mul(a3, a3), F.mul(C(4), a6));
    Elem b8 = F.sub(F.add(F.add(F.mul(F.mul(a1, a1), a6), F.mul(C(4), F.mul(a2, a6))),
                          F.mul(a2, F.mul(a3, a3))),
                    F.add(F.mul(a1, F.mul(a3, a4)), F.mul(a4, a4)));
    Elem disc = F.sub(F.mul(C(9), F.mul(b2, F.mul(b4, b6))),
                      F.add(F.add(F.mul(F.mul(b2, b2), b8), F.mul(C(8), F.mul(b4, F.mul(b4, b4)))),
                            F.mul(C(27), F.mul(b6, b6))));
    return disc != 0;
}

bool genus2_smooth(const CurveEquation& c, const FiniteField& F) {
    int dh = degree(c.h), df = degree(c.f);
    int md = std::max(2 * dh, df);
    if (md != 5 && md != 6) return false;
    if (F.characteristic() != 2) {
        // odd characteristic normal form: h = 0, f squarefree
        if (dh >= 0) return false;
        Poly fp = derivative(F, c.f);
        if (fp.empty()) return false;
        return degree(poly_gcd(F, c.f, fp)) == 0;
    }
    if (dh < 0) return false;
    // affine: no common root of h and f'^2 + h'^2 f over the closure
    Poly fp = derivative(F, c.f), hp = derivative(F, c.h);
    Poly s = poly_mul(F, fp, fp);
    Poly t = poly_mul(F, poly_mul(F, hp, hp), c.f);
    s.resize(std::max(s.size(), t.size()), 0);
    for (size_t i = 0; i < t.size(); ++i) s[i] = F.add(s[i], t[i]);
    s = trim(std::move(s));
    Poly g = s.empty() ? trim(c.h) : poly_gcd(F, c.h, s);
    if (g.empty() || degree(g) > 0) return false;
    // infinity via the degree-reversed pair: singular iff rev(h)(0) = 0 and
    // rev(f)'(0)^2 + rev(h)'(0)^2 rev(f)(0) = 0, i.e. h3 = 0 and
    // f5^2 + h2^2 f6 = 0
    Elem h3 = c.h[3], h2 = c.h[2], f5 = c.f[5], f6 = c.f[6];
    if (h3 == 0) {
        Elem w = F.add(F.mul(f5, f5), F.mul(F.mul(h2, h2), f6));
        if (w == 0) return false;
    }
    return true;
}

}  // namespace

bool is_smooth(const CurveEquation& c, const FiniteField& F) {
    return c.kind == CurveKind::Genus1Weierstrass ? genus1_smooth(c, F) : genus2_smooth(c, F);
}

long candidate_space_size(CurveKind kind, const FiniteField& F) {
    long q = F.size();
    double size = kind == CurveKind::Genus1Weierstrass ? std::pow(static_cast<double>(q), 5)
                  : F.characteristic() == 2            ? std::pow(static_cast<double>(q), 11)
                                                       : std::pow(static_cast<double>(q), 7);
    if (size > 4294967296.0) throw std::invalid_argument("census: coefficient space exceeds 2^32");
    long n = 1;
    int exponent = kind == CurveKind::Genus1Weierstrass ? 5 : (F.characteristic() == 2 ? 11 : 7);
    for (int i = 0; i < exponent; ++i) n *= q;
    return n;
}

namespace {

CurveEquation decode(CurveKind kind, const FiniteField& F, long idx) {
    long q = F.size();
    if (kind == CurveKind::Genus1Weierstrass) {
        std::array<Elem, 5> a{};
        for (auto& c : a) {
            c = static_cast<Elem>(idx % q);
            idx /= q;
        }
        return CurveEquation::genus1(a);
    }
    Poly f(7);
    for (auto& c : f) {
        c = static_cast<Elem>(idx % q);
        idx /= q;
    }
    Poly h;
    if (F.characteristic() == 2) {
        h.resize(4);
        for (auto& c : h) {
            c = static_cast<Elem>(idx % q);
            idx /= q;
        }
    }
    return CurveEquation::genus2(std::move(h), std::move(f));
}

void enumerate_range(CurveKind kind, const FiniteField& F, long lo, long hi,
                     const std::function<void(const CurveEquation&)>& yield) {
    for (long idx = lo; idx < hi; ++idx) {
        CurveEquation c = decode(kind, F, idx);
        if (is_smooth(c, F)) yield(c);
    }
}

}  // namespace

void enumerate_curves(CurveKind kind, const FiniteField& F,
                      const std::function<void(const CurveEquation&)>& yield) {
    enumerate_range(kind, F, 0, candidate_space_size(kind, F), yield);
}

long point_count(const CurveEquation& c, const FiniteField& F, int ext) {
    if (ext < 1 || ext > 4)
        throw std::invalid_argument("point_count: extension arithmetic available for 1 <= k <= 4");
    const FiniteField& E =
        ext == 1 ? F : FiniteField::get(F.characteristic(), F.degree() * ext);
    Poly hE(c.h.size()), fE(c.f.size());
    if (ext == 1) {
        hE = c.h;
        fE = c.f;
    } else {
        auto embed = F.embedding_into(E);
        for (size_t i = 0; i < c.h.size(); ++i) hE[i] = embed[c.h[i]];
        for (size_t i = 0; i < c.f.size(); ++i) fE[i] = embed[c.f[i]];
    }
    bool char2 = F.characteristic() == 2;
    long n = 0;
    for (long xi = 0; xi < E.size(); ++xi) {
        Elem x = static_cast<Elem>(xi);
        Elem hx = eval_poly(E, hE, x);
        Elem fx = eval_poly(E, fE, x);
        if (char2) {
            if (hx == 0) {
                ++n;  // y -> y^2 is bijective
            } else {
                Elem ih = E.inv(hx);
                Elem v = E.mul(fx, E.mul(ih, ih));
                n += E.absolute_trace(v) == 0 ? 2 : 0;
            }
        } else {
            Elem d = E.add(E.mul(hx, hx), E.mul(E.from_int(4), fx));
            n += 1 + E.quadratic_character(d);
        }
    }
    int md = std::max(2 * degree(c.h), degree(c.f));
    if (md % 2 == 1) {
        ++n;
    } else {
        Elem hl = c.h.size() > static_cast<size_t>(md / 2) ? c.h[static_cast<size_t>(md / 2)] : 0;
        Elem fl = c.f[static_cast<size_t>(md)];
        Elem hlE = hl, flE = fl;
        if (ext != 1) {
            auto embed = F.embedding_into(E);
            hlE = embed[hl];
            flE = embed[fl];
        }
        if (char2) {
            if (hlE == 0) {
                ++n;
            } else {
                Elem ih = E.inv(hlE);
                n += E.absolute_trace(E.mul(flE, E.mul(ih, ih))) == 0 ? 2 : 0;
            }
        } else {
            Elem d = E.add(E.mul(hlE, hlE), E.mul(E.from_int(4), flE));
            n += 1 + E.quadratic_character(d);
        }
    }
    return n;
}

std::array<long, 2> zeta_predict_34(long q, long N1, long N2) {
    long s1 = q + 1 - N1;
    long s2 = q * q + 1 - N2;
    if ((s1 * s1 - s2) % 2 != 0)
        throw std::logic_error("zeta_predict_34: parity violation, counts not from a curve");
    long e1 = s1, e2 = (s1 * s1 - s2) / 2, e3 = q * e1, e4 = q * q;
    long s3 = e1 * s2 - e2 * s1 + 3 * e3;
    long s4 = e1 * s3 - e2 * s2 + e3 * s1 - 4 * e4;
    return {q * q * q + 1 - s3, q * q * q * q + 1 - s4};
}

long zeta_predict_genus1(long q, long N1, int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("zeta_predict_genus1: k in 1..4");
    long s1 = q + 1 - N1;
    long e1 = s1, e2 = q;
    long s[5];
    s[1] = s1;
    s[2] = e1 * s[1] - 2 * e2;
    s[3] = e1 * s[2] - e2 * s[1];
    s[4] = e1 * s[3] - e2 * s[2];
    long qk = 1;
    for (int i = 0; i < k; ++i) qk *= q;
    return qk + 1 - s[k];
}

namespace {

struct CensusPartial {
    long smooth = 0;
    std::map<long, Integer> counts;
    std::vector<Integer> fall_sums;  // sum over equations of (N1)_r
    long zeta_checked = 0, zeta_passed = 0;
    long weil_checked = 0, weil_passed = 0;
};

bool weil_ok(long q, int g, int k, long Nk) {
    // (N_k - q^k - 1)^2 <= 4 g^2 q^k, all in exact integers
    long long qk = 1;
    for (int i = 0; i < k; ++i) qk *= q;
    long long d = Nk - qk - 1;
    return d * d <= 4LL * g * g * qk;
}

CensusPartial scan_range(CurveKind kind, const FiniteField& F, long lo, long hi, int n_max,
                         int max_ext) {
    CensusPartial part;
    part.fall_sums.assign(static_cast<size_t>(n_max), Integer(0));
    long q = F.size();
    int g = genus_of(kind);
    enumerate_range(kind, F, lo, hi, [&](const CurveEquation& c) {
        ++part.smooth;
        std::vector<long> N(static_cast<size_t>(max_ext) + 1, 0);
        for (int k = 1; k <= max_ext; ++k) {
            N[static_cast<size_t>(k)] = point_count(c, F, k);
            ++part.weil_checked;
            if (weil_ok(q, g, k, N[static_cast<size_t>(k)])) ++part.weil_passed;
        }
        if (kind == CurveKind::Genus2Hyperelliptic && max_ext >= 4) {
            ++part.zeta_checked;
            auto pred = zeta_predict_34(q, N[1], N[2]);
            if (pred[0] == N[3] && pred[1] == N[4]) ++part.zeta_passed;
        } else if (kind == CurveKind::Genus1Weierstrass) {
            ++part.zeta_checked;
            bool ok = true;
            for (int k = 2; k <= max_ext; ++k)
                ok = ok && zeta_predict_genus1(q, N[1], k) == N[static_cast<size_t>(k)];
            if (ok) ++part.zeta_passed;
        }
        ++part.counts[N[1]];
        Integer fl = 1;
        for (int r = 1; r <= n_max; ++r) {
            fl *= N[1] - (r - 1);
            part.fall_sums[static_cast<size_t>(r - 1)] += fl;
        }
    });
    return part;
}

std::vector<CensusPartial> run_scan(CurveKind kind, const FiniteField& F, int n_max, int max_ext,
                                    int workers) {
    long space = candidate_space_size(kind, F);
    workers = std::max(1, workers);
    std::vector<CensusPartial> parts(static_cast<size_t>(workers));
    if (workers == 1) {
        parts[0] = scan_range(kind, F, 0, space, n_max, max_ext);
        return parts;
    }
    std::vector<std::thread> pool;
    long chunk = (space + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long lo = w * chunk, hi = std::min(space, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] { parts[static_cast<size_t>(w)] = scan_range(kind, F, lo, hi, n_max, max_ext); });
    }
    for (auto& t : pool) t.join();
    return parts;
}

}  // namespace

WeightedDistribution weighted_distribution(CurveKind kind, const FiniteField& F, int workers) {
    auto parts = run_scan(kind, F, /*n_max=*/1, /*max_ext=*/1, workers);
    WeightedDistribution dist;
    dist.kind = kind;
    dist.p = F.characteristic();
    dist.k = F.degree();
    dist.q = F.size();
    dist.modulus = F.modulus_string();
    dist.group = group_order(kind, F);
    dist.candidate_count = candidate_space_size(kind, F);
    for (const auto& part : parts) {
        dist.smooth_count += part.smooth;
        for (const auto& [n, c] : part.counts) dist.counts[n] += c;
    }
    dist.total_mass = 0;
    for (const auto& [n, c] : dist.counts) {
        dist.masses[n] = Rational(c, dist.group.order);
        dist.total_mass += dist.masses[n];
    }
    return dist;
}

exactcomb::MomentVector empirical_falling_moments(const WeightedDistribution& dist, int n_max) {
    if (dist.total_mass == 0) throw std::domain_error("empirical_falling_moments: empty distribution");
    exactcomb::MomentVector mv;
    mv.kind = exactcomb::MomentVector::Kind::Exact;
    for (int r = 1; r <= n_max; ++r) {
        Rational acc = 0;
        for (const auto& [n, mass] : dist.masses) {
            Integer fl = 1;
            for (int i = 0; i < r; ++i) fl *= n - i;
            acc += mass * Rational(fl);
        }
        mv.exact.push_back(acc / dist.total_mass);
    }
    return mv;
}

exactcomb::MomentVector empirical_raw_moments(const WeightedDistribution& dist, int n_max) {
    if (dist.total_mass == 0) throw std::domain_error("empirical_raw_moments: empty distribution");
    exactcomb::MomentVector mv;
    mv.kind = exactcomb::MomentVector::Kind::Exact;
    for (int r = 1; r <= n_max; ++r) {
        Rational acc = 0;
        for (const auto& [n, mass] : dist.masses) acc += mass * Rational(integer_pow(Integer(n), static_cast<unsigned long>(r)));
        mv.exact.push_back(acc / dist.total_mass);
    }
    return mv;
}

CensusReport run_census(CurveKind kind, const FiniteField& F, int n_max, int max_ext, int workers) {
    if (n_max < 1) throw std::invalid_argument("run_census: n_max >= 1 required");
    auto parts = run_scan(kind, F, n_max, max_ext, workers);
    CensusReport rep;
    rep.max_ext = max_ext;
    rep.dist.kind = kind;
    rep.dist.p = F.characteristic();
    rep.dist.k = F.degree();
    rep.dist.q = F.size();
    rep.dist.modulus = F.modulus_string();
    rep.dist.group = group_order(kind, F);
    rep.dist.candidate_count = candidate_space_size(kind, F);
    std::vector<Integer> fall(static_cast<size_t>(n_max), Integer(0));
    for (const auto& part : parts) {
        rep.dist.smooth_count += part.smooth;
        for (const auto& [n, c] : part.counts) rep.dist.counts[n] += c;
        for (int r = 0; r < n_max; ++r) fall[static_cast<size_t>(r)] += part.fall_sums[static_cast<size_t>(r)];
        rep.zeta_checked += part.zeta_checked;
        rep.zeta_passed += part.zeta_passed;
        rep.weil_checked += part.weil_checked;
        rep.weil_passed += part.weil_passed;
    }
    rep.dist.total_mass = 0;
    for (const auto& [n, c] : rep.dist.counts) {
        rep.dist.masses[n] = Rational(c, rep.dist.group.order);
        rep.dist.total_mass += rep.dist.masses[n];
    }
    if (rep.dist.total_mass == 0) throw std::domain_error("run_census: no smooth curves found");
    for (int r = 0; r < n_max; ++r)
        rep.falling_direct.push_back(Rational(fall[static_cast<size_t>(r)], rep.dist.group.order) /
                                     rep.dist.total_mass);
    rep.falling = empirical_falling_moments(rep.dist, n_max);
    rep.raw = empirical_raw_moments(rep.dist, n_max);
    rep.dual_paths_agree = rep.falling.exact == rep.falling_direct;
    return rep;
}

}  // namespace curvestats::census
