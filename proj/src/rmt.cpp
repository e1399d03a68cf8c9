#include "curvestats/rmt.hpp"

#include "curvestats/exactcomb.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace curvestats::rmt {

double SymplecticSample::trace_power(int k) const {
    double t = 0;
    for (double th : phases) t += std::cos(k * th);
    return 2.0 * t;
}

SamplerMethod parse_method(const std::string& name) {
    if (name == "matrix") return SamplerMethod::MatrixModel;
    if (name == "weyl") return SamplerMethod::WeylDensity;
    throw std::invalid_argument("unknown sampler method: " + name);
}

std::string method_name(SamplerMethod m) {
    return m == SamplerMethod::MatrixModel ? "matrix" : "weyl";
}

namespace {

// Quaternion a + b j stored as two complex numbers; the complex 2x2 image
// is [[a, b], [-conj(b), conj(a)]].
struct Quat {
    std::complex<double> a, b;
};

inline Quat qmul(const Quat& x, const Quat& y) {
    return {x.a * y.a - x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}
inline Quat qconj(const Quat& x) { return {std::conj(x.a), -x.b}; }
inline double qnorm2(const Quat& x) { return std::norm(x.a) + std::norm(x.b); }

std::vector<double> phases_from_unitary(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, /*computeEigenvectors=*/false);
    const auto& ev = solver.eigenvalues();
    std::vector<double> folded(static_cast<size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) folded[static_cast<size_t>(i)] = std::abs(std::arg(ev[i]));
    std::sort(folded.begin(), folded.end());
    // eigenvalues come in conjugate pairs; average each adjacent pair
    std::vector<double> out(folded.size() / 2);
    for (size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (folded[2 * j] + folded[2 * j + 1]);
    return out;
}

}  // namespace

SymplecticSample sample_haar_matrix_model(int g, Xoshiro256pp& rng, long* retries) {
    if (g < 1) throw std::domain_error("sample_haar_matrix_model: g >= 1 required");
    const size_t n = static_cast<size_t>(g);
    std::vector<Quat> cols(n * n);  // column-major: cols[c*n + r]
    while (true) {
        for (auto& e : cols) e = {{rng.normal(), rng.normal()}, {rng.normal(), rng.normal()}};
        bool degenerate = false;
        for (size_t c = 0; c < n && !degenerate; ++c) {
            Quat* vc = &cols[c * n];
            for (size_t u = 0; u < c; ++u) {
                const Quat* vu = &cols[u * n];
                Quat proj{{0, 0}, {0, 0}};
                for (size_t r = 0; r < n; ++r) {
                    Quat t = qmul(qconj(vu[r]), vc[r]);
                    proj.a += t.a;
                    proj.b += t.b;
                }
                for (size_t r = 0; r < n; ++r) {
                    Quat t = qmul(vu[r], proj);
                    vc[r].a -= t.a;
                    vc[r].b -= t.b;
                }
            }
            double nrm2 = 0;
            for (size_t r = 0; r < n; ++r) nrm2 += qnorm2(vc[r]);
            if (nrm2 < 1e-24) {
                degenerate = true;
                break;
            }
            double inv = 1.0 / std::sqrt(nrm2);
            for (size_t r = 0; r < n; ++r) {
                vc[r].a *= inv;
                vc[r].b *= inv;
            }
        }
        if (!degenerate) break;
        if (retries) ++*retries;
    }
    Eigen::MatrixXcd M(2 * g, 2 * g);
    for (size_t c = 0; c < n; ++c)
        for (size_t r = 0; r < n; ++r) {
            const Quat& p = cols[c * n + r];
            M(2 * r, 2 * c) = p.a;
            M(2 * r, 2 * c + 1) = p.b;
            M(2 * r + 1, 2 * c) = -std::conj(p.b);
            M(2 * r + 1, 2 * c + 1) = std::conj(p.a);
        }
    SymplecticSample s;
    s.g = g;
    s.phases = phases_from_unitary(M);
    return s;
}

namespace {

double log_weyl_weight(const std::vector<double>& th) {
    double lw = 0;
    const size_t g = th.size();
    for (size_t i = 0; i < g; ++i) {
        double s = std::sin(th[i]);
        if (s <= 0) return -std::numeric_limits<double>::infinity();
        lw += 2.0 * std::log(s);
        for (size_t j = i + 1; j < g; ++j) {
            double d = std::cos(th[i]) - std::cos(th[j]);
            if (d == 0) return -std::numeric_limits<double>::infinity();
            lw += 2.0 * std::log(std::abs(d));
        }
    }
    return lw;
}

const double kPi = 3.14159265358979323846;

std::vector<double> weyl_rejection(int g, Xoshiro256pp& rng) {
    // unnormalized density <= 4^{g(g-1)/2} (each squared difference <= 4)
    double log_bound = g * (g - 1) * 0.5 * std::log(4.0);
    std::vector<double> th(static_cast<size_t>(g));
    while (true) {
        for (auto& t : th) t = rng.uniform(0.0, kPi);
        double lw = log_weyl_weight(th);
        if (std::log(rng.uniform() + 1e-300) < lw - log_bound) return th;
    }
}

double reflect_into_range(double t) {
    while (t < 0 || t > kPi) t = t < 0 ? -t : 2 * kPi - t;
    return t;
}

std::vector<double> weyl_metropolis(int g, Xoshiro256pp& rng) {
    const size_t n = static_cast<size_t>(g);
    std::vector<double> th(n), cs(n), sn(n);
    for (size_t i = 0; i < n; ++i) {
        th[i] = rng.uniform(0.0, kPi);
        cs[i] = std::cos(th[i]);
        sn[i] = std::sin(th[i]);
    }
    double sigma = 0.5;
    const long burn = 1000L * g;
    const long adapt_until = (burn * 7) / 10;
    long accepted_window = 0, window = 0;
    for (long step = 0; step < burn; ++step) {
        size_t i = static_cast<size_t>(rng.next() % static_cast<uint64_t>(g));
        double prop = reflect_into_range(th[i] + sigma * rng.normal());
        double cp = std::cos(prop), sp = std::sin(prop);
        double ratio = (sp * sp) / (sn[i] * sn[i]);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double dn = cp - cs[j], dd = cs[i] - cs[j];
            ratio *= (dn * dn) / (dd * dd);
        }
        bool accept = std::isfinite(ratio) && rng.uniform() < ratio;
        if (accept) {
            th[i] = prop;
            cs[i] = cp;
            sn[i] = sp;
        }
        ++window;
        accepted_window += accept;
        if (step < adapt_until && window == 100) {
            double rate = accepted_window / 100.0;
            if (rate > 0.45)
                sigma = std::min(sigma * 1.15, kPi);
            else if (rate < 0.35)
                sigma = std::max(sigma * 0.85, 1e-3);
            window = 0;
            accepted_window = 0;
        }
    }
    return th;
}

}  // namespace

SymplecticSample sample_weyl_density(int g, Xoshiro256pp& rng) {
    if (g < 1) throw std::domain_error("sample_weyl_density: g >= 1 required");
    SymplecticSample s;
    s.g = g;
    s.phases = g <= 2 ? weyl_rejection(g, rng) : weyl_metropolis(g, rng);
    std::sort(s.phases.begin(), s.phases.end());
    return s;
}

SymplecticSample sample(SamplerMethod method, int g, Xoshiro256pp& rng, long* retries) {
    return method == SamplerMethod::MatrixModel ? sample_haar_matrix_model(g, rng, retries)
                                                : sample_weyl_density(g, rng);
}

PointCountSequence implied_point_counts(const SymplecticSample& s, long q, int m) {
    if (m < 1) throw std::invalid_argument("implied_point_counts: m >= 1 required");
    if (q < 2) throw std::domain_error("implied_point_counts: q >= 2 required");
    PointCountSequence seq;
    seq.q = q;
    seq.values.resize(static_cast<size_t>(m));
    double sq = std::sqrt(static_cast<double>(q));
    double qk = 1, qk2 = 1;
    for (int k = 1; k <= m; ++k) {
        qk *= static_cast<double>(q);
        qk2 *= sq;
        seq.values[static_cast<size_t>(k - 1)] = qk + 1.0 - qk2 * s.trace_power(k);
    }
    return seq;
}

ConstraintConfig ConstraintConfig::none() {
    ConstraintConfig c;
    c.discreteness = false;
    c.positivity = false;
    c.more_positivity = false;
    return c;
}

std::vector<std::pair<int, int>> ConstraintConfig::effective_pairs() const {
    if (!divisor_pairs.empty()) return divisor_pairs;
    std::vector<std::pair<int, int>> out;
    for (int n1 = 1; n1 <= max_index; ++n1)
        for (int n2 = 2; n1 * n2 <= max_index; ++n2) out.emplace_back(n1, n2);
    return out;
}

ConstraintCheck check_constraints(const PointCountSequence& seq, const ConstraintConfig& cfg, int g) {
    if (seq.max_index() < cfg.max_index)
        throw std::invalid_argument("check_constraints: sequence shorter than max_index");
    (void)g;
    ConstraintCheck out;
    if (cfg.discreteness) {
        for (int k = 1; k <= cfg.max_index; ++k) {
            double v = seq.at(k);
            if (std::abs(v - std::nearbyint(v)) > cfg.epsilon) {
                out.accepted = false;
                out.violated.push_back("discreteness:k=" + std::to_string(k));
            }
        }
    }
    if (cfg.positivity && seq.at(1) < 0) {
        out.accepted = false;
        out.violated.push_back("positivity");
    }
    if (cfg.more_positivity) {
        for (auto [n1, n2] : cfg.effective_pairs()) {
            if (n1 * n2 > seq.max_index() || n1 > seq.max_index()) continue;
            if (seq.at(n1 * n2) < seq.at(n1)) {
                out.accepted = false;
                out.violated.push_back("more_positivity:" + std::to_string(n1) + "x" + std::to_string(n2));
            }
        }
    }
    return out;
}

std::pair<long, long> weil_window(long q, int g) {
    double sq = std::sqrt(static_cast<double>(q));
    long lo = static_cast<long>(std::ceil(q + 1 - 2.0 * g * sq));
    long hi = static_cast<long>(std::floor(q + 1 + 2.0 * g * sq));
    return {std::max<long>(0, lo), hi};
}

PoissonComparison compare_to_poisson(const std::map<long, double>& histogram, const Rational& lambda,
                                     long window_lo, long window_hi, int n_orders) {
    if (histogram.empty()) throw std::invalid_argument("compare_to_poisson: empty histogram");
    if (window_hi < window_lo) throw std::invalid_argument("compare_to_poisson: empty window");
    double total = 0, inside = 0;
    for (auto& [k, v] : histogram) {
        total += v;
        if (k >= window_lo && k <= window_hi) inside += v;
    }
    if (total <= 0) throw std::invalid_argument("compare_to_poisson: zero histogram mass");

    exactcomb::CertifiedPoisson pois(lambda, 30);
    std::vector<double> pmf(static_cast<size_t>(window_hi - window_lo + 1));
    double pois_inside = 0;
    for (long k = window_lo; k <= window_hi; ++k) {
        double v = pois.pmf(static_cast<int>(k)).value();
        pmf[static_cast<size_t>(k - window_lo)] = v;
        pois_inside += v;
    }
    PoissonComparison cmp;
    cmp.poisson_mass_outside = std::max(0.0, 1.0 - pois_inside);
    cmp.histogram_mass_outside = (total - inside) / total;
    if (inside <= 0 || pois_inside <= 0)
        throw std::domain_error("compare_to_poisson: no mass inside window");

    double tv = 0;
    std::vector<double> hist_m(static_cast<size_t>(n_orders) + 1, 0.0), pois_m(hist_m);
    for (long k = window_lo; k <= window_hi; ++k) {
        auto it = histogram.find(k);
        double hp = (it == histogram.end() ? 0.0 : it->second / inside);
        double pp = pmf[static_cast<size_t>(k - window_lo)] / pois_inside;
        tv += std::abs(hp - pp);
        double kp = 1;
        for (int r = 1; r <= n_orders; ++r) {
            kp *= static_cast<double>(k);
            hist_m[static_cast<size_t>(r)] += hp * kp;
            pois_m[static_cast<size_t>(r)] += pp * kp;
        }
    }
    cmp.tv_distance = 0.5 * tv;
    for (int r = 1; r <= n_orders; ++r)
        cmp.moment_discrepancies.push_back(std::abs(hist_m[static_cast<size_t>(r)] - pois_m[static_cast<size_t>(r)]));
    return cmp;
}

namespace {

struct SampleRecord {
    bool accepted = false;
    long rounded = 0;
    double raw = 0;
    long retries = 0;
};

}  // namespace

ExperimentReport run_experiment(const ExperimentParams& params) {
    if (params.num_samples < 1) throw std::invalid_argument("run_experiment: num_samples >= 1 required");
    if (params.g < 1 || params.q < 2) throw std::invalid_argument("run_experiment: invalid g or q");
    int workers = std::max(1, params.workers);

    std::vector<SampleRecord> records(static_cast<size_t>(params.num_samples));
    int m = std::max(params.config.max_index, 1);
    auto body = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            Xoshiro256pp rng(params.seed, static_cast<uint64_t>(i));
            SampleRecord rec;
            SymplecticSample s = sample(params.method, params.g, rng, &rec.retries);
            PointCountSequence seq = implied_point_counts(s, params.q, m);
            rec.accepted = check_constraints(seq, params.config, params.g).accepted;
            if (rec.accepted) {
                rec.raw = seq.at(1);
                rec.rounded = static_cast<long>(std::nearbyint(seq.at(1)));
            }
            records[static_cast<size_t>(i)] = rec;
        }
    };
    if (workers == 1) {
        body(0, params.num_samples);
    } else {
        std::vector<std::thread> pool;
        long chunk = (params.num_samples + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long lo = w * chunk, hi = std::min<long>(params.num_samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(body, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    ExperimentReport rep;
    rep.params = params;
    rep.num_samples = params.num_samples;
    for (const auto& rec : records) {
        rep.sampler_retries += rec.retries;
        if (!rec.accepted) continue;
        ++rep.num_accepted;
        ++rep.histogram[rec.rounded];
    }
    rep.acceptance_rate = static_cast<double>(rep.num_accepted) / static_cast<double>(rep.num_samples);
    rep.zero_accepted = rep.num_accepted == 0;

    Integer q(params.q);
    for (int r = 1; r <= params.n_max; ++r) {
        rep.poisson_raw.push_back(exactcomb::predicted_moment(r, q));
        rep.poisson_falling.push_back(exactcomb::predicted_falling_moment(r, q));
    }
    auto [wlo, whi] = weil_window(params.q, params.g);
    rep.window_lo = wlo;
    rep.window_hi = whi;
    if (rep.zero_accepted) return rep;

    // moments over accepted rounded counts, in sample-index order
    std::vector<double> raw(static_cast<size_t>(params.n_max), 0.0), fall(raw);
    for (const auto& rec : records) {
        if (!rec.accepted) continue;
        double v = static_cast<double>(rec.rounded);
        double pw = 1, fl = 1;
        for (int r = 1; r <= params.n_max; ++r) {
            pw *= v;
            fl *= v - (r - 1);
            raw[static_cast<size_t>(r - 1)] += pw;
            fall[static_cast<size_t>(r - 1)] += fl;
        }
    }
    for (int r = 0; r < params.n_max; ++r) {
        rep.raw_moments.push_back(raw[static_cast<size_t>(r)] / static_cast<double>(rep.num_accepted));
        rep.falling_moments.push_back(fall[static_cast<size_t>(r)] / static_cast<double>(rep.num_accepted));
    }

    std::map<long, double> hist;
    for (auto& [k, c] : rep.histogram) hist[k] = static_cast<double>(c);
    auto cmp = compare_to_poisson(hist, exactcomb::lambda_of_q(q), wlo, whi, params.n_max);
    rep.tv_distance = cmp.tv_distance;
    rep.poisson_mass_outside = cmp.poisson_mass_outside;
    rep.histogram_mass_outside = cmp.histogram_mass_outside;
    return rep;
}

}  // namespace curvestats::rmt
