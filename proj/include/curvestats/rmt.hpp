#pragma once

#include "curvestats/rational.hpp"
#include "curvestats/rng.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace curvestats::rmt {

/// Eigenphases of a unitary symplectic matrix: g angles in [0, pi],
/// sorted ascending; the 2g eigenvalues are e^{+-i theta_j}.
struct SymplecticSample {
    int g = 0;
    std::vector<double> phases;

    /// t_k = Tr(M^k) = 2 sum_j cos(k theta_j); always in [-2g, 2g].
    double trace_power(int k) const;
};

enum class SamplerMethod { MatrixModel, WeylDensity };

SamplerMethod parse_method(const std::string& name);
std::string method_name(SamplerMethod m);

/// Method A: Gaussian quaternion matrix, Gram-Schmidt with positive real
/// diagonal (the phase fix that makes the result exactly Haar), then
/// eigenphases of the 2g x 2g complex image.
SymplecticSample sample_haar_matrix_model(int g, Xoshiro256pp& rng, long* retries = nullptr);

/// Method B: draw from the eigenphase density directly
/// (prod_{i<j}(cos ti - cos tj)^2 prod sin^2 ti): plain rejection for
/// g <= 2, single-phase Metropolis with reflection at {0, pi} and
/// 10^3 g burn-in steps per draw for larger g. Correct only insofar as it
/// matches method A; the cross-method test is the certificate.
SymplecticSample sample_weyl_density(int g, Xoshiro256pp& rng);

SymplecticSample sample(SamplerMethod method, int g, Xoshiro256pp& rng, long* retries = nullptr);

struct PointCountSequence {
    long q = 0;
    std::vector<double> values;  // N_1..N_m, N_k = q^k + 1 - q^{k/2} t_k

    double at(int k) const { return values.at(static_cast<size_t>(k - 1)); }
    int max_index() const { return static_cast<int>(values.size()); }
};

PointCountSequence implied_point_counts(const SymplecticSample& s, long q, int m);

struct ConstraintConfig {
    bool discreteness = true;
    double epsilon = 0.05;  // |N_k - round(N_k)| <= eps (exact version has measure zero)
    bool positivity = true;
    bool more_positivity = true;
    int max_index = 6;
    /// Pairs (n1, n2), n2 >= 2, n1 n2 <= max_index; empty means all such.
    std::vector<std::pair<int, int>> divisor_pairs;

    static ConstraintConfig none();
    std::vector<std::pair<int, int>> effective_pairs() const;
};

struct ConstraintCheck {
    bool accepted = true;
    std::vector<std::string> violated;
};

ConstraintCheck check_constraints(const PointCountSequence& seq, const ConstraintConfig& cfg, int g);

struct ExperimentParams {
    int g = 1;
    long q = 2;
    ConstraintConfig config;
    long num_samples = 0;
    uint64_t seed = 0;
    int n_max = 6;
    SamplerMethod method = SamplerMethod::MatrixModel;
    int workers = 1;
};

struct ExperimentReport {
    ExperimentParams params;
    long num_samples = 0;
    long num_accepted = 0;
    double acceptance_rate = 0;
    bool zero_accepted = false;
    long sampler_retries = 0;
    std::map<long, long> histogram;  // rounded N_1 (nearest, ties to even) -> count
    std::vector<double> raw_moments;       // orders 1..n_max over accepted, empty if none
    std::vector<double> falling_moments;   // same
    std::vector<Rational> poisson_raw;     // reference: sum stirling2 lambda^i
    std::vector<Rational> poisson_falling; // reference: lambda^n
    double tv_distance = 0;
    long window_lo = 0, window_hi = 0;  // Weil envelope support for the TV comparison
    double poisson_mass_outside = 0;
    double histogram_mass_outside = 0;
};

/// Fully determined by (seed, parameters); the worker count only splits
/// the index range, never the per-sample randomness.
ExperimentReport run_experiment(const ExperimentParams& params);

struct PoissonComparison {
    double tv_distance = 0;
    std::vector<double> moment_discrepancies;  // orders 1..k, window-renormalized
    double poisson_mass_outside = 0;
    double histogram_mass_outside = 0;
};

PoissonComparison compare_to_poisson(const std::map<long, double>& histogram, const Rational& lambda,
                                     long window_lo, long window_hi, int n_orders);

/// Weil-envelope support window [max(0, ceil(q+1-2g sqrt q)), floor(q+1+2g sqrt q)].
std::pair<long, long> weil_window(long q, int g);

}  // namespace curvestats::rmt
