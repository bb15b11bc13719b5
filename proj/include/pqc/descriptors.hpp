#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqc/circuit.hpp"
#include "pqc/rng.hpp"
#include "pqc/state.hpp"

namespace pqc {

inline constexpr std::size_t kDefaultPairs = 5000;
inline constexpr int kDefaultBins = 75;
inline constexpr int kDefaultTMax = 4;

struct SamplingConfig {
    std::size_t pairs = kDefaultPairs;
    int bins = kDefaultBins;
    int t_max = kDefaultTMax;
    unsigned workers = 1;
};

/// Sampled pair fidelities plus the Meyer-Wallach Q of every sampled state
/// (two per pair), kept so one sampling pass feeds every descriptor.
struct FidelitySampleSet {
    std::uint64_t dim = 0;
    std::vector<double> fidelities;
    std::vector<double> q_values;
    std::uint64_t seed = 0;
    std::string source;  // template id, or "haar"
    int n = 0;
    int layers = 0;

    std::size_t pair_count() const { return fidelities.size(); }
};

/// Pairs sampled from a template. Parameters are i.i.d. uniform on [0, 2pi)
/// unless the template uses the Haar sampler. Pairs are split into fixed
/// chunks with one derived stream each, so the result does not depend on
/// `workers`.
FidelitySampleSet sample_fidelities(const CircuitTemplate& tmpl, int n, int layers, std::size_t pairs,
                                    const RngStream& rng, unsigned workers = 1);

/// Pairs of Haar-random n-qubit states.
FidelitySampleSet sample_haar_pairs(int n, std::size_t pairs, const RngStream& rng, unsigned workers = 1);

/// Equal-width histogram on [0, 1] with the analytic Haar masses per bin.
/// F = 1 falls in the last bin. Haar masses too small for a double are
/// still carried exactly in `haar_log_mass`.
struct Histogram {
    int bins = 0;
    std::vector<double> edges;
    std::vector<double> empirical_mass;
    std::vector<double> haar_mass;
    std::vector<double> haar_log_mass;
};

Histogram make_histogram(std::span<const double> fidelities, std::uint64_t dim, int bins);

/// Mass of each bin under P(F) = (N-1)(1-F)^(N-2), from CDF differences.
std::vector<double> haar_bin_masses(std::uint64_t dim, int bins);
std::vector<double> haar_bin_log_masses(std::uint64_t dim, int bins);

/// sum p ln(p/q) in nats with 0 ln 0 = 0. Throws on non-positive reference.
double kl_divergence(std::span<const double> empirical, std::span<const double> reference);
/// Same, with the reference given as log-masses.
double kl_divergence_log(std::span<const double> empirical, std::span<const double> log_reference);

double expressibility(const FidelitySampleSet& samples, int bins = kDefaultBins);
double expressibility(const CircuitTemplate& tmpl, int n, int layers, const SamplingConfig& config,
                      const RngStream& rng);

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample means of F^t for t = 1..t_max with their standard errors.
std::vector<MomentEstimate> frame_potential_estimates(const FidelitySampleSet& samples, int t_max);

/// t!(N-1)!/(t+N-1)!, the Haar frame potential.
double welch_bound(std::uint64_t dim, int t);

/// Meyer-Wallach Q through single-qubit purities: 2(1 - mean_j tr rho_j^2).
double mw_q(const StateVector& state);
/// Q from the generalized-distance definition; slow, used for cross-checks.
double mw_q_distance(const StateVector& state);

double entangling_capability(const FidelitySampleSet& samples);
double entangling_capability(const CircuitTemplate& tmpl, int n, int layers, const SamplingConfig& config,
                             const RngStream& rng);

/// (N-2)/(N+1).
double haar_mean_q(std::uint64_t dim);

struct MeanStd {
    double mean = 0.0;
    std::optional<double> std;  // absent for a single value
};

MeanStd mean_std(std::span<const double> values);

/// KL of Haar-drawn fidelities against the Haar bin masses, repeated.
MeanStd kl_bias_baseline(std::uint64_t dim, int bins, std::size_t pairs, int repeats, const RngStream& rng);

/// Smallest m with 1/(m k^2) <= 1 - confidence.
std::uint64_t chebyshev_sample_size(double k, double confidence);

struct ConvergencePoint {
    std::size_t pairs = 0;
    MeanStd expr;
    MeanStd ent;
};

std::vector<ConvergencePoint> convergence_scan(const CircuitTemplate& tmpl, int n, int layers,
                                               std::span<const std::size_t> sample_sizes, int repeats,
                                               const SamplingConfig& config, const RngStream& rng);

struct DescriptorReport {
    std::string template_id;
    int n = 0;
    int layers = 0;
    int repeat = 0;
    std::uint64_t seed = 0;
    std::size_t pairs = 0;
    int bins = 0;
    double expr = 0.0;
    double ent = 0.0;
    std::vector<MomentEstimate> frame_potentials;
    std::vector<double> welch;
    CostMetrics costs;
    Connectivity connectivity = Connectivity::None;
};

/// One sampling pass filling every descriptor. Deterministic in `rng`.
DescriptorReport compute_report(const CircuitTemplate& tmpl, int n, int layers, const SamplingConfig& config,
                                const RngStream& rng);

/// Stream for one (circuit, n, L, repeat) cell of a run seeded with
/// `master_seed`. Distinct cells get independent streams.
RngStream run_stream(std::uint64_t master_seed, std::string_view template_id, int n, int layers, int repeat);

/// `repeats` independent reports seeded from `master_seed`, numbered 0..repeats-1.
std::vector<DescriptorReport> compute_repeats(const CircuitTemplate& tmpl, int n, int layers,
                                              const SamplingConfig& config, std::uint64_t master_seed,
                                              int repeats);

}  // namespace pqc
