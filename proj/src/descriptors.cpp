#include "pqc/descriptors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace pqc {

namespace {

constexpr std::size_t kChunkPairs = 64;

/// Runs body(chunk) for every chunk on up to `workers` threads. The first
/// exception thrown by any chunk is rethrown on the caller's thread.
template <typename Body>
void parallel_chunks(std::size_t chunks, unsigned workers, Body&& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < chunks; c = next++) {
                    try {
                        body(c);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = chunks;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

template <typename DrawState>
FidelitySampleSet sample_pairs(std::uint64_t dim, std::size_t pairs, const RngStream& rng, unsigned workers,
                               DrawState&& draw) {
    if (pairs < 1) throw std::invalid_argument("pair count must be >= 1");
    FidelitySampleSet out;
    out.dim = dim;
    out.seed = rng.master_seed();
    out.fidelities.assign(pairs, 0.0);
    out.q_values.assign(2 * pairs, 0.0);
    const std::size_t chunks = (pairs + kChunkPairs - 1) / kChunkPairs;
    parallel_chunks(chunks, workers, [&](std::size_t chunk) {
        RngStream stream = rng.derive(chunk);
        const std::size_t begin = chunk * kChunkPairs;
        const std::size_t end = std::min(pairs, begin + kChunkPairs);
        for (std::size_t p = begin; p < end; ++p) {
            const StateVector a = draw(stream);
            const StateVector b = draw(stream);
            out.fidelities[p] = fidelity(a, b);
            out.q_values[2 * p] = mw_q(a);
            out.q_values[2 * p + 1] = mw_q(b);
        }
    });
    return out;
}

void check_dim(std::uint64_t dim) {
    if (dim < 2) throw std::invalid_argument("Hilbert dimension must be >= 2, got " + std::to_string(dim));
}

void check_bins(int bins) {
    if (bins < 1) throw std::invalid_argument("bin count must be >= 1, got " + std::to_string(bins));
}

// log of the Haar CDF complement (1 - x)^(N-1).
double log_survival(std::uint64_t dim, double x) {
    if (x >= 1.0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(dim - 1) * std::log1p(-x);
}

}  // namespace

FidelitySampleSet sample_fidelities(const CircuitTemplate& tmpl, int n, int layers, std::size_t pairs,
                                    const RngStream& rng, unsigned workers) {
    const BoundCircuit circuit = instantiate(tmpl, n, layers);
    FidelitySampleSet out;
    if (circuit.sampler == Sampler::Haar) {
        out = sample_pairs(std::uint64_t{1} << n, pairs, rng, workers,
                           [n](RngStream& s) { return sample_haar_state(n, s); });
    } else {
        out = sample_pairs(std::uint64_t{1} << n, pairs, rng, workers, [&circuit](RngStream& s) {
            std::vector<double> theta(circuit.param_count);
            for (auto& t : theta) t = 2.0 * std::numbers::pi * s.uniform();
            return pqc::bind(circuit, theta);
        });
    }
    out.source = tmpl.id;
    out.n = n;
    out.layers = layers;
    return out;
}

FidelitySampleSet sample_haar_pairs(int n, std::size_t pairs, const RngStream& rng, unsigned workers) {
    auto out = sample_pairs(std::uint64_t{1} << n, pairs, rng, workers,
                            [n](RngStream& s) { return sample_haar_state(n, s); });
    out.source = "haar";
    out.n = n;
    return out;
}

std::vector<double> haar_bin_masses(std::uint64_t dim, int bins) {
    check_dim(dim);
    check_bins(bins);
    std::vector<double> out(static_cast<std::size_t>(bins));
    for (int k = 0; k < bins; ++k) {
        const double a = static_cast<double>(k) / bins;
        const double b = static_cast<double>(k + 1) / bins;
        if (k == 0) {
            out[k] = -std::expm1(log_survival(dim, b));
        } else {
            out[k] = std::exp(log_survival(dim, a)) - std::exp(log_survival(dim, b));
        }
    }
    return out;
}

std::vector<double> haar_bin_log_masses(std::uint64_t dim, int bins) {
    check_dim(dim);
    check_bins(bins);
    std::vector<double> out(static_cast<std::size_t>(bins));
    for (int k = 0; k < bins; ++k) {
        const double la = log_survival(dim, static_cast<double>(k) / bins);
        const double lb = log_survival(dim, static_cast<double>(k + 1) / bins);
        // log(e^la - e^lb) with la > lb.
        out[k] = std::isinf(lb) ? la : la + std::log1p(-std::exp(lb - la));
    }
    return out;
}

Histogram make_histogram(std::span<const double> fidelities, std::uint64_t dim, int bins) {
    check_bins(bins);
    if (fidelities.empty()) throw std::invalid_argument("cannot histogram an empty sample");
    Histogram h;
    h.bins = bins;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int k = 0; k <= bins; ++k) h.edges[k] = static_cast<double>(k) / bins;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double f : fidelities) {
        if (!(f >= 0.0 && f <= 1.0 + kNormTolerance))
            throw std::invalid_argument("fidelity " + std::to_string(f) + " outside [0, 1]");
        const auto k = std::min(static_cast<std::size_t>(f * bins), static_cast<std::size_t>(bins - 1));
        ++counts[k];
    }
    h.empirical_mass.resize(counts.size());
    const double total = static_cast<double>(fidelities.size());
    for (std::size_t k = 0; k < counts.size(); ++k) h.empirical_mass[k] = static_cast<double>(counts[k]) / total;
    h.haar_mass = haar_bin_masses(dim, bins);
    h.haar_log_mass = haar_bin_log_masses(dim, bins);
    return h;
}

double kl_divergence(std::span<const double> empirical, std::span<const double> reference) {
    if (empirical.size() != reference.size())
        throw std::invalid_argument("KL divergence of distributions with different lengths");
    double kl = 0.0;
    for (std::size_t k = 0; k < empirical.size(); ++k) {
        if (!(reference[k] > 0.0))
            throw std::invalid_argument("reference mass must be strictly positive (bin " + std::to_string(k) + ")");
        if (empirical[k] > 0.0) kl += empirical[k] * std::log(empirical[k] / reference[k]);
    }
    return std::max(kl, 0.0);
}

double kl_divergence_log(std::span<const double> empirical, std::span<const double> log_reference) {
    if (empirical.size() != log_reference.size())
        throw std::invalid_argument("KL divergence of distributions with different lengths");
    double kl = 0.0;
    for (std::size_t k = 0; k < empirical.size(); ++k) {
        if (!std::isfinite(log_reference[k]))
            throw std::invalid_argument("reference mass must be strictly positive (bin " + std::to_string(k) + ")");
        if (empirical[k] > 0.0) kl += empirical[k] * (std::log(empirical[k]) - log_reference[k]);
    }
    return std::max(kl, 0.0);
}

double expressibility(const FidelitySampleSet& samples, int bins) {
    const Histogram h = make_histogram(samples.fidelities, samples.dim, bins);
    return kl_divergence_log(h.empirical_mass, h.haar_log_mass);
}

double expressibility(const CircuitTemplate& tmpl, int n, int layers, const SamplingConfig& config,
                      const RngStream& rng) {
    return expressibility(sample_fidelities(tmpl, n, layers, config.pairs, rng, config.workers), config.bins);
}

std::vector<MomentEstimate> frame_potential_estimates(const FidelitySampleSet& samples, int t_max) {
    if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
    if (samples.fidelities.empty()) throw std::invalid_argument("frame potentials of an empty sample set");
    const auto m = static_cast<double>(samples.fidelities.size());
    std::vector<MomentEstimate> out(static_cast<std::size_t>(t_max));
    for (int t = 1; t <= t_max; ++t) {
        double sum = 0.0;
        for (double f : samples.fidelities) sum += std::pow(f, t);
        const double mean = sum / m;
        double ss = 0.0;
        for (double f : samples.fidelities) {
            const double d = std::pow(f, t) - mean;
            ss += d * d;
        }
        const double var = m > 1 ? ss / (m - 1) : 0.0;
        out[t - 1] = {mean, std::sqrt(var / m)};
    }
    return out;
}

double welch_bound(std::uint64_t dim, int t) {
    check_dim(dim);
    if (t < 1) throw std::invalid_argument("moment order must be >= 1");
    double v = 1.0;
    for (int k = 1; k <= t; ++k) v *= static_cast<double>(k) / (static_cast<double>(dim - 1) + k);
    return v;
}

double mw_q(const StateVector& state) {
    const int n = state.num_qubits();
    double purity_sum = 0.0;
    for (int j = 0; j < n; ++j) purity_sum += single_qubit_purity(state, j);
    const double q = 2.0 * (1.0 - purity_sum / n);
    return std::clamp(q, 0.0, 1.0);
}

double mw_q_distance(const StateVector& state) {
    const int n = state.num_qubits();
    const auto amps = state.amplitudes();
    const std::size_t half = amps.size() / 2;
    double total = 0.0;
    std::vector<Complex> u(half);
    std::vector<Complex> v(half);
    for (int j = 0; j < n; ++j) {
        // iota_j(b): keep basis states whose qubit j equals b, then drop qubit j.
        const std::size_t low_mask = (std::size_t{1} << j) - 1;
        for (std::size_t r = 0; r < half; ++r) {
            const std::size_t idx0 = ((r & ~low_mask) << 1) | (r & low_mask);
            u[r] = amps[idx0];
            v[r] = amps[idx0 | (std::size_t{1} << j)];
        }
        double d = 0.0;
        for (std::size_t a = 0; a < half; ++a)
            for (std::size_t b = 0; b < half; ++b) d += std::norm(u[a] * v[b] - u[b] * v[a]);
        total += 0.5 * d;
    }
    return 4.0 / n * total;
}

double entangling_capability(const FidelitySampleSet& samples) {
    if (samples.q_values.empty()) throw std::invalid_argument("entangling capability of an empty sample set");
    double sum = 0.0;
    for (double q : samples.q_values) sum += q;
    return sum / static_cast<double>(samples.q_values.size());
}

double entangling_capability(const CircuitTemplate& tmpl, int n, int layers, const SamplingConfig& config,
                             const RngStream& rng) {
    return entangling_capability(sample_fidelities(tmpl, n, layers, config.pairs, rng, config.workers));
}

double haar_mean_q(std::uint64_t dim) {
    check_dim(dim);
    return (static_cast<double>(dim) - 2.0) / (static_cast<double>(dim) + 1.0);
}

MeanStd mean_std(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of an empty list");
    MeanStd out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return out;
}

MeanStd kl_bias_baseline(std::uint64_t dim, int bins, std::size_t pairs, int repeats, const RngStream& rng) {
    check_dim(dim);
    check_bins(bins);
    if (pairs < 1) throw std::invalid_argument("pair count must be >= 1");
    if (repeats < 1) throw std::invalid_argument("repeat count must be >= 1");
    const auto log_ref = haar_bin_log_masses(dim, bins);
    std::vector<double> kls;
    std::vector<double> fids(pairs);
    for (int r = 0; r < repeats; ++r) {
        RngStream stream = rng.derive(static_cast<std::uint64_t>(r));
        for (auto& f : fids) f = sample_haar_fidelity(dim, stream);
        const Histogram h = make_histogram(fids, dim, bins);
        kls.push_back(kl_divergence_log(h.empirical_mass, log_ref));
    }
    return mean_std(kls);
}

std::uint64_t chebyshev_sample_size(double k, double confidence) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("precision k must be a positive number");
    if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
    const double exact = 1.0 / ((1.0 - confidence) * k * k);
    if (exact > 1e18) throw std::invalid_argument("sample size overflows");
    // Shave relative rounding noise so that e.g. 4999.9999999999945 and
    // 5000.0000000000009 both mean 5000.
    return static_cast<std::uint64_t>(std::ceil(exact * (1.0 - 1e-12)));
}

std::vector<ConvergencePoint> convergence_scan(const CircuitTemplate& tmpl, int n, int layers,
                                               std::span<const std::size_t> sample_sizes, int repeats,
                                               const SamplingConfig& config, const RngStream& rng) {
    if (repeats < 1) throw std::invalid_argument("repeat count must be >= 1");
    std::vector<ConvergencePoint> out;
    for (std::size_t si = 0; si < sample_sizes.size(); ++si) {
        std::vector<double> exprs;
        std::vector<double> ents;
        for (int r = 0; r < repeats; ++r) {
            const RngStream stream = rng.derive(si).derive(static_cast<std::uint64_t>(r));
            const auto samples = sample_fidelities(tmpl, n, layers, sample_sizes[si], stream, config.workers);
            exprs.push_back(expressibility(samples, config.bins));
            ents.push_back(entangling_capability(samples));
        }
        out.push_back({sample_sizes[si], mean_std(exprs), mean_std(ents)});
    }
    return out;
}

DescriptorReport compute_report(const CircuitTemplate& tmpl, int n, int layers, const SamplingConfig& config,
                                const RngStream& rng) {
    const BoundCircuit circuit = instantiate(tmpl, n, layers);
    const auto samples = sample_fidelities(tmpl, n, layers, config.pairs, rng, config.workers);
    DescriptorReport r;
    r.template_id = tmpl.id;
    r.n = n;
    r.layers = layers;
    r.seed = rng.master_seed();
    r.pairs = config.pairs;
    r.bins = config.bins;
    r.expr = expressibility(samples, config.bins);
    r.ent = entangling_capability(samples);
    r.frame_potentials = frame_potential_estimates(samples, config.t_max);
    for (int t = 1; t <= config.t_max; ++t) r.welch.push_back(welch_bound(samples.dim, t));
    r.costs = cost_metrics(circuit);
    r.connectivity = tmpl.connectivity;
    return r;
}

RngStream run_stream(std::uint64_t master_seed, std::string_view template_id, int n, int layers, int repeat) {
    // FNV-1a over the id, then fold in the width and layer count.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : template_id) h = (h ^ c) * 0x100000001b3ULL;
    h ^= (static_cast<std::uint64_t>(n) << 32) ^ (static_cast<std::uint64_t>(layers) << 48);
    return RngStream(master_seed, static_cast<std::uint64_t>(repeat)).derive(h);
}

std::vector<DescriptorReport> compute_repeats(const CircuitTemplate& tmpl, int n, int layers,
                                              const SamplingConfig& config, std::uint64_t master_seed,
                                              int repeats) {
    if (repeats < 1) throw std::invalid_argument("repeat count must be >= 1");
    std::vector<DescriptorReport> out;
    for (int r = 0; r < repeats; ++r) {
        out.push_back(compute_report(tmpl, n, layers, config, run_stream(master_seed, tmpl.id, n, layers, r)));
        out.back().repeat = r;
    }
    return out;
}

}  // namespace pqc
