#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "pqc/descriptors.hpp"

using namespace pqc;
using std::numbers::pi;

namespace {

StateVector ghz(int n) {
    std::vector<Complex> a(std::size_t{1} << n, 0.0);
    a.front() = a.back() = 1 / std::sqrt(2.0);
    return StateVector::from_amplitudes(a);
}

StateVector bell() { return StateVector::from_amplitudes({1, 0, 0, 1}, true); }

StateVector w3() {
    std::vector<Complex> a(8, 0.0);
    a[1] = a[2] = a[4] = 1 / std::sqrt(3.0);
    return StateVector::from_amplitudes(a);
}

StateVector random_product(int n, RngStream& rng) {
    auto s = sample_haar_state(1, rng);
    for (int q = 1; q < n; ++q) s = s.tensor(sample_haar_state(1, rng));
    return s;
}

SamplingConfig config(std::size_t pairs = 5000) {
    SamplingConfig c;
    c.pairs = pairs;
    return c;
}

}  // namespace

// ---------- Haar bin masses ----------

TEST(HaarMasses, UniformForOneQubit) {
    for (double m : haar_bin_masses(2, 75)) EXPECT_NEAR(m, 1.0 / 75, 1e-15);
}

TEST(HaarMasses, FirstBinAtSixteen) {
    const auto m = haar_bin_masses(16, 75);
    EXPECT_NEAR(m[0], 1 - std::pow(74.0 / 75.0, 15), 1e-15);
    EXPECT_NEAR(m[0], 0.18237, 1e-5);
}

TEST(HaarMasses, MatchOracleSumToOneAndStayPositive) {
    for (std::uint64_t N : {2u, 4u, 16u, 256u}) {
        const auto m = haar_bin_masses(N, 75);
        const auto ref = oracle::haar_masses(N, 75);
        EXPECT_NEAR(std::accumulate(m.begin(), m.end(), 0.0), 1.0, 1e-12);
        for (int k = 0; k < 75; ++k) {
            // (1/75)^255 is below the double range; those bins live in the log masses
            if (N <= 16) EXPECT_GT(m[k], 0.0) << "N=" << N << " bin " << k;
            EXPECT_NEAR(m[k], ref[k], 1e-13 + 1e-9 * ref[k]);
        }
    }
}

TEST(HaarMasses, LogMassesFiniteWhereMassesUnderflow) {
    const std::uint64_t N = std::uint64_t{1} << 16;
    const auto logm = haar_bin_log_masses(N, 75);
    for (double l : logm) EXPECT_TRUE(std::isfinite(l));
    // last bin: (1/75)^(N-1)
    EXPECT_NEAR(logm.back(), (N - 1) * std::log(1.0 / 75), 1e-6 * (N - 1));
    EXPECT_THROW(haar_bin_masses(1, 75), std::invalid_argument);
    EXPECT_THROW(haar_bin_masses(16, 0), std::invalid_argument);
}

TEST(Histogram, OneAtTopEdgeLandsInLastBin) {
    const std::vector<double> f{0.0, 0.5, 1.0, 1.0};
    const auto h = make_histogram(f, 4, 4);
    EXPECT_EQ(h.edges.size(), 5u);
    EXPECT_DOUBLE_EQ(h.empirical_mass[0], 0.25);
    EXPECT_DOUBLE_EQ(h.empirical_mass[2], 0.25);
    EXPECT_DOUBLE_EQ(h.empirical_mass[3], 0.5);
}

// ---------- KL ----------

TEST(Kl, Examples) {
    const std::vector<double> p{0.5, 0.5}, q{0.25, 0.75};
    EXPECT_NEAR(kl_divergence(p, q), oracle::kl(p, q), 1e-15);
    EXPECT_NEAR(kl_divergence(p, q), 0.1438, 1e-4);
    EXPECT_EQ(kl_divergence(q, q), 0.0);
    std::vector<double> last(75, 0.0);
    last.back() = 1.0;
    EXPECT_NEAR(kl_divergence(last, haar_bin_masses(2, 75)), std::log(75.0), 1e-12);
    EXPECT_THROW(kl_divergence(p, std::vector<double>{1.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(kl_divergence(p, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Kl, LogReferenceAgreesWithDirect) {
    const std::vector<double> p{0.1, 0.0, 0.6, 0.3};
    const auto q = haar_bin_masses(8, 4);
    std::vector<double> lq;
    for (double v : q) lq.push_back(std::log(v));
    EXPECT_NEAR(kl_divergence_log(p, lq), kl_divergence(p, q), 1e-14);
}

// ---------- Welch bounds ----------

TEST(Welch, Examples) {
    for (std::uint64_t N : {2u, 16u, 1024u}) EXPECT_NEAR(welch_bound(N, 1), 1.0 / N, 1e-16);
    EXPECT_NEAR(welch_bound(2, 2), 1.0 / 3, 1e-16);
    EXPECT_NEAR(welch_bound(16, 2), 1.0 / 136, 1e-16);
    // log-gamma differences lose ~1e-10 relative at N = 2^16
    for (int t = 1; t <= 6; ++t)
        for (std::uint64_t N : {2u, 16u, 65536u}) EXPECT_NEAR(welch_bound(N, t), oracle::welch(N, t), 1e-9 * oracle::welch(N, t));
    EXPECT_THROW(welch_bound(1, 1), std::invalid_argument);
    EXPECT_THROW(welch_bound(4, 0), std::invalid_argument);
}

// ---------- Meyer-Wallach ----------

TEST(MeyerWallach, AnalyticStates) {
    EXPECT_NEAR(mw_q(StateVector::basis("01")), 0.0, 1e-15);
    EXPECT_NEAR(mw_q(bell()), 1.0, 1e-12);
    EXPECT_NEAR(mw_q(ghz(4)), 1.0, 1e-12);
    EXPECT_NEAR(mw_q(bell().tensor(bell())), 1.0, 1e-12);
    EXPECT_NEAR(mw_q(w3()), 8.0 / 9.0, 1e-12);
    EXPECT_NEAR(oracle::mw_q(w3().amplitudes(), 3), 8.0 / 9.0, 1e-12);
}

TEST(MeyerWallach, DistanceFormAgreesWithPurityForm) {
    RngStream rng(31, 0);
    for (int n = 2; n <= 4; ++n)
        for (int rep = 0; rep < 100; ++rep) {
            const auto s = sample_haar_state(n, rng);
            EXPECT_NEAR(mw_q(s), mw_q_distance(s), 1e-9);
            EXPECT_NEAR(mw_q(s), oracle::mw_q(s.amplitudes(), n), 1e-12);
        }
    for (const auto& s : {bell(), ghz(3), w3()}) EXPECT_NEAR(mw_q_distance(s), mw_q(s), 1e-12);
}

TEST(MeyerWallach, LocalUnitaryInvariance) {
    RngStream rng(32, 0);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = sample_haar_state(4, rng);
        const double before = mw_q(s);
        for (int q = 0; q < 4; ++q)
            apply_gate(s, make_gate(GateKind::U3, q, -1, {2 * pi * rng.uniform(), 2 * pi * rng.uniform(),
                                                           2 * pi * rng.uniform()}));
        EXPECT_NEAR(mw_q(s), before, 1e-9);
    }
}

TEST(MeyerWallach, RangeAndProductStates) {
    RngStream rng(33, 0);
    for (int rep = 0; rep < 100; ++rep) {
        EXPECT_LT(mw_q(random_product(1 + rep % 4, rng)), 1e-12);
        const double q = mw_q(sample_haar_state(3, rng));
        EXPECT_GE(q, 0.0);
        EXPECT_LE(q, 1.0);
    }
}

TEST(MeyerWallach, HaarMeanQ) {
    EXPECT_EQ(haar_mean_q(2), 0.0);
    EXPECT_NEAR(haar_mean_q(4), 0.4, 1e-15);
    EXPECT_NEAR(haar_mean_q(16), 14.0 / 17.0, 1e-15);
    EXPECT_THROW(haar_mean_q(1), std::invalid_argument);
}

TEST(MeyerWallach, HaarStatesApproachHaarMean) {
    const auto s = sample_haar_pairs(4, 5000, RngStream(34, 0));
    EXPECT_EQ(s.q_values.size(), 10000u);
    EXPECT_NEAR(entangling_capability(s), 14.0 / 17.0, 0.01);
}

// ---------- sampling ----------

TEST(Sampling, IdleGivesUnitFidelityAndMaximalKl) {
    const auto s = sample_fidelities(find_template("idle"), 1, 1, 500, RngStream(1, 0));
    for (double f : s.fidelities) EXPECT_EQ(f, 1.0);
    EXPECT_NEAR(expressibility(s), std::log(75.0), 1e-12);
    for (const auto& m : frame_potential_estimates(s, 4)) EXPECT_NEAR(m.mean, 1.0, 1e-15);
}

TEST(Sampling, OneQubitMeansAreOneHalf) {
    for (const char* id : {"haar-1q", "single-A", "single-B"}) {
        const auto s = sample_fidelities(find_template(id), 1, 1, 5000, RngStream(2, 0));
        EXPECT_NEAR(oracle::mean(s.fidelities), 0.5, 0.02) << id;
    }
}

TEST(Sampling, HaarSingleQubitMomentsMatchWelch) {
    const auto s = sample_fidelities(find_template("haar-1q"), 1, 1, 20000, RngStream(3, 0));
    const auto fp = frame_potential_estimates(s, 4);
    for (int t = 1; t <= 4; ++t) EXPECT_NEAR(fp[t - 1].mean, welch_bound(2, t), 4 * fp[t - 1].std_error) << t;
    EXPECT_NEAR(fp[1].mean, 1.0 / 3, 0.01);
}

TEST(Sampling, SingleAFollowsArcsineLaw) {
    const auto s = sample_fidelities(find_template("single-A"), 1, 1, 5000, RngStream(4, 0));
    const auto h = make_histogram(s.fidelities, 2, 75);
    EXPECT_LT(oracle::kl(h.empirical_mass, oracle::arcsine_masses(75)), 0.02);
}

TEST(Sampling, FramePotentialsNonIncreasing) {
    for (const char* id : {"c01", "c09", "c14"}) {
        const auto s = sample_fidelities(find_template(id), 4, 1, 1000, RngStream(5, 0));
        const auto fp = frame_potential_estimates(s, 6);
        for (int t = 1; t < 6; ++t) EXPECT_LE(fp[t].mean, fp[t - 1].mean) << id;
    }
    FidelitySampleSet empty;
    EXPECT_THROW(frame_potential_estimates(empty, 2), std::invalid_argument);
}

TEST(Sampling, IndependentOfWorkerCount) {
    const auto& t = find_template("c06");
    const auto a = sample_fidelities(t, 4, 1, 700, RngStream(6, 0), 1);
    const auto b = sample_fidelities(t, 4, 1, 700, RngStream(6, 0), 4);
    EXPECT_EQ(a.fidelities, b.fidelities);
    EXPECT_EQ(a.q_values, b.q_values);
    EXPECT_EQ(a.q_values.size(), 1400u);
}

TEST(Sampling, RejectsEmptyRequests) {
    EXPECT_THROW(sample_fidelities(find_template("c01"), 4, 1, 0, RngStream(1, 0)), std::invalid_argument);
    EXPECT_THROW(sample_fidelities(find_template("c01"), 1, 1, 10, RngStream(1, 0)), std::invalid_argument);
}

// ---------- descriptors on circuits ----------

TEST(Descriptors, ProductCircuitHasNoEntanglement) {
    for (int n : {2, 4, 6})
        EXPECT_LT(entangling_capability(find_template("c01"), n, 2, config(500), RngStream(7, 0)), 1e-12);
}

TEST(Descriptors, CircuitNineIsHighlyEntangling) {
    const auto r = compute_report(find_template("c09"), 4, 1, config(), RngStream(8, 0));
    EXPECT_GE(r.ent, 0.95);
    EXPECT_NEAR(r.expr, 0.68, 0.06);
}

TEST(Descriptors, ReportIsDeterministic) {
    const auto& t = find_template("c06");
    const auto a = compute_report(t, 4, 1, config(), run_stream(7, "c06", 4, 1, 0));
    const auto b = compute_report(t, 4, 1, config(), run_stream(7, "c06", 4, 1, 0));
    EXPECT_EQ(a.expr, b.expr);
    EXPECT_EQ(a.ent, b.ent);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(a.frame_potentials[k].mean, b.frame_potentials[k].mean);
    EXPECT_EQ(a.seed, 7u);
}

TEST(Descriptors, FramePotentialsRespectWelchBound) {
    for (const auto& id : benchmark_ids()) {
        const auto r = compute_report(find_template(id), 4, 1, config(2000), run_stream(9, id, 4, 1, 0));
        ASSERT_EQ(r.frame_potentials.size(), 4u);
        for (int t = 1; t <= 4; ++t)
            EXPECT_GE(r.frame_potentials[t - 1].mean,
                      welch_bound(16, t) - 3 * r.frame_potentials[t - 1].std_error)
                << id << " t=" << t;
        EXPECT_GE(r.expr, 0.0);
        EXPECT_GE(r.ent, 0.0);
        EXPECT_LE(r.ent, 1.0);
    }
}

TEST(Descriptors, CircuitsThreeAndSixteenAgreeStatistically) {
    SamplingConfig c = config();
    const auto a = compute_repeats(find_template("c03"), 4, 1, c, 21, 5);
    const auto b = compute_repeats(find_template("c16"), 4, 1, c, 21, 5);
    std::vector<double> ea, eb, qa, qb;
    for (const auto& r : a) ea.push_back(r.expr), qa.push_back(r.ent);
    for (const auto& r : b) eb.push_back(r.expr), qb.push_back(r.ent);
    auto se = [](const std::vector<double>& x, const std::vector<double>& y) {
        return std::sqrt((std::pow(oracle::sample_std(x), 2) + std::pow(oracle::sample_std(y), 2)) / x.size());
    };
    EXPECT_LE(std::abs(oracle::mean(ea) - oracle::mean(eb)), 3 * se(ea, eb));
    EXPECT_LE(std::abs(oracle::mean(qa) - oracle::mean(qb)), 3 * se(qa, qb));
}

TEST(Descriptors, RepeatsAreNumberedAndIndependent) {
    const auto r = compute_repeats(find_template("c02"), 3, 1, config(300), 5, 3);
    ASSERT_EQ(r.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(r[k].repeat, k);
    EXPECT_NE(r[0].expr, r[1].expr);
    EXPECT_THROW(compute_repeats(find_template("c02"), 3, 1, config(300), 5, 0), std::invalid_argument);
}

// ---------- statistics ----------

TEST(Stats, MeanStd) {
    const std::vector<double> one{2.0};
    EXPECT_FALSE(mean_std(one).std.has_value());
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto m = mean_std(v);
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_NEAR(*m.std, oracle::sample_std(v), 1e-15);
}

TEST(BiasBaseline, SixteenDimensionalDefault) {
    const auto b = kl_bias_baseline(16, 75, 5000, 5, RngStream(40, 0));
    EXPECT_NEAR(b.mean, 0.0039, 0.002);
    ASSERT_TRUE(b.std.has_value());
}

TEST(BiasBaseline, OneQubitMatchesPlugInBiasAndShrinksWithSamples) {
    // Flat reference: every one of the K bins is populated, so the plug-in
    // KL has expectation ~ (K - 1) / (2M) with spread sqrt(2(K - 1)) / (2M).
    const auto b2 = kl_bias_baseline(2, 75, 5000, 5, RngStream(41, 0));
    EXPECT_GT(b2.mean, 0.0);
    EXPECT_NEAR(b2.mean, 74.0 / 10000, 3 * std::sqrt(2 * 74.0) / 10000 / std::sqrt(5.0));
    const auto b16 = kl_bias_baseline(16, 75, 5000, 5, RngStream(41, 0));
    const auto big = kl_bias_baseline(16, 75, 50000, 5, RngStream(41, 0));
    EXPECT_LT(big.mean, b16.mean);
    EXPECT_FALSE(kl_bias_baseline(16, 75, 100, 1, RngStream(41, 0)).std.has_value());
}

TEST(Chebyshev, PlannerValues) {
    EXPECT_EQ(chebyshev_sample_size(0.1, 0.98), 5000u);
    EXPECT_EQ(chebyshev_sample_size(1.0, 0.5), 2u);
    // exact value 1 / (0.02 * 0.0707^2) = 10003.02..., so the ceiling is 10004
    const long double exact = 1.0L / (0.02L * 0.0707L * 0.0707L);
    EXPECT_EQ(chebyshev_sample_size(0.0707, 0.98), static_cast<std::uint64_t>(std::ceil(exact)));
    EXPECT_THROW(chebyshev_sample_size(0.0, 0.9), std::invalid_argument);
    EXPECT_THROW(chebyshev_sample_size(0.1, 1.0), std::invalid_argument);
    EXPECT_THROW(chebyshev_sample_size(0.1, 0.0), std::invalid_argument);
}

TEST(Convergence, IdleIsConstantAndCircuitSixBiasShrinks) {
    const std::vector<std::size_t> sizes{100, 500, 2000, 5000};
    const auto idle = convergence_scan(find_template("idle"), 1, 1, sizes, 2, config(), RngStream(50, 0));
    for (const auto& p : idle) EXPECT_NEAR(p.expr.mean, std::log(75.0), 1e-12);

    const auto c6 = convergence_scan(find_template("c06"), 4, 1, sizes, 5, config(), RngStream(51, 0));
    ASSERT_EQ(c6.size(), sizes.size());
    for (std::size_t k = 1; k < c6.size(); ++k)
        EXPECT_LT(c6[k].expr.mean, c6[k - 1].expr.mean + *c6[k - 1].expr.std) << sizes[k];
    EXPECT_LT(c6.back().expr.mean, c6.front().expr.mean);
    const auto& ref = c6.back().ent;
    for (const auto& p : c6) EXPECT_LE(std::abs(p.ent.mean - ref.mean), 2 * std::max(*p.ent.std, *ref.std) + 1e-3);
}
