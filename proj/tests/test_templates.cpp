#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "pqc/circuit.hpp"
#include "closed_form_costs.hpp"

using namespace pqc;

namespace {

struct Case {
    int n, L;
};

void PrintTo(const Case& c, std::ostream* os) { *os << "n=" << c.n << ",L=" << c.L; }

class ClosedFormCosts : public ::testing::TestWithParam<Case> {};

std::string case_name(const ::testing::TestParamInfo<Case>& info) {
    return "n" + std::to_string(info.param.n) + "_L" + std::to_string(info.param.L);
}

}  // namespace

TEST_P(ClosedFormCosts, CostsMatchClosedForms) {
    const auto [n, L] = GetParam();
    for (int id = 1; id <= 19; ++id) {
        const auto name = benchmark_ids()[id - 1];
        const auto m = cost_metrics(find_template(name), n, L);
        EXPECT_EQ((Costs{m.num_params, m.num_two_qubit_gates, m.depth}), closed_form_costs(id, n, L))
            << name << " n=" << n << " L=" << L;
    }
}

INSTANTIATE_TEST_SUITE_P(FourQubits, ClosedFormCosts,
                         ::testing::Values(Case{4, 1}, Case{4, 2}, Case{4, 3}, Case{4, 5}), case_name);
INSTANTIATE_TEST_SUITE_P(WiderRegisters, ClosedFormCosts,
                         ::testing::Values(Case{6, 1}, Case{6, 2}, Case{8, 1}, Case{8, 2}), case_name);

TEST(Catalog, ContainsBenchmarksDemosAndComparisons) {
    const auto& all = catalog();
    EXPECT_EQ(all.size(), 26u);
    std::set<std::string> ids;
    for (const auto& t : all) ids.insert(t.id);
    EXPECT_EQ(ids.size(), all.size());
    for (const auto& id : benchmark_ids()) EXPECT_TRUE(ids.count(id)) << id;
    for (const char* id : {"idle", "single-A", "single-B", "haar-1q", "nn-cmp", "cb-cmp", "aa-cmp"})
        EXPECT_TRUE(ids.count(id)) << id;
    int benchmarks = 0;
    for (const auto& t : all) benchmarks += is_benchmark_id(t.id);
    EXPECT_EQ(benchmarks, 19);
    EXPECT_THROW(find_template("c20"), std::invalid_argument);
}

TEST(Catalog, ConnectivityClasses) {
    EXPECT_EQ(find_template("c05").connectivity, Connectivity::AllToAll);
    EXPECT_EQ(find_template("c06").connectivity, Connectivity::AllToAll);
    for (const char* id : {"c10", "c18", "c19"}) EXPECT_EQ(find_template(id).connectivity, Connectivity::Ring) << id;
    for (const char* id : {"c13", "c14", "c15"})
        EXPECT_EQ(find_template(id).connectivity, Connectivity::CircuitBlock) << id;
    EXPECT_EQ(find_template("c01").connectivity, Connectivity::None);
}

TEST(Catalog, SingleQubitDemos) {
    for (const char* id : {"idle", "single-A", "single-B", "haar-1q"}) {
        const auto& t = find_template(id);
        EXPECT_EQ(t.max_width, 1) << id;
        EXPECT_NO_THROW(instantiate(t, 1, 1));
    }
    EXPECT_TRUE(instantiate(find_template("idle"), 1, 1).gates.empty());
    EXPECT_EQ(find_template("haar-1q").sampler, Sampler::Haar);
    EXPECT_EQ(instantiate(find_template("single-B"), 1, 1).param_count, 2u);
}

TEST(Catalog, CircuitsThreeAndSixteenHaveMatchingCounts) {
    for (int n : {2, 4, 5, 6})
        for (int L : {1, 3}) {
            const auto a = cost_metrics(find_template("c03"), n, L);
            const auto b = cost_metrics(find_template("c16"), n, L);
            EXPECT_EQ(a.num_params, b.num_params);
            EXPECT_EQ(a.num_two_qubit_gates, b.num_two_qubit_gates);
        }
}

TEST(Catalog, ComparisonCircuitsShareRotationsAndGateCounts) {
    auto profile = [](const BoundCircuit& c) {
        std::multiset<GateKind> rot;
        std::multiset<GateKind> ent;
        for (const auto& g : c.gates) (qubit_arity(g.kind) == 2 ? ent : rot).insert(g.kind);
        return std::pair{rot, ent};
    };
    for (int n : {3, 4, 6}) {
        const auto nn = profile(instantiate(find_template("nn-cmp"), n, 1));
        const auto cb = profile(instantiate(find_template("cb-cmp"), n, 1));
        const auto aa = profile(instantiate(find_template("aa-cmp"), n, 1));
        EXPECT_EQ(nn, aa) << "n=" << n;
        EXPECT_EQ(cb, aa) << "n=" << n;
        EXPECT_EQ(aa.second.size(), static_cast<std::size_t>(n * (n - 1)));
    }
}

TEST(Catalog, ComparisonConnectivityShapes) {
    const auto nn = instantiate(find_template("nn-cmp"), 5, 1);
    const auto cb = instantiate(find_template("cb-cmp"), 5, 1);
    std::set<std::pair<int, int>> cb_pairs;
    for (const auto& g : nn.gates)
        if (qubit_arity(g.kind) == 2) EXPECT_EQ(std::abs(g.qubits[0] - g.qubits[1]), 1);
    for (const auto& g : cb.gates)
        if (qubit_arity(g.kind) == 2) {
            const int d = (g.qubits[1] - g.qubits[0] + 5) % 5;
            EXPECT_TRUE(d == 1 || d == 4);
            cb_pairs.insert({std::min(g.qubits[0], g.qubits[1]), std::max(g.qubits[0], g.qubits[1])});
        }
    EXPECT_TRUE(cb_pairs.count({0, 4}));  // closes the ring
    const auto nn_cost = cost_metrics(nn);
    EXPECT_LT(nn_cost.depth, cost_metrics(cb).depth);
    EXPECT_LE(cost_metrics(cb).depth, cost_metrics(instantiate(find_template("aa-cmp"), 5, 1)).depth);
}

TEST(Catalog, ParamsGrowLinearlyInLayers) {
    for (const auto& t : catalog()) {
        const int n = std::min(4, t.max_width);
        const auto p1 = instantiate(t, n, 1).param_count;
        const auto p0 = instantiate(t, n, 1).prologue_params;
        for (int L = 2; L <= 4; ++L) EXPECT_EQ(instantiate(t, n, L).param_count, p0 + (p1 - p0) * L) << t.id;
        if (t.id != "c10") EXPECT_EQ(p0, 0u) << t.id;
    }
    EXPECT_EQ(instantiate(find_template("c10"), 4, 1).prologue_params, 4u);
}

TEST(Catalog, CircuitBlockRangeThreeCycle) {
    // n=6: range-3 block pairs qubits three apart, two gates; n=4 visits every qubit
    auto second_block = [](int n) {
        const auto c = instantiate(find_template("c15"), n, 1);
        std::vector<std::array<int, 2>> out;
        int seen = 0;
        for (const auto& g : c.gates)
            if (qubit_arity(g.kind) == 2 && ++seen > n) out.push_back(g.qubits);
        return out;
    };
    const auto six = second_block(6);
    ASSERT_EQ(six.size(), 2u);
    for (const auto& q : six) EXPECT_EQ((q[1] - q[0] + 6) % 6, 3);
    const auto four = second_block(4);
    ASSERT_EQ(four.size(), 4u);
    std::set<int> controls;
    for (const auto& q : four) {
        EXPECT_EQ((q[1] - q[0] + 4) % 4, 3);
        controls.insert(q[0]);
    }
    EXPECT_EQ(controls.size(), 4u);
}

TEST(Circuit, BindChecksParameterCount) {
    const auto c = instantiate(find_template("c01"), 2, 1);
    EXPECT_THROW(pqc::bind(c, std::vector<double>(3)), std::invalid_argument);
    const auto s = pqc::bind(c, std::vector<double>(4, 0.0));
    EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-15);
}

TEST(Circuit, RejectsUnsupportedWidthAndLayers) {
    EXPECT_THROW(instantiate(find_template("c02"), 1, 1), std::invalid_argument);
    EXPECT_THROW(instantiate(find_template("c02"), 4, 0), std::invalid_argument);
}
