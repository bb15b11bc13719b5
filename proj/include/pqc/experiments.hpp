#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pqc/descriptors.hpp"

namespace pqc {

/// Descriptors of one circuit summarized over repeats.
struct SummaryRow {
    std::string group;
    std::string template_id;
    int n = 0;
    int layers = 0;
    int repeats = 0;
    MeanStd expr;
    MeanStd ent;
    CostMetrics costs;
};

SummaryRow summarize(const std::string& group, const std::vector<DescriptorReport>& reports);

/// Circuits differing only in CRZ vs CRX entanglers, CRZ member first.
const std::vector<std::pair<std::string, std::string>>& crz_crx_pairs();

/// (label, template id) for the nearest-neighbor / circuit-block / all-to-all comparison.
const std::vector<std::pair<std::string, std::string>>& connectivity_circuits();

/// Two rows per pair, CRZ member first; group is "<crz>/<crx>".
std::vector<SummaryRow> crz_crx_table(int n, const SamplingConfig& config, std::uint64_t seed, int repeats);
std::vector<SummaryRow> connectivity_table(int n, const SamplingConfig& config, std::uint64_t seed, int repeats);

struct SaturationRow {
    std::string template_id;
    int layers = 0;
    std::size_t two_qubit_gates = 0;
    MeanStd expr;
};

std::vector<SaturationRow> saturation_series(const CircuitTemplate& tmpl, int n, int first_layer, int last_layer,
                                             const SamplingConfig& config, std::uint64_t seed, int repeats);

/// Bias baseline stream for a run seeded with `seed`, shared by the CLI and tests.
RngStream baseline_stream(std::uint64_t seed, int n);

}  // namespace pqc
