#include "pqc/experiments.hpp"

namespace pqc {

namespace {

std::vector<double> column(const std::vector<DescriptorReport>& reports, double DescriptorReport::*field) {
    std::vector<double> v;
    for (const auto& r : reports) v.push_back(r.*field);
    return v;
}

}  // namespace

SummaryRow summarize(const std::string& group, const std::vector<DescriptorReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("no reports to summarize");
    SummaryRow row;
    row.group = group;
    row.template_id = reports.front().template_id;
    row.n = reports.front().n;
    row.layers = reports.front().layers;
    row.repeats = static_cast<int>(reports.size());
    row.expr = mean_std(column(reports, &DescriptorReport::expr));
    row.ent = mean_std(column(reports, &DescriptorReport::ent));
    row.costs = reports.front().costs;
    return row;
}

const std::vector<std::pair<std::string, std::string>>& crz_crx_pairs() {
    static const std::vector<std::pair<std::string, std::string>> pairs{
        {"c03", "c04"}, {"c05", "c06"}, {"c07", "c08"}, {"c13", "c14"}, {"c16", "c17"}, {"c18", "c19"}};
    return pairs;
}

const std::vector<std::pair<std::string, std::string>>& connectivity_circuits() {
    static const std::vector<std::pair<std::string, std::string>> rows{
        {"NN", "nn-cmp"}, {"CB", "cb-cmp"}, {"AA", "aa-cmp"}};
    return rows;
}

std::vector<SummaryRow> crz_crx_table(int n, const SamplingConfig& config, std::uint64_t seed, int repeats) {
    std::vector<SummaryRow> rows;
    for (const auto& [crz, crx] : crz_crx_pairs()) {
        const std::string group = crz + "/" + crx;
        for (const auto& id : {crz, crx})
            rows.push_back(summarize(group, compute_repeats(find_template(id), n, 1, config, seed, repeats)));
    }
    return rows;
}

std::vector<SummaryRow> connectivity_table(int n, const SamplingConfig& config, std::uint64_t seed, int repeats) {
    std::vector<SummaryRow> rows;
    for (const auto& [label, id] : connectivity_circuits())
        rows.push_back(summarize(label, compute_repeats(find_template(id), n, 1, config, seed, repeats)));
    return rows;
}

std::vector<SaturationRow> saturation_series(const CircuitTemplate& tmpl, int n, int first_layer, int last_layer,
                                             const SamplingConfig& config, std::uint64_t seed, int repeats) {
    std::vector<SaturationRow> rows;
    for (int l = first_layer; l <= last_layer; ++l) {
        const auto reports = compute_repeats(tmpl, n, l, config, seed, repeats);
        rows.push_back({tmpl.id, l, reports.front().costs.num_two_qubit_gates,
                        mean_std(column(reports, &DescriptorReport::expr))});
    }
    return rows;
}

RngStream baseline_stream(std::uint64_t seed, int n) { return run_stream(seed, "haar", n, 0, 0); }

}  // namespace pqc
