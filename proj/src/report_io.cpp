#include "pqc/report_io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace pqc {

namespace {

using nlohmann::ordered_json;

ordered_json to_json(const DescriptorReport& r) {
    ordered_json j;
    j["circuit_id"] = r.template_id;
    j["n"] = r.n;
    j["L"] = r.layers;
    j["repeat"] = r.repeat;
    j["seed"] = r.seed;
    j["pairs"] = r.pairs;
    j["bins"] = r.bins;
    j["expr"] = r.expr;
    j["ent"] = r.ent;
    for (int t = 1; t <= kExportMoments; ++t) {
        const auto key = "fp_t" + std::to_string(t);
        if (t <= static_cast<int>(r.frame_potentials.size()))
            j[key] = r.frame_potentials[t - 1].mean;
        else
            j[key] = nullptr;
    }
    for (int t = 1; t <= kExportMoments; ++t) {
        const auto key = "welch_t" + std::to_string(t);
        if (t <= static_cast<int>(r.welch.size()))
            j[key] = r.welch[t - 1];
        else
            j[key] = nullptr;
    }
    j["n_params"] = r.costs.num_params;
    j["n_2q"] = r.costs.num_two_qubit_gates;
    j["depth"] = r.costs.depth;
    j["connectivity"] = std::string(to_string(r.connectivity));
    return j;
}

}  // namespace

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols{
        "circuit_id", "n",        "L",        "repeat",   "seed",     "pairs",   "bins",
        "expr",       "ent",      "fp_t1",    "fp_t2",    "fp_t3",    "fp_t4",   "welch_t1",
        "welch_t2",   "welch_t3", "welch_t4", "n_params", "n_2q",     "depth",   "connectivity"};
    return cols;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_reports_csv(std::ostream& out, std::span<const DescriptorReport> reports) {
    const auto& cols = report_columns();
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << "\n";
    for (const auto& r : reports) {
        out << r.template_id << ',' << r.n << ',' << r.layers << ',' << r.repeat << ',' << r.seed << ',' << r.pairs
            << ',' << r.bins << ',' << format_real(r.expr) << ',' << format_real(r.ent);
        for (int t = 1; t <= kExportMoments; ++t) {
            out << ',';
            if (t <= static_cast<int>(r.frame_potentials.size())) out << format_real(r.frame_potentials[t - 1].mean);
        }
        for (int t = 1; t <= kExportMoments; ++t) {
            out << ',';
            if (t <= static_cast<int>(r.welch.size())) out << format_real(r.welch[t - 1]);
        }
        out << ',' << r.costs.num_params << ',' << r.costs.num_two_qubit_gates << ',' << r.costs.depth << ','
            << to_string(r.connectivity) << "\n";
    }
}

void write_reports_json(std::ostream& out, std::span<const DescriptorReport> reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << "\n";
}

}  // namespace pqc
