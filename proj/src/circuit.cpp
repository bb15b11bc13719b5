#include "pqc/circuit.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <regex>

#include "catalog_data.hpp"
#include "pqc/template_io.hpp"

namespace pqc {

namespace {

constexpr std::array<std::pair<Connectivity, std::string_view>, 5> kConnectivityNames{{
    {Connectivity::None, "none"},
    {Connectivity::NearestNeighbor, "nearest-neighbor"},
    {Connectivity::Ring, "ring"},
    {Connectivity::CircuitBlock, "circuit-block"},
    {Connectivity::AllToAll, "all-to-all"},
}};

void expand(const GatePattern& pat, std::size_t depth, SymbolTable& symbols, int n, BoundCircuit& out,
            const std::string& tmpl_id) {
    if (depth < pat.loops.size()) {
        const auto& loop = pat.loops[depth];
        const long begin = loop.begin.evaluate(symbols);
        const long end = loop.end.evaluate(symbols);
        for (long v = begin; v < end; ++v) {
            symbols[loop.var] = v;
            expand(pat, depth + 1, symbols, n, out, tmpl_id);
        }
        symbols.erase(loop.var);
        return;
    }

    GateOp gate{pat.kind, {0, 0}, {}};
    for (std::size_t k = 0; k < pat.qubits.size(); ++k) gate.qubits[k] = static_cast<int>(pat.qubits[k].evaluate(symbols));
    if (pat.qubits.size() == 1) gate.qubits[1] = gate.qubits[0];
    if (pat.parameterized) {
        for (int k = 0; k < angle_arity(pat.kind); ++k) gate.angles.emplace_back(ParamSlot{out.param_count++});
    } else {
        for (double a : pat.fixed_angles) gate.angles.emplace_back(a);
    }
    try {
        validate_gate(gate, n);
    } catch (const std::exception& e) {
        throw std::invalid_argument("template '" + tmpl_id + "' line " + std::to_string(pat.line) + " at n=" +
                                    std::to_string(n) + ": " + e.what());
    }
    out.gates.push_back(std::move(gate));
}

void expand_all(const std::vector<GatePattern>& patterns, int n, BoundCircuit& out, const std::string& tmpl_id) {
    SymbolTable symbols{{"n", n}};
    for (const auto& pat : patterns) expand(pat, 0, symbols, n, out, tmpl_id);
}

std::vector<CircuitTemplate> load_catalog() {
    if (const char* dir = std::getenv("PQC_TEMPLATE_DIR"); dir && *dir) return load_template_dir(dir);
    std::vector<CircuitTemplate> out;
    for (const auto& doc : detail::embedded_templates()) out.push_back(parse_template_file(doc));
    sort_catalog(out);
    return out;
}

}  // namespace

std::string_view to_string(Connectivity c) {
    for (const auto& [k, name] : kConnectivityNames)
        if (k == c) return name;
    return "none";
}

Connectivity connectivity_from_string(std::string_view name) {
    for (const auto& [k, label] : kConnectivityNames)
        if (label == name) return k;
    throw std::invalid_argument("unknown connectivity '" + std::string(name) + "'");
}

std::string_view to_string(Sampler s) { return s == Sampler::Haar ? "haar" : "uniform"; }

Sampler sampler_from_string(std::string_view name) {
    if (name == "uniform") return Sampler::Uniform;
    if (name == "haar") return Sampler::Haar;
    throw std::invalid_argument("unknown sampler '" + std::string(name) + "'");
}

BoundCircuit instantiate(const CircuitTemplate& tmpl, int n, int layers) {
    if (!tmpl.supports_width(n))
        throw std::invalid_argument("template '" + tmpl.id + "' does not support n=" + std::to_string(n) +
                                    " (allowed " + std::to_string(tmpl.min_width) + ".." +
                                    std::to_string(tmpl.max_width) + ")");
    if (layers < 1) throw std::invalid_argument("layer count must be >= 1, got " + std::to_string(layers));

    BoundCircuit out;
    out.template_id = tmpl.id;
    out.n = n;
    out.layers = layers;
    out.sampler = tmpl.sampler;
    expand_all(tmpl.prologue, n, out, tmpl.id);
    out.prologue_gates = out.gates.size();
    out.prologue_params = out.param_count;
    for (int l = 0; l < layers; ++l) expand_all(tmpl.layer, n, out, tmpl.id);
    return out;
}

StateVector bind(const BoundCircuit& circuit, std::span<const double> theta) {
    if (theta.size() != circuit.param_count)
        throw std::invalid_argument("circuit '" + circuit.template_id + "' expects " +
                                    std::to_string(circuit.param_count) + " parameters, got " +
                                    std::to_string(theta.size()));
    auto state = StateVector::zero(circuit.n);
    for (const auto& gate : circuit.gates) apply_gate(state, gate, theta);
    return state;
}

CostMetrics cost_metrics(const BoundCircuit& circuit) {
    CostMetrics m;
    m.num_params = circuit.param_count;
    m.num_gates = circuit.gates.size();
    // The prologue and every layer repetition are scheduled separately, as if
    // separated by barriers: gates pack greedily onto wires inside a segment
    // and segment depths add up.
    const std::size_t per_layer =
        circuit.layers > 0 ? (circuit.gates.size() - circuit.prologue_gates) / circuit.layers : 0;
    std::vector<std::size_t> wire_free(static_cast<std::size_t>(circuit.n), 0);
    std::size_t segment_base = 0;
    for (std::size_t k = 0; k < circuit.gates.size(); ++k) {
        if (k == circuit.prologue_gates || (k > circuit.prologue_gates && per_layer > 0 &&
                                            (k - circuit.prologue_gates) % per_layer == 0)) {
            segment_base = m.depth;
            std::fill(wire_free.begin(), wire_free.end(), segment_base);
        }
        const auto& g = circuit.gates[k];
        const int arity = qubit_arity(g.kind);
        if (arity == 2) ++m.num_two_qubit_gates;
        std::size_t start = segment_base;
        for (int q = 0; q < arity; ++q) start = std::max(start, wire_free[g.qubits[q]]);
        for (int q = 0; q < arity; ++q) wire_free[g.qubits[q]] = start + 1;
        m.depth = std::max(m.depth, start + 1);
    }
    return m;
}

CostMetrics cost_metrics(const CircuitTemplate& tmpl, int n, int layers) {
    return cost_metrics(instantiate(tmpl, n, layers));
}

const std::vector<CircuitTemplate>& catalog() {
    static const std::vector<CircuitTemplate> templates = load_catalog();
    return templates;
}

const CircuitTemplate& find_template(std::string_view id) {
    for (const auto& t : catalog())
        if (t.id == id) return t;
    throw std::invalid_argument("unknown circuit id '" + std::string(id) + "'");
}

bool is_benchmark_id(std::string_view id) {
    static const std::regex pattern("c(0[1-9]|1[0-9])");
    return std::regex_match(id.begin(), id.end(), pattern);
}

std::vector<std::string> benchmark_ids() {
    std::vector<std::string> ids;
    for (int k = 1; k <= 19; ++k) ids.push_back((k < 10 ? "c0" : "c") + std::to_string(k));
    return ids;
}

}  // namespace pqc
