#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqc/index_expr.hpp"
#include "pqc/state.hpp"

namespace pqc {

enum class Connectivity { None, NearestNeighbor, Ring, CircuitBlock, AllToAll };

std::string_view to_string(Connectivity c);
Connectivity connectivity_from_string(std::string_view name);

/// How parameter vectors are turned into states when sampling the template.
/// Haar templates ignore their parameters during sampling and draw Haar
/// random states directly; they still bind normally.
enum class Sampler { Uniform, Haar };

std::string_view to_string(Sampler s);
Sampler sampler_from_string(std::string_view name);

struct LoopSpec {
    std::string var;
    IndexExpr begin;  // inclusive
    IndexExpr end;    // exclusive
};

/// One line of a template: a gate kind applied over a nest of loops.
struct GatePattern {
    std::vector<LoopSpec> loops;
    GateKind kind = GateKind::H;
    std::vector<IndexExpr> qubits;
    /// true: every angle draws a fresh parameter slot. false: `fixed_angles`.
    bool parameterized = false;
    std::vector<double> fixed_angles;
    int line = 0;
};

/// Declarative unit-layer circuit, generic in the width n.
struct CircuitTemplate {
    std::string id;
    std::string description;
    Connectivity connectivity = Connectivity::None;
    Sampler sampler = Sampler::Uniform;
    int min_width = 1;
    int max_width = kMaxQubits;
    std::vector<GatePattern> prologue;
    std::vector<GatePattern> layer;

    bool supports_width(int n) const { return n >= min_width && n <= max_width; }
};

/// Template instantiated at a width and layer count with numbered slots.
struct BoundCircuit {
    std::string template_id;
    int n = 0;
    int layers = 0;
    std::vector<GateOp> gates;
    std::size_t param_count = 0;
    std::size_t prologue_gates = 0;
    std::size_t prologue_params = 0;
    Sampler sampler = Sampler::Uniform;
};

struct CostMetrics {
    std::size_t num_params = 0;
    std::size_t num_two_qubit_gates = 0;
    std::size_t num_gates = 0;
    std::size_t depth = 0;

    friend bool operator==(const CostMetrics&, const CostMetrics&) = default;
};

/// Expands the prologue once and the unit layer `layers` times. Throws
/// std::invalid_argument for unsupported widths, layers < 1, or a pattern
/// that produces an invalid gate.
BoundCircuit instantiate(const CircuitTemplate& tmpl, int n, int layers);

/// Runs the circuit on |0...0> with slots taken from `theta`.
StateVector bind(const BoundCircuit& circuit, std::span<const double> theta);

/// Counts from the gate list; depth by greedy wire scheduling (each gate
/// starts at the earliest step where all of its wires are free), with the
/// prologue and each layer repetition scheduled as separate segments.
CostMetrics cost_metrics(const BoundCircuit& circuit);
CostMetrics cost_metrics(const CircuitTemplate& tmpl, int n, int layers);

/// All built-in templates: 19 benchmark circuits (c01..c19), the
/// single-qubit demonstrations and the connectivity comparison circuits.
/// Reads PQC_TEMPLATE_DIR when set, otherwise the embedded catalog.
const std::vector<CircuitTemplate>& catalog();

/// Throws std::invalid_argument for unknown ids.
const CircuitTemplate& find_template(std::string_view id);

bool is_benchmark_id(std::string_view id);
std::vector<std::string> benchmark_ids();

}  // namespace pqc
