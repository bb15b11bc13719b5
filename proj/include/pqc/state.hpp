#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pqc/rng.hpp"

namespace pqc {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 16;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kAmplitudeTolerance = 1e-9;

/// Dense pure state on n qubits.
///
/// Basis index bit j holds qubit j. Kets are written with qubit 0 first, so
/// |10> has qubit 0 set and is basis index 1.
class StateVector {
public:
    /// |0...0> on n qubits. Throws std::invalid_argument unless 1 <= n <= 16.
    static StateVector zero(int n);

    /// Computational basis state from a ket label such as "0110" (qubit 0 first).
    static StateVector basis(std::string_view bits);

    /// Wraps raw amplitudes; the length must be 2^n. Normalizes when
    /// `normalize` is set, otherwise requires unit norm within kNormTolerance.
    static StateVector from_amplitudes(std::vector<Complex> amps, bool normalize = false);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }

    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const;

    /// Kronecker product with `rhs` placed on the higher qubit indices.
    StateVector tensor(const StateVector& rhs) const;

private:
    StateVector(int n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {}

    int n_;
    std::vector<Complex> amps_;
};

inline StateVector new_zero_state(int n) { return StateVector::zero(n); }

enum class GateKind { H, X, RX, RY, RZ, CNOT, CZ, CRX, CRZ, U3 };

std::string_view to_string(GateKind kind);
/// Throws std::invalid_argument for unknown names.
GateKind gate_kind_from_string(std::string_view name);

int qubit_arity(GateKind kind);
int angle_arity(GateKind kind);

struct ParamSlot {
    std::size_t index;
    friend bool operator==(const ParamSlot&, const ParamSlot&) = default;
};

/// A gate angle is either fixed (radians) or read from a parameter slot.
using AngleSource = std::variant<double, ParamSlot>;

/// Concrete gate on fixed qubits. For controlled kinds qubits[0] is the
/// control and qubits[1] the target.
struct GateOp {
    GateKind kind;
    std::array<int, 2> qubits{0, 0};
    std::vector<AngleSource> angles;

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

GateOp make_gate(GateKind kind, int q0, int q1 = -1, std::vector<AngleSource> angles = {});

/// Checks qubit range, qubit distinctness and angle arity. Throws
/// std::invalid_argument / std::out_of_range.
void validate_gate(const GateOp& gate, int n);

/// Applies `gate` in place; parameter slots are looked up in `params`.
void apply_gate(StateVector& state, const GateOp& gate, std::span<const double> params = {});

/// |<a|b>|^2. Throws std::invalid_argument on width mismatch.
double fidelity(const StateVector& a, const StateVector& b);

Complex inner_product(const StateVector& a, const StateVector& b);

/// tr(rho_j^2) for the reduced state of qubit j.
double single_qubit_purity(const StateVector& state, int j);

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
StateVector sample_haar_state(int n, RngStream& rng);

/// One fidelity from the Haar overlap law (N-1)(1-F)^(N-2), by inverse CDF.
double sample_haar_fidelity(std::uint64_t dim, RngStream& rng);

/// Inverse-CDF map used by sample_haar_fidelity, exposed for testing.
double haar_fidelity_from_uniform(std::uint64_t dim, double u);

}  // namespace pqc
