#include "pqc/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pqc {

namespace {

using Mat2 = std::array<Complex, 4>;  // row-major

constexpr Complex kI{0.0, 1.0};

void check_width(int n) {
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
}

int width_from_dim(std::size_t dim) {
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim || n < 1)
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    return n;
}

double resolve_angle(const AngleSource& src, std::span<const double> params) {
    if (const auto* fixed = std::get_if<double>(&src)) return *fixed;
    const auto slot = std::get<ParamSlot>(src).index;
    if (slot >= params.size())
        throw std::invalid_argument("missing angle for parameter slot " + std::to_string(slot));
    return params[slot];
}

Mat2 rotation_matrix(GateKind kind, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    switch (kind) {
        case GateKind::RX:
        case GateKind::CRX:
            return {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
        case GateKind::RY:
            return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
        case GateKind::RZ:
        case GateKind::CRZ:
            return {std::polar(1.0, -theta / 2.0), Complex{}, Complex{}, std::polar(1.0, theta / 2.0)};
        default:
            throw std::logic_error("not a rotation kind");
    }
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {Complex{c, 0}, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

// Applies m to `target` on the subspace where `control` (if >= 0) is set.
void apply_matrix(std::span<Complex> amps, const Mat2& m, int target, int control) {
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t cmask = control >= 0 ? (std::size_t{1} << control) : 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & tbit) || (i & cmask) != cmask) continue;
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | tbit];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[i | tbit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_diagonal(std::span<Complex> amps, Complex d0, Complex d1, int target, int control) {
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t cmask = control >= 0 ? (std::size_t{1} << control) : 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) != cmask) continue;
        amps[i] *= (i & tbit) ? d1 : d0;
    }
}

}  // namespace

StateVector StateVector::zero(int n) {
    check_width(n);
    std::vector<Complex> amps(std::size_t{1} << n);
    amps[0] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector StateVector::basis(std::string_view bits) {
    const int n = static_cast<int>(bits.size());
    check_width(n);
    std::size_t index = 0;
    for (int q = 0; q < n; ++q) {
        if (bits[q] == '1')
            index |= std::size_t{1} << q;
        else if (bits[q] != '0')
            throw std::invalid_argument("basis label must contain only 0 and 1");
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    amps[index] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps, bool normalize) {
    const int n = width_from_dim(amps.size());
    check_width(n);
    double norm2 = 0.0;
    for (const auto& a : amps) norm2 += std::norm(a);
    if (normalize) {
        if (norm2 == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
        const double scale = 1.0 / std::sqrt(norm2);
        for (auto& a : amps) a *= scale;
    } else if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw std::invalid_argument("amplitudes are not normalized");
    }
    return StateVector(n, std::move(amps));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

StateVector StateVector::tensor(const StateVector& rhs) const {
    check_width(n_ + rhs.n_);
    std::vector<Complex> out(dim() * rhs.dim());
    for (std::size_t hi = 0; hi < rhs.dim(); ++hi)
        for (std::size_t lo = 0; lo < dim(); ++lo) out[hi * dim() + lo] = amps_[lo] * rhs.amps_[hi];
    return StateVector(n_ + rhs.n_, std::move(out));
}

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::CRX: return "CRX";
        case GateKind::CRZ: return "CRZ";
        case GateKind::U3: return "U3";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    static constexpr std::array kAll{GateKind::H,    GateKind::X,  GateKind::RX,  GateKind::RY,  GateKind::RZ,
                                     GateKind::CNOT, GateKind::CZ, GateKind::CRX, GateKind::CRZ, GateKind::U3};
    for (auto k : kAll)
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

int qubit_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CRX:
        case GateKind::CRZ:
            return 2;
        default:
            return 1;
    }
}

int angle_arity(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CRX:
        case GateKind::CRZ:
            return 1;
        case GateKind::U3:
            return 3;
        default:
            return 0;
    }
}

GateOp make_gate(GateKind kind, int q0, int q1, std::vector<AngleSource> angles) {
    GateOp g{kind, {q0, q1 < 0 ? q0 : q1}, std::move(angles)};
    return g;
}

void validate_gate(const GateOp& gate, int n) {
    const int arity = qubit_arity(gate.kind);
    for (int k = 0; k < arity; ++k)
        if (gate.qubits[k] < 0 || gate.qubits[k] >= n)
            throw std::out_of_range("qubit index " + std::to_string(gate.qubits[k]) + " outside [0, " +
                                    std::to_string(n) + ") for " + std::string(to_string(gate.kind)));
    if (arity == 2 && gate.qubits[0] == gate.qubits[1])
        throw std::invalid_argument(std::string(to_string(gate.kind)) + " needs two distinct qubits");
    if (static_cast<int>(gate.angles.size()) != angle_arity(gate.kind))
        throw std::invalid_argument(std::string(to_string(gate.kind)) + " expects " +
                                    std::to_string(angle_arity(gate.kind)) + " angle(s)");
}

void apply_gate(StateVector& state, const GateOp& gate, std::span<const double> params) {
    validate_gate(gate, state.num_qubits());
    auto amps = state.amplitudes();
    const int q0 = gate.qubits[0];
    const int q1 = gate.qubits[1];
    switch (gate.kind) {
        case GateKind::H: {
            const double r = std::numbers::sqrt2 / 2.0;
            apply_matrix(amps, {Complex{r}, Complex{r}, Complex{r}, Complex{-r}}, q0, -1);
            break;
        }
        case GateKind::X:
            apply_matrix(amps, {Complex{}, Complex{1}, Complex{1}, Complex{}}, q0, -1);
            break;
        case GateKind::RX:
        case GateKind::RY:
            apply_matrix(amps, rotation_matrix(gate.kind, resolve_angle(gate.angles[0], params)), q0, -1);
            break;
        case GateKind::RZ: {
            const double t = resolve_angle(gate.angles[0], params);
            apply_diagonal(amps, std::polar(1.0, -t / 2.0), std::polar(1.0, t / 2.0), q0, -1);
            break;
        }
        case GateKind::CNOT:
            apply_matrix(amps, {Complex{}, Complex{1}, Complex{1}, Complex{}}, q1, q0);
            break;
        case GateKind::CZ:
            apply_diagonal(amps, Complex{1}, Complex{-1}, q1, q0);
            break;
        case GateKind::CRX:
            apply_matrix(amps, rotation_matrix(gate.kind, resolve_angle(gate.angles[0], params)), q1, q0);
            break;
        case GateKind::CRZ: {
            const double t = resolve_angle(gate.angles[0], params);
            apply_diagonal(amps, std::polar(1.0, -t / 2.0), std::polar(1.0, t / 2.0), q1, q0);
            break;
        }
        case GateKind::U3:
            apply_matrix(amps,
                         u3_matrix(resolve_angle(gate.angles[0], params), resolve_angle(gate.angles[1], params),
                                   resolve_angle(gate.angles[2], params)),
                         q0, -1);
            break;
    }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("inner product of states with different widths");
    Complex acc{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    const double f = std::norm(inner_product(a, b));
    return f > 1.0 ? 1.0 : f;
}

double single_qubit_purity(const StateVector& state, int j) {
    if (j < 0 || j >= state.num_qubits())
        throw std::out_of_range("qubit index " + std::to_string(j) + " outside state width");
    const std::size_t bit = std::size_t{1} << j;
    const auto amps = state.amplitudes();
    double p0 = 0.0;
    double p1 = 0.0;
    Complex coh{};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        p0 += std::norm(a0);
        p1 += std::norm(a1);
        coh += a0 * std::conj(a1);
    }
    return p0 * p0 + p1 * p1 + 2.0 * std::norm(coh);
}

StateVector sample_haar_state(int n, RngStream& rng) {
    check_width(n);
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto& a : amps) {
        const double re = rng.normal();
        const double im = rng.normal();
        a = Complex{re, im};
    }
    return StateVector::from_amplitudes(std::move(amps), true);
}

double haar_fidelity_from_uniform(std::uint64_t dim, double u) {
    if (dim < 2) throw std::invalid_argument("Hilbert dimension must be >= 2");
    if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("uniform variate must lie in (0, 1]");
    // 1 - u^(1/(N-1)), written with expm1 to keep precision for small F.
    return -std::expm1(std::log(u) / static_cast<double>(dim - 1));
}

double sample_haar_fidelity(std::uint64_t dim, RngStream& rng) {
    if (dim < 2) throw std::invalid_argument("Hilbert dimension must be >= 2");
    return haar_fidelity_from_uniform(dim, rng.uniform_open_closed());
}

}  // namespace pqc
