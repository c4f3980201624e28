#include "vqs/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "vqs/gates.hpp"
#include "vqs/rng.hpp"

namespace vqs {

namespace {

struct KindInfo {
    const char* name;
    int arity;
    bool takes_angle;
};

constexpr KindInfo kKindTable[] = {
    {"X", 1, false},     {"Y", 1, false},  {"Z", 1, false},      {"H", 1, false},
    {"S", 1, false},     {"T", 1, false},  {"RX", 1, true},      {"RY", 1, true},
    {"RZ", 1, true},     {"CNOT", 2, false}, {"CZ", 2, false},   {"CPHASE", 2, false},
    {"SWAP", 2, false},  {"CRX", 2, true}, {"CRY", 2, true},     {"CRZ", 2, true},
};

const KindInfo& info(GateKind kind) { return kKindTable[static_cast<int>(kind)]; }

CMatrix matrix_1q(GateKind kind, double angle) {
    switch (kind) {
        case GateKind::X: return pauli_x().matrix;
        case GateKind::Y: return pauli_y().matrix;
        case GateKind::Z: return pauli_z().matrix;
        case GateKind::H: return hadamard().matrix;
        case GateKind::S: return phase_s().matrix;
        case GateKind::T: return t_gate().matrix;
        case GateKind::RX: return rx(angle).matrix;
        case GateKind::RY: return ry(angle).matrix;
        case GateKind::RZ: return rz(angle).matrix;
        default: throw std::logic_error("matrix_1q: not a single-qubit kind");
    }
}

CMatrix matrix_2q(GateKind kind, double angle) {
    switch (kind) {
        case GateKind::CNOT: return cnot().matrix;
        case GateKind::CZ: return cz().matrix;
        case GateKind::CPHASE: return cphase().matrix;
        case GateKind::SWAP: return swap_gate().matrix;
        case GateKind::CRX: return crx(angle).matrix;
        case GateKind::CRY: return cry(angle).matrix;
        case GateKind::CRZ: return crz(angle).matrix;
        default: throw std::logic_error("matrix_2q: not a two-qubit kind");
    }
}

// qubit q occupies bit (n-1-q) of the amplitude index (qubit 0 = MSB).
void apply_1q(std::vector<Complex>& amps, int num_qubits, int q, const CMatrix& u) {
    const std::size_t mask = std::size_t{1} << (num_qubits - 1 - q);
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) continue;
        const std::size_t j = i | mask;
        const Complex a = amps[i], b = amps[j];
        amps[i] = u00 * a + u01 * b;
        amps[j] = u10 * a + u11 * b;
    }
}

void apply_2q(std::vector<Complex>& amps, int num_qubits, int qa, int qb, const CMatrix& u) {
    const std::size_t ma = std::size_t{1} << (num_qubits - 1 - qa);
    const std::size_t mb = std::size_t{1} << (num_qubits - 1 - qb);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & (ma | mb)) continue;
        const std::size_t i00 = i, i01 = i | mb, i10 = i | ma, i11 = i | ma | mb;
        const Complex a00 = amps[i00], a01 = amps[i01], a10 = amps[i10], a11 = amps[i11];
        amps[i00] = u(0, 0) * a00 + u(0, 1) * a01 + u(0, 2) * a10 + u(0, 3) * a11;
        amps[i01] = u(1, 0) * a00 + u(1, 1) * a01 + u(1, 2) * a10 + u(1, 3) * a11;
        amps[i10] = u(2, 0) * a00 + u(2, 1) * a01 + u(2, 2) * a10 + u(2, 3) * a11;
        amps[i11] = u(3, 0) * a00 + u(3, 1) * a01 + u(3, 2) * a10 + u(3, 3) * a11;
    }
}

}  // namespace

const char* gate_kind_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_kind_from_name(const std::string& name) {
    for (int k = 0; k < static_cast<int>(std::size(kKindTable)); ++k)
        if (name == kKindTable[k].name) return static_cast<GateKind>(k);
    return std::nullopt;
}

int gate_arity(GateKind kind) { return info(kind).arity; }
bool gate_takes_angle(GateKind kind) { return info(kind).takes_angle; }

Circuit::Circuit(int num_qubits, int num_params) : num_qubits_(num_qubits), num_params_(num_params) {
    if (num_qubits < 1) throw std::invalid_argument("Circuit: num_qubits must be >= 1");
    if (num_params < 0) throw std::invalid_argument("Circuit: num_params must be >= 0");
}

Circuit& Circuit::append(GateOp op) {
    const KindInfo& ki = info(op.kind);
    if (static_cast<int>(op.targets.size()) != ki.arity)
        throw std::invalid_argument(std::string("Circuit: ") + ki.name + " expects " +
                                    std::to_string(ki.arity) + " target(s)");
    for (int q : op.targets)
        if (q < 0 || q >= num_qubits_)
            throw std::invalid_argument("Circuit: target qubit out of range");
    if (ki.arity == 2 && op.targets[0] == op.targets[1])
        throw std::invalid_argument("Circuit: two-qubit gate targets must be distinct");
    if (ki.takes_angle != op.param.has_value())
        throw std::invalid_argument(std::string("Circuit: ") + ki.name +
                                    (ki.takes_angle ? " requires an angle" : " takes no angle"));
    if (op.param && op.param->is_slot) {
        if (op.param->slot_index < 0) throw std::invalid_argument("Circuit: negative parameter slot");
        num_params_ = std::max(num_params_, op.param->slot_index + 1);
    }
    if (op.param && !op.param->is_slot && !std::isfinite(op.param->value))
        throw std::invalid_argument("Circuit: non-finite gate angle");
    ops_.push_back(std::move(op));
    return *this;
}

namespace detail {

double resolve_angle(const GateOp& op, std::span<const double> params) {
    if (!op.param) return 0.0;
    if (!op.param->is_slot) return op.param->value;
    if (op.param->slot_index >= static_cast<int>(params.size()))
        throw std::invalid_argument("apply: unbound parameter slot");
    return params[op.param->slot_index];
}

StateVector apply_with_shift(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                             int op_index, double delta) {
    if (input.num_qubits() != circuit.num_qubits())
        throw std::invalid_argument("apply: input width does not match circuit");
    if (static_cast<int>(params.size()) != circuit.num_params())
        throw std::invalid_argument("apply: params length must equal num_params");
    if (!input.is_normalized()) throw std::invalid_argument("apply: input state is not normalized");

    std::vector<Complex> amps = input.amplitudes();
    const auto& ops = circuit.ops();
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const GateOp& op = ops[k];
        double angle = resolve_angle(op, params);
        if (static_cast<int>(k) == op_index) angle += delta;
        if (gate_arity(op.kind) == 1) {
            apply_1q(amps, circuit.num_qubits(), op.targets[0], matrix_1q(op.kind, angle));
        } else {
            apply_2q(amps, circuit.num_qubits(), op.targets[0], op.targets[1], matrix_2q(op.kind, angle));
        }
    }
    return StateVector::from_amplitudes(circuit.num_qubits(), std::move(amps));
}

}  // namespace detail

StateVector apply(const Circuit& circuit, std::span<const double> params, const StateVector& input) {
    return detail::apply_with_shift(circuit, params, input, -1, 0.0);
}

double exact_expectation(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                         const HermitianObservable& obs) {
    return expectation(apply(circuit, params, input), obs);
}

ShotResult sample_expectation(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                              int readout_qubit, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_expectation: shots must be >= 1");
    if (readout_qubit < 0 || readout_qubit >= circuit.num_qubits())
        throw std::invalid_argument("sample_expectation: readout qubit out of range");

    const StateVector final_state = apply(circuit, params, input);
    const std::size_t mask = std::size_t{1} << (circuit.num_qubits() - 1 - readout_qubit);
    double p_plus = 0.0;
    for (std::size_t i = 0; i < final_state.dim(); ++i)
        if (!(i & mask)) p_plus += std::norm(final_state.amplitudes()[i]);
    p_plus = std::clamp(p_plus, 0.0, 1.0);

    Xoshiro256pp rng(seed);
    std::uint64_t plus = 0;
    for (std::uint64_t k = 0; k < shots; ++k)
        if (rng.uniform01() < p_plus) ++plus;

    ShotResult result;
    result.shots = shots;
    result.counts[+1] = plus;
    result.counts[-1] = shots - plus;
    result.empirical_expectation =
        (static_cast<double>(plus) - static_cast<double>(shots - plus)) / static_cast<double>(shots);
    return result;
}

}  // namespace vqs
