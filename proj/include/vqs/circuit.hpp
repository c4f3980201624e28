#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqs/state.hpp"

namespace vqs {

enum class GateKind {
    X, Y, Z, H, S, T,
    RX, RY, RZ,
    CNOT, CZ, CPHASE, SWAP,
    CRX, CRY, CRZ,
};

const char* gate_kind_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(const std::string& name);
int gate_arity(GateKind kind);
bool gate_takes_angle(GateKind kind);

// Angle of a parameterized gate: either a literal value in radians or a
// reference to a trainable parameter slot ($k in the text format).
struct GateParam {
    static GateParam literal(double value) { return GateParam{false, value, 0}; }
    static GateParam slot(int index) { return GateParam{true, 0.0, index}; }

    bool is_slot;
    double value;
    int slot_index;
};

// One gate application. For two-qubit kinds targets = {control, target}
// except SWAP where the order is immaterial.
struct GateOp {
    GateKind kind;
    std::vector<int> targets;
    std::optional<GateParam> param;
};

// An ordered gate sequence on a fixed register. Immutable once built (the
// builder methods append during construction; evaluation never mutates), so
// concurrent evaluations of one Circuit are safe.
class Circuit {
public:
    explicit Circuit(int num_qubits, int num_params = 0);

    // Validates targets, angle presence, and slot references; growing
    // num_params as new slots appear.
    Circuit& append(GateOp op);

    // Fixed gates.
    Circuit& x(int q) { return append({GateKind::X, {q}, std::nullopt}); }
    Circuit& y(int q) { return append({GateKind::Y, {q}, std::nullopt}); }
    Circuit& z(int q) { return append({GateKind::Z, {q}, std::nullopt}); }
    Circuit& h(int q) { return append({GateKind::H, {q}, std::nullopt}); }
    Circuit& s(int q) { return append({GateKind::S, {q}, std::nullopt}); }
    Circuit& t(int q) { return append({GateKind::T, {q}, std::nullopt}); }
    Circuit& cnot(int control, int target) { return append({GateKind::CNOT, {control, target}, std::nullopt}); }
    Circuit& cz(int control, int target) { return append({GateKind::CZ, {control, target}, std::nullopt}); }
    Circuit& cphase(int control, int target) { return append({GateKind::CPHASE, {control, target}, std::nullopt}); }
    Circuit& swap(int a, int b) { return append({GateKind::SWAP, {a, b}, std::nullopt}); }

    // Rotations with a literal angle.
    Circuit& rx(int q, double angle) { return append({GateKind::RX, {q}, GateParam::literal(angle)}); }
    Circuit& ry(int q, double angle) { return append({GateKind::RY, {q}, GateParam::literal(angle)}); }
    Circuit& rz(int q, double angle) { return append({GateKind::RZ, {q}, GateParam::literal(angle)}); }
    Circuit& crx(int c, int t, double angle) { return append({GateKind::CRX, {c, t}, GateParam::literal(angle)}); }
    Circuit& cry(int c, int t, double angle) { return append({GateKind::CRY, {c, t}, GateParam::literal(angle)}); }
    Circuit& crz(int c, int t, double angle) { return append({GateKind::CRZ, {c, t}, GateParam::literal(angle)}); }

    // Rotations bound to a trainable slot.
    Circuit& rx_slot(int q, int k) { return append({GateKind::RX, {q}, GateParam::slot(k)}); }
    Circuit& ry_slot(int q, int k) { return append({GateKind::RY, {q}, GateParam::slot(k)}); }
    Circuit& rz_slot(int q, int k) { return append({GateKind::RZ, {q}, GateParam::slot(k)}); }
    Circuit& crx_slot(int c, int t, int k) { return append({GateKind::CRX, {c, t}, GateParam::slot(k)}); }
    Circuit& cry_slot(int c, int t, int k) { return append({GateKind::CRY, {c, t}, GateParam::slot(k)}); }
    Circuit& crz_slot(int c, int t, int k) { return append({GateKind::CRZ, {c, t}, GateParam::slot(k)}); }

    int num_qubits() const { return num_qubits_; }
    int num_params() const { return num_params_; }
    const std::vector<GateOp>& ops() const { return ops_; }

private:
    int num_qubits_;
    int num_params_;
    std::vector<GateOp> ops_;
};

// Applies the circuit's gates in order. `params` must bind every slot.
StateVector apply(const Circuit& circuit, std::span<const double> params, const StateVector& input);

double exact_expectation(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                         const HermitianObservable& obs);

// Shot-sampled Z measurement statistics on one qubit.
struct ShotResult {
    std::uint64_t shots;
    std::map<int, std::uint64_t> counts;  // eigenvalue (+1/-1) -> occurrences
    double empirical_expectation;
};

// Draws `shots` outcomes of a Z measurement on `readout_qubit` from the
// exact final-state probabilities. Deterministic for a fixed seed.
ShotResult sample_expectation(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                              int readout_qubit, std::uint64_t shots, std::uint64_t seed);

namespace detail {
// Evaluation hook for the gradient engine: resolves the circuit with one
// op's angle shifted by delta. op_index == -1 applies no shift.
StateVector apply_with_shift(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                             int op_index, double delta);
double resolve_angle(const GateOp& op, std::span<const double> params);
}  // namespace detail

}  // namespace vqs
