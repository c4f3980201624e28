#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vqs/linalg.hpp"

namespace vqs {

// Qubit ordering convention used everywhere in this library: qubit 0 is the
// leftmost label and the most significant bit of the amplitude index, so
// |q0 q1> lives at index 2*q0 + q1.

class StateVector {
public:
    // |00...0> on num_qubits qubits.
    explicit StateVector(int num_qubits);

    // Takes amplitudes as-is (they may be unnormalized); rejects NaN/Inf and
    // a length that is not 2^num_qubits.
    static StateVector from_amplitudes(int num_qubits, std::vector<Complex> amplitudes);
    static StateVector basis_state(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }

    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

    double norm_squared() const;
    bool is_normalized(double tol = 1e-10) const;
    StateVector normalized() const;

private:
    StateVector(int num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

class HermitianObservable {
public:
    // Rejects matrices that are not Hermitian within `tol` or whose dimension
    // is not 2^num_qubits.
    static HermitianObservable from_matrix(int num_qubits, CMatrix matrix, double tol = 1e-12);

    // Pauli Z acting on one qubit, identity elsewhere.
    static HermitianObservable pauli_z_on(int num_qubits, int qubit);

    int num_qubits() const { return num_qubits_; }
    const CMatrix& matrix() const { return matrix_; }

private:
    HermitianObservable(int num_qubits, CMatrix matrix)
        : num_qubits_(num_qubits), matrix_(std::move(matrix)) {}

    int num_qubits_;
    CMatrix matrix_;
};

struct MeasurementOutcome {
    double eigenvalue;   // +1 for the 0 branch, -1 for the 1 branch
    double probability;
    // Absent when the branch probability is below 1e-14 (degenerate branch).
    std::optional<StateVector> post_state;
};

// <bra|ket>. Inputs need not be normalized.
Complex inner_product(const StateVector& bra, const StateVector& ket);

// |<target|state>|^2; both inputs must be normalized.
double probability_of(const StateVector& state, const StateVector& target);

// <psi|A|psi> for a normalized state; asserts the imaginary residual is
// below 1e-10 and discards it.
double expectation(const StateVector& state, const HermitianObservable& obs);

// Combined state on a.num_qubits + b.num_qubits qubits, a's qubits leftmost.
StateVector tensor_product(const StateVector& a, const StateVector& b);

// Computational-basis measurement of one qubit: (outcome for 0, outcome for 1).
std::pair<MeasurementOutcome, MeasurementOutcome> measure_qubit(const StateVector& state, int qubit);

// Two-qubit product-state test: rank of the 2x2 amplitude matrix via its
// smallest singular value.
bool is_separable_2q(const StateVector& state, double tol = 1e-9);

}  // namespace vqs
