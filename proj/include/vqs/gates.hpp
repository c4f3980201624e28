#pragma once

#include <vector>

#include "vqs/linalg.hpp"

namespace vqs {

// A concrete gate matrix on 1 or 2 qubits. Every constructor in this header
// returns a matrix that is unitary to 1e-12. Rotation convention throughout:
// R_G(theta) = exp(-i theta/2 * G).
struct GateMatrix {
    int arity;       // qubits acted on (1 or 2)
    CMatrix matrix;  // 2^arity x 2^arity
};

GateMatrix pauli_x();
GateMatrix pauli_y();
GateMatrix pauli_z();
GateMatrix hadamard();
GateMatrix phase_s();
GateMatrix t_gate();  // diag(1, e^{i pi/4}); the square root of S

GateMatrix rx(double theta);
GateMatrix ry(double theta);
GateMatrix rz(double theta);

// Two-qubit gates; index convention: gate basis index = 2*control + target
// (first qubit of the pair is the high bit).
GateMatrix cnot();
GateMatrix cz();
GateMatrix cphase();  // diag(1, 1, 1, i), the CS gate
GateMatrix swap_gate();
GateMatrix crx(double theta);
GateMatrix cry(double theta);
GateMatrix crz(double theta);

// Promotes a single-qubit gate to its controlled version [I 0; 0 U].
GateMatrix controlled(const GateMatrix& gate_1q);

// Parameters of U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta). alpha, beta,
// delta are reported in [0, 2pi); gamma in [0, pi]. Diagonal inputs get
// beta = 0 with all relative phase folded into delta.
struct ZYZDecomposition {
    double alpha;
    double beta;
    double gamma;
    double delta;
};

ZYZDecomposition zyz_decompose(const GateMatrix& u);
GateMatrix zyz_reconstruct(const ZYZDecomposition& d);

// {CNOT, S, Rx(pi/4)} - a universal gate set. Nearly any other rotation
// angle would do in place of pi/4; no compilation algorithm is provided.
std::vector<GateMatrix> universal_set();

}  // namespace vqs
