#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/linalg.hpp"

namespace vqs {

enum class GradientMethod { Shift, StochasticShift, FiniteDifference };

struct GradientEstimate {
    std::vector<double> values;  // dC/dtheta per parameter slot
    GradientMethod method;
    long evaluations;  // circuit executions spent
    std::optional<std::uint64_t> seed;
};

struct UnsupportedGateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact parameter-shift gradient of C = <psi|U(theta)^dag A U(theta)|psi>:
// dC/dtheta_j = 1/2 [C(theta_j + pi/2) - C(theta_j - pi/2)], each occurrence
// of a slot shifted separately. Supported slots: RX/RY/RZ (Pauli generator,
// exact everywhere) and CRX/CRY/CRZ (exact as long as the control path is
// not interfered with after the gate, which holds for every circuit built
// here; otherwise use stochastic_shift_gradient or finite differences).
GradientEstimate shift_gradient(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                                const HermitianObservable& obs, double shift = kPi / 2.0);

// Central-difference oracle [C(theta+h) - C(theta-h)] / (2h) per slot.
GradientEstimate finite_difference_gradient(const Circuit& circuit, std::span<const double> params,
                                            const StateVector& input, const HermitianObservable& obs, double h);

// Gate generator of the form G(theta) = H + theta * V with H an arbitrary
// Hermitian Pauli sum and V a Hermitian Pauli word (V^2 = I).
struct GeneratorPair {
    CMatrix hamiltonian;  // H
    CMatrix pauli_word;   // V
    double theta;

    // Validates Hermiticity of both and V^2 = I (1e-12).
    static GeneratorPair make(CMatrix hamiltonian, CMatrix pauli_word, double theta);
};

// Loss whose derivative the stochastic rule estimates:
//   C(theta) = <psi| e^{+ia G(theta)} A e^{-ia G(theta)} |psi>.
double generator_pair_loss(const GeneratorPair& gen, double a, const StateVector& input,
                           const HermitianObservable& obs);

// Monte-Carlo estimate of dC/dtheta: for each s ~ U(0,1) evaluate the two
// U_V(+-pi/2)-conjugated expectations (U_V(phi) = e^{-i phi/2 V}) sandwiched
// between e^{(1-s)iaG} and e^{siaG}, average over `samples`, multiply by a.
// Deterministic for a fixed seed; per-sample subseeds from (seed, index).
// Dense matrix exponentials via Hermitian eigendecomposition; intended for
// generators on at most 3 qubits.
double stochastic_shift_gradient(const GeneratorPair& gen, double a, const StateVector& input,
                                 const HermitianObservable& obs, int samples, std::uint64_t seed);

// Executable identity checks. Each returns the worst entrywise deviation
// between the two sides.

// [sigma, B] = -i (U^dag(pi/2) B U(pi/2) - U^dag(-pi/2) B U(-pi/2)) with
// U(theta) = exp(-i theta/2 sigma), for a Pauli word sigma.
double verify_pauli_commutator(const CMatrix& sigma, const CMatrix& B);

// e^{lambda A} B e^{-lambda A} = sum_n lambda^n [A,.]^n B / n!, truncated at
// n_max. Requires |lambda| * max|A| <= 1 so the factorial tail is small.
double verify_bch(const CMatrix& A_hermitian, const CMatrix& B, double lambda, int n_max);

// d/dtheta e^{Z(theta)} = int_0^1 e^{(1-s)Z} dZ/dtheta e^{sZ} ds for
// Z(theta) = -i theta/2 G, comparing Gauss-Legendre quadrature of the
// integral against a central finite difference (h = 1e-6) of the dense
// exponential.
double verify_exponential_derivative(const CMatrix& generator, double theta, int quadrature_nodes = 64);

// (n-1)!(k-1)!/(n+k-1)! = int_0^1 (1-s)^{k-1} s^{n-1} ds via exact integer
// factorials and Gauss-Legendre quadrature. Rejects n+k-1 > 20.
struct BetaIdentityCheck {
    double closed_form;
    double numeric_integral;
    double abs_error;
};
BetaIdentityCheck verify_beta_identity(int k, int n, int quadrature_nodes = 128);

}  // namespace vqs
