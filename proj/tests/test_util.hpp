#pragma once

// Shared generators for randomized tests. Everything draws from the
// library's own deterministic RNG so test runs are reproducible.

#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/gates.hpp"
#include "vqs/linalg.hpp"
#include "vqs/rng.hpp"
#include "vqs/state.hpp"

namespace testutil {

inline vqs::StateVector random_state(int num_qubits, vqs::Xoshiro256pp& rng) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::vector<vqs::Complex> amps(dim);
    for (auto& a : amps) a = vqs::Complex(rng.normal(), rng.normal());
    return vqs::StateVector::from_amplitudes(num_qubits, std::move(amps)).normalized();
}

inline vqs::CMatrix random_matrix(std::size_t dim, vqs::Xoshiro256pp& rng) {
    vqs::CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = vqs::Complex(rng.normal(), rng.normal());
    return m;
}

inline vqs::CMatrix random_hermitian(std::size_t dim, vqs::Xoshiro256pp& rng) {
    const vqs::CMatrix m = random_matrix(dim, rng);
    return (m + m.dagger()) * vqs::Complex(0.5, 0.0);
}

inline vqs::GateMatrix random_unitary_1q(vqs::Xoshiro256pp& rng) {
    const vqs::ZYZDecomposition d{rng.uniform(0.0, 2.0 * vqs::kPi), rng.uniform(0.0, 2.0 * vqs::kPi),
                                  rng.uniform(0.0, vqs::kPi), rng.uniform(0.0, 2.0 * vqs::kPi)};
    return vqs::zyz_reconstruct(d);
}

// Identity or a single Pauli on each qubit, as a dense matrix.
inline vqs::CMatrix random_pauli_word(int num_qubits, vqs::Xoshiro256pp& rng, bool allow_identity = false) {
    for (;;) {
        vqs::CMatrix word(1, 1);
        word(0, 0) = vqs::Complex(1.0, 0.0);
        bool nontrivial = false;
        for (int q = 0; q < num_qubits; ++q) {
            switch (rng.below(4)) {
                case 0: word = vqs::kron(word, vqs::CMatrix::identity(2)); break;
                case 1: word = vqs::kron(word, vqs::pauli_x().matrix); nontrivial = true; break;
                case 2: word = vqs::kron(word, vqs::pauli_y().matrix); nontrivial = true; break;
                default: word = vqs::kron(word, vqs::pauli_z().matrix); nontrivial = true; break;
            }
        }
        if (nontrivial || allow_identity) return word;
    }
}

// Random circuit over the full gate set; every parameterized gate gets a
// literal angle.
inline vqs::Circuit random_circuit(int num_qubits, int depth, vqs::Xoshiro256pp& rng) {
    vqs::Circuit c(num_qubits);
    for (int d = 0; d < depth; ++d) {
        vqs::GateKind kind;
        do {
            kind = static_cast<vqs::GateKind>(rng.below(16));
        } while (num_qubits < 2 && vqs::gate_arity(kind) == 2);
        const int arity = vqs::gate_arity(kind);
        std::vector<int> targets;
        targets.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(num_qubits))));
        if (arity == 2) {
            int second = targets[0];
            while (second == targets[0]) second = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_qubits)));
            targets.push_back(second);
        }
        std::optional<vqs::GateParam> param;
        if (vqs::gate_takes_angle(kind)) param = vqs::GateParam::literal(rng.uniform(0.0, 2.0 * vqs::kPi));
        c.append({kind, std::move(targets), param});
    }
    return c;
}

// Random circuit whose trainable slots each sit on exactly one RX/RY/RZ gate.
inline vqs::Circuit random_parameterized_circuit(int num_qubits, int num_params, int extra_depth,
                                                 vqs::Xoshiro256pp& rng) {
    vqs::Circuit c(num_qubits);
    auto random_qubit = [&] { return static_cast<int>(rng.below(static_cast<std::uint64_t>(num_qubits))); };
    for (int d = 0; d < extra_depth; ++d) {
        switch (rng.below(3)) {
            case 0: c.h(random_qubit()); break;
            case 1: {
                if (num_qubits < 2) {
                    c.x(random_qubit());
                    break;
                }
                const int a = random_qubit();
                int b = a;
                while (b == a) b = random_qubit();
                c.cnot(a, b);
                break;
            }
            default: c.rx(random_qubit(), rng.uniform(0.0, 2.0 * vqs::kPi)); break;
        }
    }
    for (int p = 0; p < num_params; ++p) {
        const int q = random_qubit();
        switch (rng.below(3)) {
            case 0: c.rx_slot(q, p); break;
            case 1: c.ry_slot(q, p); break;
            default: c.rz_slot(q, p); break;
        }
    }
    return c;
}

}  // namespace testutil
