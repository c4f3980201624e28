#pragma once

#include <span>
#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/linalg.hpp"

namespace vqs {

// Classical-to-quantum feature embeddings. Features must arrive scaled to
// [0, 1]; the encoders map them to rotation angles in [0, pi]. Min-max
// scaling is the caller's job (reuse training-set bounds at test time).

// One RX(pi * feature_i) on qubit i per feature; unused qubits untouched.
Circuit angle_encode(std::span<const double> features, int num_qubits);

// Layered rotation-block embedding for D-dimensional data on Q qubits,
// subject to D <= Q * L * G.
struct BlockEncodingSpec {
    int data_dim;         // D
    int num_qubits;       // Q
    int layers;           // L
    int gates_per_block;  // G
};

// Per layer: blocks of G rotations per qubit with axes cycling X, Z, X, ...,
// then a CNOT ladder on pairs (0,1)..(Q-2,Q-1). Feature order is layer-major,
// then qubit, then in-block position; surplus slots get angle 0.
Circuit block_encode(std::span<const double> features, const BlockEncodingSpec& spec);

// Smallest Q*L*G with D <= QLG. Among minimizing (L, G) pairs, prefers the
// most balanced split, then smaller G, then smaller L.
BlockEncodingSpec suggest_layout(int data_dim, int num_qubits);

// Closed-form least-squares perceptron w = y X^T (X X^T)^{-1}. X is
// features x samples. Falls back to the pseudo-inverse (flagged) when X X^T
// is singular and the fallback is allowed.
struct PerceptronFit {
    std::vector<double> weights;
    bool used_pseudoinverse;
};

struct NumericalRankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PerceptronFit fit_perceptron_closed_form(const RealMatrix& X, std::span<const double> y,
                                         bool allow_pseudoinverse = true);

// One weak perceptron per output bit, each fit on its own shard of the data.
struct PerceptronEnsemble {
    std::vector<std::vector<double>> weight_vectors;
    std::vector<bool> shard_used_pseudoinverse;

    int num_bits() const { return static_cast<int>(weight_vectors.size()); }
};

// bit_i = 1 if w_i . x >= 0 else 0.
std::vector<int> binary_reduce(const PerceptronEnsemble& ensemble, std::span<const double> x);

// Splits the samples into num_bits contiguous shards (sizes differing by at
// most one) and fits one closed-form perceptron per shard.
PerceptronEnsemble train_ensemble(const RealMatrix& X, std::span<const double> y, int num_bits);

}  // namespace vqs
