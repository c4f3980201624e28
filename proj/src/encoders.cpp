#include "vqs/encoders.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace vqs {

namespace {

void require_unit_range(std::span<const double> features, const char* what) {
    for (double f : features)
        if (!(f >= 0.0 && f <= 1.0))
            throw std::invalid_argument(std::string(what) + ": feature outside [0, 1]; scale inputs first");
}

}  // namespace

Circuit angle_encode(std::span<const double> features, int num_qubits) {
    if (static_cast<int>(features.size()) > num_qubits)
        throw std::invalid_argument("angle_encode: more features than qubits");
    require_unit_range(features, "angle_encode");
    Circuit c(num_qubits);
    for (std::size_t i = 0; i < features.size(); ++i) c.rx(static_cast<int>(i), kPi * features[i]);
    return c;
}

Circuit block_encode(std::span<const double> features, const BlockEncodingSpec& spec) {
    const long slots = static_cast<long>(spec.num_qubits) * spec.layers * spec.gates_per_block;
    if (spec.num_qubits < 1 || spec.layers < 1 || spec.gates_per_block < 1)
        throw std::invalid_argument("block_encode: Q, L, G must all be >= 1");
    if (spec.data_dim < 1 || spec.data_dim > slots)
        throw std::invalid_argument("block_encode: spec violates D <= Q*L*G");
    if (static_cast<long>(features.size()) != spec.data_dim)
        throw std::invalid_argument("block_encode: feature count must equal D");
    require_unit_range(features, "block_encode");

    Circuit c(spec.num_qubits);
    long slot = 0;
    for (int layer = 0; layer < spec.layers; ++layer) {
        for (int q = 0; q < spec.num_qubits; ++q) {
            for (int g = 0; g < spec.gates_per_block; ++g, ++slot) {
                const double angle = slot < spec.data_dim ? kPi * features[static_cast<std::size_t>(slot)] : 0.0;
                // Axes cycle X, Z, X, Z, ... within a block.
                if (g % 2 == 0)
                    c.rx(q, angle);
                else
                    c.rz(q, angle);
            }
        }
        for (int q = 0; q + 1 < spec.num_qubits; ++q) c.cnot(q, q + 1);
    }
    return c;
}

BlockEncodingSpec suggest_layout(int data_dim, int num_qubits) {
    if (data_dim < 1 || num_qubits < 1)
        throw std::invalid_argument("suggest_layout: D and Q must be >= 1");
    const int product = (data_dim + num_qubits - 1) / num_qubits;  // minimal L*G
    int best_l = product, best_g = 1;
    for (int g = 1; g <= product; ++g) {
        if (product % g != 0) continue;
        const int l = product / g;
        const int spread = std::abs(l - g);
        const int best_spread = std::abs(best_l - best_g);
        if (spread < best_spread || (spread == best_spread && (g < best_g || (g == best_g && l < best_l)))) {
            best_l = l;
            best_g = g;
        }
    }
    return BlockEncodingSpec{data_dim, num_qubits, best_l, best_g};
}

PerceptronFit fit_perceptron_closed_form(const RealMatrix& X, std::span<const double> y,
                                         bool allow_pseudoinverse) {
    const std::size_t dims = X.rows();
    const std::size_t samples = X.cols();
    if (y.size() != samples) throw std::invalid_argument("fit_perceptron_closed_form: label count mismatch");
    if (samples == 0) throw std::invalid_argument("fit_perceptron_closed_form: no samples");

    Eigen::MatrixXd Xm(dims, samples);
    for (std::size_t i = 0; i < dims; ++i)
        for (std::size_t j = 0; j < samples; ++j) Xm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = X(i, j);
    Eigen::VectorXd yv(samples);
    for (std::size_t j = 0; j < samples; ++j) yv(static_cast<Eigen::Index>(j)) = y[j];

    const Eigen::MatrixXd gram = Xm * Xm.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    Eigen::VectorXd w;
    bool pseudo = false;
    if (lu.isInvertible()) {
        w = lu.solve(Xm * yv);
    } else {
        if (!allow_pseudoinverse)
            throw NumericalRankError("fit_perceptron_closed_form: X X^T is singular");
        pseudo = true;
        w = Xm.transpose().completeOrthogonalDecomposition().solve(yv);
    }

    PerceptronFit fit;
    fit.used_pseudoinverse = pseudo;
    fit.weights.assign(w.data(), w.data() + w.size());
    return fit;
}

std::vector<int> binary_reduce(const PerceptronEnsemble& ensemble, std::span<const double> x) {
    std::vector<int> bits;
    bits.reserve(ensemble.weight_vectors.size());
    for (const auto& w : ensemble.weight_vectors) {
        if (w.size() != x.size()) throw std::invalid_argument("binary_reduce: dimension mismatch");
        double dot = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * x[i];
        bits.push_back(dot >= 0.0 ? 1 : 0);
    }
    return bits;
}

PerceptronEnsemble train_ensemble(const RealMatrix& X, std::span<const double> y, int num_bits) {
    const std::size_t samples = X.cols();
    if (num_bits < 1) throw std::invalid_argument("train_ensemble: num_bits must be >= 1");
    if (samples < static_cast<std::size_t>(num_bits))
        throw std::invalid_argument("train_ensemble: fewer samples than bits");
    if (y.size() != samples) throw std::invalid_argument("train_ensemble: label count mismatch");

    PerceptronEnsemble ensemble;
    const std::size_t base = samples / static_cast<std::size_t>(num_bits);
    const std::size_t extra = samples % static_cast<std::size_t>(num_bits);
    std::size_t start = 0;
    for (int b = 0; b < num_bits; ++b) {
        const std::size_t size = base + (static_cast<std::size_t>(b) < extra ? 1 : 0);
        RealMatrix shard(X.rows(), size);
        std::vector<double> shard_y(size);
        for (std::size_t j = 0; j < size; ++j) {
            for (std::size_t i = 0; i < X.rows(); ++i) shard(i, j) = X(i, start + j);
            shard_y[j] = y[start + j];
        }
        PerceptronFit fit = fit_perceptron_closed_form(shard, shard_y, true);
        ensemble.weight_vectors.push_back(std::move(fit.weights));
        ensemble.shard_used_pseudoinverse.push_back(fit.used_pseudoinverse);
        start += size;
    }
    return ensemble;
}

}  // namespace vqs
