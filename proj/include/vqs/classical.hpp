#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vqs/linalg.hpp"

namespace vqs {

// Classical baselines: perceptron, dense networks with backpropagation,
// softmax, 1D convolution, and the three gradient-descent variants.

enum class Activation { Identity, Sigmoid, Relu, Tanh };

double activate(Activation a, double x);
double activate_derivative(Activation a, double x);  // derivative at pre-activation x

// Fully connected network. Layer l maps width[l] -> width[l+1] through
// weights[l] (width[l+1] x width[l]), a bias vector, and activations[l].
// Biases are required: a bias-free tanh network is an odd function and
// cannot represent the XOR clusters.
struct DenseNet {
    std::vector<int> layer_widths;
    std::vector<RealMatrix> weights;
    std::vector<std::vector<double>> biases;
    std::vector<Activation> activations;

    static DenseNet random_init(std::vector<int> widths, std::vector<Activation> activations, std::uint64_t seed);

    int num_layers() const { return static_cast<int>(weights.size()); }
};

double perceptron_forward(std::span<const double> w, std::span<const double> x);
std::vector<double> mlp_forward(const DenseNet& net, std::span<const double> x);

// Temperature softmax with max-subtraction for overflow safety.
std::vector<double> softmax(std::span<const double> z, double beta);

// Valid-region convolution; output length len(f) - len(g) + 1.
std::vector<double> conv1d_valid(std::span<const double> f, std::span<const double> g);
// The banded matrix M with conv1d_valid(f, g) == M * f.
RealMatrix conv_as_matrix(std::span<const double> g, int len_f);

// Plain gradient-descent step w' = w - lr * grad.
std::vector<double> gd_step(std::span<const double> w, std::span<const double> grad, double learning_rate);

// Perceptron updates for the MSE objective 1/(2n) sum (y_i - w.x_i)^2.
// X is features x samples.
void perceptron_batch_update(std::vector<double>& w, const RealMatrix& X, std::span<const double> y,
                             double learning_rate);
void perceptron_sgd_update(std::vector<double>& w, std::span<const double> xi, double yi, double learning_rate);

// Gradients of the squared error 1/2 |y - f(x)|^2 with respect to every
// weight and bias, computed layer by layer backwards.
struct NetGradients {
    std::vector<RealMatrix> weights;
    std::vector<std::vector<double>> biases;
};
NetGradients backprop_gradients(const DenseNet& net, std::span<const double> x, std::span<const double> y_true);

struct GDConfig {
    double learning_rate;
    int batch_size;
    int epochs;
    std::uint64_t seed;
};

// Mini-batch gradient descent on the squared error: shuffle each epoch
// (seeded), partition into batches of batch_size (final short batch kept),
// update with the lr/(2m) averaged-gradient step. batch_size == n is batch
// gradient descent; batch_size == 1 is SGD.
struct TrainResult {
    DenseNet model;
    std::vector<double> loss_history;  // mean squared-error loss per batch
};
TrainResult minibatch_train(DenseNet net, const std::vector<std::vector<double>>& X,
                            const std::vector<std::vector<double>>& y, const GDConfig& config);

// Four Gaussian clusters at (+-1, +-1); the diagonal pair is labeled +1 and
// the off-diagonal pair -1.
struct Dataset2D {
    std::vector<std::array<double, 2>> points;
    std::vector<double> labels;
};
Dataset2D make_xor_clusters(int n_per_cluster, double spread, std::uint64_t seed);

}  // namespace vqs
