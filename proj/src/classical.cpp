#include "vqs/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vqs/rng.hpp"

namespace vqs {

double activate(Activation a, double x) {
    switch (a) {
        case Activation::Identity: return x;
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case Activation::Relu: return x > 0.0 ? x : 0.0;
        case Activation::Tanh: return std::tanh(x);
    }
    throw std::logic_error("activate: unknown activation");
}

double activate_derivative(Activation a, double x) {
    switch (a) {
        case Activation::Identity: return 1.0;
        case Activation::Sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-x));
            return s * (1.0 - s);
        }
        case Activation::Relu: return x > 0.0 ? 1.0 : 0.0;
        case Activation::Tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
    }
    throw std::logic_error("activate_derivative: unknown activation");
}

DenseNet DenseNet::random_init(std::vector<int> widths, std::vector<Activation> activations, std::uint64_t seed) {
    if (widths.size() < 2) throw std::invalid_argument("DenseNet: need at least input and output widths");
    if (activations.size() != widths.size() - 1)
        throw std::invalid_argument("DenseNet: one activation per layer required");
    DenseNet net;
    net.layer_widths = std::move(widths);
    net.activations = std::move(activations);
    Xoshiro256pp rng(seed);
    for (std::size_t l = 0; l + 1 < net.layer_widths.size(); ++l) {
        const auto out = static_cast<std::size_t>(net.layer_widths[l + 1]);
        const auto in = static_cast<std::size_t>(net.layer_widths[l]);
        RealMatrix w(out, in);
        std::vector<double> b(out);
        for (std::size_t i = 0; i < out; ++i) {
            for (std::size_t j = 0; j < in; ++j) w(i, j) = rng.uniform(-0.5, 0.5);
            b[i] = rng.uniform(-0.5, 0.5);
        }
        net.weights.push_back(std::move(w));
        net.biases.push_back(std::move(b));
    }
    return net;
}

double perceptron_forward(std::span<const double> w, std::span<const double> x) {
    if (w.size() != x.size()) throw std::invalid_argument("perceptron_forward: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
    return acc;
}

namespace {

// Forward pass keeping pre-activations and activations per layer.
struct ForwardTrace {
    std::vector<std::vector<double>> pre;   // z_l = W_l a_l + b_l
    std::vector<std::vector<double>> post;  // a_0 = x, a_{l+1} = sigma(z_l)
};

ForwardTrace forward_trace(const DenseNet& net, std::span<const double> x) {
    if (static_cast<int>(x.size()) != net.layer_widths.front())
        throw std::invalid_argument("mlp_forward: input width mismatch");
    ForwardTrace trace;
    trace.post.emplace_back(x.begin(), x.end());
    for (int l = 0; l < net.num_layers(); ++l) {
        std::vector<double> z = net.weights[static_cast<std::size_t>(l)].apply(trace.post.back());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += net.biases[static_cast<std::size_t>(l)][i];
        std::vector<double> a(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) a[i] = activate(net.activations[static_cast<std::size_t>(l)], z[i]);
        trace.pre.push_back(std::move(z));
        trace.post.push_back(std::move(a));
    }
    return trace;
}

}  // namespace

std::vector<double> mlp_forward(const DenseNet& net, std::span<const double> x) {
    return forward_trace(net, x).post.back();
}

std::vector<double> softmax(std::span<const double> z, double beta) {
    if (!std::isfinite(beta)) throw std::invalid_argument("softmax: beta must be finite");
    if (z.empty()) throw std::invalid_argument("softmax: empty input");
    const double zmax = *std::max_element(z.begin(), z.end());
    std::vector<double> out(z.size());
    double total = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = std::exp(beta * (z[i] - zmax));
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

std::vector<double> conv1d_valid(std::span<const double> f, std::span<const double> g) {
    if (g.empty() || f.empty()) throw std::invalid_argument("conv1d_valid: empty input");
    if (g.size() > f.size()) throw std::invalid_argument("conv1d_valid: kernel longer than signal");
    const std::size_t out_len = f.size() - g.size() + 1;
    std::vector<double> out(out_len, 0.0);
    for (std::size_t k = 0; k < out_len; ++k)
        for (std::size_t j = 0; j < g.size(); ++j) out[k] += g[g.size() - 1 - j] * f[k + j];
    return out;
}

RealMatrix conv_as_matrix(std::span<const double> g, int len_f) {
    if (g.empty()) throw std::invalid_argument("conv_as_matrix: empty kernel");
    if (static_cast<int>(g.size()) > len_f) throw std::invalid_argument("conv_as_matrix: kernel longer than signal");
    const std::size_t rows = static_cast<std::size_t>(len_f) - g.size() + 1;
    RealMatrix m(rows, static_cast<std::size_t>(len_f));
    for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t j = 0; j < g.size(); ++j) m(k, k + j) = g[g.size() - 1 - j];
    return m;
}

std::vector<double> gd_step(std::span<const double> w, std::span<const double> grad, double learning_rate) {
    if (w.size() != grad.size()) throw std::invalid_argument("gd_step: dimension mismatch");
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] - learning_rate * grad[i];
    return out;
}

void perceptron_batch_update(std::vector<double>& w, const RealMatrix& X, std::span<const double> y,
                             double learning_rate) {
    const std::size_t n = X.cols();
    if (y.size() != n) throw std::invalid_argument("perceptron_batch_update: label count mismatch");
    if (w.size() != X.rows()) throw std::invalid_argument("perceptron_batch_update: weight dimension mismatch");
    std::vector<double> grad(w.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double pred = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) pred += w[i] * X(i, j);
        const double residual = y[j] - pred;
        for (std::size_t i = 0; i < w.size(); ++i) grad[i] -= residual * X(i, j);
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= learning_rate / static_cast<double>(n) * grad[i];
}

void perceptron_sgd_update(std::vector<double>& w, std::span<const double> xi, double yi, double learning_rate) {
    const double residual = yi - perceptron_forward(w, xi);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += learning_rate * residual * xi[i];
}

NetGradients backprop_gradients(const DenseNet& net, std::span<const double> x, std::span<const double> y_true) {
    const ForwardTrace trace = forward_trace(net, x);
    const std::vector<double>& out = trace.post.back();
    if (y_true.size() != out.size()) throw std::invalid_argument("backprop_gradients: target width mismatch");

    NetGradients grads;
    grads.weights.resize(static_cast<std::size_t>(net.num_layers()));
    grads.biases.resize(static_cast<std::size_t>(net.num_layers()));

    // delta = dLoss/dz for the current layer, starting from the output.
    std::vector<double> delta(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double dloss = out[i] - y_true[i];  // d/df of 1/2 (y - f)^2
        delta[i] = dloss * activate_derivative(net.activations.back(), trace.pre.back()[i]);
    }

    for (int l = net.num_layers() - 1; l >= 0; --l) {
        const auto lu = static_cast<std::size_t>(l);
        const std::vector<double>& input = trace.post[lu];
        RealMatrix gw(delta.size(), input.size());
        for (std::size_t i = 0; i < delta.size(); ++i)
            for (std::size_t j = 0; j < input.size(); ++j) gw(i, j) = delta[i] * input[j];
        grads.weights[lu] = std::move(gw);
        grads.biases[lu] = delta;

        if (l > 0) {
            const RealMatrix& w = net.weights[lu];
            std::vector<double> prev(input.size(), 0.0);
            for (std::size_t j = 0; j < input.size(); ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i < delta.size(); ++i) acc += w(i, j) * delta[i];
                prev[j] = acc * activate_derivative(net.activations[lu - 1], trace.pre[lu - 1][j]);
            }
            delta = std::move(prev);
        }
    }
    return grads;
}

TrainResult minibatch_train(DenseNet net, const std::vector<std::vector<double>>& X,
                            const std::vector<std::vector<double>>& y, const GDConfig& config) {
    if (X.empty() || X.size() != y.size()) throw std::invalid_argument("minibatch_train: bad dataset");
    if (config.batch_size < 1 || config.epochs < 1 || config.learning_rate <= 0.0)
        throw std::invalid_argument("minibatch_train: bad config");

    const std::size_t n = X.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Xoshiro256pp rng(config.seed);

    TrainResult result;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        // Fisher-Yates shuffle, seeded.
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = rng.below(i + 1);
            std::swap(order[i], order[j]);
        }
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t end = std::min(n, start + static_cast<std::size_t>(config.batch_size));
            const std::size_t m = end - start;

            NetGradients total;
            double batch_loss = 0.0;
            for (std::size_t s = start; s < end; ++s) {
                const std::size_t idx = order[s];
                const NetGradients g = backprop_gradients(net, X[idx], y[idx]);
                const std::vector<double> out = mlp_forward(net, X[idx]);
                for (std::size_t i = 0; i < out.size(); ++i) {
                    const double r = y[idx][i] - out[i];
                    batch_loss += 0.5 * r * r;
                }
                if (total.weights.empty()) {
                    total = g;
                } else {
                    for (std::size_t l = 0; l < g.weights.size(); ++l) {
                        for (std::size_t i = 0; i < g.weights[l].rows(); ++i)
                            for (std::size_t j = 0; j < g.weights[l].cols(); ++j)
                                total.weights[l](i, j) += g.weights[l](i, j);
                        for (std::size_t i = 0; i < g.biases[l].size(); ++i) total.biases[l][i] += g.biases[l][i];
                    }
                }
            }

            // Algorithm step: w <- w - lr/(2m) * sum of batch gradients.
            const double scale = config.learning_rate / (2.0 * static_cast<double>(m));
            for (std::size_t l = 0; l < total.weights.size(); ++l) {
                for (std::size_t i = 0; i < total.weights[l].rows(); ++i)
                    for (std::size_t j = 0; j < total.weights[l].cols(); ++j)
                        net.weights[l](i, j) -= scale * total.weights[l](i, j);
                for (std::size_t i = 0; i < total.biases[l].size(); ++i)
                    net.biases[l][i] -= scale * total.biases[l][i];
            }
            result.loss_history.push_back(batch_loss / static_cast<double>(m));
        }
    }
    result.model = std::move(net);
    return result;
}

Dataset2D make_xor_clusters(int n_per_cluster, double spread, std::uint64_t seed) {
    if (n_per_cluster < 1) throw std::invalid_argument("make_xor_clusters: n_per_cluster must be >= 1");
    static constexpr std::array<std::array<double, 2>, 4> centers = {{{-1, -1}, {-1, 1}, {1, 1}, {1, -1}}};
    Xoshiro256pp rng(seed);
    Dataset2D data;
    for (int i = 0; i < n_per_cluster; ++i) {
        for (const auto& c : centers) {
            const double x = c[0] + spread * rng.normal();
            const double y = c[1] + spread * rng.normal();
            data.points.push_back({x, y});
            data.labels.push_back(c[0] * c[1] > 0 ? +1.0 : -1.0);  // diagonal pair is +1
        }
    }
    return data;
}

}  // namespace vqs
