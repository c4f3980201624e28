#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vqs/circuit.hpp"

namespace vqs {

// The XOR quantum-neuron experiment: a single readout qubit learns the XOR
// label of (x1, x2) in (0,1)^2 through trainable rotations, with the Z
// expectation of the readout qubit as the model output.

enum class XorVariant {
    Original,  // 1 qubit: H, RZ(theta1*x1 + alpha), RX(theta2*x2 + alpha); alpha tied
    Modified,  // 3 qubits: RX(pi x) data encoding, CRZ/RZ and CRX/RX on the readout
};

struct XorSample {
    double x1;  // in (0, 1), never 0.5
    double x2;
    int label;  // 0 iff (x1 > 0.5) == (x2 > 0.5)
};

struct XorDataset {
    std::vector<XorSample> train;
    std::vector<XorSample> validation;
    std::vector<XorSample> test;
};

int xor_label(double x1, double x2);

// Uniform samples on (0,1)^2 (coordinates within 1e-9 of 0.5 are redrawn),
// split 75.0% / 6.3% / 18.7% -- exactly 750/63/187 at n = 1000.
XorDataset generate_xor_dataset(int n, std::uint64_t seed);

struct XorModel {
    XorVariant variant = XorVariant::Original;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;  // kept equal to alpha1 for the original variant

    // Every parameter uniform in [0, 2pi).
    static XorModel random_init(XorVariant variant, std::uint64_t seed);

    // Trainable parameter vector: {theta1, theta2, alpha} for the original
    // variant (alpha tied), {theta1, theta2, alpha1, alpha2} for the modified.
    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> params);
    int num_parameters() const { return variant == XorVariant::Original ? 3 : 4; }

    // Symmetry-reduced representative for convergence reporting: shifting
    // alpha (both alphas for the modified circuit) by pi leaves the model
    // output invariant, so the representative with sin(alpha1) <= 0 is
    // reported and all angles are wrapped to [0, 2pi).
    XorModel canonicalized() const;
};

// Circle distance between two angles modulo 2pi.
double mod_2pi_distance(double a, double b);

// Concrete circuits at given inputs with all angles bound.
Circuit build_original_xor_circuit(const XorModel& model, double x1, double x2);
Circuit build_modified_xor_circuit(const XorModel& model, double x1, double x2);

// Z expectation of the readout qubit (exact statevector evaluation).
double model_expectation(const XorModel& model, double x1, double x2);

// Class 0 iff the readout expectation is >= 0.
int classify(const XorModel& model, double x1, double x2);

double accuracy(const XorModel& model, std::span<const XorSample> samples);

struct TrainConfig {
    int batch_size = 25;
    double learning_rate = 0.025;
    int epochs = 150;
    std::uint64_t seed = 0;
    double shift = kPi / 2.0;  // parameter-shift magnitude k
    int shots = 0;             // 0 = exact expectations during training
    int jobs = 1;              // worker threads per batch; output is identical for any value
};

struct BatchRecord {
    double loss;                 // batch training loss before the update
    double val_accuracy;         // validation accuracy after the update
    std::vector<double> params;  // parameter vector after the update
};

struct TrainRun {
    TrainConfig config;
    XorVariant variant;
    std::vector<double> initial_params;
    std::vector<BatchRecord> history;  // epochs x batches-per-epoch entries
    XorModel final_model;
    double test_accuracy;
    bool diverged;
};

// Mini-batch training of the readout expectation against the class
// eigenvalues (+1 for class 0, -1 for class 1) under the per-sample loss
// 1/2 (y - <Z>)^2. Gradients come from the parameter-shift rule on the gate
// angles with the affine input map and the MSE chain factor applied
// classically. Aborts (diverged flag) if the epoch-mean loss exceeds 10x the
// first epoch's for 5 consecutive epochs.
TrainRun train_quantum(const XorModel& init, const XorDataset& dataset, const TrainConfig& config);

// Exact-mode batch loss and its gradient with respect to the model
// parameters; the same quantities train_quantum consumes, exposed so the
// gradient path can be audited against finite differences.
double xor_batch_loss(const XorModel& model, std::span<const XorSample> batch);
std::vector<double> xor_batch_gradient(const XorModel& model, std::span<const XorSample> batch,
                                       double shift = kPi / 2.0);

}  // namespace vqs
