#include "vqs/xor_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "vqs/classical.hpp"
#include "vqs/rng.hpp"

namespace vqs {

namespace {

constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kShotStream = 2;

struct SampleCircuit {
    Circuit circuit;           // slotted template
    std::vector<double> angles;  // slot values for the current model
};

// Original circuit with the two rotation angles as slots; the affine map
// from model parameters to angles is handled by the caller.
SampleCircuit original_sample_circuit(const XorModel& m, double x1, double x2) {
    Circuit c(1);
    c.h(0).rz_slot(0, 0).rx_slot(0, 1);
    return {std::move(c), {m.theta1 * x1 + m.alpha1, m.theta2 * x2 + m.alpha2}};
}

// Modified circuit: data qubits 1 and 2 carry RX(pi x) encodings, the
// readout qubit 0 gets H, CRZ($0), RZ($1), CRX($2), RX($3).
SampleCircuit modified_sample_circuit(const XorModel& m, double x1, double x2) {
    Circuit c(3);
    c.rx(1, kPi * x1).rx(2, kPi * x2);
    c.h(0).crz_slot(1, 0, 0).rz_slot(0, 1).crx_slot(2, 0, 2).rx_slot(0, 3);
    return {std::move(c), {m.theta1, m.alpha1, m.theta2, m.alpha2}};
}

SampleCircuit sample_circuit(const XorModel& m, double x1, double x2) {
    return m.variant == XorVariant::Original ? original_sample_circuit(m, x1, x2)
                                             : modified_sample_circuit(m, x1, x2);
}

// Chain rule through the angle map: grad_model += J^T * grad_angles.
void accumulate_model_gradient(const XorModel& m, double x1, double x2, std::span<const double> angle_grad,
                               double factor, std::vector<double>& model_grad) {
    if (m.variant == XorVariant::Original) {
        model_grad[0] += factor * x1 * angle_grad[0];
        model_grad[1] += factor * x2 * angle_grad[1];
        model_grad[2] += factor * (angle_grad[0] + angle_grad[1]);
    } else {
        model_grad[0] += factor * angle_grad[0];
        model_grad[1] += factor * angle_grad[2];
        model_grad[2] += factor * angle_grad[1];
        model_grad[3] += factor * angle_grad[3];
    }
}

const HermitianObservable& readout_observable(XorVariant variant) {
    static const HermitianObservable z1 = HermitianObservable::pauli_z_on(1, 0);
    static const HermitianObservable z3 = HermitianObservable::pauli_z_on(3, 0);
    return variant == XorVariant::Original ? z1 : z3;
}

double target_eigenvalue(int label) { return label == 0 ? +1.0 : -1.0; }

// One expectation evaluation, exact or shot-sampled with a derived seed.
double evaluate(const SampleCircuit& sc, const XorModel& m, int shots, std::uint64_t seed, int op_shift_index,
                double delta) {
    const StateVector input(sc.circuit.num_qubits());
    if (shots <= 0) {
        return expectation(detail::apply_with_shift(sc.circuit, sc.angles, input, op_shift_index, delta),
                           readout_observable(m.variant));
    }
    // Shot mode reuses the shifted-angle path by baking the shift into a copy.
    std::vector<double> angles = sc.angles;
    if (op_shift_index >= 0) {
        const GateOp& op = sc.circuit.ops()[static_cast<std::size_t>(op_shift_index)];
        angles[static_cast<std::size_t>(op.param->slot_index)] += delta;
    }
    return sample_expectation(sc.circuit, angles, input, 0, static_cast<std::uint64_t>(shots), seed)
        .empirical_expectation;
}

struct SampleResult {
    double loss;
    std::vector<double> model_grad;
};

// Loss and model-parameter gradient for one sample. Slots of the templates
// are bound to exactly one op each, so per-op shifts are per-slot shifts.
SampleResult evaluate_sample(const XorModel& m, const XorSample& s, double shift, int shots,
                             std::uint64_t eval_seed) {
    const SampleCircuit sc = sample_circuit(m, s.x1, s.x2);
    const double y = target_eigenvalue(s.label);

    const double value = evaluate(sc, m, shots, derive_subseed(eval_seed, 0), -1, 0.0);

    std::vector<double> angle_grad(sc.angles.size(), 0.0);
    std::uint64_t eval_index = 1;
    for (std::size_t k = 0; k < sc.circuit.ops().size(); ++k) {
        const GateOp& op = sc.circuit.ops()[k];
        if (!op.param || !op.param->is_slot) continue;
        const double up = evaluate(sc, m, shots, derive_subseed(eval_seed, eval_index++), static_cast<int>(k), +shift);
        const double down =
            evaluate(sc, m, shots, derive_subseed(eval_seed, eval_index++), static_cast<int>(k), -shift);
        angle_grad[static_cast<std::size_t>(op.param->slot_index)] += 0.5 * (up - down);
    }

    SampleResult result;
    result.loss = 0.5 * (y - value) * (y - value);
    result.model_grad.assign(static_cast<std::size_t>(m.num_parameters()), 0.0);
    accumulate_model_gradient(m, s.x1, s.x2, angle_grad, -(y - value), result.model_grad);
    return result;
}

}  // namespace

int xor_label(double x1, double x2) { return (x1 > 0.5) == (x2 > 0.5) ? 0 : 1; }

XorDataset generate_xor_dataset(int n, std::uint64_t seed) {
    if (n < 10) throw std::invalid_argument("generate_xor_dataset: n must be >= 10");
    Xoshiro256pp rng(seed);
    auto draw_coordinate = [&rng] {
        double u = rng.uniform01();
        while (u == 0.0 || std::abs(u - 0.5) < 1e-9) u = rng.uniform01();
        return u;
    };

    std::vector<XorSample> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x1 = draw_coordinate();
        const double x2 = draw_coordinate();
        samples.push_back({x1, x2, xor_label(x1, x2)});
    }

    const int n_train = static_cast<int>(std::llround(0.750 * n));
    const int n_val = static_cast<int>(std::llround(0.063 * n));
    XorDataset data;
    data.train.assign(samples.begin(), samples.begin() + n_train);
    data.validation.assign(samples.begin() + n_train, samples.begin() + n_train + n_val);
    data.test.assign(samples.begin() + n_train + n_val, samples.end());
    return data;
}

XorModel XorModel::random_init(XorVariant variant, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    XorModel m{variant, 0, 0, 0, 0};
    m.theta1 = rng.uniform(0.0, 2.0 * kPi);
    m.theta2 = rng.uniform(0.0, 2.0 * kPi);
    m.alpha1 = rng.uniform(0.0, 2.0 * kPi);
    m.alpha2 = variant == XorVariant::Original ? m.alpha1 : rng.uniform(0.0, 2.0 * kPi);
    return m;
}

std::vector<double> XorModel::parameters() const {
    if (variant == XorVariant::Original) return {theta1, theta2, alpha1};
    return {theta1, theta2, alpha1, alpha2};
}

void XorModel::set_parameters(std::span<const double> params) {
    if (static_cast<int>(params.size()) != num_parameters())
        throw std::invalid_argument("XorModel: parameter count mismatch");
    theta1 = params[0];
    theta2 = params[1];
    alpha1 = params[2];
    alpha2 = variant == XorVariant::Original ? params[2] : params[3];
}

XorModel XorModel::canonicalized() const {
    auto wrap = [](double a) {
        double w = std::fmod(a, 2.0 * kPi);
        if (w < 0.0) w += 2.0 * kPi;
        return w;
    };
    XorModel m = *this;
    if (std::sin(m.alpha1) > 0.0) {
        m.alpha1 += kPi;
        m.alpha2 += kPi;
    }
    m.theta1 = wrap(m.theta1);
    m.theta2 = wrap(m.theta2);
    m.alpha1 = wrap(m.alpha1);
    m.alpha2 = wrap(m.alpha2);
    return m;
}

double mod_2pi_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

Circuit build_original_xor_circuit(const XorModel& model, double x1, double x2) {
    if (model.variant != XorVariant::Original)
        throw std::invalid_argument("build_original_xor_circuit: model variant mismatch");
    Circuit c(1);
    c.h(0).rz(0, model.theta1 * x1 + model.alpha1).rx(0, model.theta2 * x2 + model.alpha2);
    return c;
}

Circuit build_modified_xor_circuit(const XorModel& model, double x1, double x2) {
    if (model.variant != XorVariant::Modified)
        throw std::invalid_argument("build_modified_xor_circuit: model variant mismatch");
    Circuit c(3);
    c.rx(1, kPi * x1).rx(2, kPi * x2);
    c.h(0).crz(1, 0, model.theta1).rz(0, model.alpha1).crx(2, 0, model.theta2).rx(0, model.alpha2);
    return c;
}

double model_expectation(const XorModel& model, double x1, double x2) {
    const SampleCircuit sc = sample_circuit(model, x1, x2);
    const StateVector input(sc.circuit.num_qubits());
    return exact_expectation(sc.circuit, sc.angles, input, readout_observable(model.variant));
}

int classify(const XorModel& model, double x1, double x2) {
    return model_expectation(model, x1, x2) >= 0.0 ? 0 : 1;
}

double accuracy(const XorModel& model, std::span<const XorSample> samples) {
    if (samples.empty()) return 0.0;
    std::size_t correct = 0;
    for (const XorSample& s : samples)
        if (classify(model, s.x1, s.x2) == s.label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(samples.size());
}

double xor_batch_loss(const XorModel& model, std::span<const XorSample> batch) {
    if (batch.empty()) throw std::invalid_argument("xor_batch_loss: empty batch");
    double total = 0.0;
    for (const XorSample& s : batch) {
        const double y = target_eigenvalue(s.label);
        const double value = model_expectation(model, s.x1, s.x2);
        total += 0.5 * (y - value) * (y - value);
    }
    return total / static_cast<double>(batch.size());
}

std::vector<double> xor_batch_gradient(const XorModel& model, std::span<const XorSample> batch, double shift) {
    if (batch.empty()) throw std::invalid_argument("xor_batch_gradient: empty batch");
    std::vector<double> grad(static_cast<std::size_t>(model.num_parameters()), 0.0);
    for (const XorSample& s : batch) {
        const SampleResult r = evaluate_sample(model, s, shift, 0, 0);
        for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += r.model_grad[i];
    }
    for (double& g : grad) g /= static_cast<double>(batch.size());
    return grad;
}

TrainRun train_quantum(const XorModel& init, const XorDataset& dataset, const TrainConfig& config) {
    if (config.batch_size < 1 || config.epochs < 1 || config.learning_rate <= 0.0 || config.jobs < 1)
        throw std::invalid_argument("train_quantum: bad config");
    if (dataset.train.empty()) throw std::invalid_argument("train_quantum: empty training set");

    TrainRun run;
    run.config = config;
    run.variant = init.variant;
    run.initial_params = init.parameters();
    run.diverged = false;

    XorModel model = init;
    std::vector<double> params = init.parameters();

    const std::size_t n = dataset.train.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Xoshiro256pp shuffle_rng(derive_subseed(config.seed, kShuffleStream));
    const std::uint64_t shot_root = derive_subseed(config.seed, kShotStream);

    double first_epoch_loss = 0.0;
    int high_loss_epochs = 0;
    std::uint64_t batch_counter = 0;

    for (int epoch = 0; epoch < config.epochs && !run.diverged; ++epoch) {
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = shuffle_rng.below(i + 1);
            std::swap(order[i], order[j]);
        }

        double epoch_loss = 0.0;
        std::size_t epoch_batches = 0;
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t end = std::min(n, start + static_cast<std::size_t>(config.batch_size));
            const std::size_t m = end - start;

            // Per-sample results land in fixed slots so any thread schedule
            // reduces identically in index order.
            std::vector<SampleResult> results(m);
            auto worker = [&](std::size_t lo, std::size_t hi) {
                for (std::size_t s = lo; s < hi; ++s) {
                    const XorSample& sample = dataset.train[order[start + s]];
                    const std::uint64_t eval_seed =
                        derive_subseed(derive_subseed(shot_root, batch_counter), static_cast<std::uint64_t>(s));
                    results[s] = evaluate_sample(model, sample, config.shift, config.shots, eval_seed);
                }
            };
            const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), m);
            if (workers <= 1) {
                worker(0, m);
            } else {
                std::vector<std::thread> pool;
                const std::size_t chunk = (m + workers - 1) / workers;
                for (std::size_t w = 0; w < workers; ++w) {
                    const std::size_t lo = w * chunk;
                    const std::size_t hi = std::min(m, lo + chunk);
                    if (lo < hi) pool.emplace_back(worker, lo, hi);
                }
                for (auto& t : pool) t.join();
            }

            double batch_loss = 0.0;
            std::vector<double> grad(params.size(), 0.0);
            for (const SampleResult& r : results) {
                batch_loss += r.loss;
                for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += r.model_grad[i];
            }
            batch_loss /= static_cast<double>(m);
            for (double& g : grad) g /= static_cast<double>(m);

            params = gd_step(params, grad, config.learning_rate);
            model.set_parameters(params);

            BatchRecord record;
            record.loss = batch_loss;
            record.val_accuracy = accuracy(model, dataset.validation);
            record.params = params;
            run.history.push_back(std::move(record));

            epoch_loss += batch_loss;
            ++epoch_batches;
            ++batch_counter;
        }

        epoch_loss /= static_cast<double>(epoch_batches);
        if (epoch == 0) first_epoch_loss = epoch_loss;
        if (epoch > 0 && epoch_loss > 10.0 * first_epoch_loss) {
            if (++high_loss_epochs >= 5) run.diverged = true;
        } else {
            high_loss_epochs = 0;
        }
    }

    run.final_model = model;
    run.test_accuracy = accuracy(model, dataset.test);
    return run;
}

}  // namespace vqs
