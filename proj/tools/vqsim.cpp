// vqsim - variational quantum circuit simulator and trainer CLI.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vqs/circuit_io.hpp"
#include "vqs/classical.hpp"
#include "vqs/encoders.hpp"
#include "vqs/gates.hpp"
#include "vqs/gradient.hpp"
#include "vqs/reports.hpp"
#include "vqs/rng.hpp"
#include "vqs/xor_model.hpp"

namespace {

using namespace vqs;

// Independent seed streams derived from the user-facing --seed value.
constexpr std::uint64_t kDataStream = 100;
constexpr std::uint64_t kInitStream = 101;

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
    }
    return values;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

int run_xor_train(const std::string& variant_name, std::uint64_t seed, int epochs, int batch, double lr,
                  double shift, int shots, int jobs, int n, const std::string& out_dir) {
    const XorVariant variant = variant_name == "modified" ? XorVariant::Modified : XorVariant::Original;
    const XorDataset data = generate_xor_dataset(n, derive_subseed(seed, kDataStream));
    const XorModel init = XorModel::random_init(variant, derive_subseed(seed, kInitStream));

    TrainConfig cfg;
    cfg.batch_size = batch;
    cfg.learning_rate = lr;
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.shift = shift;
    cfg.shots = shots;
    cfg.jobs = jobs;

    const TrainRun run = train_quantum(init, data, cfg);
    emit_reports(run, data, out_dir);

    const XorModel canon = run.final_model.canonicalized();
    std::printf("variant:        %s\n", variant_name.c_str());
    std::printf("batches:        %zu%s\n", run.history.size(), run.diverged ? " (diverged, aborted)" : "");
    std::printf("final loss:     %.6f\n", run.history.empty() ? 0.0 : run.history.back().loss);
    std::printf("test accuracy:  %.4f\n", run.test_accuracy);
    std::printf("theta1, theta2: %.5f, %.5f (canonical, mod 2pi)\n", canon.theta1, canon.theta2);
    std::printf("alpha1, alpha2: %.5f, %.5f\n", canon.alpha1, canon.alpha2);
    std::printf("reports:        %s\n", out_dir.c_str());
    return run.diverged ? 1 : 0;
}

int run_xor_data(int n, std::uint64_t seed, const std::string& out_file) {
    const XorDataset data = generate_xor_dataset(n, seed);
    std::string csv = "x1,x2,label\n";
    auto append = [&csv](const XorSample& s) {
        csv += format_double(s.x1) + "," + format_double(s.x2) + "," + std::to_string(s.label) + "\n";
    };
    for (const auto& s : data.train) append(s);
    for (const auto& s : data.validation) append(s);
    for (const auto& s : data.test) append(s);
    write_file(out_file, csv);
    std::printf("wrote %d samples (%zu/%zu/%zu train/val/test) to %s\n", n, data.train.size(),
                data.validation.size(), data.test.size(), out_file.c_str());
    return 0;
}

int run_simulate(const std::string& circuit_file, const std::string& params_text, int shots, std::uint64_t seed,
                 int readout) {
    const Circuit circuit = parse_circuit(read_file(circuit_file));
    const std::vector<double> params = parse_number_list(params_text);
    const StateVector input(circuit.num_qubits());

    if (shots > 0) {
        const ShotResult r =
            sample_expectation(circuit, params, input, readout, static_cast<std::uint64_t>(shots), seed);
        std::printf("qubit %d, %d shots (seed %llu)\n", readout, shots,
                    static_cast<unsigned long long>(seed));
        std::printf("eigenvalue  count\n");
        for (const auto& [eigenvalue, count] : r.counts)
            std::printf("%+d          %llu\n", eigenvalue, static_cast<unsigned long long>(count));
        std::printf("empirical expectation: %.6f\n", r.empirical_expectation);
        return 0;
    }

    const StateVector out = apply(circuit, params, input);
    std::printf("final state (%d qubits)\n", out.num_qubits());
    for (std::size_t i = 0; i < out.dim(); ++i) {
        const Complex a = out.amplitude(i);
        if (std::abs(a) < 1e-12) continue;
        std::string bits;
        for (int q = out.num_qubits() - 1; q >= 0; --q) bits += (i >> q) & 1 ? '1' : '0';
        std::printf("|%s>  %+.10f %+.10fi   (p = %.10f)\n", bits.c_str(), a.real(), a.imag(), std::norm(a));
    }
    return 0;
}

int run_verify_identities(int sweep) {
    Xoshiro256pp rng(2024);
    struct Row {
        const char* name;
        int sweep;
        double max_error;
        double tolerance;
    };
    std::vector<Row> rows;

    {
        double worst = 0.0;
        for (int i = 0; i < sweep; ++i) {
            const int qubits = 1 + static_cast<int>(rng.below(2));
            vqs::CMatrix sigma(1, 1);
            // random nontrivial Pauli word
            for (;;) {
                sigma = vqs::CMatrix::identity(1);
                bool nontrivial = false;
                for (int q = 0; q < qubits; ++q) {
                    switch (rng.below(4)) {
                        case 0: sigma = kron(sigma, CMatrix::identity(2)); break;
                        case 1: sigma = kron(sigma, pauli_x().matrix); nontrivial = true; break;
                        case 2: sigma = kron(sigma, pauli_y().matrix); nontrivial = true; break;
                        default: sigma = kron(sigma, pauli_z().matrix); nontrivial = true; break;
                    }
                }
                if (nontrivial) break;
            }
            CMatrix b(sigma.rows(), sigma.cols());
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) = Complex(rng.normal(), rng.normal());
            worst = std::max(worst, verify_pauli_commutator(sigma, b));
        }
        rows.push_back({"pauli-commutator", sweep, worst, 1e-12});
    }

    {
        double worst = 0.0;
        const int trials = std::max(1, sweep / 5);
        for (int i = 0; i < trials; ++i) {
            CMatrix a(2, 2), b(2, 2);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) {
                    a(r, c) = Complex(rng.normal(), rng.normal());
                    b(r, c) = Complex(rng.normal(), rng.normal());
                }
            a = (a + a.dagger()) * Complex(0.5, 0.0);
            const double scale = max_abs(a);
            if (scale > 1.0) a = a * Complex(1.0 / scale, 0.0);
            worst = std::max(worst, verify_bch(a, b, 0.1, 20));
        }
        rows.push_back({"bch-truncation", trials, worst, 1e-10});
    }

    {
        double worst = 0.0;
        const int trials = std::max(1, sweep / 20);
        const CMatrix paulis[] = {pauli_x().matrix, pauli_y().matrix, pauli_z().matrix};
        for (int i = 0; i < trials; ++i) {
            const CMatrix g = kron(paulis[rng.below(3)], paulis[rng.below(3)]);
            worst = std::max(worst, verify_exponential_derivative(g, rng.uniform(0.0, 2.0 * kPi), 64));
        }
        rows.push_back({"exponential-derivative", trials, worst, 1e-8});
    }

    {
        double worst = 0.0;
        int count = 0;
        for (int k = 1; k <= 8; ++k)
            for (int n = 1; n <= 8; ++n) {
                worst = std::max(worst, verify_beta_identity(k, n, 128).abs_error);
                ++count;
            }
        rows.push_back({"beta-function", count, worst, 1e-9});
    }

    std::printf("%-24s %8s %14s %12s %8s\n", "identity", "sweep", "max error", "tolerance", "status");
    bool all_pass = true;
    for (const Row& row : rows) {
        const bool pass = row.max_error < row.tolerance;
        all_pass = all_pass && pass;
        std::printf("%-24s %8d %14.3e %12.0e %8s\n", row.name, row.sweep, row.max_error, row.tolerance,
                    pass ? "pass" : "FAIL");
    }
    return all_pass ? 0 : 1;
}

int run_encode(const std::string& method, const std::string& spec_text, const std::string& in_file,
               const std::string& out_file) {
    const std::vector<double> spec_values = parse_number_list(spec_text);
    if (spec_values.size() != 4) throw std::runtime_error("--spec expects D,Q,L,G");
    const BlockEncodingSpec spec{static_cast<int>(spec_values[0]), static_cast<int>(spec_values[1]),
                                 static_cast<int>(spec_values[2]), static_cast<int>(spec_values[3])};

    std::string raw = read_file(in_file);
    for (char& c : raw)
        if (c == '\n' || c == '\t' || c == '\r') c = ',';
    const std::vector<double> features = parse_number_list(raw);

    Circuit circuit = method == "angle" ? angle_encode(features, spec.num_qubits) : block_encode(features, spec);
    write_file(out_file, render_circuit(circuit));
    std::printf("encoded %zu features into %zu gates on %d qubits -> %s\n", features.size(), circuit.ops().size(),
                circuit.num_qubits(), out_file.c_str());
    return 0;
}

int run_classical_xor(const std::string& model, std::uint64_t seed, int n, double spread,
                      const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const Dataset2D data = make_xor_clusters(n / 4, spread, seed);
    const std::size_t total = data.points.size();
    const std::size_t n_train = total / 2;

    // alternate whole repetitions between the halves (points are generated
    // cluster-round-robin, so this keeps every cluster in both splits)
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < total; ++i) ((i / 4) % 2 == 0 ? train_idx : test_idx).push_back(i);

    auto evaluate = [&](auto&& predict) {
        double train_acc = 0.0, test_acc = 0.0;
        for (std::size_t i : train_idx)
            if ((predict(data.points[i]) >= 0) == (data.labels[i] > 0)) train_acc += 1.0;
        for (std::size_t i : test_idx)
            if ((predict(data.points[i]) >= 0) == (data.labels[i] > 0)) test_acc += 1.0;
        return std::pair{train_acc / static_cast<double>(train_idx.size()),
                         test_acc / static_cast<double>(test_idx.size())};
    };

    std::string predictions = "x,y,true,predicted\n";
    double train_acc = 0.0, test_acc = 0.0;

    if (model == "perceptron") {
        RealMatrix X(2, n_train);
        std::vector<double> y(n_train);
        for (std::size_t j = 0; j < n_train; ++j) {
            X(0, j) = data.points[train_idx[j]][0];
            X(1, j) = data.points[train_idx[j]][1];
            y[j] = data.labels[train_idx[j]];
        }
        const PerceptronFit fit = fit_perceptron_closed_form(X, y);
        auto predict = [&](const std::array<double, 2>& p) { return fit.weights[0] * p[0] + fit.weights[1] * p[1]; };
        std::tie(train_acc, test_acc) = evaluate(predict);
        for (std::size_t i : test_idx)
            predictions += format_double(data.points[i][0]) + "," + format_double(data.points[i][1]) + "," +
                           std::to_string(data.labels[i] > 0 ? 1 : 0) + "," +
                           std::to_string(predict(data.points[i]) >= 0 ? 1 : 0) + "\n";
    } else {
        std::vector<std::vector<double>> X, y;
        for (std::size_t j = 0; j < n_train; ++j) {
            X.push_back({data.points[train_idx[j]][0], data.points[train_idx[j]][1]});
            y.push_back({data.labels[train_idx[j]]});
        }
        DenseNet net = DenseNet::random_init({2, 8, 1}, {Activation::Tanh, Activation::Tanh},
                                             derive_subseed(seed, kInitStream));
        const GDConfig cfg{0.5, 16, 600, derive_subseed(seed, 7)};
        const TrainResult trained = minibatch_train(net, X, y, cfg);
        auto predict = [&](const std::array<double, 2>& p) {
            return mlp_forward(trained.model, std::vector<double>{p[0], p[1]})[0];
        };
        std::tie(train_acc, test_acc) = evaluate(predict);
        for (std::size_t i : test_idx)
            predictions += format_double(data.points[i][0]) + "," + format_double(data.points[i][1]) + "," +
                           std::to_string(data.labels[i] > 0 ? 1 : 0) + "," +
                           std::to_string(predict(data.points[i]) >= 0 ? 1 : 0) + "\n";
    }

    write_file((std::filesystem::path(out_dir) / "predictions.csv").string(), predictions);
    std::string summary = "model,train_accuracy,test_accuracy\n";
    summary += model + "," + format_double(train_acc) + "," + format_double(test_acc) + "\n";
    write_file((std::filesystem::path(out_dir) / "summary.csv").string(), summary);
    std::printf("%s: train accuracy %.4f, test accuracy %.4f -> %s\n", model.c_str(), train_acc, test_acc,
                out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational quantum circuit simulation and training toolkit"};
    app.require_subcommand(1);

    // xor-train
    std::string variant = "original", out_dir = "xor_run";
    std::uint64_t seed = 1;
    int epochs = 150, batch = 25, shots = 0, jobs = 1, n_samples = 1000;
    double lr = 0.025, shift = kPi / 2.0;
    auto* train_cmd = app.add_subcommand("xor-train", "train the XOR quantum neuron");
    train_cmd->add_option("--variant", variant)->check(CLI::IsMember({"original", "modified"}));
    train_cmd->add_option("--seed", seed);
    train_cmd->add_option("--epochs", epochs);
    train_cmd->add_option("--batch", batch);
    train_cmd->add_option("--lr", lr);
    train_cmd->add_option("--shift", shift);
    train_cmd->add_option("--shots", shots);
    train_cmd->add_option("--jobs", jobs);
    train_cmd->add_option("--n", n_samples);
    train_cmd->add_option("--out", out_dir)->required();

    // xor-data
    int data_n = 1000;
    std::uint64_t data_seed = 1;
    std::string data_out;
    auto* data_cmd = app.add_subcommand("xor-data", "generate the XOR dataset as CSV");
    data_cmd->add_option("--n", data_n);
    data_cmd->add_option("--seed", data_seed);
    data_cmd->add_option("--out", data_out)->required();

    // simulate
    std::string circuit_file, params_text;
    int sim_shots = 0, readout = 0;
    std::uint64_t sim_seed = 1;
    auto* sim_cmd = app.add_subcommand("simulate", "run a circuit file on |0...0>");
    sim_cmd->add_option("--circuit", circuit_file)->required();
    sim_cmd->add_option("--params", params_text);
    sim_cmd->add_option("--shots", sim_shots);
    sim_cmd->add_option("--seed", sim_seed);
    sim_cmd->add_option("--readout", readout);

    // verify-identities
    int sweep = 1000;
    auto* verify_cmd = app.add_subcommand("verify-identities", "numeric checks of the operator identities");
    verify_cmd->add_option("--sweep", sweep);

    // encode
    std::string method = "angle", spec_text, enc_in, enc_out;
    auto* encode_cmd = app.add_subcommand("encode", "encode a feature vector as a circuit");
    encode_cmd->add_option("--method", method)->check(CLI::IsMember({"angle", "block"}));
    encode_cmd->add_option("--spec", spec_text)->required();
    encode_cmd->add_option("--in", enc_in)->required();
    encode_cmd->add_option("--out", enc_out)->required();

    // classical-xor
    std::string cmodel = "perceptron", cxor_out = "classical_run";
    std::uint64_t cxor_seed = 1;
    int cxor_n = 400;
    double cxor_spread = 0.3;
    auto* classical_cmd = app.add_subcommand("classical-xor", "classical baselines on four-cluster XOR data");
    classical_cmd->add_option("--model", cmodel)->check(CLI::IsMember({"perceptron", "mlp"}));
    classical_cmd->add_option("--seed", cxor_seed);
    classical_cmd->add_option("--n", cxor_n);
    classical_cmd->add_option("--spread", cxor_spread);
    classical_cmd->add_option("--out", cxor_out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed())
            return run_xor_train(variant, seed, epochs, batch, lr, shift, shots, jobs, n_samples, out_dir);
        if (data_cmd->parsed()) return run_xor_data(data_n, data_seed, data_out);
        if (sim_cmd->parsed()) return run_simulate(circuit_file, params_text, sim_shots, sim_seed, readout);
        if (verify_cmd->parsed()) return run_verify_identities(sweep);
        if (encode_cmd->parsed()) return run_encode(method, spec_text, enc_in, enc_out);
        if (classical_cmd->parsed()) return run_classical_xor(cmodel, cxor_seed, cxor_n, cxor_spread, cxor_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
