#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "vqs/reports.hpp"
#include "vqs/xor_model.hpp"

using namespace vqs;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

XorModel ideal_original() {
    XorModel m;
    m.variant = XorVariant::Original;
    m.theta1 = kPi;
    m.theta2 = kPi;
    m.alpha1 = -kPi / 2.0;
    m.alpha2 = -kPi / 2.0;
    return m;
}

}  // namespace

TEST_CASE("dataset generation: split sizes, exclusions, determinism") {
    const XorDataset data = generate_xor_dataset(1000, 42);
    CHECK(data.train.size() == 750);
    CHECK(data.validation.size() == 63);
    CHECK(data.test.size() == 187);

    auto check_sample = [](const XorSample& s) {
        CHECK(s.x1 > 0.0);
        CHECK(s.x1 < 1.0);
        CHECK(std::abs(s.x1 - 0.5) >= 1e-9);
        CHECK(std::abs(s.x2 - 0.5) >= 1e-9);
        CHECK(s.label == xor_label(s.x1, s.x2));
    };
    for (const auto& s : data.train) check_sample(s);
    for (const auto& s : data.validation) check_sample(s);
    for (const auto& s : data.test) check_sample(s);

    const XorDataset again = generate_xor_dataset(1000, 42);
    for (std::size_t i = 0; i < data.train.size(); ++i) {
        CHECK(data.train[i].x1 == again.train[i].x1);
        CHECK(data.train[i].x2 == again.train[i].x2);
    }
}

TEST_CASE("label convention and symmetry") {
    CHECK(xor_label(0.9, 0.9) == 0);
    CHECK(xor_label(0.1, 0.9) == 1);
    CHECK(xor_label(0.9, 0.1) == 1);
    CHECK(xor_label(0.1, 0.1) == 0);

    Xoshiro256pp rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = rng.uniform01(), b = rng.uniform01();
        CHECK(xor_label(a, b) == xor_label(b, a));
    }

    // the ideal circuit fixes the class convention: (1,1) lands on the zero state
    const XorModel m = ideal_original();
    CHECK(classify(m, 0.9, 0.9) == 0);
    CHECK(classify(m, 0.1, 0.9) == 1);
}

TEST_CASE("original circuit: corner exactness at the ideal parameters") {
    const XorModel m = ideal_original();
    const StateVector in(1);
    const struct {
        double x1, x2;
        std::size_t expect_index;
    } corners[] = {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    for (const auto& corner : corners) {
        const Circuit c = build_original_xor_circuit(m, corner.x1, corner.x2);
        const StateVector out = apply(c, {}, in);
        CHECK(std::abs(std::norm(out.amplitude(corner.expect_index)) - 1.0) < 1e-10);
        CHECK(std::norm(out.amplitude(1 - corner.expect_index)) < 1e-10);
    }
}

TEST_CASE("original circuit structure") {
    const XorModel m = ideal_original();
    const Circuit c = build_original_xor_circuit(m, 0.3, 0.8);
    REQUIRE(c.ops().size() == 3);
    CHECK(c.ops()[0].kind == GateKind::H);
    CHECK(c.ops()[1].kind == GateKind::RZ);
    CHECK(c.ops()[1].param->value == doctest::Approx(m.theta1 * 0.3 + m.alpha1));
    CHECK(c.ops()[2].kind == GateKind::RX);
    CHECK(c.ops()[2].param->value == doctest::Approx(m.theta2 * 0.8 + m.alpha2));

    XorModel wrong = m;
    wrong.variant = XorVariant::Modified;
    CHECK_THROWS_AS(build_original_xor_circuit(wrong, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("modified circuit: corner behavior at theta = pi, alpha = 3pi/2") {
    XorModel m;
    m.variant = XorVariant::Modified;
    m.theta1 = m.theta2 = kPi;
    m.alpha1 = m.alpha2 = 3.0 * kPi / 2.0;

    CHECK(std::abs(model_expectation(m, 1.0, 1.0) - 1.0) < 0.05);
    CHECK(std::abs(model_expectation(m, 0.0, 0.0) - 1.0) < 0.05);
    CHECK(std::abs(model_expectation(m, 0.0, 1.0) + 1.0) < 0.05);
    CHECK(std::abs(model_expectation(m, 1.0, 0.0) + 1.0) < 0.05);
}

TEST_CASE("modified circuit with zero inputs reduces to the bare readout line") {
    Xoshiro256pp rng(2);
    XorModel m;
    m.variant = XorVariant::Modified;
    m.theta1 = rng.uniform(0.0, 2.0 * kPi);
    m.theta2 = rng.uniform(0.0, 2.0 * kPi);
    m.alpha1 = rng.uniform(0.0, 2.0 * kPi);
    m.alpha2 = rng.uniform(0.0, 2.0 * kPi);

    // x = 0 encodes to RX(0): the controls stay |0> and the CR gates pass through
    Circuit bare(1);
    bare.h(0).rz(0, m.alpha1).rx(0, m.alpha2);
    const double reference = exact_expectation(bare, {}, StateVector(1), HermitianObservable::pauli_z_on(1, 0));
    CHECK(model_expectation(m, 0.0, 0.0) == doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("classification threshold is zero, boundary inclusive") {
    // theta = alpha = 0 gives <Z> = sin(0) sin(0) = 0 exactly
    XorModel flat;
    flat.variant = XorVariant::Original;
    CHECK(model_expectation(flat, 0.3, 0.7) == doctest::Approx(0.0));
    CHECK(classify(flat, 0.3, 0.7) == 0);  // >= 0 -> class 0

    const XorModel m = ideal_original();
    CHECK(model_expectation(m, 0.95, 0.95) > 0.5);
    CHECK(classify(m, 0.95, 0.95) == 0);
    CHECK(model_expectation(m, 0.05, 0.95) < -0.5);
    CHECK(classify(m, 0.05, 0.95) == 1);
}

TEST_CASE("canonicalization folds the alpha + pi gauge copy") {
    XorModel m = ideal_original();
    m.alpha1 = m.alpha2 = kPi / 2.0;  // same model as alpha = -pi/2
    const XorModel canon = m.canonicalized();
    CHECK(mod_2pi_distance(canon.alpha1, 3.0 * kPi / 2.0) < 1e-12);
    // gauge shift leaves the model function untouched
    Xoshiro256pp rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const double x1 = rng.uniform01(), x2 = rng.uniform01();
        CHECK(model_expectation(m, x1, x2) == doctest::Approx(model_expectation(canon, x1, x2)).epsilon(1e-10));
    }

    XorModel mm = m;
    mm.variant = XorVariant::Modified;
    const XorModel canon_mod = mm.canonicalized();
    for (int trial = 0; trial < 20; ++trial) {
        const double x1 = rng.uniform01(), x2 = rng.uniform01();
        CHECK(model_expectation(mm, x1, x2) ==
              doctest::Approx(model_expectation(canon_mod, x1, x2)).epsilon(1e-10));
    }
}

TEST_CASE("property: the training gradient matches finite differences of the batch loss") {
    Xoshiro256pp rng(4);
    const XorDataset data = generate_xor_dataset(200, 5);
    for (const XorVariant variant : {XorVariant::Original, XorVariant::Modified}) {
        for (int trial = 0; trial < 6; ++trial) {
            const XorModel model = XorModel::random_init(variant, rng.next());
            const std::size_t batch_start = rng.below(150);
            const std::span<const XorSample> batch(data.train.data() + batch_start, 10);

            const std::vector<double> grad = xor_batch_gradient(model, batch);
            std::vector<double> params = model.parameters();
            for (std::size_t j = 0; j < params.size(); ++j) {
                const double h = 1e-5;
                XorModel up = model, down = model;
                std::vector<double> pu = params, pd = params;
                pu[j] += h;
                pd[j] -= h;
                up.set_parameters(pu);
                down.set_parameters(pd);
                const double fd = (xor_batch_loss(up, batch) - xor_batch_loss(down, batch)) / (2.0 * h);
                CHECK(std::abs(grad[j] - fd) < 1e-6);
            }
        }
    }
}

TEST_CASE("training bookkeeping: history length and divergence-free run") {
    const XorDataset data = generate_xor_dataset(120, 9);  // 90/8/22 split
    TrainConfig cfg;
    cfg.batch_size = 25;
    cfg.epochs = 4;
    cfg.seed = 1;
    const XorModel init = XorModel::random_init(XorVariant::Original, 1);
    const TrainRun run = train_quantum(init, data, cfg);
    CHECK_FALSE(run.diverged);
    CHECK(run.history.size() == 4 * 4);  // ceil(90/25) = 4 batches per epoch
    CHECK(run.initial_params.size() == 3);
    for (const auto& rec : run.history) CHECK(rec.params.size() == 3);
}

TEST_CASE("training is deterministic and thread-count independent") {
    const XorDataset data = generate_xor_dataset(160, 11);
    TrainConfig cfg;
    cfg.batch_size = 20;
    cfg.epochs = 3;
    cfg.seed = 77;
    const XorModel init = XorModel::random_init(XorVariant::Original, 77);

    cfg.jobs = 1;
    const TrainRun a = train_quantum(init, data, cfg);
    cfg.jobs = 3;
    const TrainRun b = train_quantum(init, data, cfg);
    cfg.jobs = 8;
    const TrainRun c = train_quantum(init, data, cfg);

    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].loss == b.history[i].loss);
        CHECK(a.history[i].loss == c.history[i].loss);
        for (std::size_t j = 0; j < a.history[i].params.size(); ++j) {
            CHECK(a.history[i].params[j] == b.history[i].params[j]);
            CHECK(a.history[i].params[j] == c.history[i].params[j]);
        }
    }
}

TEST_CASE("shot-based training is seeded and reproducible") {
    const XorDataset data = generate_xor_dataset(80, 13);
    TrainConfig cfg;
    cfg.batch_size = 20;
    cfg.epochs = 2;
    cfg.seed = 5;
    cfg.shots = 251;
    const XorModel init = XorModel::random_init(XorVariant::Original, 5);
    const TrainRun a = train_quantum(init, data, cfg);
    cfg.jobs = 4;
    const TrainRun b = train_quantum(init, data, cfg);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) CHECK(a.history[i].loss == b.history[i].loss);
}

TEST_CASE("a full original-variant run fits the data") {
    const XorDataset data = generate_xor_dataset(1000, 21);
    TrainConfig cfg;
    cfg.seed = 2;
    const XorModel init = XorModel::random_init(XorVariant::Original, 2);
    const TrainRun run = train_quantum(init, data, cfg);

    CHECK_FALSE(run.diverged);
    CHECK(run.history.size() == 150 * 30);

    // loss trend: final epoch mean below first epoch mean
    double first = 0.0, last = 0.0;
    for (int b = 0; b < 30; ++b) {
        first += run.history[static_cast<std::size_t>(b)].loss;
        last += run.history[run.history.size() - 1 - static_cast<std::size_t>(b)].loss;
    }
    CHECK(last < first);
    CHECK(run.test_accuracy >= 0.95);
}

TEST_CASE("a full modified-variant run reproduces the reference parameters") {
    const XorDataset data = generate_xor_dataset(1000, 2024);
    TrainConfig cfg;
    cfg.seed = 1;
    const XorModel init = XorModel::random_init(XorVariant::Modified, 1);
    const TrainRun run = train_quantum(init, data, cfg);

    CHECK_FALSE(run.diverged);
    CHECK(run.test_accuracy == doctest::Approx(1.0));

    const XorModel canon = run.final_model.canonicalized();
    CHECK(mod_2pi_distance(canon.theta1, kPi) < 0.15);
    CHECK(mod_2pi_distance(canon.theta2, kPi) < 0.15);
    CHECK(mod_2pi_distance(canon.alpha1, 3.0 * kPi / 2.0) < 0.15);
    CHECK(mod_2pi_distance(canon.alpha2, 3.0 * kPi / 2.0) < 0.15);

    // validation accuracy holds 1.0 over the final 20% of batches
    const std::size_t tail_start = run.history.size() - run.history.size() / 5;
    for (std::size_t b = tail_start; b < run.history.size(); ++b)
        CHECK(run.history[b].val_accuracy == doctest::Approx(1.0));
}

TEST_CASE("the divergence guard aborts a run whose loss explodes") {
    // Near-corner samples give the exact solution a ~1e-6 starting loss; an
    // absurd step size then keeps every later epoch orders of magnitude above
    // it, so the 10x-for-5-epochs guard trips.
    XorDataset data;
    for (int i = 0; i < 40; ++i) {
        const double x1 = (i % 2) ? 0.99 : 0.01;
        const double x2 = (i % 4 < 2) ? 0.99 : 0.01;
        data.train.push_back({x1, x2, xor_label(x1, x2)});
    }
    data.validation.push_back({0.2, 0.2, 0});
    data.test.push_back({0.8, 0.8, 0});

    TrainConfig cfg;
    cfg.batch_size = 40;  // one batch per epoch
    cfg.learning_rate = 3000.0;
    cfg.epochs = 200;
    cfg.seed = 3;
    XorModel near_ideal = ideal_original();
    near_ideal.alpha1 = near_ideal.alpha2 = -kPi / 2.0 + 0.1;  // small loss, live gradient
    const TrainRun run = train_quantum(near_ideal, data, cfg);
    CHECK(run.diverged);
    CHECK(run.history.size() < 200);
}

TEST_CASE("report files are deterministic across runs and job counts") {
    const XorDataset data = generate_xor_dataset(120, 17);
    TrainConfig cfg;
    cfg.batch_size = 30;
    cfg.epochs = 2;
    cfg.seed = 99;
    const XorModel init = XorModel::random_init(XorVariant::Original, 99);

    const auto dir_a = std::filesystem::temp_directory_path() / "vqs_reports_a";
    const auto dir_b = std::filesystem::temp_directory_path() / "vqs_reports_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    cfg.jobs = 1;
    emit_reports(train_quantum(init, data, cfg), data, dir_a.string());
    cfg.jobs = 5;
    emit_reports(train_quantum(init, data, cfg), data, dir_b.string());

    for (const char* name : {"loss.csv", "val_accuracy.csv", "params.csv", "test_report.csv"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }

    // format contract: headers and row counts
    const std::string loss_csv = slurp(dir_a / "loss.csv");
    CHECK(loss_csv.rfind("batch,loss\n", 0) == 0);
    const std::string params_csv = slurp(dir_a / "params.csv");
    const std::size_t rows = static_cast<std::size_t>(std::count(params_csv.begin(), params_csv.end(), '\n'));
    CHECK(rows == 1 + 1 + 2 * 3);  // header + initial row + one row per batch (ceil(90/30) * 2 epochs)

    for (const char* name : {"loss.svg", "val_accuracy.svg", "params.svg", "test_report.svg"})
        CHECK(std::filesystem::exists(dir_a / name));

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}
