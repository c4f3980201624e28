#include "vqs/gradient.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <string>

#include "vqs/rng.hpp"

namespace vqs {

namespace {

bool is_shiftable(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ:
            return true;
        default:
            return false;
    }
}

double expectation_with_shift(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                              const HermitianObservable& obs, int op_index, double delta) {
    return expectation(detail::apply_with_shift(circuit, params, input, op_index, delta), obs);
}

// Gauss-Legendre nodes and weights on [0, 1].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Quadrature gauss_legendre_01(int n) {
    if (n < 1) throw std::invalid_argument("quadrature: node count must be >= 1");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)), gsl_integration_glfixed_table_free);
    if (!table) throw std::runtime_error("quadrature: table allocation failed");
    Quadrature q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &q.nodes[static_cast<std::size_t>(i)],
                                      &q.weights[static_cast<std::size_t>(i)], table.get());
    return q;
}

Complex state_expectation(const CMatrix& m, const std::vector<Complex>& psi) {
    const std::vector<Complex> applied = m.apply(psi);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * applied[i];
    return acc;
}

// U_V(phi) = exp(-i phi/2 V) = cos(phi/2) I - i sin(phi/2) V for V^2 = I.
CMatrix pauli_word_rotation(const CMatrix& v, double phi) {
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    return CMatrix::identity(v.rows()) * Complex(c, 0.0) + v * Complex(0.0, -s);
}

}  // namespace

GradientEstimate shift_gradient(const Circuit& circuit, std::span<const double> params, const StateVector& input,
                                const HermitianObservable& obs, double shift) {
    GradientEstimate est;
    est.method = GradientMethod::Shift;
    est.values.assign(static_cast<std::size_t>(circuit.num_params()), 0.0);
    est.evaluations = 0;

    for (std::size_t k = 0; k < circuit.ops().size(); ++k) {
        const GateOp& op = circuit.ops()[k];
        if (!op.param || !op.param->is_slot) continue;
        if (!is_shiftable(op.kind))
            throw UnsupportedGateError(std::string("shift_gradient: slot bound to ") + gate_kind_name(op.kind) +
                                       ", which has no Pauli generator; use stochastic_shift_gradient");
        const double up = expectation_with_shift(circuit, params, input, obs, static_cast<int>(k), +shift);
        const double down = expectation_with_shift(circuit, params, input, obs, static_cast<int>(k), -shift);
        est.values[static_cast<std::size_t>(op.param->slot_index)] += 0.5 * (up - down);
        est.evaluations += 2;
    }
    return est;
}

GradientEstimate finite_difference_gradient(const Circuit& circuit, std::span<const double> params,
                                            const StateVector& input, const HermitianObservable& obs, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_difference_gradient: h must be positive");
    GradientEstimate est;
    est.method = GradientMethod::FiniteDifference;
    est.values.resize(static_cast<std::size_t>(circuit.num_params()));
    est.evaluations = 0;

    std::vector<double> shifted(params.begin(), params.end());
    for (int j = 0; j < circuit.num_params(); ++j) {
        const double base = shifted[static_cast<std::size_t>(j)];
        shifted[static_cast<std::size_t>(j)] = base + h;
        const double up = exact_expectation(circuit, shifted, input, obs);
        shifted[static_cast<std::size_t>(j)] = base - h;
        const double down = exact_expectation(circuit, shifted, input, obs);
        shifted[static_cast<std::size_t>(j)] = base;
        est.values[static_cast<std::size_t>(j)] = (up - down) / (2.0 * h);
        est.evaluations += 2;
    }
    return est;
}

GeneratorPair GeneratorPair::make(CMatrix hamiltonian, CMatrix pauli_word, double theta) {
    if (hamiltonian.rows() != pauli_word.rows() || hamiltonian.cols() != pauli_word.cols())
        throw std::invalid_argument("GeneratorPair: H and V dimensions differ");
    if (!hamiltonian.is_hermitian(1e-12)) throw std::invalid_argument("GeneratorPair: H is not Hermitian");
    if (!pauli_word.is_hermitian(1e-12)) throw std::invalid_argument("GeneratorPair: V is not Hermitian");
    if (max_abs_diff(pauli_word * pauli_word, CMatrix::identity(pauli_word.rows())) > 1e-12)
        throw std::invalid_argument("GeneratorPair: V^2 != I");
    return GeneratorPair{std::move(hamiltonian), std::move(pauli_word), theta};
}

double generator_pair_loss(const GeneratorPair& gen, double a, const StateVector& input,
                           const HermitianObservable& obs) {
    const CMatrix g = gen.hamiltonian + gen.pauli_word * Complex(gen.theta, 0.0);
    const CMatrix u = expm_hermitian(g, Complex(0.0, -a));
    const std::vector<Complex> evolved = u.apply(input.amplitudes());
    const Complex val = state_expectation(obs.matrix(), evolved);
    return val.real();
}

double stochastic_shift_gradient(const GeneratorPair& gen, double a, const StateVector& input,
                                 const HermitianObservable& obs, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("stochastic_shift_gradient: samples must be >= 1");
    if (input.dim() != gen.hamiltonian.rows() || obs.matrix().rows() != gen.hamiltonian.rows())
        throw std::invalid_argument("stochastic_shift_gradient: dimension mismatch");

    const CMatrix g = gen.hamiltonian + gen.pauli_word * Complex(gen.theta, 0.0);
    const EighResult eig = eigh(g);
    const std::size_t dim = g.rows();

    // e^{c * ia * G} from the cached eigendecomposition.
    auto evolve = [&](double c) {
        CMatrix out(dim, dim);
        for (std::size_t k = 0; k < dim; ++k) {
            const Complex phase = std::exp(Complex(0.0, c * a * eig.values[k]));
            for (std::size_t i = 0; i < dim; ++i) {
                const Complex vik = eig.vectors(i, k) * phase;
                for (std::size_t j = 0; j < dim; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
            }
        }
        return out;
    };

    const CMatrix u_plus = pauli_word_rotation(gen.pauli_word, kPi / 2.0);
    const CMatrix u_minus = pauli_word_rotation(gen.pauli_word, -kPi / 2.0);

    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        Xoshiro256pp rng(derive_subseed(seed, static_cast<std::uint64_t>(i)));
        const double s = rng.uniform01();

        const CMatrix inner = evolve(s);                              // e^{s ia G}
        const CMatrix outer = evolve(1.0 - s);                        // e^{(1-s) ia G}
        const CMatrix core = inner * obs.matrix() * inner.dagger();   // e^{siaG} A e^{-siaG}
        const CMatrix plus = outer * (u_plus.dagger() * core * u_plus) * outer.dagger();
        const CMatrix minus = outer * (u_minus.dagger() * core * u_minus) * outer.dagger();

        const Complex term = state_expectation(plus, input.amplitudes()) -
                             state_expectation(minus, input.amplitudes());
        acc += term.real();
    }
    return a * acc / static_cast<double>(samples);
}

double verify_pauli_commutator(const CMatrix& sigma, const CMatrix& B) {
    if (!sigma.is_hermitian(1e-12) ||
        max_abs_diff(sigma * sigma, CMatrix::identity(sigma.rows())) > 1e-12)
        throw std::invalid_argument("verify_pauli_commutator: sigma must be a Pauli word");
    const CMatrix lhs = commutator(sigma, B);
    const CMatrix up = pauli_word_rotation(sigma, kPi / 2.0);
    const CMatrix down = pauli_word_rotation(sigma, -kPi / 2.0);
    const CMatrix rhs = (up.dagger() * B * up - down.dagger() * B * down) * Complex(0.0, -1.0);
    return max_abs_diff(lhs, rhs);
}

double verify_bch(const CMatrix& A_hermitian, const CMatrix& B, double lambda, int n_max) {
    if (n_max < 0) throw std::invalid_argument("verify_bch: n_max must be >= 0");
    if (std::abs(lambda) * max_abs(A_hermitian) > 1.0)
        throw std::invalid_argument("verify_bch: require |lambda| * max|A| <= 1 for series convergence");

    const CMatrix exp_plus = expm_hermitian(A_hermitian, Complex(lambda, 0.0));
    const CMatrix exp_minus = expm_hermitian(A_hermitian, Complex(-lambda, 0.0));
    const CMatrix lhs = exp_plus * B * exp_minus;

    CMatrix series = B;
    CMatrix nested = B;  // [A, .]^n B
    double factor = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        nested = commutator(A_hermitian, nested);
        factor *= lambda / static_cast<double>(n);
        series = series + nested * Complex(factor, 0.0);
    }
    return max_abs_diff(lhs, series);
}

double verify_exponential_derivative(const CMatrix& generator, double theta, int quadrature_nodes) {
    if (!generator.is_hermitian(1e-12))
        throw std::invalid_argument("verify_exponential_derivative: generator must be Hermitian");

    // Z(t) = -i t/2 G, so e^{c Z} = expm_hermitian(G, -i c theta / 2).
    auto exp_z = [&](double t, double c) { return expm_hermitian(generator, Complex(0.0, -c * t / 2.0)); };
    const CMatrix dz = generator * Complex(0.0, -0.5);

    const Quadrature q = gauss_legendre_01(quadrature_nodes);
    CMatrix integral(generator.rows(), generator.cols());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double s = q.nodes[i];
        integral = integral + (exp_z(theta, 1.0 - s) * dz * exp_z(theta, s)) * Complex(q.weights[i], 0.0);
    }

    constexpr double h = 1e-6;
    const CMatrix fd = (exp_z(theta + h, 1.0) - exp_z(theta - h, 1.0)) * Complex(1.0 / (2.0 * h), 0.0);
    return max_abs_diff(integral, fd);
}

BetaIdentityCheck verify_beta_identity(int k, int n, int quadrature_nodes) {
    if (k < 1 || n < 1) throw std::invalid_argument("verify_beta_identity: k and n must be >= 1");
    if (n + k - 1 > 20)
        throw std::invalid_argument("verify_beta_identity: n+k-1 > 20 overflows exact integer factorials");

    auto factorial = [](int m) {
        std::uint64_t f = 1;
        for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
    };
    const double closed = static_cast<double>(factorial(n - 1)) * static_cast<double>(factorial(k - 1)) /
                          static_cast<double>(factorial(n + k - 1));

    const Quadrature q = gauss_legendre_01(quadrature_nodes);
    double integral = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double s = q.nodes[i];
        integral += q.weights[i] * std::pow(1.0 - s, k - 1) * std::pow(s, n - 1);
    }
    return BetaIdentityCheck{closed, integral, std::abs(closed - integral)};
}

}  // namespace vqs
