#include "vqs/gates.hpp"

#include <cmath>

namespace vqs {

namespace {

GateMatrix make_1q(std::vector<Complex> entries) {
    return GateMatrix{1, CMatrix(2, 2, std::move(entries))};
}

GateMatrix make_2q(std::vector<Complex> entries) {
    return GateMatrix{2, CMatrix(4, 4, std::move(entries))};
}

constexpr Complex kOne{1.0, 0.0};
constexpr Complex kZero{0.0, 0.0};
constexpr Complex kI{0.0, 1.0};

double wrap_2pi(double angle) {
    double a = std::fmod(angle, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a = 0.0;
    return a;
}

}  // namespace

GateMatrix pauli_x() { return make_1q({kZero, kOne, kOne, kZero}); }

GateMatrix pauli_y() { return make_1q({kZero, -kI, kI, kZero}); }

GateMatrix pauli_z() { return make_1q({kOne, kZero, kZero, -kOne}); }

GateMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return make_1q({Complex(s, 0), Complex(s, 0), Complex(s, 0), Complex(-s, 0)});
}

GateMatrix phase_s() { return make_1q({kOne, kZero, kZero, kI}); }

GateMatrix t_gate() { return make_1q({kOne, kZero, kZero, std::exp(kI * (kPi / 4.0))}); }

GateMatrix rx(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return make_1q({Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0)});
}

GateMatrix ry(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return make_1q({Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0)});
}

GateMatrix rz(double theta) {
    const Complex lo = std::exp(-kI * (theta / 2.0));
    const Complex hi = std::exp(kI * (theta / 2.0));
    return make_1q({lo, kZero, kZero, hi});
}

GateMatrix cnot() {
    return make_2q({kOne, kZero, kZero, kZero,
                    kZero, kOne, kZero, kZero,
                    kZero, kZero, kZero, kOne,
                    kZero, kZero, kOne, kZero});
}

GateMatrix cz() {
    return make_2q({kOne, kZero, kZero, kZero,
                    kZero, kOne, kZero, kZero,
                    kZero, kZero, kOne, kZero,
                    kZero, kZero, kZero, -kOne});
}

GateMatrix cphase() {
    return make_2q({kOne, kZero, kZero, kZero,
                    kZero, kOne, kZero, kZero,
                    kZero, kZero, kOne, kZero,
                    kZero, kZero, kZero, kI});
}

GateMatrix swap_gate() {
    return make_2q({kOne, kZero, kZero, kZero,
                    kZero, kZero, kOne, kZero,
                    kZero, kOne, kZero, kZero,
                    kZero, kZero, kZero, kOne});
}

GateMatrix crx(double theta) { return controlled(rx(theta)); }
GateMatrix cry(double theta) { return controlled(ry(theta)); }
GateMatrix crz(double theta) { return controlled(rz(theta)); }

GateMatrix controlled(const GateMatrix& gate_1q) {
    if (gate_1q.arity != 1) throw std::invalid_argument("controlled: gate must act on one qubit");
    if (!gate_1q.matrix.is_unitary(1e-12)) throw std::invalid_argument("controlled: gate is not unitary");
    CMatrix m = CMatrix::identity(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) m(2 + i, 2 + j) = gate_1q.matrix(i, j);
    return GateMatrix{2, std::move(m)};
}

ZYZDecomposition zyz_decompose(const GateMatrix& u) {
    if (u.arity != 1) throw std::invalid_argument("zyz_decompose: gate must act on one qubit");
    if (!u.matrix.is_unitary(1e-10)) throw std::invalid_argument("zyz_decompose: matrix is not unitary");

    const Complex u00 = u.matrix(0, 0);
    const Complex u01 = u.matrix(0, 1);
    const Complex u10 = u.matrix(1, 0);
    const Complex u11 = u.matrix(1, 1);

    const double c = std::abs(u00);  // cos(gamma/2)
    const double s = std::abs(u10);  // sin(gamma/2)
    const double gamma = 2.0 * std::atan2(s, c);

    // Wrapping beta or delta by 2pi flips the sign of the corresponding Rz,
    // so alpha is always derived from the already-wrapped angles.
    constexpr double kDegenerate = 1e-12;
    double alpha, beta, delta;
    if (s < kDegenerate) {
        // Diagonal: beta and delta are not separately identifiable.
        beta = 0.0;
        delta = wrap_2pi(std::arg(u11) - std::arg(u00));
        alpha = std::arg(u00) + delta / 2.0;
    } else if (c < kDegenerate) {
        // Antidiagonal: same degeneracy with the roles swapped.
        delta = 0.0;
        beta = wrap_2pi(std::arg(u10) - std::arg(-u01));
        alpha = std::arg(u10) - beta / 2.0;
    } else {
        const double a00 = std::arg(u00);  // alpha - beta/2 - delta/2
        const double a10 = std::arg(u10);  // alpha + beta/2 - delta/2
        const double a01 = std::arg(-u01); // alpha - beta/2 + delta/2
        beta = wrap_2pi(a10 - a00);
        delta = wrap_2pi(a01 - a00);
        alpha = a00 + beta / 2.0 + delta / 2.0;
    }
    return ZYZDecomposition{wrap_2pi(alpha), beta, gamma, delta};
}

GateMatrix zyz_reconstruct(const ZYZDecomposition& d) {
    const Complex phase = std::exp(kI * d.alpha);
    CMatrix m = rz(d.beta).matrix * ry(d.gamma).matrix * rz(d.delta).matrix;
    return GateMatrix{1, m * phase};
}

std::vector<GateMatrix> universal_set() { return {cnot(), phase_s(), rx(kPi / 4.0)}; }

}  // namespace vqs
