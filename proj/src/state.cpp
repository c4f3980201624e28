#include "vqs/state.hpp"

#include <cmath>
#include <string>

namespace vqs {

namespace {

std::size_t dim_for(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) throw std::invalid_argument("StateVector: num_qubits out of range");
    return std::size_t{1} << num_qubits;
}

void require_same_width(const StateVector& a, const StateVector& b, const char* what) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument(std::string(what) + ": qubit count mismatch");
}

void require_normalized(const StateVector& s, const char* what) {
    if (!s.is_normalized()) throw std::invalid_argument(std::string(what) + ": state is not normalized");
}

}  // namespace

StateVector::StateVector(int num_qubits)
    : num_qubits_(num_qubits), amplitudes_(dim_for(num_qubits), Complex(0.0, 0.0)) {
    amplitudes_[0] = Complex(1.0, 0.0);
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<Complex> amplitudes) {
    if (amplitudes.size() != dim_for(num_qubits))
        throw std::invalid_argument("StateVector: amplitude count must be 2^num_qubits");
    for (const Complex& a : amplitudes)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("StateVector: non-finite amplitude");
    return StateVector(num_qubits, std::move(amplitudes));
}

StateVector StateVector::basis_state(int num_qubits, std::size_t index) {
    if (index >= dim_for(num_qubits)) throw std::invalid_argument("StateVector: basis index out of range");
    std::vector<Complex> amps(dim_for(num_qubits), Complex(0.0, 0.0));
    amps[index] = Complex(1.0, 0.0);
    return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const Complex& a : amplitudes_) s += std::norm(a);
    return s;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) < tol; }

StateVector StateVector::normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n < 1e-300) throw std::invalid_argument("StateVector: cannot normalize the zero vector");
    std::vector<Complex> amps = amplitudes_;
    for (Complex& a : amps) a /= n;
    return StateVector(num_qubits_, std::move(amps));
}

HermitianObservable HermitianObservable::from_matrix(int num_qubits, CMatrix matrix, double tol) {
    if (matrix.rows() != dim_for(num_qubits) || matrix.cols() != dim_for(num_qubits))
        throw std::invalid_argument("HermitianObservable: matrix dimension must be 2^num_qubits");
    if (!matrix.is_hermitian(tol))
        throw std::invalid_argument("HermitianObservable: matrix is not Hermitian");
    return HermitianObservable(num_qubits, std::move(matrix));
}

HermitianObservable HermitianObservable::pauli_z_on(int num_qubits, int qubit) {
    const std::size_t dim = dim_for(num_qubits);
    if (qubit < 0 || qubit >= num_qubits) throw std::invalid_argument("pauli_z_on: qubit out of range");
    CMatrix m(dim, dim);
    const std::size_t mask = std::size_t{1} << (num_qubits - 1 - qubit);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = (i & mask) ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
    return HermitianObservable(num_qubits, std::move(m));
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
    require_same_width(bra, ket, "inner_product");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < bra.dim(); ++i) acc += std::conj(bra.amplitudes()[i]) * ket.amplitudes()[i];
    return acc;
}

double probability_of(const StateVector& state, const StateVector& target) {
    require_same_width(state, target, "probability_of");
    require_normalized(state, "probability_of");
    require_normalized(target, "probability_of");
    return std::norm(inner_product(target, state));
}

double expectation(const StateVector& state, const HermitianObservable& obs) {
    if (state.num_qubits() != obs.num_qubits())
        throw std::invalid_argument("expectation: dimension mismatch");
    require_normalized(state, "expectation");
    const std::vector<Complex> applied = obs.matrix().apply(state.amplitudes());
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < applied.size(); ++i) acc += std::conj(state.amplitudes()[i]) * applied[i];
    if (std::abs(acc.imag()) >= 1e-10)
        throw std::runtime_error("expectation: imaginary residual exceeds tolerance");
    return acc.real();
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    require_normalized(a, "tensor_product");
    require_normalized(b, "tensor_product");
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
    return StateVector::from_amplitudes(a.num_qubits() + b.num_qubits(), std::move(amps));
}

std::pair<MeasurementOutcome, MeasurementOutcome> measure_qubit(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) throw std::invalid_argument("measure_qubit: qubit out of range");
    require_normalized(state, "measure_qubit");

    const std::size_t mask = std::size_t{1} << (state.num_qubits() - 1 - qubit);
    double p0 = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if (!(i & mask)) p0 += std::norm(state.amplitudes()[i]);
    const double p1 = 1.0 - p0;

    constexpr double kDegenerate = 1e-14;
    auto branch = [&](bool keep_bit_one, double prob) {
        MeasurementOutcome out{keep_bit_one ? -1.0 : +1.0, prob, std::nullopt};
        if (prob < kDegenerate) return out;
        const double scale = 1.0 / std::sqrt(prob);
        std::vector<Complex> amps(state.dim(), Complex(0.0, 0.0));
        for (std::size_t i = 0; i < state.dim(); ++i)
            if (static_cast<bool>(i & mask) == keep_bit_one) amps[i] = state.amplitudes()[i] * scale;
        out.post_state = StateVector::from_amplitudes(state.num_qubits(), std::move(amps));
        return out;
    };
    return {branch(false, p0), branch(true, p1)};
}

bool is_separable_2q(const StateVector& state, double tol) {
    if (state.num_qubits() != 2) throw std::invalid_argument("is_separable_2q: state must have 2 qubits");
    // Amplitude matrix M with M[q0][q1] = amp(|q0 q1>); rank 1 iff the
    // smaller singular value vanishes.
    const auto& a = state.amplitudes();
    const double t = std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3]);
    const Complex det = a[0] * a[3] - a[1] * a[2];
    const double disc = std::max(0.0, t * t - 4.0 * std::norm(det));
    const double smin_sq = 0.5 * (t - std::sqrt(disc));
    return std::sqrt(std::max(0.0, smin_sq)) < tol;
}

}  // namespace vqs
