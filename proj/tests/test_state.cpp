#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vqs/state.hpp"

using namespace vqs;

namespace {

StateVector two_amp(Complex a, Complex b) { return StateVector::from_amplitudes(1, {a, b}); }

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
const double kSqrt23 = std::sqrt(2.0 / 3.0);

}  // namespace

TEST_CASE("inner product on basis states") {
    const StateVector zero = StateVector::basis_state(1, 0);
    const StateVector one = StateVector::basis_state(1, 1);
    CHECK(inner_product(zero, zero).real() == doctest::Approx(1.0));
    CHECK(inner_product(zero, one).real() == doctest::Approx(0.0));
    CHECK(std::abs(inner_product(zero, one)) < 1e-15);
}

TEST_CASE("inner product accepts unnormalized states") {
    const StateVector psi = two_amp({1, 0}, {1, 0});
    CHECK(inner_product(psi, psi).real() == doctest::Approx(2.0));
}

TEST_CASE("inner product rejects dimension mismatch") {
    const StateVector a = StateVector::basis_state(1, 0);
    const StateVector b = StateVector::basis_state(2, 0);
    CHECK_THROWS_AS(inner_product(a, b), std::invalid_argument);
}

TEST_CASE("measurement probabilities of a lopsided superposition") {
    const StateVector psi = two_amp({kInvSqrt3, 0}, {kSqrt23, 0});
    const StateVector zero = StateVector::basis_state(1, 0);
    const StateVector one = StateVector::basis_state(1, 1);
    CHECK(probability_of(psi, zero) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(probability_of(psi, one) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(probability_of(zero, zero) == doctest::Approx(1.0));
}

TEST_CASE("probability_of rejects unnormalized input") {
    const StateVector bad = two_amp({1, 0}, {1, 0});
    const StateVector zero = StateVector::basis_state(1, 0);
    CHECK_THROWS_AS(probability_of(bad, zero), std::invalid_argument);
}

TEST_CASE("Z expectation values") {
    const HermitianObservable z = HermitianObservable::pauli_z_on(1, 0);
    CHECK(expectation(StateVector::basis_state(1, 0), z) == doctest::Approx(1.0));
    const StateVector lopsided = two_amp({kInvSqrt3, 0}, {kSqrt23, 0});
    CHECK(expectation(lopsided, z) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(expectation(two_amp({s, 0}, {s, 0}), z) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("observable construction rejects non-Hermitian matrices") {
    CMatrix m(2, 2);
    m(0, 1) = Complex(1.0, 0.0);  // m(1,0) stays 0
    CHECK_THROWS_AS(HermitianObservable::from_matrix(1, m), std::invalid_argument);
}

TEST_CASE("tensor product ordering puts the first factor leftmost") {
    const StateVector zero = StateVector::basis_state(1, 0);
    const StateVector one = StateVector::basis_state(1, 1);

    const StateVector zz = tensor_product(zero, zero);
    CHECK(std::abs(zz.amplitude(0) - Complex(1, 0)) < 1e-15);

    const StateVector oz = tensor_product(one, zero);  // |10> -> index 2
    CHECK(std::abs(oz.amplitude(2) - Complex(1, 0)) < 1e-15);

    const double s = 1.0 / std::sqrt(2.0);
    const StateVector plus = two_amp({s, 0}, {s, 0});
    const StateVector pz = tensor_product(plus, zero);
    CHECK(pz.amplitude(0).real() == doctest::Approx(s));
    CHECK(pz.amplitude(2).real() == doctest::Approx(s));
    CHECK(std::abs(pz.amplitude(1)) < 1e-15);
    CHECK(std::abs(pz.amplitude(3)) < 1e-15);
}

TEST_CASE("measuring one qubit of a Bell pair collapses the other") {
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector bell = StateVector::from_amplitudes(2, {{s, 0}, {0, 0}, {0, 0}, {s, 0}});
    const auto [zero_branch, one_branch] = measure_qubit(bell, 0);

    CHECK(zero_branch.eigenvalue == doctest::Approx(1.0));
    CHECK(zero_branch.probability == doctest::Approx(0.5));
    REQUIRE(zero_branch.post_state.has_value());
    CHECK(std::abs(zero_branch.post_state->amplitude(0) - Complex(1, 0)) < 1e-12);

    CHECK(one_branch.probability == doctest::Approx(0.5));
    REQUIRE(one_branch.post_state.has_value());
    CHECK(std::abs(one_branch.post_state->amplitude(3) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("measuring a basis state is deterministic and flags the dead branch") {
    const StateVector ten = StateVector::basis_state(2, 2);  // |10>
    const auto [zero_branch, one_branch] = measure_qubit(ten, 0);
    CHECK(one_branch.probability == doctest::Approx(1.0));
    REQUIRE(one_branch.post_state.has_value());
    CHECK(std::abs(one_branch.post_state->amplitude(2) - Complex(1, 0)) < 1e-12);
    CHECK(zero_branch.probability == doctest::Approx(0.0));
    CHECK_FALSE(zero_branch.post_state.has_value());
}

TEST_CASE("measuring an untouched qubit of a product state leaves it unchanged") {
    Xoshiro256pp rng(7);
    const double a = rng.uniform01(), b = std::sqrt(1.0 - a * a);
    const StateVector psi = StateVector::from_amplitudes(2, {{a, 0}, {b, 0}, {0, 0}, {0, 0}});
    const auto [zero_branch, one_branch] = measure_qubit(psi, 0);
    CHECK(zero_branch.probability == doctest::Approx(1.0));
    REQUIRE(zero_branch.post_state.has_value());
    CHECK(zero_branch.post_state->amplitude(0).real() == doctest::Approx(a));
    CHECK(zero_branch.post_state->amplitude(1).real() == doctest::Approx(b));
    CHECK_FALSE(one_branch.post_state.has_value());
}

TEST_CASE("separability of two-qubit states") {
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector bell = StateVector::from_amplitudes(2, {{s, 0}, {0, 0}, {0, 0}, {s, 0}});
    CHECK_FALSE(is_separable_2q(bell));

    Xoshiro256pp rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Complex alpha(rng.normal(), rng.normal());
        const Complex beta(rng.normal(), rng.normal());
        const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
        // alpha |01> + beta |00> is a product state for any coefficients.
        const StateVector product =
            StateVector::from_amplitudes(2, {beta / norm, alpha / norm, {0, 0}, {0, 0}});
        CHECK(is_separable_2q(product));
    }
    CHECK(is_separable_2q(StateVector::basis_state(2, 2)));
}

TEST_CASE("property: conjugate symmetry of the inner product") {
    Xoshiro256pp rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const StateVector a = testutil::random_state(n, rng);
        const StateVector b = testutil::random_state(n, rng);
        const Complex ab = inner_product(a, b);
        const Complex ba = inner_product(b, a);
        CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
    }
}

TEST_CASE("property: self-overlap of normalized states is 1") {
    Xoshiro256pp rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const StateVector s = testutil::random_state(1 + static_cast<int>(rng.below(5)), rng);
        CHECK(probability_of(s, s) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("property: measurement branch probabilities sum to 1") {
    Xoshiro256pp rng(19);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const StateVector s = testutil::random_state(n, rng);
        const int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const auto [zero_branch, one_branch] = measure_qubit(s, q);
        CHECK(std::abs(zero_branch.probability + one_branch.probability - 1.0) < 1e-10);
        if (zero_branch.post_state) CHECK(zero_branch.post_state->is_normalized());
        if (one_branch.post_state) CHECK(one_branch.post_state->is_normalized());
    }
}

TEST_CASE("property: expectation of random Hermitian observables is real") {
    Xoshiro256pp rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const auto obs = HermitianObservable::from_matrix(n, testutil::random_hermitian(std::size_t{1} << n, rng));
        const StateVector s = testutil::random_state(n, rng);
        CHECK(std::isfinite(expectation(s, obs)));  // would throw on imaginary residue
    }
}

TEST_CASE("property: Hermitian observables have real eigenvalues") {
    Xoshiro256pp rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix h = testutil::random_hermitian(4, rng);
        const EighResult eig = eigh(h);  // eigh itself asserts Hermiticity
        CMatrix reconstructed(4, 4);
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    reconstructed(i, j) += eig.vectors(i, k) * eig.values[k] * std::conj(eig.vectors(j, k));
        CHECK(max_abs_diff(reconstructed, h) < 1e-10);
    }
}

TEST_CASE("state construction rejects bad input") {
    CHECK_THROWS_AS(StateVector::from_amplitudes(2, {{1, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::from_amplitudes(1, {{std::nan(""), 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector::basis_state(1, 5), std::invalid_argument);
}
