#include "entchaos/spin_ops.hpp"

#include "entchaos/bloch.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

using namespace entchaos;

TEST_CASE("spin-1/2 reduces to half the Pauli matrices") {
    const auto ops = collective_spin_matrices(1);
    CHECK(ops.dimension == 2);
    CHECK(ops.sx(0, 1) == doctest::Approx(0.5));
    CHECK(ops.sx(1, 0) == doctest::Approx(0.5));
    CHECK(ops.sy(0, 1).imag() == doctest::Approx(-0.5));
    CHECK(ops.sy(1, 0).imag() == doctest::Approx(0.5));
    CHECK(ops.sz(0, 0) == doctest::Approx(0.5));
    CHECK(ops.sz(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("commutator and Casimir at N = 10") {
    const auto ops = collective_spin_matrices(10);
    const MatrixXcd sx = ops.sx.cast<std::complex<double>>();
    const MatrixXcd sz = ops.sz.cast<std::complex<double>>();
    const MatrixXcd comm = sx * ops.sy - ops.sy * sx;
    CHECK((comm - std::complex<double>(0, 1) * sz).norm() < 1e-12);

    const double S = 5.0;
    const MatrixXcd casimir = sx * sx + ops.sy * ops.sy + sz * sz;
    CHECK((casimir - S * (S + 1.0) * MatrixXcd::Identity(11, 11)).norm() < 1e-11);
}

TEST_CASE("sz eigenvalues at N = 4") {
    const auto ops = collective_spin_matrices(4);
    for (int k = 0; k <= 4; ++k) CHECK(ops.sz(k, k) == doctest::Approx(2.0 - k));
}

TEST_CASE("ladder application agrees with the dense matrices") {
    const int N = 12;
    const auto ops = collective_spin_matrices(N);
    VectorXcd v = VectorXcd::Random(N + 1);
    v.normalize();
    CHECK((apply_sx(N, v) - ops.sx.cast<std::complex<double>>() * v).norm() < 1e-13);
    CHECK((apply_sy(N, v) - ops.sy * v).norm() < 1e-13);
    CHECK((apply_sz(N, v) - ops.sz.cast<std::complex<double>>() * v).norm() < 1e-13);
}

TEST_CASE("coherent state at the pole") {
    const auto psi = spin_coherent_state(20, 0.0, 0.0);
    CHECK(std::abs(psi(0)) == doctest::Approx(1.0));
    CHECK(psi.segment(1, 20).norm() == doctest::Approx(0.0));
}

TEST_CASE("coherent state points along the requested direction") {
    const int N = 50;
    const double theta0 = 1.1, phi0 = 2.3;
    const auto psi = spin_coherent_state(N, theta0, phi0);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));

    const auto z = bloch_vector(BlochAnglesT<double>{theta0, phi0});
    const double S = 0.5 * N;
    CHECK(psi.dot(apply_sx(N, psi)).real() / S == doctest::Approx(z[0]).epsilon(1e-10));
    CHECK(psi.dot(apply_sy(N, psi)).real() / S == doctest::Approx(z[1]).epsilon(1e-10));
    CHECK(psi.dot(apply_sz(N, psi)).real() / S == doctest::Approx(z[2]).epsilon(1e-10));
}

TEST_CASE("coherent state equals the rotation-operator construction") {
    const int N = 6;
    const double theta0 = 0.8, phi0 = 1.9;
    const auto ops = collective_spin_matrices(N);

    VectorXcd start = VectorXcd::Zero(N + 1);
    start(0) = 1.0;  // |S, S>
    const MatrixXcd rot_y = (std::complex<double>(0, -theta0) * ops.sy).exp();
    const MatrixXcd rot_z =
        (std::complex<double>(0, -phi0) * ops.sz.cast<std::complex<double>>()).exp();
    const VectorXcd oracle = rot_z * (rot_y * start);

    const auto psi = spin_coherent_state(N, theta0, phi0);
    // equal up to a global phase; the overlap modulus decides
    CHECK(std::abs(oracle.dot(psi)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent transverse variances are N/4") {
    const int N = 40;
    const auto psi = spin_coherent_state(N, 0.0, 0.0);  // along z
    const auto cov = spin_covariance(N, psi);
    CHECK(cov(0, 0) == doctest::Approx(N / 4.0).epsilon(1e-10));
    CHECK(cov(1, 1) == doctest::Approx(N / 4.0).epsilon(1e-10));
    CHECK(cov(2, 2) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("fisher density: coherent, GHZ-like, covariance symmetry") {
    const int N = 4;
    CHECK(qfi_exact(spin_coherent_state(N, 0.7, 0.2), N) == doctest::Approx(1.0).epsilon(1e-10));

    VectorXcd ghz = VectorXcd::Zero(N + 1);
    ghz(0) = ghz(N) = 1.0 / std::sqrt(2.0);  // (|S,S> + |S,-S>)/sqrt(2)
    CHECK(qfi_exact(ghz, N) == doctest::Approx(static_cast<double>(N)).epsilon(1e-12));

    const auto cov = spin_covariance(12, spin_coherent_state(12, 1.0, 0.3));
    CHECK((cov - cov.transpose()).norm() < 1e-12);
}
