#include "entchaos/dicke_ed.hpp"

#include "entchaos/quantifiers.hpp"
#include "entchaos/tangent.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace entchaos;

namespace {

std::vector<double> grid(double t_final, double dt) {
    std::vector<double> t;
    for (double x = 0.0; x <= t_final + 1e-9; x += dt) t.push_back(x);
    return t;
}

}  // namespace

TEST_CASE("decoupled spectrum is omega0 M + omega n") {
    const int N = 4, N_cut = 6;
    const DickeParams p{1.3, 0.7, 0.0};
    const auto H = dicke_hamiltonian(N, N_cut, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);

    std::vector<double> expected;
    for (int k = 0; k <= N; ++k)
        for (int n = 0; n < N_cut; ++n) expected.push_back(p.omega0 * (2.0 - k) + p.omega * n);
    std::sort(expected.begin(), expected.end());
    for (size_t i = 0; i < expected.size(); ++i)
        CHECK(es.eigenvalues()(i) == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("hamiltonian is symmetric") {
    const auto H = dicke_hamiltonian(20, 80, DickeParams{1.0, 1.0, 0.85});
    CHECK((H - H.transpose()).norm() < 1e-12);
}

TEST_CASE("normal-phase ground energy approaches the classical minimum") {
    const DickeParams p{1.0, 1.0, 0.3};  // below the critical coupling 0.5
    double prev_gap = 1e9;
    for (int N : {4, 8, 16}) {
        const auto H = dicke_hamiltonian(N, 24, p);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
        const double gap = std::abs(es.eigenvalues()(0) / N + 0.5 * p.omega0);
        CHECK(gap < 3.0 / N);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
}

TEST_CASE("memory guard rejects oversized problems") {
    CHECK_THROWS_AS(dicke_hamiltonian(200, 1600, DickeParams{}), std::length_error);
}

TEST_CASE("initial state: vacuum factor and displaced expectations") {
    const int N = 40, N_cut = 60;
    const auto vac = dicke_initial_state(0.9, 0.4, 0.0, 0.0, N, N_cut);
    // boson factor of |spin 0> block is the vacuum
    for (int n = 1; n < N_cut; ++n)
        CHECK(std::abs(vac(n)) < 1e-15);

    const double Q0 = 1.2, P0 = -0.3;
    const auto psi = dicke_initial_state(0.9, 0.4, Q0, P0, N, 8 * N);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-8));

    // <Q>/sqrt(N) via the boson ladder on the composite state
    const int cut = 8 * N;
    std::complex<double> b_mean = 0.0;
    for (int k = 0; k <= N; ++k)
        for (int n = 1; n < cut; ++n)
            b_mean += std::conj(psi(k * cut + n - 1)) * std::sqrt(static_cast<double>(n)) *
                      psi(k * cut + n);
    const double Q_mean = std::sqrt(2.0) * b_mean.real() / std::sqrt(static_cast<double>(N));
    const double P_mean = std::sqrt(2.0) * b_mean.imag() / std::sqrt(static_cast<double>(N));
    CHECK(Q_mean == doctest::Approx(Q0).epsilon(1e-8));
    CHECK(P_mean == doctest::Approx(P0).epsilon(1e-8).scale(1.0));

    // truncation tail at Delta = 8
    double tail = 0.0;
    for (int k = 0; k <= N; ++k)
        for (int n = cut - cut / 10; n < cut; ++n) tail += std::norm(psi(k * cut + n));
    CHECK(tail < 1e-8);

    CHECK_THROWS_AS(dicke_initial_state(0.9, 0.4, 6.0, 0.0, N, 40), std::domain_error);
}

TEST_CASE("uncoupled evolution keeps the product state pure") {
    const int N = 6, N_cut = 12;
    const DickeParams p{1.0, 1.0, 0.0};
    const auto H = dicke_hamiltonian(N, N_cut, p);
    const auto psi0 = dicke_initial_state(1.1, 0.6, 0.4, 0.0, N, N_cut);
    const auto ed = evolve_and_entropy_dicke(psi0, H, N, N_cut, grid(10.0, 0.5));
    CHECK(ed.max_norm_error < 1e-10);
    for (double S : ed.S_A) CHECK(std::abs(S) < 1e-8);
}

TEST_CASE("entropy is converged in the boson cutoff") {
    const int N = 10;
    const DickeParams p{1.0, 1.0, 0.85};
    const auto x0 = dicke_point_from_energy(3.0, BlochAngles{std::acos(0.1), 1.4}, p).state;

    std::vector<double> times = grid(6.0, 0.5);
    std::vector<double> S_small, S_big;
    for (int delta : {10, 20}) {
        const int cut = delta * N;
        const auto H = dicke_hamiltonian(N, cut, p);
        const auto psi0 = dicke_initial_state(x0.angles.theta, x0.angles.phi, x0.Q, x0.P, N, cut);
        const auto ed = evolve_and_entropy_dicke(psi0, H, N, cut, times);
        (delta == 10 ? S_small : S_big) = ed.S_A;
    }
    for (size_t i = 0; i < times.size(); ++i)
        CHECK(std::abs(S_small[i] - S_big[i]) < 1e-6);
}

TEST_CASE("chaotic entanglement growth approaches the semiclassical curve") {
    const DickeParams p{1.0, 1.0, 5.0};
    const auto x0 = dicke_point_from_energy(1.5, BlochAngles{std::acos(0.1), 1.4}, p).state;

    const double T = 2.5;  // inside the Ehrenfest window of N = 20
    const auto run = propagate_dicke_tangent(x0, p, T, 1e-12, 0.25);
    const auto sc = dicke_quantifiers(run);

    double prev_dev = 1e9;
    for (int N : {10, 20}) {
        const int cut = 6 * N;
        const auto H = dicke_hamiltonian(N, cut, p);
        const auto psi0 = dicke_initial_state(x0.angles.theta, x0.angles.phi, x0.Q, x0.P, N, cut);
        const auto ed = evolve_and_entropy_dicke(psi0, H, N, cut, run.traj.times);
        double dev = 0.0, scale = 0.0;
        for (size_t i = 0; i < ed.t.size(); ++i) {
            dev = std::max(dev, std::abs(ed.S_A[i] - sc.S_vn[i]));
            scale = std::max(scale, sc.S_vn[i]);
        }
        dev /= scale;
        CHECK(dev < prev_dev);
        prev_dev = dev;
    }
    CHECK(prev_dev < 0.30);  // N = 20 already close on this window
}
