#include "entchaos/lyapunov.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace entchaos;

TEST_CASE("gram-schmidt hand cases") {
    Eigen::MatrixXd ortho(2, 2);
    ortho << 1, 0, 0, 1;
    auto [Q1, a1] = gram_schmidt(ortho);
    CHECK((Q1 - ortho).norm() == 0.0);
    CHECK(a1[0] == 1.0);
    CHECK(a1[1] == 1.0);

    Eigen::MatrixXd v(2, 2);
    v << 2, 1, 0, 1;  // columns (2,0), (1,1)
    auto [Q2, a2] = gram_schmidt(v);
    CHECK(Q2(0, 0) == doctest::Approx(1.0));
    CHECK(Q2(1, 0) == doctest::Approx(0.0));
    CHECK(Q2(0, 1) == doctest::Approx(0.0));
    CHECK(Q2(1, 1) == doctest::Approx(1.0));
    CHECK(a2[0] == doctest::Approx(2.0));
    CHECK(a2[1] == doctest::Approx(1.0));

    Eigen::MatrixXd r = Eigen::MatrixXd::Random(4, 4);
    auto [Q3, a3] = gram_schmidt(r);
    CHECK((Q3.transpose() * Q3 - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);

    Eigen::MatrixXd dep(3, 2);
    dep.col(0) = Eigen::Vector3d(1, 2, 3);
    dep.col(1) = 2.0 * dep.col(0);
    CHECK_THROWS(gram_schmidt(dep));
}

TEST_CASE("isometric kicked top has exactly zero exponents") {
    KickedTopTangentSystem sys(BlochAngles{1.1, 0.4}, KickedTopParams{0.9, 0.0});
    const auto series = benettin_spectrum(sys, 2, 5.0, 200, 42);
    for (const auto& lam : series.exponents) {
        CHECK(std::abs(lam[0]) < 1e-12);
        CHECK(std::abs(lam[1]) < 1e-12);
    }
}

TEST_CASE("chaotic kicked top reproduces the known maximal exponent") {
    KickedTopTangentSystem sys(BlochAngles{M_PI / 4, 0.0}, KickedTopParams{M_PI / 2, 8.0});
    const auto series = benettin_spectrum(sys, 2, 10.0, 2000, 1234);  // r = 2e4 kicks
    const auto est = lyapunov_estimate(series);
    CHECK(est.lambda[0] == doctest::Approx(1.12).epsilon(0.06 / 1.12));

    // conjugate pairing of the Hamiltonian map
    CHECK(std::abs(est.lambda[0] + est.lambda[1]) < 2.0 * (est.sigma[0] + est.sigma[1]) + 1e-3);

    // Kolmogorov-Sinai rate equals the positive exponent for one degree of freedom
    CHECK(ks_rate(est.lambda, est.sigma) == doctest::Approx(est.lambda[0]));
}

TEST_CASE("independence from the renormalization interval and the seed") {
    KickedTopTangentSystem a(BlochAngles{M_PI / 4, 0.0}, KickedTopParams{M_PI / 2, 8.0});
    KickedTopTangentSystem b(BlochAngles{M_PI / 4, 0.0}, KickedTopParams{M_PI / 2, 8.0});
    KickedTopTangentSystem c(BlochAngles{M_PI / 4, 0.0}, KickedTopParams{M_PI / 2, 8.0});
    const auto ea = lyapunov_estimate(benettin_spectrum(a, 1, 10.0, 2000, 7));
    const auto eb = lyapunov_estimate(benettin_spectrum(b, 1, 20.0, 1000, 7));
    const auto ec = lyapunov_estimate(benettin_spectrum(c, 1, 10.0, 2000, 99));
    CHECK(std::abs(ea.lambda[0] - eb.lambda[0]) < ea.sigma[0] + eb.sigma[0] + 0.02);
    CHECK(std::abs(ea.lambda[0] - ec.lambda[0]) < 2.0 * (ea.sigma[0] + ec.sigma[0]) + 0.02);
}

TEST_CASE("volume identity on a short run") {
    // sum of the first K exponents = (1/r) ln of the K-volume growth; the
    // run must stay short enough that the unrenormalized frame still spans
    // the volume within double precision
    const KickedTopParams p{M_PI / 2, 8.0};
    const int kicks = 6;
    KickedTopTangentSystem sys(BlochAngles{M_PI / 4, 0.0}, p);
    const auto series = benettin_spectrum(sys, 2, 1.0, kicks, 5);
    const double sum_benettin = series.exponents.back()[0] + series.exponents.back()[1];

    // direct evolution of the same initial frame, one orthonormalization at the end
    std::mt19937_64 rng(5);
    auto uniform = [&rng]() { return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0; };
    Eigen::MatrixXd W(2, 2);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) W(i, j) = uniform();
    W = gram_schmidt(W).first;
    KickedTopTangentSystem direct(BlochAngles{M_PI / 4, 0.0}, p);
    direct.advance(kicks, W);
    const auto alpha = gram_schmidt(W).second;
    const double log_vol = std::log(alpha[0]) + std::log(alpha[1]);
    CHECK(sum_benettin == doctest::Approx(log_vol / kicks).epsilon(1e-7));
}

TEST_CASE("dicke spectrum: chaotic value, zero exponent, pairing") {
    const DickeParams p{1.0, 1.0, 5.0};
    const auto x0 = dicke_point_from_energy(1.5, BlochAngles{std::acos(0.1), 1.4}, p).state;
    DickeTangentSystem sys(x0, p, 1e-12);
    const auto series = benettin_spectrum(sys, 4, 0.5, 3000, 21);  // r = 1500
    const auto est = lyapunov_estimate(series);

    CHECK(est.lambda[0] == doctest::Approx(0.7).epsilon(0.15));     // tighter band in acceptance
    CHECK(std::abs(est.lambda[1]) < 0.02);                          // flow direction
    CHECK(std::abs(est.lambda[0] + est.lambda[3]) < 0.05);          // conjugate pairing
    CHECK(ks_rate(est.lambda, est.sigma) == doctest::Approx(est.lambda[0]).epsilon(0.05));
}

TEST_CASE("estimate bookkeeping") {
    LyapunovSeries series;
    series.K = 1;
    series.s = 1.0;
    for (int i = 1; i <= 2000; ++i) {
        series.r.push_back(i);
        series.exponents.push_back({0.25});
    }
    const auto est = lyapunov_estimate(series);
    CHECK(est.lambda[0] == doctest::Approx(0.25));
    CHECK(est.sigma[0] == doctest::Approx(0.0));

    LyapunovSeries shallow = series;
    shallow.r.resize(100);
    shallow.exponents.resize(100);
    CHECK_THROWS(lyapunov_estimate(shallow));

    CHECK(ks_rate({0.0, 0.0}, {0.0, 0.0}) == 0.0);
    CHECK(ks_rate({0.7, 0.0, 0.0, -0.7}, {0.01, 0.01, 0.01, 0.01}) == doctest::Approx(0.7));
}
