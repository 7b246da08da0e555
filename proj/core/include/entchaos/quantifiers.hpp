#pragma once

#include "entchaos/bloch.hpp"
#include "entchaos/kicked_top.hpp"
#include "entchaos/symplectic.hpp"

#include <cmath>
#include <vector>

namespace entchaos {

struct Propagator;

/// How to split the system: a fraction of the collective spins, or a set of
/// conjugate-pair indices of the composite phase space.
struct BipartitionSpec {
    enum class Kind { spin_fraction, subsystem_pairs };
    Kind kind = Kind::spin_fraction;
    double f_A = 0.5;              // spin_fraction: f_A in (0,1), f_B = 1 - f_A
    std::vector<int> pairs;        // subsystem_pairs: whole conjugate pairs
};

/// Second Renyi entropy of a reduced Gaussian state: (1/2) ln det(2 G_A).
double renyi2_entropy(const CorrelationMatrix& G_A);

/// Thermal-mode entropy S(nu); S(1) = 0 by continuity.
double entropy_of_symplectic_eigenvalue(double nu);

/// Von Neumann entropy as the sum of S(nu_i) over the symplectic eigenvalues
/// of 2 G_A. Eigenvalues in [1 - 1e-10, 1] are clamped to 1; smaller values
/// are rejected as unphysical.
double vn_entropy(const CorrelationMatrix& G_A);
double vn_entropy_from_nus(const std::vector<double>& nus);

/// One-mode closed form: S_A as a function of det G_A >= 1/4.
double vn_entropy_from_det(double det_GA);

/// Same quantity from ln(det G_A); safe when det G_A overflows a double.
double vn_entropy_from_logdet(double log_det_GA);

/// Determinant of the reduced correlation matrix for a spin bipartition with
/// fraction f_A: 1/4 + f_A (1 - f_A) n_exc.
double det_GA_spin(double f_A, double n_exc);

/// Largest-eigenvalue reading of the full correlation matrix, 4*max eig G,
/// reported as-is for composite systems.
double qfi_from_correlation(const CorrelationMatrix& G);

/// Fisher density of a collective spin (s = 1/2) from the excitation number:
/// 1 + 2n + 2 sqrt(n(n+1)).
double qfi_spin(double n_exc);

/// Squeezing parameter 1 + 2n - 2 sqrt(n(n+1)), evaluated through the
/// conjugate form 1/(1 + 2n + 2 sqrt(n(n+1))) to avoid the cancellation at
/// large n; identical algebraically, so qfi_spin * squeezing_spin = 1.
double squeezing_spin(double n_exc);

/// Spin-projection Fisher density for a composite system: the spin block of
/// G bounds the collective-spin variance, f_Q = 2 * max eig of the 2x2 spin
/// block (s = 1/2).
double qfi_spin_block(const CorrelationMatrix& G, int spin_pair);

/// Squeezing of the spin block: 2 * min eig.
double squeezing_spin_block(const CorrelationMatrix& G, int spin_pair);

/// Squared tangent response of the collective-spin projections: the
/// semiclassical square commutator c_{ab}(t) between axes a and b
/// (0 = x, 1 = y, 2 = z), evaluated in the transverse frames at times 0 and
/// t. Insensitive to the frame-angle branch and to the overall sign of U.
template <class Real>
Real square_commutator_frames(const Mat2<Real>& U, const BlochAnglesT<Real>& at0,
                              const BlochAnglesT<Real>& at_t, int axis_a, int axis_b) {
    const auto X0 = frame_x(at0), Y0 = frame_y(at0);
    const auto Xt = frame_x(at_t), Yt = frame_y(at_t);
    const Real inner = Xt[axis_a] * (U.qq * Y0[axis_b] - U.qp * X0[axis_b]) +
                       Yt[axis_a] * (U.pq * Y0[axis_b] - U.pp * X0[axis_b]);
    return inner * inner;
}

double square_commutator_semiclassical(const Propagator& U, const BlochAngles& at0,
                                       const BlochAngles& at_t, int axis_a, int axis_b);

/// Quantifier time series of a semiclassical run.
struct QuantifierSeries {
    std::vector<double> times;
    std::vector<double> S_vn;
    std::vector<double> S_renyi2;
    std::vector<double> f_Q;
    std::vector<double> xi2;
    std::vector<double> c_zz;     // empty when not applicable
    std::vector<double> f_Q_all;  // composite systems: all-quadrature reading
};

struct KickedTopFlucRun;
struct DickeTangentRun;

/// Closed-form quantifiers along a kicked-top fluctuation run for the given
/// spin fraction.
QuantifierSeries kicked_top_quantifiers(const KickedTopFlucRun& run, double f_A);

/// Atoms-cavity quantifiers along a Dicke tangent run (pair 0 = boson,
/// pair 1 = spin). The entropy uses the spin block; purity of the global
/// state makes the boson block equivalent.
QuantifierSeries dicke_quantifiers(const DickeTangentRun& run);

}  // namespace entchaos
