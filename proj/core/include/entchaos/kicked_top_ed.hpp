#pragma once

#include "entchaos/kicked_top.hpp"
#include "entchaos/spin_ops.hpp"

#include <vector>

namespace entchaos {

/// Dense one-period evolution operator
/// U = exp(-i beta/(2 N s) Sz^2) exp(-i alpha Sx); unitary to solver
/// accuracy. The torsion factor is diagonal, the precession factor comes
/// from the eigendecomposition of Sx.
MatrixXcd kicked_top_floquet(int N, double alpha, double beta, double s = 0.5);

/// Reduced density matrix of N_A spins of a symmetric-sector state: the
/// |S,M> amplitudes are split over |S_A, M_A> x |S_B, M_B> with
/// binomial-weight coefficients and subsystem B is traced out. Block
/// diagonal in M_A, size (N_A+1) x (N_A+1).
MatrixXcd spin_bipartition_rdm(const VectorXcd& state, int N, int N_A);

/// Von Neumann entropy of the N_A-spin reduction, computed from the singular
/// values of the amplitude split; eigenvalues in [-1e-12, 0] count as zero.
double spin_bipartition_entropy(const VectorXcd& state, int N, int N_A);

/// Square commutator -(1/(Ns))^2 <[Sz(t), Sz]^2> in the given initial state,
/// via forward and backward application of the one-period operator. This is
/// the normalization whose large-N limit is the squared tangent-map element.
double square_commutator_exact(const VectorXcd& psi0, const MatrixXcd& U, int t);

struct KickedTopEdSeries {
    std::vector<double> t;
    std::vector<double> S_A;
    std::vector<double> f_Q;
    std::vector<double> c_zz;
    double max_norm_error = 0.0;
};

/// Stroboscopic kicked-top quantifiers at sizes ruled by the Floquet matrix.
/// The square commutator costs O(t) matrix applications per sample and can
/// be disabled for long runs.
KickedTopEdSeries run_kicked_top_ed(int N, const KickedTopParams& p, double theta0, double phi0,
                                    int n_kicks, int N_A, bool with_otoc = true);

}  // namespace entchaos
