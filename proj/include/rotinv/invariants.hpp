#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rotinv/cpmap.hpp"
#include "rotinv/kernels.hpp"
#include "rotinv/rn.hpp"

namespace rotinv {

inline constexpr double kDefaultRankTol = 1e-8;

/// Finite section of right multiplication by d_T on the monomial basis
/// {e_g : |g|_1 <= cutoff} of L^2(tau2); entry (g, h) = tau2(e_g^* e_h d_T).
struct TruncatedOperator {
  std::vector<Index4> basis;
  Eigen::MatrixXcd matrix;
  int cutoff = 0;
  /// Position of xi_0 in `basis`.
  Eigen::Index origin = 0;
};

/// Basis of the l1 ball with the origin located.
TruncatedOperator truncated_basis(int cutoff);

/// Needs D.k_radius() >= 2 * cutoff. Throws WindowTooSmall otherwise.
TruncatedOperator build_matrix(const RnDerivative& D, int cutoff, Exec exec = Exec::Parallel);

/// Wraps an arbitrary square matrix over the l1 ball of the given cutoff.
TruncatedOperator wrap_matrix(Eigen::MatrixXcd m, int cutoff);

/// Spectral data of the Hermitianized matrix seen from xi_0: eigenvalues of the
/// block containing xi_0 (coupled through structurally nonzero entries) and
/// |<v, xi_0>|^2 for each eigenvector v.
struct OriginSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd weights;
  double symmetrization_residual = 0.0;
  Eigen::Index block_size = 0;
};

/// Throws NotHermitian when max |M - M^*| / 2 exceeds 1e-6.
OriginSpectrum origin_spectrum(const TruncatedOperator& op);

/// <xi_0, exp(-t op) xi_0> for each t; eigenvalues in (-1e-8, 0) count as 0.
std::vector<double> heat_trace(const TruncatedOperator& op, const std::vector<double>& ts);
std::vector<double> heat_trace(const OriginSpectrum& spec, const std::vector<double>& ts);

/// <xi_0, P xi_0>, P the spectral projection onto eigenvalues > rank_tol.
double projection_trace_spectral(const TruncatedOperator& op, double rank_tol = kDefaultRankTol);
double projection_trace_spectral(const OriginSpectrum& spec, double rank_tol = kDefaultRankTol);

struct LsqResult {
  /// 1 - min_b |xi_0 - D_T b xi_0|^2.
  double value = 0.0;
  Eigen::Index rank = 0;
  Eigen::Index size = 0;
  bool rank_deficient = false;
};

/// Least-squares route straight from psi_T. On the l1 ball, A = [psi_T(e_c^* e_b)]
/// is the compression of D_T, the sup over unit c becomes the norm of the
/// truncated residual, and the value is 1 - min_beta |delta_0 - A beta|^2. A is
/// factored by a complete orthogonal decomposition with pivots below rank_tol
/// treated as zero; deficiency is reported, not fatal. Throws SingularSystem
/// only if the solve produces non-finite numbers.
LsqResult projection_trace_lsq(const CpMap& T, int cutoff, double rank_tol = kDefaultRankTol,
                               Exec exec = Exec::Parallel);

struct InvariantSet {
  std::vector<double> heat;
  double projection_spectral = 0.0;
  double projection_lsq = 0.0;
  LsqResult lsq;
  double symmetrization_residual = 0.0;
};

/// Everything for one map at one cutoff.
InvariantSet compute_invariants(const CpMap& T, const std::vector<double>& ts, int cutoff,
                                double rank_tol = kDefaultRankTol, Exec exec = Exec::Parallel);

struct InvarianceReport {
  InvariantSet original;
  InvariantSet conjugated;
  double max_deviation = 0.0;
};

/// Invariants of T and conjugate(T, u) at matched cutoff. u must be a monomial unitary.
InvarianceReport invariance_report(const CpMap& T, const WeylElement& u,
                                   const std::vector<double>& ts, int cutoff,
                                   double rank_tol = kDefaultRankTol);

}  // namespace rotinv
