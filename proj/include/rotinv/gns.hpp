#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotinv/cpmap.hpp"
#include "rotinv/kernels.hpp"
#include "rotinv/state.hpp"

namespace rotinv {

inline constexpr double kGnsNullTol = 1e-10;

/// [psi(x_i^* x_j)] over monomials. Throws InsufficientData through PsiTable.
Eigen::MatrixXcd gram_matrix(const Functional& psi, const std::vector<Index4>& basis,
                             Exec exec = Exec::Parallel);
/// Over the l1 ball of the given radius.
Eigen::MatrixXcd gram_matrix(const Functional& psi, int cutoff, Exec exec = Exec::Parallel);

struct GnsTruncation {
  int cutoff = 0;
  std::vector<Index4> basis;
  Eigen::MatrixXcd gram;
  Eigen::VectorXd gram_eigenvalues;
  Eigen::Index quotient_rank = 0;
  /// Columns: orthonormal basis of the quotient in terms of the monomials,
  /// Q = V_+ Lambda_+^{-1/2}.
  Eigen::MatrixXcd Q;
  /// Compressions of U_l, V_l, U_r, V_r to the quotient.
  std::array<Eigen::MatrixXcd, 4> generators;
  /// Coordinates of the cyclic vector.
  Eigen::VectorXcd cyclic;
};

/// Quotient by eigenvalues <= null_tol * max eigenvalue. Reads psi on the l1 ball
/// of radius 2 * cutoff + 1.
GnsTruncation gns_operators(const Functional& psi, int cutoff, double null_tol = kGnsNullTol,
                            Exec exec = Exec::Parallel);

/// max |<xi, pi(e_x) xi> - psi(e_x)| over |x|_1 <= cutoff, with pi(e_x) built
/// from the compressed generators in normal order.
double reconstruction_residual(const GnsTruncation& gns, const Functional& psi);

/// max over generators of |<g h, g h'> - <h, h'>| for h, h' spanned by monomials
/// with |y|_1 <= cutoff - 1.
double isometry_residual(const GnsTruncation& gns);

struct PurityReport {
  int cutoff = 0;
  Eigen::Index quotient_rank = 0;
  /// eta = X xi ranges over the quotient of monomials with |y|_1 <= vector_radius.
  int vector_radius = 0;
  /// Null relations are taken among monomials with |j|_1 <= relation_radius.
  int relation_radius = 0;
  Eigen::Index relations = 0;
  Eigen::Index dimension = 0;
  /// Largest singular value counted as zero (0 when none).
  double gap_below = 0.0;
  /// Smallest singular value counted as nonzero (infinity when all vanish).
  double gap_above = 0.0;
  bool degenerate = false;
  std::string flag = "TRUNCATED";
};

/// Dimension of the commutant of the GNS representation of psi_T, seen at cutoff N.
///
/// X in the commutant is fixed by eta = X xi, and x xi -> x eta is well defined
/// iff sum_j n_j e_j eta = 0 for every null relation sum_j n_j e_j xi = 0. With
/// eta in the quotient of the ball of radius floor(N/2) and relations from the
/// ball of radius N - floor(N/2), every product stays inside the ball of radius
/// N where the Gram matrix is exact. The count is the number of singular values
/// below tol of that linear system on an orthonormal basis of eta.
PurityReport purity_probe(const Functional& psi, int cutoff, double tol = 1e-8);
PurityReport purity_probe(const CpMap& T, int cutoff, double tol = 1e-8);

struct PurityEvidence {
  PurityReport lower;
  PurityReport upper;
  bool stable = false;
  std::string verdict;
};

/// Probes at cutoff and cutoff + 1.
PurityEvidence purity_evidence(const CpMap& T, int cutoff, double tol = 1e-8);

}  // namespace rotinv
