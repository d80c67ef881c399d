#include "rotinv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "rotinv/errors.hpp"
#include "rotinv/state.hpp"

namespace rotinv {

namespace {

constexpr double kHermitianTol = 1e-6;
constexpr double kClampTol = 1e-8;
constexpr double kStructuralZero = 1e-14;

Eigen::Index find_origin(const std::vector<Index4>& basis) {
  auto it = std::find(basis.begin(), basis.end(), Index4{0, 0, 0, 0});
  return static_cast<Eigen::Index>(it - basis.begin());
}

// Indices reachable from `start` through entries above kStructuralZero, sorted.
std::vector<Eigen::Index> component_of(const Eigen::MatrixXcd& m, Eigen::Index start) {
  const Eigen::Index n = m.rows();
  std::vector<char> seen(n, 0);
  std::deque<Eigen::Index> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const Eigen::Index i = queue.front();
    queue.pop_front();
    for (Eigen::Index j = 0; j < n; ++j)
      if (!seen[j] && std::abs(m(i, j)) > kStructuralZero) {
        seen[j] = 1;
        queue.push_back(j);
      }
  }
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < n; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

}  // namespace

TruncatedOperator truncated_basis(int cutoff) {
  if (cutoff < 0) throw Error(ErrorKind::Validation, "cutoff must be >= 0");
  TruncatedOperator op;
  op.cutoff = cutoff;
  op.basis = l1_ball4(cutoff);
  op.origin = find_origin(op.basis);
  return op;
}

TruncatedOperator build_matrix(const RnDerivative& D, int cutoff, Exec exec) {
  auto op = truncated_basis(cutoff);
  if (D.k_radius() < 2 * cutoff)
    throw Error(ErrorKind::WindowTooSmall,
                "cutoff " + std::to_string(cutoff) + " needs components up to |k| = " +
                    std::to_string(2 * cutoff) + ", have " + std::to_string(D.k_radius()));
  op.matrix = d_matrix_kernel(D, op.basis, exec);
  return op;
}

TruncatedOperator wrap_matrix(Eigen::MatrixXcd m, int cutoff) {
  auto op = truncated_basis(cutoff);
  if (m.rows() != m.cols() || m.rows() != static_cast<Eigen::Index>(op.basis.size()))
    throw Error(ErrorKind::Validation, "matrix size does not match the basis at cutoff " +
                                           std::to_string(cutoff));
  op.matrix = std::move(m);
  return op;
}

OriginSpectrum origin_spectrum(const TruncatedOperator& op) {
  OriginSpectrum out;
  out.symmetrization_residual = (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff() / 2.0;
  if (!(out.symmetrization_residual <= kHermitianTol))
    throw Error(ErrorKind::NotHermitian,
                "symmetrization residual " + std::to_string(out.symmetrization_residual));
  const Eigen::MatrixXcd h = (op.matrix + op.matrix.adjoint()) / 2.0;
  const auto comp = component_of(h, op.origin);
  const auto n = static_cast<Eigen::Index>(comp.size());
  Eigen::MatrixXcd block(n, n);
  Eigen::Index origin_pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (comp[i] == op.origin) origin_pos = i;
    for (Eigen::Index j = 0; j < n; ++j) block(i, j) = h(comp[i], comp[j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::SingularSystem, "eigensolver did not converge");
  out.eigenvalues = es.eigenvalues();
  out.weights = es.eigenvectors().row(origin_pos).cwiseAbs2().transpose();
  out.block_size = n;
  return out;
}

std::vector<double> heat_trace(const OriginSpectrum& spec, const std::vector<double>& ts) {
  std::vector<double> out;
  for (double t : ts) {
    if (!(t >= 0.0)) throw Error(ErrorKind::Validation, "heat-trace time must be >= 0");
    double s = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
      double ev = spec.eigenvalues[i];
      if (ev < 0.0 && ev > -kClampTol) ev = 0.0;
      s += spec.weights[i] * std::exp(-t * ev);
    }
    out.push_back(s);
  }
  return out;
}

std::vector<double> heat_trace(const TruncatedOperator& op, const std::vector<double>& ts) {
  return heat_trace(origin_spectrum(op), ts);
}

double projection_trace_spectral(const OriginSpectrum& spec, double rank_tol) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues[i] > rank_tol) s += spec.weights[i];
  return std::clamp(s, 0.0, 1.0);
}

double projection_trace_spectral(const TruncatedOperator& op, double rank_tol) {
  return projection_trace_spectral(origin_spectrum(op), rank_tol);
}

LsqResult projection_trace_lsq(const CpMap& T, int cutoff, double rank_tol, Exec exec) {
  const auto basis = truncated_basis(cutoff);
  const StateFunctional psi(T);
  const Eigen::MatrixXcd A = gram_kernel(psi, basis.basis, exec);
  const Eigen::Index n = A.rows();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs[basis.origin] = 1.0;

  LsqResult out;
  out.size = n;
  const double scale = A.colwise().norm().maxCoeff();
  if (scale <= rank_tol) {
    out.value = 0.0;
    out.rank_deficient = n > 0;
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(rank_tol / scale);
  cod.compute(A);
  const Eigen::VectorXcd beta = cod.solve(rhs);
  const double residual = (rhs - A * beta).squaredNorm();
  if (!std::isfinite(residual))
    throw Error(ErrorKind::SingularSystem, "least-squares solve produced non-finite values");
  out.rank = cod.rank();
  out.rank_deficient = out.rank < n;
  out.value = std::clamp(1.0 - residual, 0.0, 1.0);
  return out;
}

InvariantSet compute_invariants(const CpMap& T, const std::vector<double>& ts, int cutoff,
                                double rank_tol, Exec exec) {
  const auto D = rn_oracle(T, 2 * cutoff, -1, exec);
  const auto op = build_matrix(D, cutoff, exec);
  const auto spec = origin_spectrum(op);
  InvariantSet out;
  out.heat = heat_trace(spec, ts);
  out.projection_spectral = projection_trace_spectral(spec, rank_tol);
  out.lsq = projection_trace_lsq(T, cutoff, rank_tol, exec);
  out.projection_lsq = out.lsq.value;
  out.symmetrization_residual = spec.symmetrization_residual;
  return out;
}

InvarianceReport invariance_report(const CpMap& T, const WeylElement& u,
                                   const std::vector<double>& ts, int cutoff, double rank_tol) {
  const CpMap S = conjugate(T, u);
  InvarianceReport r;
  r.original = compute_invariants(T, ts, cutoff, rank_tol);
  r.conjugated = compute_invariants(S, ts, cutoff, rank_tol);
  double dev = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    dev = std::max(dev, std::abs(r.original.heat[i] - r.conjugated.heat[i]));
  dev = std::max(dev,
                 std::abs(r.original.projection_spectral - r.conjugated.projection_spectral));
  dev = std::max(dev, std::abs(r.original.projection_lsq - r.conjugated.projection_lsq));
  r.max_deviation = dev;
  return r;
}

}  // namespace rotinv
