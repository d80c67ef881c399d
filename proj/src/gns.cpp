#include "rotinv/gns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "rotinv/errors.hpp"

namespace rotinv {

namespace {

constexpr std::array<Index4, 4> kGenerators{
    Index4{1, 0, 0, 0}, Index4{0, 1, 0, 0}, Index4{0, 0, 1, 0}, Index4{0, 0, 0, 1}};

// M_g(i, j) = psi(e_i^* e_g e_j).
Eigen::MatrixXcd generator_matrix(const Functional& psi, const std::vector<Index4>& basis,
                                  const Index4& gen, Exec exec) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto& ctx = psi.ctx();
  Eigen::MatrixXcd M(n, n);
  parallel_for(n, exec, [&](std::ptrdiff_t j) {
    const auto gj = bi_mono_mul(gen, basis[j]);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto a = bi_mono_adjoint(basis[i]);
      const auto p = bi_mono_mul(a.index, gj.index);
      M(i, j) = psi(p.index) * ctx.lambda_pow(a.phase + gj.phase + p.phase);
    }
  });
  return M;
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const Functional& psi, const std::vector<Index4>& basis, Exec exec) {
  return gram_kernel(psi, basis, exec);
}

Eigen::MatrixXcd gram_matrix(const Functional& psi, int cutoff, Exec exec) {
  if (cutoff < 0) throw Error(ErrorKind::Validation, "cutoff must be >= 0");
  return gram_kernel(psi, l1_ball4(cutoff), exec);
}

GnsTruncation gns_operators(const Functional& psi, int cutoff, double null_tol, Exec exec) {
  GnsTruncation g;
  g.cutoff = cutoff;
  g.basis = l1_ball4(cutoff);
  g.gram = gram_matrix(psi, g.basis, exec);
  const Eigen::MatrixXcd h = (g.gram + g.gram.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::SingularSystem, "Gram eigensolver did not converge");
  g.gram_eigenvalues = es.eigenvalues();
  const double top = std::max(g.gram_eigenvalues.maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < g.gram_eigenvalues.size(); ++i)
    if (g.gram_eigenvalues[i] > null_tol * top) keep.push_back(i);
  g.quotient_rank = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index n = h.rows();
  g.Q.resize(n, g.quotient_rank);
  for (Eigen::Index k = 0; k < g.quotient_rank; ++k)
    g.Q.col(k) = es.eigenvectors().col(keep[k]) / std::sqrt(g.gram_eigenvalues[keep[k]]);
  for (std::size_t i = 0; i < 4; ++i)
    g.generators[i] = g.Q.adjoint() * generator_matrix(psi, g.basis, kGenerators[i], exec) * g.Q;
  const auto origin = std::find(g.basis.begin(), g.basis.end(), Index4{0, 0, 0, 0}) - g.basis.begin();
  g.cyclic = g.Q.adjoint() * g.gram.col(origin);
  return g;
}

double reconstruction_residual(const GnsTruncation& gns, const Functional& psi) {
  double r = 0.0;
  for (const auto& x : l1_ball4(gns.cutoff)) {
    // U_l^a V_l^b U_r^c V_r^d xi: apply V_r^d first.
    Eigen::VectorXcd v = gns.cyclic;
    for (int gen = 3; gen >= 0; --gen) {
      const auto& G = gns.generators[gen];
      for (int s = 0; s < std::abs(x[gen]); ++s)
        v = x[gen] > 0 ? Eigen::VectorXcd(G * v) : Eigen::VectorXcd(G.adjoint() * v);
    }
    r = std::max(r, std::abs(gns.cyclic.dot(v) - psi(x)));
  }
  return r;
}

double isometry_residual(const GnsTruncation& gns) {
  std::vector<Eigen::Index> interior;
  for (std::size_t i = 0; i < gns.basis.size(); ++i)
    if (l1_norm(gns.basis[i]) <= gns.cutoff - 1) interior.push_back(static_cast<Eigen::Index>(i));
  if (interior.empty() || gns.quotient_rank == 0) return 0.0;
  Eigen::MatrixXcd B(gns.quotient_rank, static_cast<Eigen::Index>(interior.size()));
  for (std::size_t k = 0; k < interior.size(); ++k)
    B.col(static_cast<Eigen::Index>(k)) = gns.Q.adjoint() * gns.gram.col(interior[k]);
  const Eigen::MatrixXcd base = B.adjoint() * B;
  double r = 0.0;
  for (const auto& G : gns.generators) {
    const Eigen::MatrixXcd GB = G * B;
    r = std::max(r, (GB.adjoint() * GB - base).cwiseAbs().maxCoeff());
  }
  return r;
}

namespace {

std::vector<Eigen::Index> ball_positions(const std::vector<Index4>& basis, int radius) {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (l1_norm(basis[i]) <= radius) out.push_back(static_cast<Eigen::Index>(i));
  return out;
}

Eigen::MatrixXcd principal_block(const Eigen::MatrixXcd& m, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = m(idx[i], idx[j]);
  return (b + b.adjoint()) / 2.0;
}

}  // namespace

PurityReport purity_probe(const Functional& psi, int cutoff, double tol) {
  if (cutoff < 0) throw Error(ErrorKind::Validation, "cutoff must be >= 0");
  PurityReport rep;
  rep.cutoff = cutoff;
  rep.vector_radius = cutoff / 2;
  rep.relation_radius = cutoff - rep.vector_radius;
  const auto g = gns_operators(psi, cutoff);
  rep.quotient_rank = g.quotient_rank;
  if (cutoff == 0 || g.quotient_rank <= 1) {
    rep.dimension = g.quotient_rank;
    rep.degenerate = true;
    rep.flag = "TRUNCATED,DEGENERATE";
    return rep;
  }
  const auto& ctx = psi.ctx();
  // F w gives orthonormal quotient coordinates of sum_i w_i [e_i].
  const Eigen::MatrixXcd F = g.Q.adjoint() * g.gram;
  std::unordered_map<Index4, Eigen::Index, IndexHash> pos;
  for (std::size_t i = 0; i < g.basis.size(); ++i) pos.emplace(g.basis[i], static_cast<Eigen::Index>(i));

  const auto rel = ball_positions(g.basis, rep.relation_radius);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_rel(principal_block(g.gram, rel));
  const double top_rel = std::max(es_rel.eigenvalues().maxCoeff(), 0.0);
  std::vector<Eigen::Index> nulls;
  for (Eigen::Index i = 0; i < es_rel.eigenvalues().size(); ++i)
    if (es_rel.eigenvalues()[i] <= kGnsNullTol * top_rel) nulls.push_back(i);
  rep.relations = static_cast<Eigen::Index>(nulls.size());

  const auto vec = ball_positions(g.basis, rep.vector_radius);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_vec(principal_block(g.gram, vec));
  const double top_vec = std::max(es_vec.eigenvalues().maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es_vec.eigenvalues().size(); ++i)
    if (es_vec.eigenvalues()[i] > kGnsNullTol * top_vec) keep.push_back(i);
  const auto nv = static_cast<Eigen::Index>(vec.size());
  const auto rv = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd Qv(nv, rv);
  for (Eigen::Index k = 0; k < rv; ++k)
    Qv.col(k) = es_vec.eigenvectors().col(keep[k]) / std::sqrt(es_vec.eigenvalues()[keep[k]]);

  const Eigen::Index r = F.rows();
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nulls.size()) * r, rv);
  parallel_for(static_cast<std::ptrdiff_t>(nulls.size()), Exec::Parallel, [&](std::ptrdiff_t k) {
    // Column b: F applied to sum_j n_j e_j e_{y_b}.
    Eigen::MatrixXcd FL = Eigen::MatrixXcd::Zero(r, nv);
    for (std::size_t a = 0; a < rel.size(); ++a) {
      const cplx nj = es_rel.eigenvectors()(static_cast<Eigen::Index>(a), nulls[k]);
      if (std::abs(nj) < kPruneThreshold) continue;
      for (Eigen::Index b = 0; b < nv; ++b) {
        const auto p = bi_mono_mul(g.basis[rel[a]], g.basis[vec[b]]);
        FL.col(b) += (nj * ctx.lambda_pow(p.phase)) * F.col(pos.at(p.index));
      }
    }
    S.middleRows(k * r, r) = FL * Qv;
  });

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(S);
  const Eigen::VectorXd sv = svd.singularValues();
  rep.gap_above = std::numeric_limits<double>::infinity();
  // Singular values only cover min(rows, rv) directions; the rest are null.
  rep.dimension = rv - sv.size();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] < tol) {
      ++rep.dimension;
      rep.gap_below = std::max(rep.gap_below, sv[i]);
    } else {
      rep.gap_above = std::min(rep.gap_above, sv[i]);
    }
  }
  return rep;
}

PurityReport purity_probe(const CpMap& T, int cutoff, double tol) {
  return purity_probe(StateFunctional(T), cutoff, tol);
}

PurityEvidence purity_evidence(const CpMap& T, int cutoff, double tol) {
  PurityEvidence ev;
  ev.lower = purity_probe(T, cutoff, tol);
  ev.upper = purity_probe(T, cutoff + 1, tol);
  const std::string cuts = std::to_string(cutoff) + ", " + std::to_string(cutoff + 1);
  const auto lo = ev.lower.dimension, hi = ev.upper.dimension;
  ev.stable = (lo == 1 && hi == 1) || (lo >= 2 && hi >= 2);
  if (ev.lower.degenerate || ev.upper.degenerate)
    ev.verdict = "degenerate truncation at cutoffs " + cuts;
  else if (!ev.stable)
    ev.verdict = "inconclusive: commutant dimension changes between cutoffs " + cuts;
  else if (lo == 1)
    ev.verdict = "consistent with pure at cutoffs " + cuts;
  else
    ev.verdict = "not pure: commutant dimension >= 2 at cutoffs " + cuts;
  return ev;
}

}  // namespace rotinv
