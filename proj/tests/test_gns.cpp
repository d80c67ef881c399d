#include "doctest.h"
#include "support.hpp"

#include "rotinv/errors.hpp"
#include "rotinv/gns.hpp"
#include "rotinv/reps.hpp"

using namespace rotinv;
using namespace rotinv::testing;

namespace {

CpMap mixture(const AlgebraContext& ctx) {
  const double s = std::sqrt(0.5);
  return CpMap({WeylElement::monomial({0, 0}, s), WeylElement::monomial({1, 0}, s)}, ctx);
}

// Direct sum of grid representations at theta = 1/3 with constant cocycles
// b1 = signs[i] in copy i; cyclic vector spread over the copies.
PsiTable direct_sum_state(const std::vector<double>& signs, int radius) {
  RepSpec spec;
  const int m = static_cast<int>(signs.size());
  spec.m = m;
  spec.mode = GridMode{1, 3};
  Eigen::MatrixXcd b1 = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) b1(i, i) = signs[i];
  spec.b1.assign(9, b1);
  spec.b2.assign(9, Eigen::MatrixXcd::Identity(m, m));
  const auto reps = build_rep(spec);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(reps.W[0].rows());
  for (std::size_t p = 0; p < reps.points; ++p)
    for (int i = 0; i < m; ++i) e[static_cast<Eigen::Index>(p) * m + i] = 1.0;
  e.normalize();
  return state_from_rep(reps, e, l1_ball4(radius));
}

}  // namespace

TEST_CASE("Gram matrices of CP-map states are positive semidefinite") {
  const auto ctx = golden();
  std::mt19937_64 rng(10);
  for (const auto& T : {identity_map(ctx), u_map(ctx), single_kraus(normalized(u_plus_v(), ctx), ctx),
                        random_map(rng, 1, ctx), mixture(ctx)}) {
    const StateFunctional psi(T);
    const auto G = gram_matrix(psi, 3);
    CHECK((G - G.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("GNS reconstruction and isometry") {
  const auto ctx = golden();
  std::mt19937_64 rng(11);
  for (const auto& T : {u_map(ctx), random_map(rng, 1, ctx), mixture(ctx)}) {
    const StateFunctional psi(T);
    const auto g = gns_operators(psi, 3);
    CHECK(g.quotient_rank > 0);
    CHECK(g.Q.cols() == g.quotient_rank);
    CHECK(std::abs(g.cyclic.squaredNorm() - 1.0) < 1e-10);
    CHECK(reconstruction_residual(g, psi) < 1e-8);
    CHECK(isometry_residual(g) < 1e-8);
  }
}

TEST_CASE("Gram matrix needs enough tabulated data") {
  PsiTable t(golden());
  t.set({0, 0, 0, 0}, 1.0);
  CHECK_THROWS_AS(gram_matrix(t, 1), Error);
}

TEST_CASE("purity probe on CP maps") {
  const auto ctx = golden();
  const auto u = purity_probe(u_map(ctx), 2);
  CHECK(u.dimension == 1);
  CHECK_FALSE(u.degenerate);
  CHECK(u.flag == "TRUNCATED");
  CHECK(u.gap_above > 1e-2);
  const auto mix = purity_probe(mixture(ctx), 2);
  CHECK(mix.dimension >= 2);
  CHECK(mix.gap_below < 1e-10);
  CHECK(purity_probe(u_map(ctx), 0).degenerate);
}

TEST_CASE("purity probe against finite representations") {
  // One irreducible copy, then two inequivalent copies: commutant dimensions 1 and 2.
  const auto one = direct_sum_state({1.0}, 9);
  const auto two = direct_sum_state({1.0, -1.0}, 9);
  const auto r1 = purity_probe(one, 4);
  const auto r2 = purity_probe(two, 4);
  CHECK(r1.dimension == 1);
  CHECK(r2.dimension == 2);
}

TEST_CASE("purity evidence verdicts") {
  const auto ctx = golden();
  const auto ev = purity_evidence(u_map(ctx), 2);
  CHECK(ev.lower.cutoff == 2);
  CHECK(ev.upper.cutoff == 3);
  CHECK(ev.stable);
  CHECK(ev.verdict.rfind("consistent with pure", 0) == 0);
}
