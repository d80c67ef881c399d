#include "rotinv/reps.hpp"

#include <cmath>
#include <numbers>

#include "rotinv/errors.hpp"
#include "rotinv/kernels.hpp"
#include "rotinv/weyl.hpp"

namespace rotinv {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kPointMatchTol = 1e-9;
constexpr double kRatioTol = 1e-9;

bool is_grid(const RepSpec& s) { return std::holds_alternative<GridMode>(s.mode); }

std::size_t point_count(const RepSpec& s) {
  if (is_grid(s)) {
    const auto& g = std::get<GridMode>(s.mode);
    return static_cast<std::size_t>(g.q) * g.q;
  }
  return std::get<SampledMode>(s.mode).points.size();
}

// Radon-Nikodym ratio for generator gen at point i.
double rn_ratio(const RepSpec& s, int gen, std::size_t i) {
  if (is_grid(s)) return 1.0;
  const auto& sm = std::get<SampledMode>(s.mode);
  return gen == 0 ? sm.rn1[i] : sm.rn2[i];
}

}  // namespace

double op_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()[0];
}

AlgebraContext rep_context(const RepSpec& spec) {
  if (is_grid(spec)) {
    const auto& g = std::get<GridMode>(spec.mode);
    return AlgebraContext::rational(g.p, g.q);
  }
  return AlgebraContext(std::get<SampledMode>(spec.mode).theta);
}

std::vector<std::array<cplx, 2>> rep_points(const RepSpec& spec) {
  if (!is_grid(spec)) return std::get<SampledMode>(spec.mode).points;
  const int q = std::get<GridMode>(spec.mode).q;
  std::vector<std::array<cplx, 2>> pts;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      pts.push_back({std::polar(1.0, 2.0 * std::numbers::pi * i / q),
                     std::polar(1.0, 2.0 * std::numbers::pi * j / q)});
  return pts;
}

std::vector<double> rep_weights(const RepSpec& spec) {
  if (!is_grid(spec)) return std::get<SampledMode>(spec.mode).weights;
  return std::vector<double>(point_count(spec), 1.0 / static_cast<double>(point_count(spec)));
}

std::vector<std::size_t> shift_table(const RepSpec& spec, int gen) {
  const std::size_t n = point_count(spec);
  std::vector<std::size_t> out(n);
  if (is_grid(spec)) {
    const auto& g = std::get<GridMode>(spec.mode);
    // conj(lambda) omega^i = omega^{i - p}.
    for (int i = 0; i < g.q; ++i)
      for (int j = 0; j < g.q; ++j) {
        const int si = gen == 0 ? ((i - g.p) % g.q + g.q) % g.q : i;
        const int sj = gen == 1 ? ((j - g.p) % g.q + g.q) % g.q : j;
        out[static_cast<std::size_t>(i) * g.q + j] = static_cast<std::size_t>(si) * g.q + sj;
      }
    return out;
  }
  const auto& sm = std::get<SampledMode>(spec.mode);
  const cplx lbar = std::conj(AlgebraContext(sm.theta).lambda());
  for (std::size_t i = 0; i < n; ++i) {
    auto target = sm.points[i];
    target[gen] *= lbar;
    std::size_t best = n;
    double best_d = kPointMatchTol;
    for (std::size_t j = 0; j < n; ++j) {
      const double d =
          std::max(std::abs(sm.points[j][0] - target[0]), std::abs(sm.points[j][1] - target[1]));
      if (d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best == n)
      throw Error(ErrorKind::NonQuasiInvariant, "shift of point " + std::to_string(i) +
                                                    " by generator " + std::to_string(gen + 1) +
                                                    " leaves the support");
    out[i] = best;
  }
  return out;
}

void validate_rep(const RepSpec& spec) {
  if (spec.m < 1) throw Error(ErrorKind::Validation, "multiplicity m must be >= 1");
  const std::size_t n = point_count(spec);
  if (n == 0) throw Error(ErrorKind::Validation, "measure has no points");
  if (is_grid(spec)) {
    const auto& g = std::get<GridMode>(spec.mode);
    (void)AlgebraContext::rational(g.p, g.q);
  } else {
    const auto& sm = std::get<SampledMode>(spec.mode);
    if (sm.weights.size() != n || sm.rn1.size() != n || sm.rn2.size() != n)
      throw Error(ErrorKind::Validation, "sampled measure tables have inconsistent lengths");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(sm.weights[i] > 0.0))
        throw Error(ErrorKind::Validation, "weight " + std::to_string(i) + " is not positive");
      if (!(sm.rn1[i] > 0.0) || !(sm.rn2[i] > 0.0))
        throw Error(ErrorKind::NonQuasiInvariant,
                    "Radon-Nikodym ratio at point " + std::to_string(i) + " is not positive");
      total += sm.weights[i];
    }
    if (std::abs(total - 1.0) > 1e-10)
      throw Error(ErrorKind::Validation, "weights sum to " + std::to_string(total));
    for (int gen = 0; gen < 2; ++gen) {
      const auto shift = shift_table(spec, gen);
      for (std::size_t i = 0; i < n; ++i) {
        const double expected = sm.weights[shift[i]] / sm.weights[i];
        if (std::abs(rn_ratio(spec, gen, i) - expected) > kRatioTol * expected)
          throw Error(ErrorKind::NonQuasiInvariant,
                      "Radon-Nikodym table for generator " + std::to_string(gen + 1) +
                          " is inconsistent with the weights at point " + std::to_string(i));
      }
    }
  }
  const auto I = Eigen::MatrixXcd::Identity(spec.m, spec.m);
  for (const auto* table : {&spec.b1, &spec.b2}) {
    if (table->size() != n)
      throw Error(ErrorKind::Validation, "cocycle table has " + std::to_string(table->size()) +
                                             " entries for " + std::to_string(n) + " points");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& b = (*table)[i];
      if (b.rows() != spec.m || b.cols() != spec.m)
        throw Error(ErrorKind::Validation, "cocycle at point " + std::to_string(i) +
                                               " is not " + std::to_string(spec.m) + "x" +
                                               std::to_string(spec.m));
      if ((b.adjoint() * b - I).cwiseAbs().maxCoeff() > kUnitaryTol)
        throw Error(ErrorKind::NonUnitaryCocycle, "b" + std::string(table == &spec.b1 ? "1" : "2") +
                                                      " is not unitary at point " +
                                                      std::to_string(i));
    }
  }
  // W3 W4 = W4 W3 forces b1(z) b2(beta_1 z) = b2(z) b1(beta_2 z); the square-root
  // factors already agree because both sides equal w(beta_1 beta_2 z) / w(z).
  const auto s1 = shift_table(spec, 0);
  const auto s2 = shift_table(spec, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (spec.b1[i] * spec.b2[s1[i]] - spec.b2[i] * spec.b1[s2[i]]).cwiseAbs().maxCoeff();
    if (r > kUnitaryTol)
      throw Error(ErrorKind::Validation,
                  "cocycles violate b1(z) b2(beta_1 z) = b2(z) b1(beta_2 z) at point " +
                      std::to_string(i) + " (residual " + std::to_string(r) + ")");
  }
}

RepMatrices build_rep(const RepSpec& spec, bool validate) {
  if (validate) validate_rep(spec);
  RepMatrices r{rep_context(spec), spec.m, point_count(spec), {}};
  const auto pts = rep_points(spec);
  const auto w = rep_weights(spec);
  const Eigen::Index m = spec.m;
  const auto side = static_cast<Eigen::Index>(r.points) * m;
  for (auto& W : r.W) W = Eigen::MatrixXcd::Zero(side, side);
  for (std::size_t i = 0; i < r.points; ++i)
    for (Eigen::Index a = 0; a < m; ++a) {
      const auto idx = static_cast<Eigen::Index>(i) * m + a;
      r.W[0](idx, idx) = pts[i][0];
      r.W[1](idx, idx) = pts[i][1];
    }
  for (int gen = 0; gen < 2; ++gen) {
    const auto shift = shift_table(spec, gen);
    const auto& b = gen == 0 ? spec.b1 : spec.b2;
    auto& W = r.W[2 + gen];
    parallel_for(static_cast<std::ptrdiff_t>(r.points), Exec::Parallel, [&](std::ptrdiff_t ip) {
      const auto i = static_cast<std::size_t>(ip);
      const std::size_t s = shift[i];
      // <e_{z,a}, W e_{beta z, c}> with e_{z,a} = delta_z e_a / sqrt(w_z).
      const double factor = std::sqrt(w[i] * rn_ratio(spec, gen, i) / w[s]);
      W.block(static_cast<Eigen::Index>(i) * m, static_cast<Eigen::Index>(s) * m, m, m) =
          factor * b[i];
    });
  }
  return r;
}

double relations_residual(const std::array<Eigen::MatrixXcd, 4>& W, const AlgebraContext& ctx) {
  const cplx lam = ctx.lambda();
  double r = op_norm(W[0] * W[1] - W[1] * W[0]);
  r = std::max(r, op_norm(W[2] * W[3] - W[3] * W[2]));
  r = std::max(r, op_norm(W[0] * W[2] - lam * W[2] * W[0]));
  r = std::max(r, op_norm(W[1] * W[3] - lam * W[3] * W[1]));
  return r;
}

double relations_residual(const RepMatrices& reps) { return relations_residual(reps.W, reps.ctx); }

double unitarity_residual(const RepMatrices& reps) {
  double r = 0.0;
  for (const auto& W : reps.W) {
    const auto I = Eigen::MatrixXcd::Identity(W.rows(), W.cols());
    r = std::max(r, op_norm(W.adjoint() * W - I));
  }
  return r;
}

namespace {

void require_same_measure(const RepSpec& a, const RepSpec& b) {
  if (a.m != b.m)
    throw Error(ErrorKind::MeasureMismatch, "multiplicities differ: " + std::to_string(a.m) +
                                                " vs " + std::to_string(b.m));
  if (is_grid(a) != is_grid(b))
    throw Error(ErrorKind::MeasureMismatch, "measure modes differ");
  if (is_grid(a)) {
    if (!(std::get<GridMode>(a.mode) == std::get<GridMode>(b.mode)))
      throw Error(ErrorKind::MeasureMismatch, "grid parameters differ");
    return;
  }
  const auto& x = std::get<SampledMode>(a.mode);
  const auto& y = std::get<SampledMode>(b.mode);
  if (x.theta != y.theta || x.points.size() != y.points.size())
    throw Error(ErrorKind::MeasureMismatch, "sampled measures differ");
  for (std::size_t i = 0; i < x.points.size(); ++i)
    if (std::abs(x.points[i][0] - y.points[i][0]) > kPointMatchTol ||
        std::abs(x.points[i][1] - y.points[i][1]) > kPointMatchTol ||
        std::abs(x.weights[i] - y.weights[i]) > kPointMatchTol)
      throw Error(ErrorKind::MeasureMismatch,
                  "sampled measures differ at point " + std::to_string(i));
}

void require_field(const RepSpec& s, const std::vector<Eigen::MatrixXcd>& W) {
  if (W.size() != point_count(s))
    throw Error(ErrorKind::Validation, "W field has " + std::to_string(W.size()) +
                                           " entries for " + std::to_string(point_count(s)) +
                                           " points");
  for (std::size_t i = 0; i < W.size(); ++i)
    if (W[i].rows() != s.m || W[i].cols() != s.m)
      throw Error(ErrorKind::Validation, "W field has wrong shape at point " + std::to_string(i));
}

}  // namespace

double cocycle_equiv_residual(const RepSpec& a, const RepSpec& b,
                              const std::vector<Eigen::MatrixXcd>& W) {
  require_same_measure(a, b);
  require_field(a, W);
  double r = 0.0;
  for (int gen = 0; gen < 2; ++gen) {
    const auto shift = shift_table(a, gen);
    const auto& ba = gen == 0 ? a.b1 : a.b2;
    const auto& bb = gen == 0 ? b.b1 : b.b2;
    for (std::size_t i = 0; i < W.size(); ++i)
      r = std::max(r, op_norm(W[i] * ba[i] - bb[i] * W[shift[i]]));
  }
  return r;
}

RepSpec gauge_transform(const RepSpec& spec, const std::vector<Eigen::MatrixXcd>& W) {
  require_field(spec, W);
  RepSpec out = spec;
  for (int gen = 0; gen < 2; ++gen) {
    const auto shift = shift_table(spec, gen);
    const auto& b = gen == 0 ? spec.b1 : spec.b2;
    auto& target = gen == 0 ? out.b1 : out.b2;
    for (std::size_t i = 0; i < W.size(); ++i) target[i] = W[i] * b[i] * W[shift[i]].adjoint();
  }
  return out;
}

Eigen::MatrixXcd gauge_operator(const RepSpec& spec, const std::vector<Eigen::MatrixXcd>& W) {
  require_field(spec, W);
  const Eigen::Index m = spec.m;
  const auto side = static_cast<Eigen::Index>(W.size()) * m;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(side, side);
  for (std::size_t i = 0; i < W.size(); ++i)
    G.block(static_cast<Eigen::Index>(i) * m, static_cast<Eigen::Index>(i) * m, m, m) = W[i];
  return G;
}

Eigen::VectorXcd uniform_vector(const RepMatrices& reps) {
  const auto side = static_cast<Eigen::Index>(reps.points) * reps.m;
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(side);
  for (std::size_t i = 0; i < reps.points; ++i) e[static_cast<Eigen::Index>(i) * reps.m] = 1.0;
  e.normalize();
  return e;
}

Eigen::VectorXcd cyclic_basis_vector(const RepMatrices& reps, std::size_t index) {
  const auto side = static_cast<Eigen::Index>(reps.points) * reps.m;
  if (static_cast<Eigen::Index>(index) >= side)
    throw Error(ErrorKind::Validation, "cyclic index " + std::to_string(index) +
                                           " out of range (dimension " + std::to_string(side) +
                                           ")");
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(side);
  e[static_cast<Eigen::Index>(index)] = 1.0;
  return e;
}

PsiTable state_from_rep(const RepMatrices& reps, const Eigen::VectorXcd& e,
                        const std::vector<Index4>& indices) {
  if (e.size() != reps.W[0].rows())
    throw Error(ErrorKind::Validation, "vector dimension does not match the representation");
  PsiTable table(reps.ctx);
  for (const auto& g : indices) {
    const auto pre = eta_preimage(g);
    // pi(W1^x1 W2^x2 W3^x3 W4^x4) e, rightmost factor first.
    Eigen::VectorXcd v = e;
    for (int gen = 3; gen >= 0; --gen) {
      const int x = pre.exponents[gen];
      for (int s = 0; s < std::abs(x); ++s)
        v = x > 0 ? Eigen::VectorXcd(reps.W[gen] * v) : Eigen::VectorXcd(reps.W[gen].adjoint() * v);
    }
    table.set(g, e.dot(v) * reps.ctx.lambda_pow(-pre.phase));
  }
  return table;
}

PsiTable state_from_rep(const RepSpec& spec, std::size_t cyclic_index,
                        const std::vector<Index4>& indices) {
  const auto reps = build_rep(spec);
  return state_from_rep(reps, cyclic_basis_vector(reps, cyclic_index), indices);
}

}  // namespace rotinv
