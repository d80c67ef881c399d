#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rotinv/cpmap.hpp"
#include "rotinv/reps.hpp"
#include "rotinv/weyl.hpp"

namespace rotinv::testing {

inline AlgebraContext golden() { return AlgebraContext::golden(); }

inline WeylElement random_element(std::mt19937_64& rng, int radius, double density = 1.0) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  WeylElement a;
  for (int i = -radius; i <= radius; ++i)
    for (int j = -radius; j <= radius; ++j)
      if (ud(rng) < density) a.add_raw({i, j}, {nd(rng), nd(rng)});
  a.prune();
  return a;
}

inline BiWeylElement random_bi_element(std::mt19937_64& rng, int radius, int terms) {
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> ui(-radius, radius);
  BiWeylElement x;
  for (int t = 0; t < terms; ++t) x.add_raw({ui(rng), ui(rng), ui(rng), ui(rng)}, {nd(rng), nd(rng)});
  x.prune();
  return x;
}

/// Scales R so that tau(R^* R) = 1.
inline WeylElement normalized(const WeylElement& R, const AlgebraContext& ctx) {
  const double n = std::sqrt(trace(mul(adjoint(R, ctx), R, ctx)).real());
  return (1.0 / n) * R;
}

inline CpMap single_kraus(const WeylElement& R, const AlgebraContext& ctx) { return CpMap({R}, ctx); }

inline CpMap identity_map(const AlgebraContext& ctx) { return single_kraus(WeylElement::identity(), ctx); }
inline CpMap u_map(const AlgebraContext& ctx) { return single_kraus(WeylElement::monomial({1, 0}), ctx); }
inline WeylElement u_plus_v() { return WeylElement{{{1, 0}, 1.0}, {{0, 1}, 1.0}}; }
inline CpMap random_map(std::mt19937_64& rng, int radius, const AlgebraContext& ctx) {
  return single_kraus(normalized(random_element(rng, radius), ctx), ctx);
}

inline double distance(const WeylElement& a, const WeylElement& b) { return coeff_norm(a - b); }
inline double distance(const BiWeylElement& a, const BiWeylElement& b) { return coeff_norm(a - b); }

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = {nd(rng), nd(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
}

inline std::vector<Eigen::MatrixXcd> random_field(std::mt19937_64& rng, int m, std::size_t n) {
  std::vector<Eigen::MatrixXcd> f;
  for (std::size_t i = 0; i < n; ++i) f.push_back(random_unitary(rng, m));
  return f;
}

/// exp(i eps H) for a random Hermitian H with O(1) entries.
inline Eigen::MatrixXcd near_identity(std::mt19937_64& rng, int m, double eps) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = {nd(rng), nd(rng)};
  h = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd ph(m);
  for (int i = 0; i < m; ++i) ph[i] = std::polar(1.0, eps * es.eigenvalues()[i]);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// Grid spec with compatible cocycles: commuting constants B1, B2 (diagonal in a
/// random basis) moved by a random gauge field.
inline RepSpec random_grid_spec(std::mt19937_64& rng, int p, int q, int m) {
  std::uniform_real_distribution<double> ud(0.0, 2.0 * M_PI);
  const Eigen::MatrixXcd basis = random_unitary(rng, m);
  Eigen::VectorXcd d1(m), d2(m);
  for (int i = 0; i < m; ++i) {
    d1[i] = std::polar(1.0, ud(rng));
    d2[i] = std::polar(1.0, ud(rng));
  }
  RepSpec s;
  s.m = m;
  s.mode = GridMode{p, q};
  const auto n = static_cast<std::size_t>(q) * q;
  s.b1.assign(n, basis * d1.asDiagonal() * basis.adjoint());
  s.b2.assign(n, basis * d2.asDiagonal() * basis.adjoint());
  return gauge_transform(s, random_field(rng, m, n));
}

/// Clock and shift matrices for theta = p / q: U = diag(lambda^j), V e_j = e_{j+1}.
/// UV = lambda VU holds exactly, and (1/q) tr(U^a V^b) vanishes unless q | a and q | b,
/// so coefficients with exponents in (-q/2, q/2) are recovered from the matrix.
class MatrixModel {
public:
  MatrixModel(int p, int q) : p_(p), q_(q), ctx_(AlgebraContext::rational(p, q)) {
    U_ = Eigen::MatrixXcd::Zero(q, q);
    V_ = Eigen::MatrixXcd::Zero(q, q);
    for (int j = 0; j < q; ++j) {
      U_(j, j) = std::polar(1.0, 2.0 * M_PI * p * j / q);
      V_((j + 1) % q, j) = 1.0;
    }
  }

  const AlgebraContext& ctx() const { return ctx_; }
  int q() const { return q_; }
  const Eigen::MatrixXcd& U() const { return U_; }
  const Eigen::MatrixXcd& V() const { return V_; }

  Eigen::MatrixXcd power(const Eigen::MatrixXcd& m, int n) const {
    Eigen::MatrixXcd base = n >= 0 ? m : Eigen::MatrixXcd(m.adjoint());
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    for (int i = 0; i < std::abs(n); ++i) r = r * base;
    return r;
  }

  Eigen::MatrixXcd matrix(const WeylElement& a) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q_, q_);
    for (const auto& [idx, c] : a.coeffs()) m += c * power(U_, idx[0]) * power(V_, idx[1]);
    return m;
  }

  /// Coefficients of a matrix on U^a V^b, |a|, |b| <= radius.
  WeylElement element(const Eigen::MatrixXcd& m, int radius) const {
    WeylElement a;
    for (int i = -radius; i <= radius; ++i)
      for (int j = -radius; j <= radius; ++j) {
        const Eigen::MatrixXcd mono = power(U_, i) * power(V_, j);
        a.add_raw({i, j}, (mono.adjoint() * m).trace() / static_cast<double>(q_));
      }
    a.prune();
    return a;
  }

  /// A (x) A^op on C^q (x) C^q: U_l, V_l on the first factor; U_r = 1 (x) U^T, V_r = 1 (x) V^T.
  Eigen::MatrixXcd bi_matrix(const BiWeylElement& x) const {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(q_, q_);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q_ * q_, q_ * q_);
    for (const auto& [g, c] : x.coeffs()) {
      const Eigen::MatrixXcd left = power(U_, g[0]) * power(V_, g[1]);
      const Eigen::MatrixXcd right =
          power(Eigen::MatrixXcd(U_.transpose()), g[2]) * power(Eigen::MatrixXcd(V_.transpose()), g[3]);
      m += c * kron(left, right);
    }
    return m;
  }

  static Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
  }

  /// psi_T(U_l^m V_l^n (x) U_r^p V_r^s) = (1/q) tr(T(U^m V^n) w), w = U_r^p V_r^s applied to 1
  /// as explicit right-multiplication operators on vec(X).
  cplx psi(const CpMap& T, const Index2& left, const Index2& right) const {
    Eigen::MatrixXcd ta = Eigen::MatrixXcd::Zero(q_, q_);
    const Eigen::MatrixXcd a = power(U_, left[0]) * power(V_, left[1]);
    for (const auto& R : T.kraus()) {
      const Eigen::MatrixXcd r = matrix(R);
      ta += r.adjoint() * a * r;
    }
    // Column-major vec(X M) = (M^T (x) I) vec(X).
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(q_, q_);
    const Eigen::MatrixXcd RU = kron(U_.transpose(), I);
    const Eigen::MatrixXcd RV = kron(V_.transpose(), I);
    const Eigen::MatrixXcd op = power(RU, right[0]) * power(RV, right[1]);
    Eigen::VectorXcd one = Eigen::Map<const Eigen::VectorXcd>(I.data(), q_ * q_);
    const Eigen::VectorXcd w = op * one;
    const Eigen::MatrixXcd W = Eigen::Map<const Eigen::MatrixXcd>(w.data(), q_, q_);
    return (ta * W).trace() / static_cast<double>(q_);
  }

private:
  int p_, q_;
  AlgebraContext ctx_;
  Eigen::MatrixXcd U_, V_;
};

}  // namespace rotinv::testing
