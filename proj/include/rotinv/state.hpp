#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "rotinv/cpmap.hpp"
#include "rotinv/index.hpp"
#include "rotinv/weyl.hpp"

namespace rotinv {

/// A linear functional on the algebra generated by U_l, V_l, U_r, V_r, given by
/// its values on normal-ordered monomials.
class Functional {
public:
  virtual ~Functional() = default;
  virtual cplx operator()(const Index4& g) const = 0;
  virtual const AlgebraContext& ctx() const = 0;
};

/// Linear extension to a finite combination of monomials.
cplx evaluate(const Functional& psi, const BiWeylElement& x);

/// psi(a (x) a') = <1, T(a) a' 1> on U_l^left V_l^left ... (x) U_r^right V_r^right.
///
/// The right operator acts on the cyclic vector by right multiplication:
/// V_r^q 1 = V^q and then U_r^p V^q = V^q U^p, so (U_r^p V_r^q) 1 = V^q U^p and
/// psi = trace(T(U^m V^n) V^q U^p). Cyclicity of the trace turns each Kraus term
/// into trace((R_i^* U^m V^n)(R_i V^q U^p)).
cplx eval_state(const CpMap& T, const Index2& left, const Index2& right);

/// psi_T with a thread-safe memo table keyed by the Z^4 monomial index.
class StateFunctional final : public Functional {
public:
  explicit StateFunctional(std::shared_ptr<const CpMap> T) : T_(std::move(T)) {}
  explicit StateFunctional(const CpMap& T) : T_(std::make_shared<const CpMap>(T)) {}

  cplx operator()(const Index4& g) const override;
  const AlgebraContext& ctx() const override { return T_->ctx(); }
  const CpMap& source() const { return *T_; }
  std::size_t cache_size() const;

private:
  std::shared_ptr<const CpMap> T_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Index4, cplx, IndexHash> cache_;
};

/// Values on a finite set of monomials; lookups outside it throw InsufficientData.
class PsiTable final : public Functional {
public:
  explicit PsiTable(AlgebraContext ctx) : ctx_(std::move(ctx)) {}
  static PsiTable tabulate(const Functional& psi, const std::vector<Index4>& indices);

  void set(const Index4& g, cplx v) { values_[g] = v; }
  bool contains(const Index4& g) const { return values_.count(g) != 0; }
  std::size_t size() const { return values_.size(); }
  const std::unordered_map<Index4, cplx, IndexHash>& values() const { return values_; }

  cplx operator()(const Index4& g) const override;
  const AlgebraContext& ctx() const override { return ctx_; }

private:
  AlgebraContext ctx_;
  std::unordered_map<Index4, cplx, IndexHash> values_;
};

/// psi(a (x) a') = tau(a) tau(a').
class TensorTrace final : public Functional {
public:
  explicit TensorTrace(AlgebraContext ctx) : ctx_(std::move(ctx)) {}
  cplx operator()(const Index4& g) const override {
    return g == Index4{0, 0, 0, 0} ? cplx{1.0} : cplx{};
  }
  const AlgebraContext& ctx() const override { return ctx_; }

private:
  AlgebraContext ctx_;
};

/// Exact monomial (U_l^m V_r^n)(V_l^{-1} V_r)^{k1}(U_l^{-1} U_r)^{k2}.
PhasedIndex4 mu_monomial(const Index2& k, const Index2& mn);

/// Fourier coefficients of the complex measure mu^k on T^2:
/// coeffs[(m, n)] = integral of z1^m z2^n against mu^k.
struct FourierMeasure {
  Index2 k{0, 0};
  Box2 window;
  std::map<Index2, cplx> coeffs;
};

/// Throws WindowTooSmall when a coefficient on the window boundary is nonzero.
FourierMeasure mu_k(const Functional& psi, const Index2& k, const Box2& window);
FourierMeasure mu_k(const CpMap& T, const Index2& k, const Box2& window);

/// Every mu^k of a finitely supported map lives in the difference set of the
/// Kraus support; this returns a window one step larger than that set.
Box2 default_mu_window(const CpMap& T);

struct Certificate {
  static constexpr const char* kVerdict = "EXTENDIBLE-ON-BOX";
  Box2 k_box;
  /// Radius of the difference set of the Kraus support.
  int support_bound = 0;
  /// Density of mu^k against normalized Lebesgue measure:
  /// rho_k(z) = sum_m coeffs[m] * conj(z)^m, a trigonometric polynomial.
  std::vector<FourierMeasure> densities;
  std::string verdict = kVerdict;
  std::string note =
      "certified only: finitely supported Kraus data always yields trigonometric-polynomial "
      "densities; refutation would need infinite data";
};

Certificate extendibility_certificate(const CpMap& T, const Box2& k_box);

/// Matrix elements <e_i, T(U^a1 V^a2) e_j> on the orthonormal basis e_x = U^x1 V^x2
/// of L^2(A_theta, tau), for every a in `a_box`.
struct ActionTable {
  std::vector<Index2> basis;
  std::map<Index2, Eigen::MatrixXcd> action;
};

/// Rebuilds T from psi alone via <a1' 1, T(a) a2' 1> = psi(a (x) a1'^* a2').
/// With a'_x = lambda^{x1 x2} U_r^x1 V_r^x2 one has a'_x 1 = e_x.
ActionTable cp_from_state(const Functional& psi, const Box2& a_box, int basis_radius);

/// The same table computed directly from the Kraus form.
ActionTable action_table_direct(const CpMap& T, const Box2& a_box, int basis_radius);

}  // namespace rotinv
