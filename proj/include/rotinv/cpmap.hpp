#pragma once

#include <vector>

#include "rotinv/context.hpp"
#include "rotinv/weyl.hpp"

namespace rotinv {

/// T(a) = sum_i R_i^* a R_i with finitely supported Kraus operators R_i.
///
/// Non-unital Kraus data is accepted; `unital_expected` only requests a check
/// at construction time.
class CpMap {
public:
  CpMap(std::vector<WeylElement> kraus, AlgebraContext ctx, bool unital_expected = false);

  const std::vector<WeylElement>& kraus() const { return kraus_; }
  /// R_i^*, precomputed.
  const std::vector<WeylElement>& kraus_adjoint() const { return kraus_adj_; }
  const AlgebraContext& ctx() const { return ctx_; }

  /// Union of the Kraus supports.
  std::vector<Index2> support() const;
  /// max |x - y|_inf over x, y in the support (0 for an empty map).
  int support_diameter() const;

private:
  std::vector<WeylElement> kraus_;
  std::vector<WeylElement> kraus_adj_;
  AlgebraContext ctx_;
};

WeylElement apply(const CpMap& T, const WeylElement& a);

bool is_unital(const CpMap& T, double tol);

/// max(|u^*u - 1|, |uu^* - 1|) in coefficient norm.
double unitarity_defect(const WeylElement& u, const AlgebraContext& ctx);

/// S(a) = T(u^* a u): Kraus list {u R_i}. Throws NonUnitary.
CpMap conjugate(const CpMap& T, const WeylElement& u);

/// S(a) = v^* T(u^* a u) v: Kraus list {u R_i v}. Throws NonUnitary.
CpMap twist(const CpMap& T, const WeylElement& u, const WeylElement& v);

/// U^p V^q.
inline WeylElement monomial_unitary(int p, int q) { return WeylElement::monomial({p, q}); }

}  // namespace rotinv
