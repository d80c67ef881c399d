#pragma once

#include <map>

#include "rotinv/cpmap.hpp"
#include "rotinv/index.hpp"
#include "rotinv/kernels.hpp"
#include "rotinv/state.hpp"
#include "rotinv/weyl.hpp"

namespace rotinv {

/// Trigonometric polynomial sum_m c_m z1^m1 z2^m2 on T^2.
using TrigPoly = std::map<Index2, cplx>;

// Crossed-product coordinates for D_T.
//
// D_T is right multiplication by d_T = sum_g psi_T(e_g) e_g^*, where e_g runs over
// normal-ordered monomials. Component k of D_T, coefficient of z^m, is
//
//   D^(k)_m = lambda^{k2 m2} psi_T(e_{g(k,m)}),
//   g(k,m)  = (m1 + k2, -k1, -k2, m2 + 2 k1 - k2),
//
// i.e. D_T = sum_{k,m} D^(k)_m J(lambda^{k2 m2} e_{g(k,m)}) J with J the conjugation
// x -> x^* on L^2. Up to phase, e_{g(k,m)} is the image of
// W1^m1 W2^(m2 + k1 - k2) W3^-k1 W4^-k2. For finitely supported Kraus data the
// component k is carried by the window around (0, k2 - k1).

Index4 carrier_monomial(const Index2& k, const Index2& m);
inline long carrier_phase(const Index2& k, const Index2& m) {
  return static_cast<long>(k[1]) * m[1];
}
inline Index2 carrier_center(const Index2& k) { return {0, k[1] - k[0]}; }

struct CrossedCoord {
  Index2 k;
  Index2 m;
};
/// Inverse of (k, m) -> -g(k, m): which component stores the coefficient of d_T at e_h.
CrossedCoord crossed_coord(const Index4& h);

/// tau2(e_g e_{-g}) = lambda^{ab - cd}.
PhasedIndex4 pairing_monomial(const Index4& g);

enum class Provenance { ClosedForm, Oracle };

class RnDerivative {
public:
  RnDerivative(AlgebraContext ctx, Provenance provenance, int k_radius, int z_radius)
      : ctx_(std::move(ctx)), provenance_(provenance), k_radius_(k_radius), z_radius_(z_radius) {}

  const AlgebraContext& ctx() const { return ctx_; }
  Provenance provenance() const { return provenance_; }
  /// Components are known for |k|_inf <= k_radius.
  int k_radius() const { return k_radius_; }
  /// Component k is known on the box of this radius around carrier_center(k).
  int z_radius() const { return z_radius_; }

  const std::map<Index2, TrigPoly>& components() const { return components_; }
  std::map<Index2, TrigPoly>& components() { return components_; }

  /// Coefficient of z^m in component k; zero inside the known window when absent.
  cplx component(const Index2& k, const Index2& m) const;

  /// Coefficient of d_T at e_h. Throws WindowTooSmall outside the known k range.
  cplx d_coefficient(const Index4& h) const;

  /// d_T restricted to the computed window.
  BiWeylElement d_element() const;

private:
  AlgebraContext ctx_;
  Provenance provenance_;
  int k_radius_;
  int z_radius_;
  std::map<Index2, TrigPoly> components_;
};

/// Closed-form component for a single Kraus operator R = sum c_n U^n1 V^n2:
///   D^(k)(z) = sum_{n,m} c_n conj(c_{m1+n1, m2+n2+k1-k2}) lambda^N z^m,
///   N = 2 k2 m2 + k1 n1 + k2 n2 + k1 k2 - k2^2.
/// Throws MultiKraus for more than one Kraus term.
TrigPoly rn_component_closed(const CpMap& T, const Index2& k);

/// Default window radius around the carrier: support diameter + 2.
int default_z_radius(const CpMap& T);

/// Solves psi_T(g) = tau2(g d_T) one monomial at a time on |k|_inf <= k_radius,
/// z-window of radius z_radius (negative: default) around each carrier.
/// Throws WindowTooSmall when a boundary coefficient is nonzero.
RnDerivative rn_oracle(const CpMap& T, int k_radius, int z_radius = -1,
                       Exec exec = Exec::Parallel);

/// D_S = (u~^(r))^* D_T u~^(r) for u~ = u (x) 1, u a monomial unitary; d_S = u~ d_T u~^*.
RnDerivative rn_conjugate(const RnDerivative& D, const WeylElement& u);

/// max |closed - oracle| over the union of supports of component k.
double component_distance(const TrigPoly& a, const TrigPoly& b);

cplx evaluate_trig(const TrigPoly& p, cplx z1, cplx z2);
/// max |c_m - conj(c_{-m})|.
double conjugate_symmetry_defect(const TrigPoly& p);
/// min of Re p and max |Im p| over an n x n grid of T^2.
struct GridExtrema {
  double min_real;
  double max_imag;
};
GridExtrema grid_extrema(const TrigPoly& p, int n);

}  // namespace rotinv
