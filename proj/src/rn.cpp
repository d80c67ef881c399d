#include "rotinv/rn.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "rotinv/errors.hpp"

namespace rotinv {

Index4 carrier_monomial(const Index2& k, const Index2& m) {
  return {m[0] + k[1], -k[0], -k[1], m[1] + 2 * k[0] - k[1]};
}

CrossedCoord crossed_coord(const Index4& h) {
  // h = -g(k, m).
  CrossedCoord c;
  c.k = {h[1], h[2]};
  c.m = {-h[0] - h[2], -h[3] - 2 * h[1] + h[2]};
  return c;
}

PhasedIndex4 pairing_monomial(const Index4& g) { return bi_mono_mul(g, -g); }

cplx RnDerivative::component(const Index2& k, const Index2& m) const {
  auto it = components_.find(k);
  if (it == components_.end()) return {};
  auto jt = it->second.find(m);
  return jt == it->second.end() ? cplx{} : jt->second;
}

cplx RnDerivative::d_coefficient(const Index4& h) const {
  const auto c = crossed_coord(h);
  if (linf_norm(c.k) > k_radius_)
    throw Error(ErrorKind::WindowTooSmall,
                "d_T coefficient at " + to_string(h) + " needs component k=" + to_string(c.k) +
                    " outside the computed range |k| <= " + std::to_string(k_radius_));
  const cplx D = component(c.k, c.m);
  if (D == cplx{}) return {};
  // D = lambda^{k2 m2} psi(e_g) and psi(e_g) = tau2(e_g e_{-g}) d_{-g}.
  const Index4 g = -h;
  const long phase = carrier_phase(c.k, c.m) + pairing_monomial(g).phase;
  return D * ctx_.lambda_pow(-phase);
}

BiWeylElement RnDerivative::d_element() const {
  BiWeylElement d;
  for (const auto& [k, poly] : components_)
    for (const auto& [m, D] : poly) {
      const Index4 g = carrier_monomial(k, m);
      const long phase = carrier_phase(k, m) + pairing_monomial(g).phase;
      d.add_raw(-g, D * ctx_.lambda_pow(-phase));
    }
  d.prune();
  return d;
}

TrigPoly rn_component_closed(const CpMap& T, const Index2& k) {
  if (T.kraus().size() != 1)
    throw Error(ErrorKind::MultiKraus, "closed form needs a single Kraus operator, got " +
                                           std::to_string(T.kraus().size()));
  const auto& ctx = T.ctx();
  const auto& R = T.kraus().front();
  const long k1 = k[0], k2 = k[1];
  WeylElement acc;  // reuse the pruning accumulator
  for (const auto& [n, cn] : R.coeffs())
    for (const auto& [p, cp] : R.coeffs()) {
      const Index2 m{p[0] - n[0], p[1] - n[1] - k[0] + k[1]};
      const long N = 2 * k2 * m[1] + k1 * n[0] + k2 * n[1] + k1 * k2 - k2 * k2;
      acc.add_raw(m, cn * std::conj(cp) * ctx.lambda_pow(N));
    }
  acc.prune();
  return TrigPoly(acc.coeffs().begin(), acc.coeffs().end());
}

int default_z_radius(const CpMap& T) { return T.support_diameter() + 2; }

RnDerivative rn_oracle(const CpMap& T, int k_radius, int z_radius, Exec exec) {
  if (k_radius < 0) throw Error(ErrorKind::Validation, "k radius must be >= 0");
  if (z_radius < 0) z_radius = default_z_radius(T);
  const auto& ctx = T.ctx();
  RnDerivative D(ctx, Provenance::Oracle, k_radius, z_radius);
  const StateFunctional psi(T);
  const auto ks = Box2::centered(k_radius).points();
  std::vector<TrigPoly> polys(ks.size());

  parallel_for(static_cast<std::ptrdiff_t>(ks.size()), exec, [&](std::ptrdiff_t i) {
    const Index2 k = ks[i];
    const Box2 window = Box2::centered(z_radius, carrier_center(k));
    TrigPoly poly;
    for (const auto& m : window.points()) {
      const Index4 g = carrier_monomial(k, m);
      // psi(e_g) = tau2(e_g d) = tau2(e_g e_{-g}) d_{-g}: one division per coefficient.
      const cplx d = psi(g) / pairing_monomial(g).value(ctx);
      if (std::abs(d) < kPruneThreshold) continue;
      if (window.on_boundary(m))
        throw Error(ErrorKind::WindowTooSmall, "D^(k) for k=" + to_string(k) +
                                                   " is nonzero on the window boundary at m=" +
                                                   to_string(m));
      poly[m] = d * pairing_monomial(g).value(ctx) * ctx.lambda_pow(carrier_phase(k, m));
    }
    polys[i] = std::move(poly);
  });

  for (std::size_t i = 0; i < ks.size(); ++i) D.components().emplace(ks[i], std::move(polys[i]));
  return D;
}

RnDerivative rn_conjugate(const RnDerivative& D, const WeylElement& u) {
  const auto& ctx = D.ctx();
  if (u.size() != 1 || std::abs(std::abs(u.coeffs().begin()->second) - 1.0) > 1e-10)
    throw Error(ErrorKind::NonUnitary, "rn_conjugate needs a phase-scaled monomial unitary");
  const Index2 pq = u.coeffs().begin()->first;
  const Index4 x{pq[0], pq[1], 0, 0};
  const auto xa = bi_mono_adjoint(x);

  RnDerivative out(ctx, D.provenance(), D.k_radius(), D.z_radius());
  for (const auto& [k, poly] : D.components()) {
    TrigPoly& target = out.components()[k];
    for (const auto& [m, val] : poly) {
      // d_S = u~ d_T u~^*. The scalar factor of u cancels; e_x e_h e_x^* = lambda^phi e_h.
      const Index4 h = -carrier_monomial(k, m);
      const auto p1 = bi_mono_mul(x, h);
      const auto p2 = bi_mono_mul(p1.index, xa.index);
      target[m] = val * ctx.lambda_pow(p1.phase + p2.phase + xa.phase);
    }
  }
  return out;
}

double component_distance(const TrigPoly& a, const TrigPoly& b) {
  double d = 0.0;
  for (const auto& [m, c] : a) {
    auto it = b.find(m);
    d = std::max(d, std::abs(c - (it == b.end() ? cplx{} : it->second)));
  }
  for (const auto& [m, c] : b)
    if (!a.count(m)) d = std::max(d, std::abs(c));
  return d;
}

cplx evaluate_trig(const TrigPoly& p, cplx z1, cplx z2) {
  cplx s{};
  for (const auto& [m, c] : p) s += c * std::pow(z1, m[0]) * std::pow(z2, m[1]);
  return s;
}

double conjugate_symmetry_defect(const TrigPoly& p) {
  double d = 0.0;
  auto get = [&](const Index2& m) {
    auto it = p.find(m);
    return it == p.end() ? cplx{} : it->second;
  };
  for (const auto& [m, c] : p) d = std::max(d, std::abs(c - std::conj(get(-m))));
  return d;
}

GridExtrema grid_extrema(const TrigPoly& p, int n) {
  GridExtrema e{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx z1 = std::polar(1.0, 2.0 * std::numbers::pi * i / n);
      const cplx z2 = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
      const cplx v = evaluate_trig(p, z1, z2);
      e.min_real = std::min(e.min_real, v.real());
      e.max_imag = std::max(e.max_imag, std::abs(v.imag()));
    }
  return e;
}

}  // namespace rotinv
