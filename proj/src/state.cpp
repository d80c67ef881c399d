#include "rotinv/state.hpp"

#include <mutex>
#include <set>

#include "rotinv/errors.hpp"

namespace rotinv {

cplx evaluate(const Functional& psi, const BiWeylElement& x) {
  cplx s{};
  for (const auto& [g, c] : x.coeffs()) s += c * psi(g);
  return s;
}

cplx eval_state(const CpMap& T, const Index2& left, const Index2& right) {
  const auto& ctx = T.ctx();
  // V^q U^p = lambda^{-qp} U^p V^q.
  const auto f = mono_mul({0, right[1]}, {right[0], 0});
  cplx s{};
  for (std::size_t i = 0; i < T.kraus().size(); ++i) {
    const auto lhs = mul_monomial_right(T.kraus_adjoint()[i], left, ctx);
    const auto rhs = mul_monomial_right(T.kraus()[i], f.index, ctx);
    s += trace_product(lhs, rhs, ctx);
  }
  return s * ctx.lambda_pow(f.phase);
}

cplx StateFunctional::operator()(const Index4& g) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
  }
  const cplx v = eval_state(*T_, {g[0], g[1]}, {g[2], g[3]});
  std::unique_lock lock(mutex_);
  cache_.emplace(g, v);
  return v;
}

std::size_t StateFunctional::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

PsiTable PsiTable::tabulate(const Functional& psi, const std::vector<Index4>& indices) {
  PsiTable t(psi.ctx());
  for (const auto& g : indices) t.set(g, psi(g));
  return t;
}

cplx PsiTable::operator()(const Index4& g) const {
  auto it = values_.find(g);
  if (it == values_.end())
    throw Error(ErrorKind::InsufficientData, "psi table has no value at " + to_string(g));
  return it->second;
}

PhasedIndex4 mu_monomial(const Index2& k, const Index2& mn) {
  const Index4 head{mn[0], 0, 0, mn[1]};
  const auto w3 = bi_mono_pow({0, -1, 0, 1}, k[0]);
  const auto w4 = bi_mono_pow({-1, 0, 1, 0}, k[1]);
  const auto p1 = bi_mono_mul(head, w3.index);
  const auto p2 = bi_mono_mul(p1.index, w4.index);
  return {w3.phase + w4.phase + p1.phase + p2.phase, p2.index};
}

FourierMeasure mu_k(const Functional& psi, const Index2& k, const Box2& window) {
  FourierMeasure out;
  out.k = k;
  out.window = window;
  for (const auto& mn : window.points()) {
    const auto mono = mu_monomial(k, mn);
    const cplx v = psi(mono.index) * psi.ctx().lambda_pow(mono.phase);
    if (std::abs(v) < kPruneThreshold) continue;
    if (window.on_boundary(mn))
      throw Error(ErrorKind::WindowTooSmall, "mu^k for k=" + to_string(k) +
                                                 " has a nonzero coefficient on the window "
                                                 "boundary at " +
                                                 to_string(mn));
    out.coeffs[mn] = v;
  }
  return out;
}

FourierMeasure mu_k(const CpMap& T, const Index2& k, const Box2& window) {
  return mu_k(StateFunctional(T), k, window);
}

namespace {
int difference_radius(const CpMap& T) {
  // Only Kraus terms with nonzero coefficients count; empty data gives 0.
  return T.support_diameter();
}
}  // namespace

Box2 default_mu_window(const CpMap& T) { return Box2::centered(difference_radius(T) + 1); }

Certificate extendibility_certificate(const CpMap& T, const Box2& k_box) {
  Certificate cert;
  cert.k_box = k_box;
  cert.support_bound = difference_radius(T);
  const StateFunctional psi(T);
  const Box2 window = default_mu_window(T);
  for (const auto& k : k_box.points()) cert.densities.push_back(mu_k(psi, k, window));
  return cert;
}

namespace {

std::vector<Index2> basis_box(int radius) { return Box2::centered(radius).points(); }

// a'_i^* a'_j as lambda^phase * U_r^c V_r^d.
PhasedIndex4 right_pair(const Index2& i, const Index2& j) {
  const long phase_i = static_cast<long>(i[0]) * i[1];
  const long phase_j = static_cast<long>(j[0]) * j[1];
  const auto adj = bi_mono_adjoint({0, 0, i[0], i[1]});
  const auto p = bi_mono_mul(adj.index, {0, 0, j[0], j[1]});
  return {-phase_i + adj.phase + phase_j + p.phase, p.index};
}

}  // namespace

ActionTable cp_from_state(const Functional& psi, const Box2& a_box, int basis_radius) {
  ActionTable out;
  out.basis = basis_box(basis_radius);
  const auto n = static_cast<Eigen::Index>(out.basis.size());
  for (const auto& a : a_box.points()) {
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto r = right_pair(out.basis[i], out.basis[j]);
        const Index4 g{a[0], a[1], r.index[2], r.index[3]};
        m(i, j) = psi(g) * psi.ctx().lambda_pow(r.phase);
      }
    out.action.emplace(a, std::move(m));
  }
  return out;
}

ActionTable action_table_direct(const CpMap& T, const Box2& a_box, int basis_radius) {
  const auto& ctx = T.ctx();
  ActionTable out;
  out.basis = basis_box(basis_radius);
  const auto n = static_cast<Eigen::Index>(out.basis.size());
  std::vector<WeylElement> adj;
  for (const auto& x : out.basis) adj.push_back(adjoint(WeylElement::monomial(x), ctx));
  for (const auto& a : a_box.points()) {
    const auto ta = apply(T, WeylElement::monomial(a));
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto col = mul_monomial_right(ta, out.basis[j], ctx);
      for (Eigen::Index i = 0; i < n; ++i) m(i, j) = trace_product(adj[i], col, ctx);
    }
    out.action.emplace(a, std::move(m));
  }
  return out;
}

}  // namespace rotinv
