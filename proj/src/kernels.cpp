#include "rotinv/kernels.hpp"

#include "rotinv/rn.hpp"
#include "rotinv/state.hpp"

namespace rotinv {

namespace {

// e_g^* e_h = lambda^phase e_{h-g}.
PhasedIndex4 adjoint_times(const Index4& g, const Index4& h) {
  const auto a = bi_mono_adjoint(g);
  const auto p = bi_mono_mul(a.index, h);
  return {a.phase + p.phase, p.index};
}

}  // namespace

Eigen::MatrixXcd gram_kernel(const Functional& psi, const std::vector<Index4>& basis, Exec exec) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto& ctx = psi.ctx();
  Eigen::MatrixXcd G(n, n);
  parallel_for(n, exec, [&](std::ptrdiff_t j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto p = adjoint_times(basis[i], basis[j]);
      G(i, j) = psi(p.index) * ctx.lambda_pow(p.phase);
    }
  });
  return G;
}

Eigen::MatrixXcd d_matrix_kernel(const RnDerivative& D, const std::vector<Index4>& basis,
                                 Exec exec) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto& ctx = D.ctx();
  Eigen::MatrixXcd M(n, n);
  parallel_for(n, exec, [&](std::ptrdiff_t j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto p = adjoint_times(basis[i], basis[j]);
      // tau2(e_{h-g} d) picks the coefficient of d at g - h.
      const Index4 x = -p.index;
      const cplx dx = D.d_coefficient(x);
      if (dx == cplx{}) {
        M(i, j) = 0.0;
        continue;
      }
      const auto q = bi_mono_mul(p.index, x);
      M(i, j) = dx * ctx.lambda_pow(p.phase + q.phase);
    }
  });
  return M;
}

}  // namespace rotinv
