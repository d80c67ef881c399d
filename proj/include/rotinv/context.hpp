#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace rotinv {

using cplx = std::complex<double>;

/// Rotation parameter of the algebra UV = lambda VU, lambda = exp(2 pi i theta).
///
/// Phases are carried as integer exponents of lambda and only turned into
/// complex numbers by `lambda_pow`. In rational mode theta = p/q and exponents
/// are reduced modulo q, so lambda^q == 1 holds exactly at the table level.
class AlgebraContext {
public:
  /// Irrational-by-intent theta in (0, 1).
  explicit AlgebraContext(double theta);
  /// theta = p / q with gcd(p, q) = 1 and 0 < p < q.
  static AlgebraContext rational(int p, int q);
  /// The golden-ratio conjugate (sqrt(5) - 1) / 2.
  static AlgebraContext golden();

  double theta() const { return theta_; }
  cplx lambda() const { return lambda_pow(1); }
  const std::optional<std::pair<int, int>>& rational_mode() const { return rational_; }

  /// lambda^n.
  cplx lambda_pow(long n) const;

private:
  AlgebraContext() = default;
  void build_table();

  double theta_ = 0.0;
  std::optional<std::pair<int, int>> rational_;
  long table_half_ = 0;
  std::shared_ptr<const std::vector<cplx>> table_;
};

}  // namespace rotinv
