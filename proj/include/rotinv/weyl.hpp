#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "rotinv/context.hpp"
#include "rotinv/index.hpp"

namespace rotinv {

/// Coefficients whose modulus falls below this are dropped after every ring operation.
inline constexpr double kPruneThreshold = 1e-14;

/// lambda^phase * (normal-ordered monomial at `index`), phase kept as an exact integer.
template <std::size_t N>
struct PhasedMonomial {
  long phase = 0;
  std::array<int, N> index{};

  cplx value(const AlgebraContext& ctx) const { return ctx.lambda_pow(phase); }
  bool operator==(const PhasedMonomial&) const = default;
};

using PhasedIndex2 = PhasedMonomial<2>;
using PhasedIndex4 = PhasedMonomial<4>;

/// Finitely supported coefficient map Z^N -> C over normal-ordered monomials.
///
/// N = 2 is the rotation algebra on U, V. N = 4 is the algebra generated by
/// U_l, V_l, U_r, V_r with normal order U_l^a V_l^b U_r^c V_r^d.
template <std::size_t N>
class SparseLaurent {
public:
  using Index = std::array<int, N>;
  using Map = std::map<Index, cplx>;

  SparseLaurent() = default;
  explicit SparseLaurent(Map coeffs) : coeffs_(std::move(coeffs)) { prune(); }
  SparseLaurent(std::initializer_list<std::pair<const Index, cplx>> terms) : coeffs_(terms) {
    prune();
  }

  static SparseLaurent identity() { return monomial(Index{}); }
  static SparseLaurent monomial(const Index& idx, cplx c = 1.0) {
    SparseLaurent r;
    if (std::abs(c) >= kPruneThreshold) r.coeffs_[idx] = c;
    return r;
  }

  const Map& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  cplx coeff(const Index& idx) const {
    auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? cplx{} : it->second;
  }

  /// Largest |exponent| over the support (0 for the empty element).
  int support_radius() const {
    int r = 0;
    for (const auto& [idx, c] : coeffs_) r = std::max(r, linf_norm(idx));
    return r;
  }

  SparseLaurent& operator+=(const SparseLaurent& o) {
    for (const auto& [idx, c] : o.coeffs_) coeffs_[idx] += c;
    prune();
    return *this;
  }
  SparseLaurent& operator-=(const SparseLaurent& o) {
    for (const auto& [idx, c] : o.coeffs_) coeffs_[idx] -= c;
    prune();
    return *this;
  }
  SparseLaurent& operator*=(cplx s) {
    for (auto& [idx, c] : coeffs_) c *= s;
    prune();
    return *this;
  }

  friend SparseLaurent operator+(SparseLaurent a, const SparseLaurent& b) { return a += b; }
  friend SparseLaurent operator-(SparseLaurent a, const SparseLaurent& b) { return a -= b; }
  friend SparseLaurent operator*(cplx s, SparseLaurent a) { return a *= s; }

  /// Accumulate without pruning; call `prune` when done.
  void add_raw(const Index& idx, cplx c) { coeffs_[idx] += c; }
  void prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (std::abs(it->second) < kPruneThreshold)
        it = coeffs_.erase(it);
      else
        ++it;
    }
  }

private:
  Map coeffs_;
};

using WeylElement = SparseLaurent<2>;
using BiWeylElement = SparseLaurent<4>;

/// Max |coefficient|; the "coefficient norm" used by all tolerances.
template <std::size_t N>
double coeff_norm(const SparseLaurent<N>& a) {
  double m = 0.0;
  for (const auto& [idx, c] : a.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------------------
// Rotation algebra A_theta on U, V with UV = lambda VU.
// ---------------------------------------------------------------------------

/// (U^m1 V^m2)(U^n1 V^n2) = lambda^{-m2 n1} U^{m1+n1} V^{m2+n2}.
///
/// Only V^m2 U^n1 is out of order. From UV = lambda VU we get VU = lambda^{-1} UV,
/// and moving each of the m2 copies of V past each of the n1 copies of U costs
/// one factor lambda^{-1}; the count is m2 n1 for any signs of the exponents.
inline PhasedIndex2 mono_mul(const Index2& m, const Index2& n) {
  return {-static_cast<long>(m[1]) * n[0], m + n};
}

WeylElement mul(const WeylElement& a, const WeylElement& b, const AlgebraContext& ctx);

/// (c U^m V^n)^* = conj(c) lambda^{-mn} U^{-m} V^{-n}.
WeylElement adjoint(const WeylElement& a, const AlgebraContext& ctx);

/// Normalized trace: the coefficient of the identity.
cplx trace(const WeylElement& a);

/// trace(a * b) without forming the product.
cplx trace_product(const WeylElement& a, const WeylElement& b, const AlgebraContext& ctx);

/// a * (U^n1 V^n2).
WeylElement mul_monomial_right(const WeylElement& a, const Index2& n, const AlgebraContext& ctx);
/// (U^m1 V^m2) * a.
WeylElement mul_monomial_left(const Index2& m, const WeylElement& a, const AlgebraContext& ctx);

// ---------------------------------------------------------------------------
// Algebra of left and right multiplications on L^2(A_theta, tau).
// ---------------------------------------------------------------------------

/// Product of normal-ordered monomials x = (a,b,c,d), y = (a',b',c',d').
///
/// Left pair: U_l V_l = lambda V_l U_l, so V_l^b U_l^a' = lambda^{-b a'} U_l^a' V_l^b.
/// Right pair: U_r V_r x = x V U = lambda^{-1} x U V = lambda^{-1} V_r U_r x, hence
/// U_r V_r = lambda^{-1} V_r U_r and V_r^d U_r^c' = lambda^{d c'} U_r^c' V_r^d.
/// Left and right generators commute.
inline PhasedIndex4 bi_mono_mul(const Index4& x, const Index4& y) {
  return {-static_cast<long>(x[1]) * y[0] + static_cast<long>(x[3]) * y[2], x + y};
}

/// (U_l^a V_l^b U_r^c V_r^d)^* = lambda^{cd - ab} U_l^-a V_l^-b U_r^-c V_r^-d.
inline PhasedIndex4 bi_mono_adjoint(const Index4& x) {
  return {static_cast<long>(x[2]) * x[3] - static_cast<long>(x[0]) * x[1], -x};
}

BiWeylElement bi_mul(const BiWeylElement& x, const BiWeylElement& y, const AlgebraContext& ctx);
BiWeylElement bi_adjoint(const BiWeylElement& x, const AlgebraContext& ctx);

/// tau^(2): the coefficient of the identity, i.e. <xi_0, x xi_0> with xi_0 = 1 (x) 1.
cplx tau2(const BiWeylElement& x);

/// Embeds a rotation-algebra element as a pure-left element U_l^a V_l^b.
BiWeylElement as_left(const WeylElement& a);

// ---------------------------------------------------------------------------
// Crossed-product generators W1..W4.
// ---------------------------------------------------------------------------

enum class Generator { W1 = 1, W2 = 2, W3 = 3, W4 = 4 };

using WWord = std::vector<std::pair<Generator, int>>;

/// Images of W1..W4 as exponent vectors:
///   W1 -> U_l,  W2 -> V_r,  W3 -> V_l V_r^{-1},  W4 -> U_l^{-1} U_r.
/// These satisfy W1W2 = W2W1, W3W4 = W4W3, W1W3 = lambda W3W1, W2W4 = lambda W4W2
/// together with W1W4 = W4W1 and W2W3 = W3W2.
Index4 eta_generator(Generator g);

/// Ordered product of generator powers, with the phase tracked exactly.
PhasedIndex4 eta_word_monomial(const WWord& word);

BiWeylElement eta_translate(const WWord& word, const AlgebraContext& ctx);

/// Exponents (x1..x4) with eta(W1^x1 W2^x2 W3^x3 W4^x4) = lambda^phase * e_g.
struct EtaPreimage {
  std::array<int, 4> exponents{};
  long phase = 0;
};
EtaPreimage eta_preimage(const Index4& g);

/// Integer power of a phased monomial using bi_mono_mul and bi_mono_adjoint.
PhasedIndex4 bi_mono_pow(const Index4& x, int n);

}  // namespace rotinv
