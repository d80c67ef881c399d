#include "rotinv/weyl.hpp"

namespace rotinv {

WeylElement mul(const WeylElement& a, const WeylElement& b, const AlgebraContext& ctx) {
  WeylElement r;
  for (const auto& [m, ca] : a.coeffs())
    for (const auto& [n, cb] : b.coeffs()) {
      const auto p = mono_mul(m, n);
      r.add_raw(p.index, ca * cb * ctx.lambda_pow(p.phase));
    }
  r.prune();
  return r;
}

WeylElement adjoint(const WeylElement& a, const AlgebraContext& ctx) {
  WeylElement r;
  for (const auto& [m, c] : a.coeffs()) {
    const long phase = -static_cast<long>(m[0]) * m[1];
    r.add_raw(-m, std::conj(c) * ctx.lambda_pow(phase));
  }
  r.prune();
  return r;
}

cplx trace(const WeylElement& a) { return a.coeff({0, 0}); }

cplx trace_product(const WeylElement& a, const WeylElement& b, const AlgebraContext& ctx) {
  const auto& small = a.size() <= b.size() ? a : b;
  const bool a_small = &small == &a;
  cplx s{};
  for (const auto& [x, c] : small.coeffs()) {
    const Index2 y = -x;
    const cplx other = a_small ? b.coeff(y) : a.coeff(y);
    if (other == cplx{}) continue;
    // a_x b_{-x}: phase of e_x e_{-x}, or of e_{-x} e_x when iterating over b.
    const auto p = a_small ? mono_mul(x, y) : mono_mul(y, x);
    s += c * other * ctx.lambda_pow(p.phase);
  }
  return s;
}

WeylElement mul_monomial_right(const WeylElement& a, const Index2& n, const AlgebraContext& ctx) {
  WeylElement r;
  for (const auto& [m, c] : a.coeffs()) {
    const auto p = mono_mul(m, n);
    r.add_raw(p.index, c * ctx.lambda_pow(p.phase));
  }
  r.prune();
  return r;
}

WeylElement mul_monomial_left(const Index2& m, const WeylElement& a, const AlgebraContext& ctx) {
  WeylElement r;
  for (const auto& [n, c] : a.coeffs()) {
    const auto p = mono_mul(m, n);
    r.add_raw(p.index, c * ctx.lambda_pow(p.phase));
  }
  r.prune();
  return r;
}

BiWeylElement bi_mul(const BiWeylElement& x, const BiWeylElement& y, const AlgebraContext& ctx) {
  BiWeylElement r;
  for (const auto& [g, cx] : x.coeffs())
    for (const auto& [h, cy] : y.coeffs()) {
      const auto p = bi_mono_mul(g, h);
      r.add_raw(p.index, cx * cy * ctx.lambda_pow(p.phase));
    }
  r.prune();
  return r;
}

BiWeylElement bi_adjoint(const BiWeylElement& x, const AlgebraContext& ctx) {
  BiWeylElement r;
  for (const auto& [g, c] : x.coeffs()) {
    const auto p = bi_mono_adjoint(g);
    r.add_raw(p.index, std::conj(c) * ctx.lambda_pow(p.phase));
  }
  r.prune();
  return r;
}

cplx tau2(const BiWeylElement& x) { return x.coeff({0, 0, 0, 0}); }

BiWeylElement as_left(const WeylElement& a) {
  BiWeylElement r;
  for (const auto& [m, c] : a.coeffs()) r.add_raw({m[0], m[1], 0, 0}, c);
  r.prune();
  return r;
}

Index4 eta_generator(Generator g) {
  switch (g) {
    case Generator::W1: return {1, 0, 0, 0};
    case Generator::W2: return {0, 0, 0, 1};
    case Generator::W3: return {0, 1, 0, -1};
    case Generator::W4: return {-1, 0, 1, 0};
  }
  return {0, 0, 0, 0};
}

PhasedIndex4 bi_mono_pow(const Index4& x, int n) {
  PhasedIndex4 base{0, x};
  if (n < 0) {
    base = bi_mono_adjoint(x);
    n = -n;
  }
  PhasedIndex4 acc{0, {0, 0, 0, 0}};
  for (int i = 0; i < n; ++i) {
    const auto p = bi_mono_mul(acc.index, base.index);
    acc = {acc.phase + base.phase + p.phase, p.index};
  }
  return acc;
}

PhasedIndex4 eta_word_monomial(const WWord& word) {
  PhasedIndex4 acc{0, {0, 0, 0, 0}};
  for (const auto& [gen, e] : word) {
    const auto f = bi_mono_pow(eta_generator(gen), e);
    const auto p = bi_mono_mul(acc.index, f.index);
    acc = {acc.phase + f.phase + p.phase, p.index};
  }
  return acc;
}

BiWeylElement eta_translate(const WWord& word, const AlgebraContext& ctx) {
  const auto m = eta_word_monomial(word);
  return BiWeylElement::monomial(m.index, ctx.lambda_pow(m.phase));
}

EtaPreimage eta_preimage(const Index4& g) {
  // W1^x1 W2^x2 W3^x3 W4^x4 has exponent vector (x1 - x4, x3, x4, x2 - x3).
  EtaPreimage pre;
  pre.exponents = {g[0] + g[2], g[1] + g[3], g[1], g[2]};
  const auto m = eta_word_monomial({{Generator::W1, pre.exponents[0]},
                                    {Generator::W2, pre.exponents[1]},
                                    {Generator::W3, pre.exponents[2]},
                                    {Generator::W4, pre.exponents[3]}});
  pre.phase = m.phase;
  return pre;
}

}  // namespace rotinv
