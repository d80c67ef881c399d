#include "rotinv/context.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/index.hpp"

namespace rotinv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::MultiKraus: return "MultiKraus";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NonQuasiInvariant: return "NonQuasiInvariant";
    case ErrorKind::NonUnitaryCocycle: return "NonUnitaryCocycle";
    case ErrorKind::MeasureMismatch: return "MeasureMismatch";
    case ErrorKind::Validation: return "Validation";
  }
  return "Unknown";
}

std::vector<Index4> l1_ball4(int radius) {
  std::vector<Index4> out;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      for (int c = -radius; c <= radius; ++c)
        for (int d = -radius; d <= radius; ++d) {
          Index4 x{a, b, c, d};
          if (l1_norm(x) <= radius) out.push_back(x);
        }
  return out;
}

std::vector<Index2> l1_ball2(int radius) {
  std::vector<Index2> out;
  for (int a = -radius; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b)
      if (std::abs(a) + std::abs(b) <= radius) out.push_back({a, b});
  return out;
}

std::string to_string(const Index2& x) {
  return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + ")";
}

std::string to_string(const Index4& x) {
  return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) +
         "," + std::to_string(x[3]) + ")";
}

namespace {
constexpr long kTableHalf = 4096;
}

AlgebraContext::AlgebraContext(double theta) : theta_(theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw Error(ErrorKind::Validation, "theta must lie in (0,1), got " + std::to_string(theta));
  build_table();
}

AlgebraContext AlgebraContext::rational(int p, int q) {
  if (!(q > 1 && p > 0 && p < q) || std::gcd(p, q) != 1)
    throw Error(ErrorKind::Validation, "rational mode needs coprime 0<p<q, got p=" +
                                          std::to_string(p) + " q=" + std::to_string(q));
  AlgebraContext ctx;
  ctx.theta_ = static_cast<double>(p) / q;
  ctx.rational_ = std::make_pair(p, q);
  ctx.build_table();
  return ctx;
}

AlgebraContext AlgebraContext::golden() { return AlgebraContext((std::sqrt(5.0) - 1.0) / 2.0); }

void AlgebraContext::build_table() {
  auto table = std::make_shared<std::vector<cplx>>();
  if (rational_) {
    const auto [p, q] = *rational_;
    (void)p;
    table->resize(q);
    for (int j = 0; j < q; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / q;
      (*table)[j] = {std::cos(angle), std::sin(angle)};
    }
    table_half_ = 0;
  } else {
    table_half_ = kTableHalf;
    table->resize(2 * kTableHalf + 1);
    for (long n = -kTableHalf; n <= kTableHalf; ++n) {
      const double x = theta_ * static_cast<double>(n);
      const double frac = x - std::round(x);
      (*table)[n + kTableHalf] = std::polar(1.0, 2.0 * std::numbers::pi * frac);
    }
  }
  table_ = std::move(table);
}

cplx AlgebraContext::lambda_pow(long n) const {
  if (rational_) {
    const long q = rational_->second;
    long j = (static_cast<long>(rational_->first) * (n % q)) % q;
    if (j < 0) j += q;
    return (*table_)[j];
  }
  if (n >= -table_half_ && n <= table_half_) return (*table_)[n + table_half_];
  const double x = theta_ * static_cast<double>(n);
  return std::polar(1.0, 2.0 * std::numbers::pi * (x - std::round(x)));
}

}  // namespace rotinv
