#include "rotinv/cpmap.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "rotinv/errors.hpp"

namespace rotinv {

namespace {
constexpr double kUnitaryTol = 1e-10;

void require_unitary(const WeylElement& u, const AlgebraContext& ctx, const char* name) {
  const double defect = unitarity_defect(u, ctx);
  if (defect >= kUnitaryTol)
    throw Error(ErrorKind::NonUnitary,
                std::string(name) + " fails u*u = 1 with defect " + std::to_string(defect));
}
}  // namespace

CpMap::CpMap(std::vector<WeylElement> kraus, AlgebraContext ctx, bool unital_expected)
    : kraus_(std::move(kraus)), ctx_(std::move(ctx)) {
  if (kraus_.empty()) throw Error(ErrorKind::Validation, "Kraus list must be nonempty");
  kraus_adj_.reserve(kraus_.size());
  for (const auto& r : kraus_) kraus_adj_.push_back(adjoint(r, ctx_));
  if (unital_expected && !is_unital(*this, 1e-10))
    throw Error(ErrorKind::Validation, "map flagged unital but |T(1) - 1| >= 1e-10");
}

std::vector<Index2> CpMap::support() const {
  std::set<Index2> s;
  for (const auto& r : kraus_)
    for (const auto& [idx, c] : r.coeffs()) s.insert(idx);
  return {s.begin(), s.end()};
}

int CpMap::support_diameter() const {
  const auto s = support();
  int d = 0;
  for (const auto& x : s)
    for (const auto& y : s) d = std::max(d, linf_norm(x - y));
  return d;
}

WeylElement apply(const CpMap& T, const WeylElement& a) {
  WeylElement out;
  for (std::size_t i = 0; i < T.kraus().size(); ++i)
    out += mul(mul(T.kraus_adjoint()[i], a, T.ctx()), T.kraus()[i], T.ctx());
  return out;
}

bool is_unital(const CpMap& T, double tol) {
  return coeff_norm(apply(T, WeylElement::identity()) - WeylElement::identity()) < tol;
}

double unitarity_defect(const WeylElement& u, const AlgebraContext& ctx) {
  const auto ustar = adjoint(u, ctx);
  const auto one = WeylElement::identity();
  return std::max(coeff_norm(mul(ustar, u, ctx) - one), coeff_norm(mul(u, ustar, ctx) - one));
}

CpMap conjugate(const CpMap& T, const WeylElement& u) {
  require_unitary(u, T.ctx(), "u");
  std::vector<WeylElement> kraus;
  for (const auto& r : T.kraus()) kraus.push_back(mul(u, r, T.ctx()));
  return CpMap(std::move(kraus), T.ctx());
}

CpMap twist(const CpMap& T, const WeylElement& u, const WeylElement& v) {
  require_unitary(u, T.ctx(), "u");
  require_unitary(v, T.ctx(), "v");
  std::vector<WeylElement> kraus;
  for (const auto& r : T.kraus()) kraus.push_back(mul(mul(u, r, T.ctx()), v, T.ctx()));
  return CpMap(std::move(kraus), T.ctx());
}

}  // namespace rotinv
