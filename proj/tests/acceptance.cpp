// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"

#include "rotinv/errors.hpp"
#include "rotinv/gns.hpp"
#include "rotinv/invariants.hpp"
#include "rotinv/reps.hpp"
#include "rotinv/rn.hpp"
#include "rotinv/state.hpp"

using namespace rotinv;
using namespace rotinv::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}
std::string sci(double v) { return fmt("%.2e", v); }

struct NamedMap {
  std::string name;
  CpMap map;
};

std::vector<NamedMap> test_maps(const AlgebraContext& ctx, int random_count) {
  std::vector<NamedMap> maps{{"id", identity_map(ctx)},
                             {"R=U", u_map(ctx)},
                             {"R=(U+V)/sqrt2", single_kraus(normalized(u_plus_v(), ctx), ctx)}};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < random_count; ++i)
    maps.push_back({"random" + std::to_string(i + 1), random_map(rng, 1, ctx)});
  return maps;
}

CpMap mixture(const AlgebraContext& ctx) {
  const double s = std::sqrt(0.5);
  return CpMap({WeylElement::monomial({0, 0}, s), WeylElement::monomial({1, 0}, s)}, ctx);
}

// 1
Outcome weyl_suite() {
  const auto t0 = Clock::now();
  const auto ctx = golden();
  std::mt19937_64 rng(1);
  double assoc = 0, star = 0, tr = 0, pos = 0, min_pos = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_element(rng, 2, 0.5);
    const auto b = random_element(rng, 2, 0.5);
    const auto c = random_element(rng, 2, 0.5);
    assoc = std::max(assoc, distance(mul(mul(a, b, ctx), c, ctx), mul(a, mul(b, c, ctx), ctx)));
    star = std::max(star, distance(adjoint(mul(a, b, ctx), ctx), mul(adjoint(b, ctx), adjoint(a, ctx), ctx)));
    tr = std::max(tr, std::abs(trace(mul(a, b, ctx)) - trace(mul(b, a, ctx))));
    double l2 = 0;
    for (const auto& [m, v] : a.coeffs()) l2 += std::norm(v);
    const cplx t = trace(mul(adjoint(a, ctx), a, ctx));
    pos = std::max(pos, std::abs(t - l2));
    min_pos = std::min(min_pos, t.real());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool ok = assoc < 1e-12 && star < 1e-12 && tr < 1e-12 && pos < 1e-12 && min_pos >= 0 && secs < 10;
  return {ok, "assoc=" + sci(assoc) + " star=" + sci(star) + " trace=" + sci(tr) + " positivity=" + sci(pos) +
                  " time=" + fmt("%.2fs", secs)};
}

// 2
Outcome eta_relations() {
  long worst = 0;
  auto rel = [&](Generator a, Generator b, long expected) {
    for (int x = -3; x <= 3; ++x)
      for (int y = -3; y <= 3; ++y) {
        const auto ab = eta_word_monomial({{a, x}, {b, y}});
        const auto ba = eta_word_monomial({{b, y}, {a, x}});
        if (ab.index != ba.index) worst = std::max(worst, 1000L);
        worst = std::max(worst, std::abs(ab.phase - ba.phase - expected * x * y));
      }
  };
  rel(Generator::W1, Generator::W2, 0);
  rel(Generator::W3, Generator::W4, 0);
  rel(Generator::W1, Generator::W3, 1);
  rel(Generator::W2, Generator::W4, 1);
  return {worst == 0, "max integer phase residual=" + std::to_string(worst) + " over exponents |x|,|y|<=3"};
}

// 3
Outcome rn_regression() {
  const auto ctx = golden();
  const auto D = rn_oracle(u_map(ctx), 3);
  bool shape = true;
  int match_plain = 0, match_plus = 0, total = 0;
  for (int k1 = -3; k1 <= 3; ++k1)
    for (int k2 = -3; k2 <= 3; ++k2) {
      const auto& p = D.components().at({k1, k2});
      ++total;
      if (p.size() != 1 || p.begin()->first != Index2{0, k2 - k1} ||
          std::abs(std::abs(p.begin()->second) - 1.0) > 1e-12) {
        shape = false;
        continue;
      }
      const cplx c = p.begin()->second;
      const long base = static_cast<long>(k2) * k2 - static_cast<long>(k1) * k2;
      if (std::abs(c - ctx.lambda_pow(base)) < 1e-12) ++match_plain;
      if (std::abs(c - ctx.lambda_pow(base + k1)) < 1e-12) ++match_plus;
    }
  // Locked convention: lambda^{k2^2 - k1 k2 + k1}.
  const bool ok = shape && match_plus == total;
  return {ok, std::string("single monomial z2^(k2-k1)=") + (shape ? "yes" : "no") +
                  "; phase lambda^(k2^2-k1k2+k1) matches " + std::to_string(match_plus) + "/" +
                  std::to_string(total) + ", lambda^(k2^2-k1k2) matches " + std::to_string(match_plain) + "/" +
                  std::to_string(total)};
}

// 4
Outcome closed_vs_oracle() {
  const auto t0 = Clock::now();
  const auto ctx = golden();
  std::vector<CpMap> maps{single_kraus(u_plus_v(), ctx)};
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) maps.push_back(single_kraus(random_element(rng, 2), ctx));
  double agree = 0, imag = 0, min_real = 1e300, sym = 0;
  for (const auto& T : maps) {
    const auto D = rn_oracle(T, 2);
    for (const auto& [k, p] : D.components()) agree = std::max(agree, component_distance(rn_component_closed(T, k), p));
    const auto p00 = rn_component_closed(T, {0, 0});
    const auto ext = grid_extrema(p00, 64);
    imag = std::max(imag, ext.max_imag);
    sym = std::max(sym, conjugate_symmetry_defect(p00));
    min_real = std::min(min_real, ext.min_real);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool ok = agree < 1e-10 && imag < 1e-10 && min_real >= -1e-12 && secs < 30;
  return {ok, "21 maps, |k_i|<=2: max |closed-oracle|=" + sci(agree) + "; D^(0,0) on 64x64: max|Im|=" + sci(imag) +
                  " min Re=" + sci(min_real) + " coeff symmetry=" + sci(sym) + " time=" + fmt("%.2fs", secs)};
}

// 5
Outcome defining_identity() {
  const auto ctx = golden();
  double worst = 0;
  std::size_t count = 0;
  for (const auto& [name, T] : test_maps(ctx, 5)) {
    const auto d = rn_oracle(T, 2).d_element();
    const StateFunctional psi(T);
    for (const auto& b : Box2::centered(2).points())
      for (const auto& c : Box2::centered(2).points()) {
        const Index4 g{b[0], b[1], c[0], c[1]};
        worst = std::max(worst, std::abs(psi(g) - tau2(bi_mul(BiWeylElement::monomial(g), d, ctx))));
        ++count;
      }
  }
  return {worst < 1e-10, "8 maps x box [-2,2]^4 (" + std::to_string(count) + " checks): max residual=" + sci(worst)};
}

struct MapInvariants {
  std::string name;
  InvariantSet c5, c6;
  std::array<InvariantSet, 3> conj;
  double seconds = 0;
};

double deviation(const InvariantSet& a, const InvariantSet& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.heat.size(); ++i) d = std::max(d, std::abs(a.heat[i] - b.heat[i]));
  d = std::max(d, std::abs(a.projection_spectral - b.projection_spectral));
  return std::max(d, std::abs(a.projection_lsq - b.projection_lsq));
}

double drift(const InvariantSet& a, const InvariantSet& b) { return deviation(a, b); }

// 6 and 7 share one computation.
std::vector<MapInvariants> invariants_for_all() {
  const auto ctx = golden();
  const std::vector<double> ts{0.5, 1.0, 2.0};
  const std::array<WeylElement, 3> us{monomial_unitary(1, 0), monomial_unitary(0, 1), monomial_unitary(1, 1)};
  std::vector<MapInvariants> out;
  for (const auto& [name, T] : test_maps(ctx, 2)) {
    const auto t0 = Clock::now();
    MapInvariants mi;
    mi.name = name;
    mi.c6 = compute_invariants(T, ts, 6);
    mi.c5 = compute_invariants(T, ts, 5);
    for (std::size_t i = 0; i < us.size(); ++i) mi.conj[i] = compute_invariants(conjugate(T, us[i]), ts, 6);
    mi.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(mi));
  }
  return out;
}

Outcome invariance(const std::vector<MapInvariants>& all) {
  bool ok = true;
  std::ostringstream s;
  for (const auto& mi : all) {
    double dev = 0;
    for (const auto& c : mi.conj) dev = std::max(dev, deviation(mi.c6, c));
    ok = ok && dev < 1e-6 && mi.seconds < 120;
    s << "\n      " << mi.name << ": heat(0.5,1,2)=" << fmt("%.6f", mi.c6.heat[0]) << "," << fmt("%.6f", mi.c6.heat[1])
      << "," << fmt("%.6f", mi.c6.heat[2]) << " P=" << fmt("%.6f", mi.c6.projection_spectral)
      << " max dev=" << sci(dev) << " drift(5->6)=" << sci(drift(mi.c5, mi.c6)) << " time=" << fmt("%.1fs", mi.seconds);
  }
  return {ok, "cutoff 6, u in {U, V, UV}:" + s.str()};
}

Outcome route_agreement(const std::vector<MapInvariants>& all) {
  double worst = 0;
  bool deficient = false;
  for (const auto& mi : all)
    for (const auto* inv : {&mi.c5, &mi.c6, &mi.conj[0], &mi.conj[1], &mi.conj[2]}) {
      worst = std::max(worst, std::abs(inv->projection_spectral - inv->projection_lsq));
      deficient = deficient || inv->lsq.rank_deficient;
    }
  return {worst < 1e-6, "max |spectral - least squares| over cutoffs 5, 6 and conjugates=" + sci(worst) +
                            (deficient ? " (rank-deficient systems reported)" : "")};
}

// 8
Outcome representation_suite() {
  std::mt19937_64 rng(8);
  double unit = 0, rel = 0, gauge = 0, ident = 0, sens = 1e300;
  for (int q : {5, 7})
    for (int m : {1, 2}) {
      const auto spec = random_grid_spec(rng, 2, q, m);
      const auto n = static_cast<std::size_t>(q) * q;
      const auto reps = build_rep(spec);
      unit = std::max(unit, unitarity_residual(reps));
      rel = std::max(rel, relations_residual(reps));
      const std::vector<Eigen::MatrixXcd> I(n, Eigen::MatrixXcd::Identity(m, m));
      ident = std::max(ident, cocycle_equiv_residual(spec, spec, I));
      const auto W = random_field(rng, m, n);
      const auto other = gauge_transform(spec, W);
      gauge = std::max(gauge, cocycle_equiv_residual(spec, other, W));
      auto noisy = W;
      for (auto& w : noisy) w = w * near_identity(rng, m, 1e-3);
      sens = std::min(sens, cocycle_equiv_residual(spec, other, noisy));
    }
  const bool ok = unit < 1e-10 && rel < 1e-12 && ident == 0.0 && gauge < 1e-12 && sens >= 1e-4;
  return {ok, "q in {5,7}, m in {1,2}: unitarity=" + sci(unit) + " relations=" + sci(rel) +
                  " identity gauge=" + sci(ident) + " constructed gauge=" + sci(gauge) +
                  " min residual under 1e-3 noise=" + sci(sens)};
}

// 9
Outcome gns_suite() {
  const auto ctx = golden();
  double min_eig = 1e300, recon = 0;
  for (const auto& [name, T] : test_maps(ctx, 2)) {
    const StateFunctional psi(T);
    const auto g = gns_operators(psi, 3);
    min_eig = std::min(min_eig, g.gram_eigenvalues.minCoeff());
    recon = std::max(recon, reconstruction_residual(g, psi));
  }
  const auto pure = purity_evidence(u_map(ctx), 3);
  const auto mixed = purity_evidence(mixture(ctx), 4);
  const bool ok = min_eig > -1e-10 && recon < 1e-8 && pure.lower.dimension == 1 && pure.upper.dimension == 1 &&
                  mixed.stable && mixed.lower.dimension >= 2 && mixed.upper.dimension >= 2;
  return {ok, "Gram min eigenvalue=" + sci(min_eig) + " reconstruction=" + sci(recon) +
                  "; U*aU: dim " + std::to_string(pure.lower.dimension) + "," +
                  std::to_string(pure.upper.dimension) + " at cutoffs 3,4; (a+U*aU)/2: dim " +
                  std::to_string(mixed.lower.dimension) + "," + std::to_string(mixed.upper.dimension) +
                  " at cutoffs 4,5 (" + mixed.verdict + ")"};
}

// 10
Outcome bijection() {
  const auto ctx = golden();
  double worst = 0;
  for (const auto& [name, T] : test_maps(ctx, 2)) {
    const auto a = cp_from_state(StateFunctional(T), Box2::centered(2), 2);
    const auto b = action_table_direct(T, Box2::centered(2), 2);
    for (const auto& [k, m] : b.action) worst = std::max(worst, (m - a.action.at(k)).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-10, "a in [-2,2]^2, 25x25 matrix elements: max residual=" + sci(worst)};
}

// 11
Outcome extendibility() {
  const auto ctx = golden();
  bool exact = true;
  std::size_t densities = 0;
  auto maps = test_maps(ctx, 2);
  maps.push_back({"mixture", mixture(ctx)});
  for (const auto& [name, T] : maps) {
    const auto cert = extendibility_certificate(T, Box2::centered(2));
    for (const auto& d : cert.densities) {
      exact = exact && mu_k(T, d.k, d.window).coeffs == d.coeffs;
      ++densities;
    }
  }
  const auto id = identity_map(ctx);
  const auto mu = mu_k(id, {0, 0}, default_mu_window(id));
  const bool lebesgue = mu.coeffs == std::map<Index2, cplx>{{{0, 0}, cplx{1.0}}};
  return {exact && lebesgue, std::to_string(densities) + " densities bit-identical to mu_k: " +
                                 (exact ? "yes" : "no") + "; mu_id^(0,0) = Lebesgue: " + (lebesgue ? "yes" : "no")};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << o.detail << std::endl;
  };

  report(1, "Weyl algebra suite", weyl_suite);
  report(2, "eta relations", eta_relations);
  report(3, "Radon-Nikodym regression R=U", rn_regression);
  report(4, "closed form vs oracle", closed_vs_oracle);
  report(5, "defining identity psi(b) = tau2(D b)", defining_identity);
  std::vector<MapInvariants> all;
  std::string inv_error;
  try {
    all = invariants_for_all();
  } catch (const std::exception& e) {
    inv_error = e.what();
  }
  report(6, "invariance under conjugation", [&] {
    return inv_error.empty() ? invariance(all) : Outcome{false, "exception: " + inv_error};
  });
  report(7, "projection-trace routes", [&] {
    return inv_error.empty() ? route_agreement(all) : Outcome{false, "exception: " + inv_error};
  });
  report(8, "representation suite", representation_suite);
  report(9, "GNS suite", gns_suite);
  report(10, "bijection round trip", bijection);
  report(11, "extendibility certificates", extendibility);

  std::cout << (failures == 0 ? "all 11 criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
