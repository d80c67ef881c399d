#include "rotinv/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rotinv/errors.hpp"
#include "rotinv/gns.hpp"
#include "rotinv/invariants.hpp"
#include "rotinv/io.hpp"
#include "rotinv/reps.hpp"
#include "rotinv/rn.hpp"
#include "rotinv/state.hpp"

namespace rotinv {

namespace {

struct Options {
  std::string map_file;
  std::string out_file;

  int box = 1;
  int kbox = 1;

  std::vector<int> k{0, 0};
  bool closed_form = false;
  bool oracle = false;

  std::vector<double> ts{0.5, 1.0, 2.0};
  int cutoff = 4;
  double rank_tol = kDefaultRankTol;

  std::vector<int> unitary{0, 0};

  std::string spec_file;
  bool check_relations = false;
  std::string equiv_file;
  std::string gauge_file;

  double purity_tol = 1e-8;
};

json meta_block(const std::string& command, const std::optional<AlgebraContext>& ctx) {
  json meta{{"tool", "rotinv"}, {"version", kVersion}, {"command", command}};
  if (ctx) {
    meta["theta"] = ctx->theta();
    meta["rational"] = ctx->rational_mode()
                           ? json{ctx->rational_mode()->first, ctx->rational_mode()->second}
                           : json(nullptr);
  }
  meta["prune_threshold"] = kPruneThreshold;
  return meta;
}

CpMap load_map(const Options& o) {
  if (o.map_file.empty()) throw Error(ErrorKind::Validation, "--map FILE is required");
  return cpmap_from_json(read_json_file(o.map_file));
}

json heat_json(const std::vector<double>& ts, const std::vector<double>& values) {
  json out = json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) out.push_back({{"t", ts[i]}, {"value", values[i]}});
  return out;
}

json invariants_json(const InvariantSet& s, const std::vector<double>& ts) {
  return {{"heat_trace", heat_json(ts, s.heat)},
          {"projection_trace_spectral", s.projection_spectral},
          {"projection_trace_lsq", s.projection_lsq},
          {"lsq_rank", s.lsq.rank},
          {"lsq_size", s.lsq.size},
          {"lsq_rank_deficient", s.lsq.rank_deficient},
          {"route_difference", std::abs(s.projection_spectral - s.projection_lsq)},
          {"symmetrization_residual", s.symmetrization_residual}};
}

double max_drift(const InvariantSet& a, const InvariantSet& b) {
  double d = std::abs(a.projection_spectral - b.projection_spectral);
  d = std::max(d, std::abs(a.projection_lsq - b.projection_lsq));
  for (std::size_t i = 0; i < a.heat.size(); ++i) d = std::max(d, std::abs(a.heat[i] - b.heat[i]));
  return d;
}

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw Error(ErrorKind::Validation, "--cutoff must be >= 1, got " + std::to_string(cutoff));
}

json cmd_state(const Options& o) {
  const CpMap T = load_map(o);
  if (o.box < 0) throw Error(ErrorKind::Validation, "--box must be >= 0");
  const StateFunctional psi(T);
  json table = json::array();
  const int b = o.box;
  for (int a0 = -b; a0 <= b; ++a0)
    for (int a1 = -b; a1 <= b; ++a1)
      for (int a2 = -b; a2 <= b; ++a2)
        for (int a3 = -b; a3 <= b; ++a3) {
          const cplx v = psi({a0, a1, a2, a3});
          if (std::abs(v) < kPruneThreshold) continue;
          table.push_back({{"index", {a0, a1, a2, a3}}, {"value", complex_to_json(v)}});
        }
  json meta = meta_block("state", T.ctx());
  meta["box"] = b;
  return {{"meta", meta},
          {"normal_order", "U_l^a V_l^b U_r^c V_r^d"},
          {"psi", table},
          {"note", "indices with |psi| below the prune threshold are omitted"}};
}

json cmd_extendible(const Options& o) {
  const CpMap T = load_map(o);
  if (o.kbox < 0) throw Error(ErrorKind::Validation, "--kbox must be >= 0");
  const auto cert = extendibility_certificate(T, Box2::centered(o.kbox));
  json dens = json::array();
  for (const auto& fm : cert.densities) {
    json coeffs = json::array();
    for (const auto& [mn, c] : fm.coeffs)
      coeffs.push_back({{"pow", {mn[0], mn[1]}}, {"re", c.real()}, {"im", c.imag()}});
    dens.push_back({{"k", {fm.k[0], fm.k[1]}}, {"fourier_coefficients", coeffs}});
  }
  json meta = meta_block("extendible", T.ctx());
  meta["kbox"] = o.kbox;
  return {{"meta", meta},
          {"verdict", cert.verdict},
          {"support_bound", cert.support_bound},
          {"density_convention", "rho_k(z) = sum_m c_m conj(z)^m against normalized Lebesgue measure"},
          {"densities", dens},
          {"note", cert.note}};
}

json cmd_rn(const Options& o) {
  const CpMap T = load_map(o);
  if (o.k.size() != 2) throw Error(ErrorKind::Validation, "--k expects k1,k2");
  const Index2 k{o.k[0], o.k[1]};
  const bool both = o.closed_form == o.oracle;
  json meta = meta_block("rn", T.ctx());
  meta["k"] = {k[0], k[1]};
  json out{{"meta", meta}};
  std::optional<TrigPoly> closed, oracle;
  if (o.closed_form || both) {
    if (both && T.kraus().size() != 1) {
      out["closed_form_skipped"] = "multi-Kraus map; the closed form needs a single Kraus operator";
    } else {
      closed = rn_component_closed(T, k);
      out["closed_form"] = trig_to_json(*closed);
    }
  }
  if (o.oracle || both) {
    const auto D = rn_oracle(T, linf_norm(k));
    oracle = D.components().at(k);
    out["oracle"] = trig_to_json(*oracle);
    out["z_window"] = {{"center", {carrier_center(k)[0], carrier_center(k)[1]}},
                       {"radius", D.z_radius()}};
  }
  if (closed && oracle) out["agreement_residual"] = component_distance(*closed, *oracle);
  return out;
}

json cmd_invariants(const Options& o) {
  const CpMap T = load_map(o);
  require_cutoff(o.cutoff);
  const auto at = compute_invariants(T, o.ts, o.cutoff, o.rank_tol);
  const auto below = compute_invariants(T, o.ts, o.cutoff - 1, o.rank_tol);
  json meta = meta_block("invariants", T.ctx());
  meta["cutoff"] = o.cutoff;
  meta["rank_tol"] = o.rank_tol;
  return {{"meta", meta},
          {"at_cutoff", invariants_json(at, o.ts)},
          {"at_cutoff_minus_1", invariants_json(below, o.ts)},
          {"cutoff_drift", max_drift(at, below)}};
}

json cmd_equiv(const Options& o) {
  const CpMap T = load_map(o);
  require_cutoff(o.cutoff);
  if (o.unitary.size() != 2) throw Error(ErrorKind::Validation, "--unitary expects p,q");
  const auto u = monomial_unitary(o.unitary[0], o.unitary[1]);
  const auto r = invariance_report(T, u, o.ts, o.cutoff, o.rank_tol);
  const auto rb = invariance_report(T, u, o.ts, o.cutoff - 1, o.rank_tol);
  json meta = meta_block("equiv", T.ctx());
  meta["cutoff"] = o.cutoff;
  meta["rank_tol"] = o.rank_tol;
  meta["unitary"] = {o.unitary[0], o.unitary[1]};
  return {{"meta", meta},
          {"original", invariants_json(r.original, o.ts)},
          {"conjugated", invariants_json(r.conjugated, o.ts)},
          {"max_deviation", r.max_deviation},
          {"max_deviation_at_cutoff_minus_1", rb.max_deviation},
          {"cutoff_drift", std::max(max_drift(r.original, rb.original),
                                    max_drift(r.conjugated, rb.conjugated))}};
}

json cmd_rep(const Options& o) {
  if (o.spec_file.empty()) throw Error(ErrorKind::Validation, "--spec FILE is required");
  const RepSpec spec = repspec_from_json(read_json_file(o.spec_file));
  const auto reps = build_rep(spec);
  json meta = meta_block("rep", reps.ctx);
  meta["m"] = spec.m;
  meta["points"] = reps.points;
  meta["ergodicity"] = "not verified; asserted by the caller";
  json out{{"meta", meta}, {"unitarity_residual", unitarity_residual(reps)}};
  if (o.check_relations) out["relations_residual"] = relations_residual(reps);
  if (!o.equiv_file.empty()) {
    const RepSpec other = repspec_from_json(read_json_file(o.equiv_file));
    std::vector<Eigen::MatrixXcd> W;
    if (o.gauge_file.empty())
      W.assign(reps.points, Eigen::MatrixXcd::Identity(spec.m, spec.m));
    else
      W = matrix_field_from_json(read_json_file(o.gauge_file), spec.m);
    out["cocycle_equiv_residual"] = cocycle_equiv_residual(spec, other, W);
    out["gauge"] = o.gauge_file.empty() ? "identity" : o.gauge_file;
  }
  return out;
}

json purity_json(const PurityReport& p) {
  return {{"cutoff", p.cutoff},
          {"quotient_rank", p.quotient_rank},
          {"vector_radius", p.vector_radius},
          {"relation_radius", p.relation_radius},
          {"null_relations", p.relations},
          {"commutant_dimension", p.dimension},
          {"largest_zero_singular_value", p.gap_below},
          {"smallest_nonzero_singular_value",
           std::isfinite(p.gap_above) ? json(p.gap_above) : json(nullptr)},
          {"flag", p.flag}};
}

json cmd_purity(const Options& o) {
  const CpMap T = load_map(o);
  if (o.cutoff < 0) throw Error(ErrorKind::Validation, "--cutoff must be >= 0");
  const auto ev = purity_evidence(T, o.cutoff, o.purity_tol);
  json meta = meta_block("purity", T.ctx());
  meta["cutoff"] = o.cutoff;
  meta["tol"] = o.purity_tol;
  meta["null_tol"] = kGnsNullTol;
  return {{"meta", meta},
          {"probes", {purity_json(ev.lower), purity_json(ev.upper)}},
          {"stable", ev.stable},
          {"verdict", ev.verdict}};
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Invariants of completely positive maps on the rotation algebra", "rotinv"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_option("--map", o.map_file, "CP map spec (JSON)");
  app.add_option("--out", o.out_file, "write the report here instead of stdout");

  auto* state = app.add_subcommand("state", "table of psi_T on a monomial box");
  state->add_option("--box", o.box, "box radius in Z^4")->capture_default_str();

  auto* ext = app.add_subcommand("extendible", "extendibility certificate");
  ext->add_option("--kbox", o.kbox, "k box radius")->capture_default_str();

  auto* rn = app.add_subcommand("rn", "Radon-Nikodym component D^(k)");
  rn->add_option("--k", o.k, "k1,k2")->delimiter(',')->expected(2)->required();
  rn->add_flag("--closed-form", o.closed_form, "closed-form route only");
  rn->add_flag("--oracle", o.oracle, "oracle route only");

  auto* inv = app.add_subcommand("invariants", "heat traces and projection traces");
  inv->add_option("--t", o.ts, "heat-trace times")->delimiter(',')->capture_default_str();
  inv->add_option("--cutoff", o.cutoff, "l1 cutoff of the monomial basis")->capture_default_str();
  inv->add_option("--rank-tol", o.rank_tol, "spectral rank tolerance")->capture_default_str();

  auto* eq = app.add_subcommand("equiv", "invariants of T and T(u^* . u)");
  eq->add_option("--unitary", o.unitary, "p,q for u = U^p V^q")->delimiter(',')->expected(2)->required();
  eq->add_option("--t", o.ts, "heat-trace times")->delimiter(',')->capture_default_str();
  eq->add_option("--cutoff", o.cutoff, "l1 cutoff of the monomial basis")->capture_default_str();
  eq->add_option("--rank-tol", o.rank_tol, "spectral rank tolerance")->capture_default_str();

  auto* rep = app.add_subcommand("rep", "build and check a representation spec");
  rep->add_option("--spec", o.spec_file, "rep spec (JSON)")->required();
  rep->add_flag("--check-relations", o.check_relations, "report the relations residual");
  auto* equiv_opt = rep->add_option("--equiv", o.equiv_file, "second rep spec to compare against");
  rep->add_option("--gauge", o.gauge_file, "W field (JSON)")->needs(equiv_opt);

  auto* pur = app.add_subcommand("purity", "commutant dimension of the truncated GNS representation");
  pur->add_option("--cutoff", o.cutoff, "l1 cutoff (also probes cutoff + 1)")->capture_default_str();
  pur->add_option("--tol", o.purity_tol, "singular-value tolerance")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::Success&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "Validation", e.what());
    return kExitValidation;
  }

  try {
    json report;
    if (*state) report = cmd_state(o);
    else if (*ext) report = cmd_extendible(o);
    else if (*rn) report = cmd_rn(o);
    else if (*inv) report = cmd_invariants(o);
    else if (*eq) report = cmd_equiv(o);
    else if (*rep) report = cmd_rep(o);
    else if (*pur) report = cmd_purity(o);

    const std::string text = report.dump(2) + "\n";
    if (o.out_file.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out_file);
      if (!f) throw Error(ErrorKind::Validation, "cannot write " + o.out_file);
      f << text;
    }
    return kExitOk;
  } catch (const Error& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return is_numerical(e.kind()) ? kExitNumerical : kExitValidation;
  } catch (const json::exception& e) {
    emit_error(err, "Validation", e.what());
    return kExitValidation;
  }
}

}  // namespace rotinv
