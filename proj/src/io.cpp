#include "rotinv/io.hpp"

#include <fstream>
#include <sstream>

#include "rotinv/errors.hpp"

namespace rotinv {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Validation, what); }

template <class T>
T get_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(where + ": field \"" + key + "\" has the wrong type (" + e.what() + ")");
  }
}

Eigen::MatrixXcd matrix_from_json(const json& j, int m, const std::string& where) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(m) * m)
    bad(where + ": expected " + std::to_string(m * m) + " row-major entries");
  Eigen::MatrixXcd M(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) M(r, c) = complex_from_json(j[static_cast<std::size_t>(r) * m + c]);
  return M;
}

json matrix_to_json(const Eigen::MatrixXcd& M) {
  json out = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c) out.push_back(complex_to_json(M(r, c)));
  return out;
}

std::vector<double> doubles(const json& j, const char* key, const std::string& where) {
  return get_field<std::vector<double>>(j, key, where);
}

}  // namespace

json complex_to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {get_field<double>(j, "re", "complex"), j.contains("im") ? get_field<double>(j, "im", "complex") : 0.0};
}

AlgebraContext context_from_json(const json& j) {
  if (j.is_number()) return AlgebraContext(j.get<double>());
  if (j.is_object() && j.contains("rational")) {
    const auto pq = get_field<std::vector<int>>(j, "rational", "theta");
    if (pq.size() != 2) bad("theta.rational must be [p, q]");
    return AlgebraContext::rational(pq[0], pq[1]);
  }
  bad("theta must be a number or {\"rational\": [p, q]}");
}

json context_to_json(const AlgebraContext& ctx) {
  if (ctx.rational_mode())
    return {{"rational", {ctx.rational_mode()->first, ctx.rational_mode()->second}}};
  return ctx.theta();
}

CpMap cpmap_from_json(const json& j) {
  if (!j.is_object()) bad("map spec must be a JSON object");
  if (!j.contains("theta")) bad("map spec: missing field \"theta\"");
  const AlgebraContext ctx = context_from_json(j.at("theta"));
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty())
    bad("map spec: \"kraus\" must be a nonempty list");
  std::vector<WeylElement> kraus;
  for (std::size_t i = 0; i < j.at("kraus").size(); ++i) {
    const auto& k = j.at("kraus")[i];
    const std::string where = "kraus[" + std::to_string(i) + "]";
    if (!k.is_object() || !k.contains("terms") || !k.at("terms").is_array() || k.at("terms").empty())
      bad(where + ": \"terms\" must be a nonempty list");
    WeylElement R;
    for (std::size_t t = 0; t < k.at("terms").size(); ++t) {
      const auto& term = k.at("terms")[t];
      const std::string tw = where + ".terms[" + std::to_string(t) + "]";
      const auto pow = get_field<std::vector<int>>(term, "pow", tw);
      if (pow.size() != 2) bad(tw + ": \"pow\" must be [m1, m2]");
      const double re = term.contains("re") ? get_field<double>(term, "re", tw) : 0.0;
      const double im = term.contains("im") ? get_field<double>(term, "im", tw) : 0.0;
      R.add_raw({pow[0], pow[1]}, {re, im});
    }
    R.prune();
    kraus.push_back(std::move(R));
  }
  bool unital = false;
  if (j.contains("flags")) unital = j.at("flags").value("unital_expected", false);
  return CpMap(std::move(kraus), ctx, unital);
}

json weyl_to_json(const WeylElement& a) {
  json terms = json::array();
  for (const auto& [m, c] : a.coeffs())
    terms.push_back({{"pow", {m[0], m[1]}}, {"re", c.real()}, {"im", c.imag()}});
  return terms;
}

json cpmap_to_json(const CpMap& T, bool unital_expected) {
  json kraus = json::array();
  for (const auto& R : T.kraus()) kraus.push_back({{"terms", weyl_to_json(R)}});
  return {{"theta", context_to_json(T.ctx())},
          {"kraus", kraus},
          {"flags", {{"unital_expected", unital_expected}}}};
}

json trig_to_json(const TrigPoly& p) {
  json out = json::array();
  for (const auto& [m, c] : p) out.push_back({{"pow", {m[0], m[1]}}, {"re", c.real()}, {"im", c.imag()}});
  return out;
}

RepSpec repspec_from_json(const json& j) {
  if (!j.is_object()) bad("rep spec must be a JSON object");
  RepSpec s;
  s.m = get_field<int>(j, "m", "rep spec");
  if (s.m < 1) bad("rep spec: m must be >= 1 (finite multiplicity only)");
  if (!j.contains("mode") || !j.at("mode").is_object()) bad("rep spec: missing \"mode\"");
  const auto& mode = j.at("mode");
  if (mode.contains("grid")) {
    const auto& g = mode.at("grid");
    s.mode = GridMode{get_field<int>(g, "p", "mode.grid"), get_field<int>(g, "q", "mode.grid")};
  } else if (mode.contains("sampled")) {
    const auto& sm = mode.at("sampled");
    SampledMode out;
    out.theta = get_field<double>(sm, "theta", "mode.sampled");
    if (!sm.contains("points") || !sm.at("points").is_array()) bad("mode.sampled: missing \"points\"");
    for (const auto& p : sm.at("points")) {
      if (!p.is_array() || p.size() != 2) bad("mode.sampled: each point is [z1, z2]");
      out.points.push_back({complex_from_json(p[0]), complex_from_json(p[1])});
    }
    out.weights = doubles(sm, "weights", "mode.sampled");
    out.rn1 = doubles(sm, "rn1", "mode.sampled");
    out.rn2 = doubles(sm, "rn2", "mode.sampled");
    s.mode = std::move(out);
  } else {
    bad("rep spec: mode must be {\"grid\": ...} or {\"sampled\": ...}");
  }
  for (const char* key : {"b1", "b2"}) {
    if (!j.contains(key) || !j.at(key).is_array()) bad(std::string("rep spec: missing \"") + key + "\"");
    auto& target = std::string(key) == "b1" ? s.b1 : s.b2;
    for (std::size_t i = 0; i < j.at(key).size(); ++i)
      target.push_back(matrix_from_json(j.at(key)[i], s.m,
                                        std::string(key) + "[" + std::to_string(i) + "]"));
  }
  return s;
}

json repspec_to_json(const RepSpec& spec) {
  json j;
  j["m"] = spec.m;
  if (const auto* g = std::get_if<GridMode>(&spec.mode)) {
    j["mode"] = {{"grid", {{"p", g->p}, {"q", g->q}}}};
  } else {
    const auto& sm = std::get<SampledMode>(spec.mode);
    json pts = json::array();
    for (const auto& p : sm.points) pts.push_back({complex_to_json(p[0]), complex_to_json(p[1])});
    j["mode"] = {{"sampled",
                  {{"theta", sm.theta},
                   {"points", pts},
                   {"weights", sm.weights},
                   {"rn1", sm.rn1},
                   {"rn2", sm.rn2}}}};
  }
  j["b1"] = matrix_field_to_json(spec.b1);
  j["b2"] = matrix_field_to_json(spec.b2);
  return j;
}

std::vector<Eigen::MatrixXcd> matrix_field_from_json(const json& j, int m) {
  const json& list = j.is_object() && j.contains("W") ? j.at("W") : j;
  if (!list.is_array()) bad("matrix field must be a list of row-major matrices");
  std::vector<Eigen::MatrixXcd> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back(matrix_from_json(list[i], m, "W[" + std::to_string(i) + "]"));
  return out;
}

json matrix_field_to_json(const std::vector<Eigen::MatrixXcd>& field) {
  json out = json::array();
  for (const auto& M : field) out.push_back(matrix_to_json(M));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace rotinv
