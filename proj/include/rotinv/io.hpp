#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "rotinv/cpmap.hpp"
#include "rotinv/reps.hpp"
#include "rotinv/rn.hpp"

namespace rotinv {

using json = nlohmann::json;

/// {"re": x, "im": y}.
json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/// theta as a number or {"rational": [p, q]}.
AlgebraContext context_from_json(const json& j);
json context_to_json(const AlgebraContext& ctx);

/// {"theta": ..., "kraus": [{"terms": [{"pow": [m1, m2], "re": x, "im": y}, ...]}, ...],
///  "flags": {"unital_expected": bool}}
CpMap cpmap_from_json(const json& j);
json cpmap_to_json(const CpMap& T, bool unital_expected = false);

json weyl_to_json(const WeylElement& a);
json trig_to_json(const TrigPoly& p);

/// {"m": int, "mode": {"grid": {"p": int, "q": int}} | {"sampled": {...}},
///  "b1": [[m*m entries row-major], ...], "b2": [...]}
RepSpec repspec_from_json(const json& j);
json repspec_to_json(const RepSpec& spec);

/// Matrix field over measure points: either a bare list or {"W": list}.
std::vector<Eigen::MatrixXcd> matrix_field_from_json(const json& j, int m);
json matrix_field_to_json(const std::vector<Eigen::MatrixXcd>& field);

/// Throws Validation with the file name on I/O or parse failure.
json read_json_file(const std::string& path);

}  // namespace rotinv
