#pragma once

// JSON readers and writers for the file formats accepted by the pdsx tool.
// Every reader throws ErrorKind::Parse on malformed or mistyped input.

#include <map>
#include <string>
#include <variant>

#include <json.hpp>

#include "pdsx/ck_matrix.hpp"
#include "pdsx/cross.hpp"
#include "pdsx/matrix.hpp"
#include "pdsx/spectrum.hpp"

namespace pdsx::io {

using nlohmann::json;

json parse_json(const std::string& text);
std::string read_file(const std::string& path);

// {"n": 2, "a": [[1,1],[1,1]]}, or whitespace-separated 0/1 rows.
CKMatrix ck_matrix_from_json(const json& j);
CKMatrix ck_matrix_from_text(const std::string& text);
CKMatrix read_ck_matrix(const std::string& path);
json to_json(const CKMatrix& a);

// Words as "g1.g2'" strings or arrays of signed integers.
ReducedWord word_from_json(int rank, const json& j);

json to_json(const BallPattern& omega);
BallPattern pattern_from_json(int rank, const json& j);

// {"names": [...], "table": [[name or index, ...], ...]}
FiniteGroup finite_group_from_json(const json& j);

// Entries are exact strings such as "1/2+i" or integers in exact files,
// [re, im] pairs or plain numbers in floating files; the two never mix.
struct RepSpec {
  int rank = 0;
  std::size_t dim = 0;
  std::string mode = "semisaturated";
  bool exact = true;
  std::map<std::string, ExactMatrix> exact_images;
  std::map<std::string, FloatMatrix> float_images;
};
RepSpec rep_from_json(const json& j);

// {"relations": [{"label": "...", "terms": [{"coefficient": "1", "factors": ["g1", ...]}]}]}
std::vector<FreeRelation> relations_from_json(int rank, const json& j);

// {"type": "ZkNk", "k": 2} or {"type": "FreeQL", "n": 2}
struct QLInstance {
  std::string type;
  int param = 0;
};
QLInstance ql_instance_from_json(const json& j);

// {"states": [...], "group": {"type": "finite", "names": [...], "table": [...]}
//  | {"type": "cyclic", "order": m} | {"type": "free", "rank": n, "cap": L},
//  "theta": {"t": [[x, theta_t(x)], ...]}}
// Free groups list generators only. Finite groups list any elements; the
// inverse of a listed element is derived and unlisted elements act on the
// empty set.
cross::FiniteSystem finite_system_from_json(const json& j);
// {"terms": {"t": {"x": [re, im] | "p/q+r/s i", ...}}}; floating values are
// converted to exact rationals.
cross::CrossedElement crossed_element_from_json(const cross::FiniteSystem& sys, const json& j);
json to_json(const cross::FiniteSystem& sys, const cross::CrossedElement& p);

Gaussian gaussian_from_json(const json& j);
json to_json(const Gaussian& z);

}  // namespace pdsx::io
