#pragma once

// JSON <-> core types. Every parse error is InvalidInput and names the field
// path, e.g. "generators[2][0]: expected a 2x2 integer matrix".

#include <string>
#include <vector>

#include <json.hpp>

#include "core/bounds.hpp"
#include "core/group.hpp"
#include "core/matrix.hpp"

namespace openimage::app {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text);

const Json& field(const Json& j, const char* key, const std::string& path);
bool has(const Json& j, const char* key);

std::int64_t as_int(const Json& j, const std::string& path);
double as_number(const Json& j, const std::string& path);
std::vector<std::vector<std::int64_t>> as_int_matrix(const Json& j, const std::string& path);

Mat2 as_mat2(const PadicContext& ctx, const Json& j, const std::string& path);
TracelessMat as_traceless(const PadicContext& ctx, const Json& j, const std::string& path);
std::vector<TracelessMat> as_traceless_list(const PadicContext& ctx, const Json& j, const std::string& path);
// A list of group elements, each a list of `blocks` matrices. A bare matrix is
// accepted for blocks == 1.
std::vector<MatTuple> as_tuples(const PadicContext& ctx, int blocks, const Json& j, const std::string& path);

BoundInputs as_bound_inputs(const Json& j);

Json to_json(const PadicInt& x);
Json to_json(const Mat2& m);
Json to_json(const TracelessMat& m);
Json residues_json(const std::vector<std::uint64_t>& v);

template <class Big>
Json big_json(const Big& b) {
  Json out;
  out["tier"] = b.tier_name();
  out["direction"] = b.rounding() == Rounding::Up ? "upper" : "lower";
  out["value"] = b.value_string();
  return out;
}

}  // namespace openimage::app
