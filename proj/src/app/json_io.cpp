#include "app/json_io.hpp"

namespace openimage::app {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::InvalidInput, (path.empty() ? std::string("input") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad("", std::string("malformed JSON: ") + e.what());
  }
}

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  if (!j.contains(key)) bad(join(path, key), "missing field");
  return j.at(key);
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<std::int64_t>();
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

std::vector<std::vector<std::int64_t>> as_int_matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a matrix (array of rows)");
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = index(path, i);
    if (!j[i].is_array()) bad(p, "expected a row");
    std::vector<std::int64_t> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(as_int(j[i][k], index(p, k)));
    out.push_back(std::move(row));
  }
  return out;
}

Mat2 as_mat2(const PadicContext& ctx, const Json& j, const std::string& path) {
  auto m = as_int_matrix(j, path);
  if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) bad(path, "expected a 2x2 integer matrix");
  return Mat2(ctx, {m[0][0], m[0][1], m[1][0], m[1][1]});
}

TracelessMat as_traceless(const PadicContext& ctx, const Json& j, const std::string& path) {
  Mat2 m = as_mat2(ctx, j, path);
  if (!m.trace().is_zero()) bad(path, "expected a traceless matrix");
  return TracelessMat(m);
}

std::vector<TracelessMat> as_traceless_list(const PadicContext& ctx, const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of matrices");
  std::vector<TracelessMat> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_traceless(ctx, j[i], index(path, i)));
  return out;
}

std::vector<MatTuple> as_tuples(const PadicContext& ctx, int blocks, const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of group elements");
  std::vector<MatTuple> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = index(path, i);
    const Json& e = j[i];
    // A bare 2x2 matrix has integer rows; a tuple has matrix entries.
    const bool bare = e.is_array() && e.size() == 2 && e[0].is_array() && !e[0].empty() && e[0][0].is_number();
    MatTuple t;
    if (bare) {
      if (blocks != 1) bad(p, "expected " + std::to_string(blocks) + " matrices");
      t.push_back(as_mat2(ctx, e, p));
    } else {
      if (!e.is_array() || static_cast<int>(e.size()) != blocks) bad(p, "expected " + std::to_string(blocks) + " matrices");
      for (std::size_t b = 0; b < e.size(); ++b) t.push_back(as_mat2(ctx, e[b], index(p, b)));
    }
    for (std::size_t b = 0; b < t.size(); ++b)
      if (!t[b].det().is_unit()) bad(index(p, b), "determinant is not a unit");
    out.push_back(std::move(t));
  }
  return out;
}

BoundInputs as_bound_inputs(const Json& j) {
  if (!j.is_object()) bad("", "expected an object");
  BoundInputs in;
  const char* nkey = has(j, "n_curves") && !has(j, "n") ? "n_curves" : "n";
  in.n_curves = static_cast<int>(as_int(field(j, nkey, ""), nkey));
  if (in.n_curves < 2) bad(nkey, "n must be >= 2");
  in.K_degree = as_int(field(j, "K_degree", ""), "K_degree");
  if (in.K_degree < 1) bad("K_degree", "must be >= 1");
  const Json& hs = field(j, "heights", "");
  if (!hs.is_array()) bad("heights", "expected a list of numbers");
  for (std::size_t i = 0; i < hs.size(); ++i) in.heights.push_back(as_number(hs[i], index("heights", i)));
  if (static_cast<int>(in.heights.size()) != in.n_curves) bad("heights", "need one height per curve");
  if (has(j, "d")) {
    in.d = as_int(j["d"], "d");
    if (in.d < 1) bad("d", "must be >= 1");
  }
  if (has(j, "H")) {
    in.H = as_number(j["H"], "H");
    if (*in.H < 1) bad("H", "must be >= 1");
  }
  if (has(j, "b0_valuations")) {
    const Json& bv = j["b0_valuations"];
    if (!bv.is_array()) bad("b0_valuations", "expected a list");
    for (std::size_t i = 0; i < bv.size(); ++i) {
      const auto p = index("b0_valuations", i);
      PrimeValuations v;
      std::int64_t ell = as_int(field(bv[i], "ell", p), join(p, "ell"));
      if (ell < 2) bad(join(p, "ell"), "must be a prime");
      v.ell = static_cast<std::uint64_t>(ell);
      if (has(bv[i], "v_b0_pair")) v.v_b0_pair = as_int(bv[i]["v_b0_pair"], join(p, "v_b0_pair"));
      if (has(bv[i], "v_D1")) v.v_D1 = as_int(bv[i]["v_D1"], join(p, "v_D1"));
      if (has(bv[i], "v_D2")) v.v_D2 = as_int(bv[i]["v_D2"], join(p, "v_D2"));
      in.b0_valuations.push_back(v);
    }
  }
  in.validate();
  return in;
}

Json to_json(const PadicInt& x) { return x.residue(); }

Json to_json(const Mat2& m) {
  return Json::array({Json::array({m.raw(0, 0), m.raw(0, 1)}), Json::array({m.raw(1, 0), m.raw(1, 1)})});
}

Json to_json(const TracelessMat& m) { return to_json(m.mat()); }

Json residues_json(const std::vector<std::uint64_t>& v) {
  Json out = Json::array();
  for (auto r : v) out.push_back(r);
  return out;
}

}  // namespace openimage::app
