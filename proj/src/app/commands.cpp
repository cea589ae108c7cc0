#include "app/commands.hpp"

#include <sstream>

#include "core/bounds.hpp"
#include "core/inner.hpp"
#include "core/lattice.hpp"
#include "verify/suites.hpp"

namespace openimage::app {

namespace {

std::string fmt(const Float50& x, int digits = 15) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

Json bound_entry(const std::string& name, const std::string& formula, const BigLogNumber& b) {
  Json e = {{"name", name}, {"formula", formula}};
  e.update(big_json(b));
  try {
    if (b.tier() != BigLogNumber::Tier::LogLog10) e["log10"] = fmt(b.log10());
    e["loglog10"] = fmt(b.loglog10());
  } catch (const Error&) {
    // Values at or below 10 have no log-log.
  }
  return e;
}

Json constants_json(int n) {
  namespace c = constants;
  return {
      {"gamma", {{"expr", "10^13"}, {"value", std::to_string(c::kGamma)}}},
      {"delta", {{"expr", "exp exp exp(12)"}, {"loglog10", fmt(delta_bound(Rounding::Up).loglog10())}}},
      {"f_odd_constant", c::kFOddConstant},
      {"f_odd_coefficient", c::kFOddCoefficient},
      {"f_two_constant", c::kFTwoConstant},
      {"f_two_coefficient", c::kFTwoCoefficient},
      {"adelic_exponent", {{"expr", "5000*n*(n-1)"}, {"value", c::kAdelicExponentCoefficient * n * (n - 1)}}},
      {"pair_exponent", c::kPairExponent},
      {"alpha_2", alpha_g(2)},
      {"odd_degree_cap", {{"expr", "2*48^2"}, {"value", c::kOddDegreeCap}}},
      {"two_degree_cap", {{"expr", "3^2*2^16"}, {"value", c::kTwoDegreeCap}}},
      {"zeta2_upper", "1.644935"},
  };
}

Json prime_formulas(const PrimeValuations& p) {
  const int v = p.ell == 2 ? 1 : 0;
  const std::int64_t n1 = n_j_from_valuations(p.ell, p.v_D1), n2 = n_j_from_valuations(p.ell, p.v_D2);
  const std::int64_t f = f_pair(p.v_b0_pair, n1, n2, v);
  return {
      {"ell", p.ell},
      {"f_of_ell", f_of_ell(p.ell, p.v_b0_pair, p.v_D1, p.v_D2)},
      {"n_1", n1},
      {"n_2", n2},
      {"f_pair", f},
      {"t_max", t_max(p.v_b0_pair, n1, n2, v)},
      {"ball_exponent", ball_exponent_pair(p.ell, f, n1, n2)},
  };
}

int first_scaled_exponent(const LieLattice& L, int block) {
  const int N = L.context().precision();
  for (int k = 0; k < N; ++k)
    if (contains_scaled_sl2(L, k, block)) return k;
  return N;
}

Json basis_json(const LieLattice& L) {
  Json out = Json::array();
  for (const auto& v : L.basis()) out.push_back(residues_json(v));
  return out;
}

std::int64_t side_minimum(std::uint64_t ell) { return ell == 2 ? 2 : ell == 3 ? 1 : 0; }

}  // namespace

const PadicContext& context_for(const RunConfig& cfg, const Json& input) {
  std::uint64_t ell = cfg.ell;
  int N = cfg.precision;
  if (ell == 0 && has(input, "prime")) ell = static_cast<std::uint64_t>(as_int(input["prime"], "prime"));
  if (N == 0 && has(input, "precision")) N = static_cast<int>(as_int(input["precision"], "precision"));
  require(ell != 0, ErrorCode::InvalidInput, "prime: missing (use --prime or an input field)");
  require(N != 0, ErrorCode::InvalidInput, "precision: missing (use --precision or an input field)");
  return PadicContext::get(ell, N);
}

Report cmd_bounds(const RunConfig&, const Json& input) {
  const BoundInputs in = as_bound_inputs(input);
  const int n = in.n_curves;
  auto [i, j] = in.worst_pair();
  const double hp = in.heights[i] + in.heights[j];
  Report r;
  Json& out = r.json;
  out["schema"] = "openimage/bounds-report/v1";
  out["inputs"] = {{"n", n}, {"K_degree", in.K_degree}, {"heights", in.heights}, {"d", in.d}, {"H", in.effective_H()},
                   {"worst_pair", {i, j}}};
  Json bounds = Json::array();
  bounds.push_back(bound_entry("b_iso_pair", "((14g)^(64g^2) [K:Q] max(h, log[K:Q], 1)^2)^alpha(g), g = 2",
                               b_iso(in.K_degree, 2, hp)));
  bounds.push_back(bound_entry("b_pair", "4^(e Q^alpha(g)) b^(1 + alpha(g) log Q), Q = d (1 + log d)^2",
                               b_with_degree(in.K_degree, 2, hp, in.d)));
  bounds.push_back(bound_entry("pair_index_bound", "b(E_i x E_j / K; 2*48^2)^(10^4)", pair_index_bound(in)));
  bounds.push_back(bound_entry("bad_prime_product_bound",
                               "30 b0(E1;60) b0(E1^2;2) b0(E2;60) b0(E2^2;2) b0(E1 x E2;2)",
                               bad_prime_product_bound(in)));
  bounds.push_back(bound_entry("adelic_index_bound",
                               "8^(n(n-2)) zeta(2)^(n(n-1)) [K:Q] max b(E_i x E_j / K; 2*48^2)^(5000 n(n-1))",
                               adelic_index_bound(in)));
  bounds.push_back(bound_entry("delta_factor", "delta^(n(n-1)), delta = exp exp exp(12)",
                               delta_bound(Rounding::Up).pow(n * (n - 1))));
  bounds.push_back(bound_entry("theorem1_bound", "delta^(n(n-1)) ([K:Q] H^2)^(gamma n(n-1)), gamma = 10^13",
                               theorem1_bound(in, Rounding::Up)));
  out["bounds"] = bounds;
  Json primes = Json::array();
  for (const auto& p : in.b0_valuations) primes.push_back(prime_formulas(p));
  out["primes"] = primes;
  out["constants"] = constants_json(n);
  const auto imp = check_implication(in);
  out["check_implication"] = {{"holds", imp.holds}, {"digits", imp.digits},
                              {"statement", "adelic_index_bound (upper) <= theorem1_bound (lower)"}};
  r.pass = imp.holds;
  return r;
}

Report cmd_lie(const RunConfig& cfg, const Json& input) {
  const PadicContext& ctx = context_for(cfg, input);
  const int blocks = static_cast<int>(as_int(field(input, "blocks", ""), "blocks"));
  require(blocks >= 1 && blocks <= 4, ErrorCode::InvalidInput, "blocks: must lie in [1, 4]");
  const auto gens = as_tuples(ctx, blocks, field(input, "generators", ""), "generators");
  const auto G = FiniteMatrixGroup::closure(ctx, blocks, gens, cfg.cap);
  const LieLattice L = lie_algebra_of_group(G);
  const int N = ctx.precision();

  Report r;
  Json& out = r.json;
  out["schema"] = "openimage/lie-report/v1";
  out["ell"] = ctx.ell();
  out["N"] = N;
  out["blocks"] = blocks;
  out["group_order"] = G.order();
  out["certified_precision"] = L.certified_precision();
  out["basis"] = basis_json(L);
  Json per = Json::array();
  for (int b = 0; b < blocks; ++b) per.push_back({{"block", b}, {"scaled_sl2_exponent", first_scaled_exponent(L, b)}});
  out["blocks_info"] = per;
  if (blocks >= 2) {
    const LieLattice K = kernel_component(L);
    int t = N;
    for (const auto& v : K.basis()) t = std::min(t, lie_valuation(ctx, v));
    int kexp = N;
    for (int k = 0; k < N && kexp == N; ++k) {
      bool all = true;
      for (int b = 0; b < K.blocks(); ++b) all = all && contains_scaled_sl2(K, k, b);
      if (all) kexp = k;
    }
    out["kernel"] = {{"rank", K.basis().size()}, {"basis", basis_json(K)}, {"t", t}, {"scaled_sl2_exponent", kexp}};
  }
  if (blocks == 2) {
    try {
      const SpecialBasis sb = special_basis(L);
      Json a = Json::array(), b = Json::array(), y = Json::array();
      for (int k = 0; k < 3; ++k) {
        a.push_back(residues_json(sb.a[k]));
        b.push_back(residues_json(sb.b[k]));
      }
      for (int k = 0; k < sb.kernel_rank; ++k) y.push_back(residues_json(sb.y[k]));
      out["special_basis"] = {{"a", a}, {"b", b}, {"y", y}};
      out["graph_defect_depth"] = graph_defect_depth(L);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateProjection) throw;
      out["special_basis"] = nullptr;
      out["graph_defect_depth"] = nullptr;
      out["special_basis_note"] = e.what();
    }
  }
  return r;
}

Report cmd_inner(const RunConfig& cfg, const Json& input) {
  const PadicContext& ctx = context_for(cfg, input);
  const int s = static_cast<int>(as_int(field(input, "s", ""), "s"));
  const int n = static_cast<int>(as_int(field(input, "n", ""), "n"));
  require(s >= 0 && s < ctx.precision(), ErrorCode::InvalidInput, "s: must lie in [0, N)");
  require(n >= 1, ErrorCode::InvalidInput, "n: must be >= 1");
  const ApproxMorphism phi = [&] {
    if (has(input, "conjugator")) {
      std::vector<TracelessMat> noise;
      if (has(input, "noise")) noise = as_traceless_list(ctx, input["noise"], "noise");
      return ApproxMorphism::conjugation(as_mat2(ctx, input["conjugator"], "conjugator"), s, n, noise);
    }
    return ApproxMorphism::from_images(s, n, as_traceless_list(ctx, field(input, "domain", ""), "domain"),
                                       as_traceless_list(ctx, field(input, "images", ""), "images"));
  }();
  const InnerCertificate cert = construct_inner_matrix(phi);
  std::vector<TracelessMat> samples = phi.domain();
  if (has(input, "samples")) {
    auto extra = as_traceless_list(ctx, input["samples"], "samples");
    samples.insert(samples.end(), extra.begin(), extra.end());
  }
  const bool conj_ok = verify_conjugation(phi, cert, samples, cert.certified_precision);
  const bool trace_ok = verify_trace_congruence(phi, cert, samples);
  const int v = ctx.dyadic();

  Report r;
  Json& out = r.json;
  out["schema"] = "openimage/inner-report/v1";
  out["ell"] = ctx.ell();
  out["N"] = ctx.precision();
  out["s"] = s;
  out["n"] = n;
  out["alpha"] = cert.alpha;
  out["bracket_depth"] = phi.bracket_depth();
  out["M"] = to_json(cert.M);
  out["certified_precision"] = cert.certified_precision;
  out["det_valuation"] = cert.det_valuation;
  out["det_valuation_bound"] = cert.det_valuation_bound;
  out["lambda"] = to_json(cert.lambda);
  out["mu_plus"] = to_json(cert.mu_plus);
  out["localization_depth"] = cert.localization_depth;
  out["eigvec_shift"] = cert.eigvec_shift;
  out["delta"] = cert.delta;
  out["beta"] = {{"value", cert.beta}, {"bound", cert.beta_bound}};
  out["gamma"] = {{"value", cert.gamma}, {"bound", cert.gamma_bound}};
  out["checks"] = {
      {"samples", samples.size()},
      {"intertwining", conj_ok},
      {"trace", trace_ok},
      {"trace_depth", std::min(ctx.precision(), n - cert.alpha - 10 * s - 5 * v - 6)},
  };
  r.pass = conj_ok && trace_ok && cert.det_valuation <= cert.det_valuation_bound;
  return r;
}

Report cmd_goursat(const RunConfig& cfg, const Json& input) {
  Report r;
  Json& out = r.json;
  out["schema"] = "openimage/goursat-report/v1";
  if (has(input, "s")) {
    std::uint64_t ell = cfg.ell;
    if (ell == 0 && has(input, "prime")) ell = static_cast<std::uint64_t>(as_int(input["prime"], "prime"));
    require(ell != 0, ErrorCode::InvalidInput, "prime: missing (use --prime or an input field)");
    const auto smat = as_int_matrix(input["s"], "s");
    out["ell"] = ell;
    out["s"] = smat;
    out["exponents"] = goursat_exponents(smat, ell);
    return r;
  }
  const PadicContext& ctx = context_for(cfg, input);
  const int blocks = static_cast<int>(as_int(field(input, "blocks", ""), "blocks"));
  require(blocks >= 2 && blocks <= 4, ErrorCode::InvalidInput, "blocks: must lie in [2, 4]");
  const auto gens = as_tuples(ctx, blocks, field(input, "generators", ""), "generators");
  const auto G = FiniteMatrixGroup::closure(ctx, blocks, gens, cfg.cap);
  std::vector<std::vector<std::int64_t>> smat(blocks, std::vector<std::int64_t>(blocks, 0));
  std::vector<std::vector<std::int64_t>> raw = smat;
  for (int a = 0; a < blocks; ++a)
    for (int b = a + 1; b < blocks; ++b) {
      raw[a][b] = raw[b][a] = minimal_pair_exponent(G, a, b);
      smat[a][b] = smat[b][a] = std::max(raw[a][b], side_minimum(ctx.ell()));
    }
  const auto ex = goursat_exponents(smat, ctx.ell());
  const bool holds = contains_ball(G, std::vector<int>(ex.begin(), ex.end()));
  out["ell"] = ctx.ell();
  out["N"] = ctx.precision();
  out["group_order"] = G.order();
  out["pair_exponents"] = raw;
  out["s"] = smat;
  out["exponents"] = ex;
  out["contains_predicted_ball"] = holds;
  r.pass = holds;
  return r;
}

Report cmd_verify(const RunConfig& cfg, const Json& input) {
  std::vector<std::string> names;
  if (has(input, "suites")) {
    const Json& s = input["suites"];
    require(s.is_array(), ErrorCode::InvalidInput, "suites: expected a list of names");
    for (std::size_t i = 0; i < s.size(); ++i) {
      require(s[i].is_string(), ErrorCode::InvalidInput, "suites[" + std::to_string(i) + "]: expected a name");
      const auto name = s[i].get<std::string>();
      require(verify::is_suite(name), ErrorCode::InvalidInput, "suites[" + std::to_string(i) + "]: unknown suite '" + name + "'");
      names.push_back(name);
    }
  }
  if (names.empty()) names = verify::suite_names();
  Report r;
  Json& out = r.json;
  out["schema"] = "openimage/verify-report/v1";
  out["seed"] = cfg.seed;
  out["trials_override"] = cfg.trials;
  Json suites = Json::array();
  for (const auto& name : names) {
    const auto res = verify::run_suite(name, cfg.seed, cfg.trials);
    suites.push_back({{"name", res.name}, {"pass", res.pass}, {"trials", res.trials}, {"failures", res.failures},
                      {"details", res.details}});
    r.pass = r.pass && res.pass;
  }
  out["suites"] = suites;
  out["pass"] = r.pass;
  return r;
}

Report run_command(const std::string& name, const RunConfig& cfg, const Json& input) {
  if (name == "bounds") return cmd_bounds(cfg, input);
  if (name == "lie") return cmd_lie(cfg, input);
  if (name == "inner") return cmd_inner(cfg, input);
  if (name == "goursat") return cmd_goursat(cfg, input);
  if (name == "verify") return cmd_verify(cfg, input);
  fail(ErrorCode::InvalidInput, "unknown command '" + name + "'");
}

}  // namespace openimage::app
