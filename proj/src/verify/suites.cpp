#include "verify/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "app/commands.hpp"
#include "core/bounds.hpp"
#include "core/group.hpp"
#include "core/inner.hpp"
#include "core/lattice.hpp"
#include "verify/brute.hpp"

namespace openimage::verify {

using app::Json;
using brute::i64;
using Rng = std::mt19937_64;

namespace {

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

i64 draw(Rng& rng, i64 m) { return static_cast<i64>(rng() % static_cast<std::uint64_t>(m)); }

i64 draw_unit(Rng& rng, i64 m, i64 ell) {
  while (true) {
    i64 u = draw(rng, m);
    if (u % ell != 0) return u;
  }
}

Mat2 to_mat(const PadicContext& ctx, const brute::M2& a) { return Mat2(ctx, {a[0], a[1], a[2], a[3]}); }

brute::M2 from_mat(const Mat2& m) {
  return {static_cast<i64>(m.raw(0, 0)), static_cast<i64>(m.raw(0, 1)), static_cast<i64>(m.raw(1, 0)),
          static_cast<i64>(m.raw(1, 1))};
}

brute::M2 random_gl2(Rng& rng, i64 m, i64 ell) {
  while (true) {
    brute::M2 a{draw(rng, m), draw(rng, m), draw(rng, m), draw(rng, m)};
    if (brute::det(a, m) % ell != 0) return a;
  }
}

void note_failure(SuiteResult& r, const std::string& what) {
  ++r.failures;
  if (!r.details.contains("first_failure")) r.details["first_failure"] = what;
}

std::string describe(const std::vector<i64>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

// Lifted roots of random monic quadratics and cubics against exhaustive search.
SuiteResult hensel(Rng& rng, std::int64_t trials) {
  SuiteResult r;
  const std::int64_t T = trials > 0 ? trials : 1000;
  r.details["configs"] = Json::array();
  for (auto [ell, N] : std::vector<std::pair<i64, int>>{{2, 8}, {3, 6}, {5, 5}}) {
    const auto& ctx = PadicContext::get(static_cast<std::uint64_t>(ell), N);
    const i64 m = brute::ipow(ell, N);
    std::int64_t count = 0, fails = 0, attempts = 0;
    while (count < T) {
      ++attempts;
      const int deg = 2 + static_cast<int>(attempts % 2);
      std::vector<i64> c(deg + 1, 0);
      c[deg] = 1;
      for (int i = 1; i < deg; ++i) c[i] = draw(rng, m);
      const i64 alpha = draw(rng, m);
      const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(N));
      const i64 plant = k < N ? brute::mod(static_cast<__int128>(brute::ipow(ell, k)) * draw(rng, m), m) : 0;
      c[0] = brute::mod(plant - brute::poly_eval(c, alpha, m), m);
      const int vp = brute::val(brute::poly_eval(c, alpha, m), ell, N);
      const int vd = brute::val(brute::poly_deriv_eval(c, alpha, m), ell, N);
      if (!(vd < N && vp > 2 * vd)) continue;
      ++count;
      ++r.trials;
      std::vector<PadicInt> pc;
      for (i64 x : c) pc.push_back(ctx.from_int(x));
      try {
        const i64 root = static_cast<i64>(hensel_lift(MonicPoly(pc), ctx.from_int(alpha)).residue());
        const auto all = brute::roots(c, m);
        const bool is_root = std::binary_search(all.begin(), all.end(), root);
        const bool close = brute::val(alpha - root, ell, N) >= vp - vd;
        if (!is_root || !close) {
          ++fails;
          note_failure(r, "l=" + std::to_string(ell) + " p=" + describe(c) + " alpha=" + std::to_string(alpha) +
                              " root=" + std::to_string(root));
        }
      } catch (const Error& e) {
        ++fails;
        note_failure(r, std::string("hensel_lift threw: ") + e.what());
      }
    }
    r.details["configs"].push_back({{"ell", ell}, {"N", N}, {"trials", count}, {"failures", fails}});
  }
  r.details["trials_per_config"] = T;
  return r;
}

template <int D>
using BMat = std::array<i64, D * D>;

template <int D>
SquareMat<D> lib_mat(const PadicContext& ctx, const BMat<D>& a) {
  SquareMat<D> out(ctx);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) out.set(i, j, ctx.from_int(a[D * i + j]));
  return out;
}

template <int D>
std::array<i64, D> apply(const BMat<D>& g, const std::array<i64, D>& w, i64 m) {
  std::array<i64, D> out{};
  for (int i = 0; i < D; ++i) {
    __int128 acc = 0;
    for (int j = 0; j < D; ++j) acc += static_cast<__int128>(g[D * i + j]) * w[j];
    out[i] = brute::mod(acc, m);
  }
  return out;
}

// One (g, lambda, w, n) case through both routes; false on disagreement or a
// violated inequality. Assumes the congruence hypothesis holds.
template <int D>
bool eigen_case(const PadicContext& ctx, const BMat<D>& g, i64 lambda, const std::array<i64, D>& w, int n,
                std::string& why) {
  const i64 ell = static_cast<i64>(ctx.ell()), m = static_cast<i64>(ctx.modulus());
  const int N = ctx.precision();
  int b = N;
  for (i64 x : w) b = std::min(b, brute::val(x, ell, N));
  const int pv = brute::val(brute::charpoly_at(g, lambda, m), ell, N);
  PadicVec lw;
  for (i64 x : w) lw.push_back(ctx.from_int(x));
  try {
    const EigenDefect d = approx_eigen_defect(lib_mat<D>(ctx, g), ctx.from_int(lambda), lw, n);
    if (pv < n - b || d.observed != pv || d.b != b) {
      why = "val p(lambda) = " + std::to_string(pv) + ", library " + std::to_string(d.observed) + ", n - b = " +
            std::to_string(n - b);
      return false;
    }
  } catch (const Error& e) {
    why = std::string("approx_eigen_defect threw: ") + e.what();
    return false;
  }
  return true;
}

template <int D>
bool congruence_holds(const BMat<D>& g, i64 lambda, const std::array<i64, D>& w, int n, i64 ell, i64 m) {
  const auto gw = apply<D>(g, w, m);
  const i64 q = brute::ipow(ell, n);
  for (int i = 0; i < D; ++i)
    if (brute::mod(gw[i] - static_cast<__int128>(lambda) * w[i], m) % q != 0) return false;
  return true;
}

template <int D>
bool random_eigen_trial(const PadicContext& ctx, Rng& rng, std::string& why) {
  const i64 ell = static_cast<i64>(ctx.ell()), m = static_cast<i64>(ctx.modulus());
  const int N = ctx.precision();
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(N));
  const int b = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  const int j = static_cast<int>(rng() % D);
  std::array<i64, D> u{};
  for (int i = 0; i < D; ++i) u[i] = draw(rng, m);
  u[j] = draw_unit(rng, m, ell);
  const i64 lambda0 = draw(rng, m);
  BMat<D> g;
  for (auto& e : g) e = draw(rng, m);
  // Make u an exact eigenvector, then perturb by l^(n-b).
  const auto gu = apply<D>(g, u, m);
  const i64 uj_inv = brute::inv(u[j], m);
  for (int i = 0; i < D; ++i) {
    const i64 ri = brute::mod(static_cast<__int128>(lambda0) * u[i] - gu[i], m);
    g[D * i + j] = brute::mod(g[D * i + j] + static_cast<__int128>(ri) * uj_inv, m);
  }
  const i64 q = brute::ipow(ell, n - b);
  for (auto& e : g) e = brute::mod(e + static_cast<__int128>(q) * draw(rng, m), m);
  const i64 lambda = brute::mod(lambda0 + static_cast<__int128>(q) * draw(rng, m), m);
  std::array<i64, D> w{};
  for (int i = 0; i < D; ++i) w[i] = brute::mod(static_cast<__int128>(brute::ipow(ell, b)) * u[i], m);
  if (!congruence_holds<D>(g, lambda, w, n, ell, m)) {
    why = "generator produced a case outside the hypothesis";
    return false;
  }
  return eigen_case<D>(ctx, g, lambda, w, n, why);
}

// val(p_g(lambda)) >= n - b for approximate eigenvectors.
SuiteResult eigen_defect(Rng& rng, std::int64_t trials) {
  SuiteResult r;
  const std::int64_t T = trials > 0 ? trials : 100000;
  const std::pair<std::uint64_t, int> cfgs[3] = {{2, 10}, {3, 7}, {5, 5}};
  for (std::int64_t t = 0; t < T; ++t) {
    const auto [ell, N] = cfgs[t % 3];
    const auto& ctx = PadicContext::get(ell, N);
    std::string why;
    const bool ok = (t / 3) % 2 ? random_eigen_trial<3>(ctx, rng, why) : random_eigen_trial<2>(ctx, rng, why);
    ++r.trials;
    if (!ok) note_failure(r, "l=" + std::to_string(ell) + ": " + why);
  }
  r.details["random_trials"] = T;

  // Exhaustive sweep over a fixed grid at l = 3, N = 3.
  const auto& ctx = PadicContext::get(3, 3);
  const i64 m = 27;
  const i64 grid[] = {0, 1, 2, 3, 9, 13, 26};
  const std::array<i64, 2> ws[] = {{1, 0}, {0, 1}, {1, 1}, {1, 2}, {3, 1}, {1, 3},
                                   {3, 0}, {0, 3}, {3, 3}, {9, 1}, {9, 0}, {3, 9}};
  std::int64_t sweep_cases = 0, sweep_failures = 0;
  for (i64 a : grid)
    for (i64 b : grid)
      for (i64 c : grid)
        for (i64 d : grid) {
          const BMat<2> g{a, b, c, d};
          for (i64 lambda = 0; lambda < m; ++lambda)
            for (const auto& w : ws)
              for (int n = 1; n <= 3; ++n) {
                const int bw = std::min(brute::val(w[0], 3, 3), brute::val(w[1], 3, 3));
                if (bw >= n || !congruence_holds<2>(g, lambda, w, n, 3, m)) continue;
                ++sweep_cases;
                std::string why;
                if (!eigen_case<2>(ctx, g, lambda, w, n, why)) {
                  ++sweep_failures;
                  note_failure(r, "sweep: " + why);
                }
              }
        }
  r.details["sweep_cases"] = sweep_cases;
  r.details["sweep_failures"] = sweep_failures;
  r.trials += sweep_cases;
  return r;
}

// char_poly_adjoint against the characteristic polynomial of the explicit
// 3x3 adjoint matrix, built twice.
SuiteResult adjoint_charpoly(Rng& rng, std::int64_t trials) {
  SuiteResult r;
  const std::int64_t T = trials > 0 ? trials : 10000;
  r.details["configs"] = Json::array();
  for (auto [ell, N] : std::vector<std::pair<i64, int>>{{2, 16}, {3, 10}, {5, 8}}) {
    const auto& ctx = PadicContext::get(static_cast<std::uint64_t>(ell), N);
    const i64 m = brute::ipow(ell, N);
    std::int64_t mismatches = 0;
    for (std::int64_t t = 0; t < T; ++t) {
      const i64 x = draw(rng, m), h = draw(rng, m), y = draw(rng, m);
      const auto g = TracelessMat::from_coords(ctx.from_int(x), ctx.from_int(h), ctx.from_int(y));
      const brute::M2 bg = brute::traceless(x, h, y, m);
      const brute::M3 ad = brute::adjoint_matrix(bg, m);
      const auto oracle = brute::charpoly(ad, m);
      const i64 four_det = brute::mod(4 * static_cast<__int128>(brute::det(bg, m)), m);
      const MonicPoly p1 = char_poly_adjoint(g);
      const MonicPoly p2 = char_poly(adjoint_op(g));
      const Mat3 lib_ad = adjoint_op(g);
      bool ok = oracle[0] == 0 && oracle[1] == four_det && oracle[2] == 0;
      for (int i = 0; i < 3; ++i) {
        ok = ok && static_cast<i64>(p1.coefficients()[i].residue()) == oracle[i];
        ok = ok && static_cast<i64>(p2.coefficients()[i].residue()) == oracle[i];
      }
      for (int i = 0; i < 9; ++i) ok = ok && static_cast<i64>(lib_ad.raw(i / 3, i % 3)) == ad[i];
      ++r.trials;
      if (!ok) {
        ++mismatches;
        note_failure(r, "l=" + std::to_string(ell) + " g=(" + std::to_string(x) + "," + std::to_string(h) + "," +
                            std::to_string(y) + ")");
      }
    }
    r.details["configs"].push_back({{"ell", ell}, {"N", N}, {"trials", T}, {"mismatches", mismatches}});
  }
  return r;
}

// Inner-matrix reconstruction from conjugation plus l^n noise, checked in
// plain integer arithmetic.
SuiteResult inner(Rng& rng, std::int64_t trials) {
  SuiteResult r;
  const std::int64_t T = trials > 0 ? trials : 200;
  r.details["configs"] = Json::array();
  struct Cfg { i64 ell; int N, s; };
  for (const Cfg cfg : {Cfg{3, 14, 1}, Cfg{5, 12, 1}, Cfg{2, 18, 2}}) {
    const auto& ctx = PadicContext::get(static_cast<std::uint64_t>(cfg.ell), cfg.N);
    const i64 ell = cfg.ell, m = brute::ipow(ell, cfg.N);
    const int s = cfg.s, v = ctx.dyadic(), N = cfg.N;
    std::int64_t fails = 0;
    int max_det_val = 0;
    for (std::int64_t t = 0; t < T; ++t) {
      ++r.trials;
      const brute::M2 M0 = random_gl2(rng, m, ell);
      const Mat2 lM0 = to_mat(ctx, M0);
      const int a = alpha_of(ApproxMorphism::conjugation(lM0, s, 1));
      const int n = a + 10 * s + 5 * v + 6;
      brute::M2 noise[3];
      std::vector<TracelessMat> lnoise;
      for (auto& e : noise) {
        e = brute::traceless(draw(rng, m), draw(rng, m), draw(rng, m), m);
        lnoise.push_back(TracelessMat(to_mat(ctx, e)));
      }
      const auto phi = ApproxMorphism::conjugation(lM0, s, n, lnoise);
      const int k = std::min(N, n - a - 6 * s - 4 * v - 6);
      const int kt = std::min(N, n - a - 10 * s - 5 * v - 6);
      std::string why;
      try {
        const InnerCertificate cert = construct_inner_matrix(phi);
        const brute::M2 M = from_mat(cert.M);
        const int dv = brute::val(brute::det(M, m), ell, N);
        max_det_val = std::max(max_det_val, dv);
        if (cert.certified_precision != k) why = "certified depth " + std::to_string(cert.certified_precision);
        if (dv > 4 * s + v) why = "val det M = " + std::to_string(dv);
        // Samples l^s (x, h, y) coordinates: the basis and two random ones.
        std::vector<std::array<i64, 3>> coords = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (int i = 0; i < 2; ++i) coords.push_back({draw(rng, m), draw(rng, m), draw(rng, m)});
        const i64 ls = brute::ipow(ell, s);
        const i64 ln = n >= N ? 0 : brute::ipow(ell, n);
        const i64 det0_inv = brute::inv(brute::det(M0, m), m);
        std::vector<TracelessMat> samples;
        for (const auto& c : coords) {
          const brute::M2 g = brute::scale(ls, brute::traceless(c[0], c[1], c[2], m), m);
          samples.push_back(TracelessMat(to_mat(ctx, g)));
          brute::M2 img = brute::scale(det0_inv, brute::mul(brute::mul(M0, g, m), brute::adj(M0, m), m), m);
          for (int i = 0; i < 3; ++i)
            for (int e = 0; e < 4; ++e)
              img[e] = brute::mod(img[e] + static_cast<__int128>(brute::mod(static_cast<__int128>(ln) * c[i], m)) *
                                               noise[i][e],
                                  m);
          const brute::M2 diff = brute::sub(brute::mul(M, g, m), brute::mul(img, M, m), m);
          if (brute::min_val(diff, ell, N) < k) why = "intertwining fails below depth " + std::to_string(k);
          const i64 tr_img = brute::trace(brute::mul(img, img, m), m), tr_g = brute::trace(brute::mul(g, g, m), m);
          if (kt > 0 && brute::val(tr_img - tr_g, ell, N) < kt) why = "trace congruence fails";
        }
        if (!verify_conjugation(phi, cert, samples, k)) why = "library conjugation check disagrees";
        if (!verify_trace_congruence(phi, cert, samples)) why = "library trace check disagrees";
      } catch (const Error& e) {
        why = std::string("construct_inner_matrix threw: ") + e.what();
      }
      if (!why.empty()) {
        ++fails;
        note_failure(r, "l=" + std::to_string(ell) + ": " + why);
      }
    }
    r.details["configs"].push_back({{"ell", ell}, {"N", N}, {"s", s}, {"trials", T}, {"failures", fails},
                                    {"max_det_valuation", max_det_val}, {"det_valuation_bound", 4 * s + v}});
  }
  return r;
}

// Constructed subgroups of SL2(Z/9)^3 and SL2(Z/8)^2.
SuiteResult goursat(Rng& rng, std::int64_t trials) {
  SuiteResult r;
  const std::int64_t T = trials > 0 ? trials : 20;
  constexpr std::size_t kSizeLimit = 500000;
  r.details["instances"] = Json::array();
  std::size_t largest = 0;
  for (std::int64_t i = 0; i < T; ++i) {
    const bool odd = i % 2 == 0;
    const std::uint64_t ell = odd ? 3 : 2;
    const int N = odd ? 2 : 3, blocks = odd ? 3 : 2;
    const auto& ctx = PadicContext::get(ell, N);
    const i64 m = static_cast<i64>(ctx.modulus());
    const Mat2 u(ctx, {1, 1, 0, 1}), l(ctx, {1, 0, 1, 1}), id = Mat2::identity(ctx);
    const int kind = static_cast<int>((i / 2) % 3);
    std::vector<MatTuple> gens;
    std::string kind_name;
    if (kind == 2) {
      kind_name = "product";
      if (odd) {
        gens = {{u, u, id}, {l, l, id}, {id, id, u}, {id, id, l}};
      } else {
        gens = {{u, id}, {l, id}, {id, u}, {id, l}};
      }
    } else {
      kind_name = kind == 0 ? "diagonal" : "twisted";
      std::vector<Mat2> sig(blocks, id);
      if (kind == 1)
        for (int b = 1; b < blocks; ++b) sig[b] = to_mat(ctx, random_gl2(rng, m, static_cast<i64>(ell)));
      for (const Mat2& g : {u, l}) {
        MatTuple t;
        for (int b = 0; b < blocks; ++b) t.push_back(sig[b] * g * inverse(sig[b]));
        gens.push_back(t);
      }
      for (int b = 0; b < blocks; ++b) {
        if (rng() % 2 == 0) continue;
        const int e = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(N - 1));
        for (const auto& g : ball_generators(ctx, e)) gens.push_back(embed(g, blocks, b));
      }
    }
    Json inst = {{"ell", ell}, {"N", N}, {"blocks", blocks}, {"kind", kind_name}};
    ++r.trials;
    try {
      const auto G = FiniteMatrixGroup::closure(ctx, blocks, gens, kSizeLimit);
      largest = std::max(largest, G.order());
      const std::int64_t min_s = ell == 2 ? 2 : 1;
      std::vector<std::vector<std::int64_t>> smat(blocks, std::vector<std::int64_t>(blocks, 0));
      for (int a = 0; a < blocks; ++a)
        for (int b = a + 1; b < blocks; ++b)
          smat[a][b] = smat[b][a] = std::max<std::int64_t>(minimal_pair_exponent(G, a, b), min_s);
      const auto ex = goursat_exponents(smat, ell);
      std::vector<int> exps(ex.begin(), ex.end());
      const bool holds = contains_ball(G, exps);
      const bool nontrivial = std::any_of(exps.begin(), exps.end(), [&](int e) { return e < N; });
      inst["order"] = G.order();
      inst["s"] = smat;
      inst["exponents"] = exps;
      inst["nontrivial"] = nontrivial;
      inst["holds"] = holds;
      if (!holds) note_failure(r, "instance " + std::to_string(i) + " (" + kind_name + ") misses the predicted ball");
    } catch (const Error& e) {
      inst["error"] = e.what();
      note_failure(r, "instance " + std::to_string(i) + ": " + e.what());
    }
    r.details["instances"].push_back(inst);
  }
  r.details["largest_order"] = largest;
  r.details["size_limit"] = kSizeLimit;
  return r;
}

// ball_index times |B(s) mod l^N| equals |SL2(Z/l^N)|, all by enumeration.
SuiteResult ball_index_suite(Rng&, std::int64_t) {
  SuiteResult r;
  r.details["configs"] = Json::array();
  struct Cfg { std::uint64_t ell; int N, s; };
  for (const Cfg c : {Cfg{2, 3, 1}, Cfg{2, 3, 2}, Cfg{3, 2, 1}}) {
    const auto& ctx = PadicContext::get(c.ell, c.N);
    const auto ball = count_sl2_ball(ctx, c.s);
    const auto whole = count_sl2_ball(ctx, 0);
    const auto idx = ball_index(c.ell, c.s);
    const bool ok = idx * ball == whole && sl2_order(c.ell, c.N) == whole;
    ++r.trials;
    if (!ok) note_failure(r, "l=" + std::to_string(c.ell) + " N=" + std::to_string(c.N) + " s=" + std::to_string(c.s));
    r.details["configs"].push_back({{"ell", c.ell}, {"N", c.N}, {"s", c.s}, {"index", idx.str()},
                                    {"ball_order", ball}, {"group_order", whole}, {"equal", ok}});
  }
  return r;
}

// Conjugation-stable Lie subalgebras at l = 5, s = 1 with a planted t.
SuiteResult conj_gain(Rng& rng, std::int64_t trials) {
  SuiteResult r;
  const std::int64_t T = trials > 0 ? trials : 100;
  const int s = 1;
  Json gains = Json::object();
  for (std::int64_t i = 0; i < T; ++i) {
    const int t = static_cast<int>(i % 4), N = t + 9;
    const auto& ctx = PadicContext::get(5, N);
    const i64 m = static_cast<i64>(ctx.modulus());
    const i64 lt = brute::ipow(5, t);
    std::array<i64, 3> c{draw(rng, m), draw(rng, m), draw(rng, m)};
    c[rng() % 3] = draw_unit(rng, m, 5);
    auto X = TracelessMat::from_coords(ctx.from_int(lt * c[0] % m), ctx.from_int(lt * c[1] % m),
                                       ctx.from_int(lt * c[2] % m));
    std::vector<LieVector> gens{lie_vector({X})};
    if (rng() % 2) {
      auto Y = TracelessMat::from_coords(ctx.from_int(lt * draw(rng, m) % m), ctx.from_int(lt * draw(rng, m) % m),
                                         ctx.from_int(lt * draw(rng, m) % m));
      gens.push_back(lie_vector({Y}));
    }
    std::vector<MatTuple> conj;
    for (const auto& g : ball_generators(ctx, s)) conj.push_back({g});
    ++r.trials;
    try {
      const LieLattice W = conjugation_closure(LieLattice::span(ctx, 1, gens), conj, true);
      if (!conj_stable_gain(W, s, t)) note_failure(r, "t=" + std::to_string(t) + ": l^(t+4) sl2 not contained");
      int k = t;
      while (k < N && !contains_scaled_sl2(W, k)) ++k;
      const std::string key = std::to_string(k - t);
      gains[key] = gains.value(key, 0) + 1;
    } catch (const Error& e) {
      note_failure(r, std::string("t=") + std::to_string(t) + ": " + e.what());
    }
  }
  r.details["observed_gain_histogram"] = gains;
  r.details["claimed_gain"] = 4 * s;
  return r;
}

// The named constants as they appear in the bounds report.
SuiteResult constants_suite(Rng&, std::int64_t) {
  SuiteResult r;
  const Json in = {{"n", 2}, {"K_degree", 1}, {"heights", {0, 0}}};
  const Json rep = app::cmd_bounds({}, in).json.at("constants");
  auto check = [&](const char* name, bool ok) {
    ++r.trials;
    r.details[name] = ok;
    if (!ok) note_failure(r, name);
  };
  check("gamma", rep.at("gamma").at("value") == "10000000000000" && rep.at("gamma").at("expr") == "10^13");
  check("delta", rep.at("delta").at("expr") == "exp exp exp(12)");
  check("f_odd_constant", rep.at("f_odd_constant") == 800 && f_of_ell(3, 0, 0, 0) == 800);
  check("f_two_constant", rep.at("f_two_constant") == 15421 && f_of_ell(2, 0, 0, 0) == 15421);
  check("f_two_coefficient", rep.at("f_two_coefficient") == 19008 && f_of_ell(2, 0, 1, 0) - 15421 == 19008);
  check("adelic_exponent",
        rep.at("adelic_exponent").at("expr") == "5000*n*(n-1)" && rep.at("adelic_exponent").at("value") == 10000);
  check("alpha_2", rep.at("alpha_2") == 8192 && alpha_g(2) == 8192);
  check("odd_degree_cap", rep.at("odd_degree_cap").at("value") == 4608 && rep.at("odd_degree_cap").at("expr") == "2*48^2");
  check("two_degree_cap",
        rep.at("two_degree_cap").at("value") == 589824 && rep.at("two_degree_cap").at("expr") == "3^2*2^16");
  return r;
}

SuiteResult implication(Rng&, std::int64_t) {
  SuiteResult r;
  r.details["grid"] = Json::array();
  for (int n : {2, 3, 5})
    for (std::int64_t K : {1, 10, 100})
      for (double H : {1.0, 10.0}) {
        BoundInputs in;
        in.n_curves = n;
        in.K_degree = K;
        in.heights.assign(n, H);
        ++r.trials;
        Json cell = {{"n", n}, {"K_degree", K}, {"H", in.effective_H()}};
        try {
          const auto res = check_implication(in);
          cell["holds"] = res.holds;
          cell["digits"] = res.digits;
          if (!res.holds) note_failure(r, "implication fails at n=" + std::to_string(n) + " K=" + std::to_string(K));
        } catch (const Error& e) {
          cell["error"] = e.what();
          note_failure(r, e.what());
        }
        r.details["grid"].push_back(cell);
      }
  return r;
}

// log10 log10(delta^2) against the stated landmark 70683.8 +- 0.1.
SuiteResult landmark(Rng&, std::int64_t) {
  SuiteResult r;
  BoundInputs in;
  in.heights = {0, 0};
  const auto up = theorem1_bound(in, Rounding::Up), down = theorem1_bound(in, Rounding::Down);
  const double hi = up.loglog10().convert_to<double>(), lo = down.loglog10().convert_to<double>();
  const Float50 e12 = boost::multiprecision::exp(Float50(12));
  const double log10_ln = (boost::multiprecision::log10(Float50(2)) + e12 / boost::multiprecision::log(Float50(10)))
                              .convert_to<double>();
  const double target = 70683.8, tol = 0.1;
  ++r.trials;
  const bool ok = std::fabs(hi - target) <= tol && std::fabs(lo - target) <= tol;
  if (!ok) note_failure(r, "log10 log10(delta^2) lies outside 70683.8 +- 0.1");
  std::ostringstream a, b, c;
  a.precision(12);
  b.precision(12);
  c.precision(12);
  a << lo;
  b << hi;
  c << log10_ln;
  r.details = {{"loglog10_delta_squared_lower", a.str()}, {"loglog10_delta_squared_upper", b.str()},
               {"log10_ln_delta_squared", c.str()}, {"target", target}, {"tolerance", tol}};
  if (!ok) r.details["first_failure"] = "log10 log10(delta^2) lies outside 70683.8 +- 0.1";
  return r;
}

using SuiteFn = SuiteResult (*)(Rng&, std::int64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"hensel", hensel},         {"eigen_defect", eigen_defect}, {"adjoint_charpoly", adjoint_charpoly},
      {"inner", inner},           {"goursat", goursat},           {"ball_index", ball_index_suite},
      {"conj_gain", conj_gain},   {"constants", constants_suite}, {"implication", implication},
      {"landmark", landmark},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::int64_t trials) {
  for (const auto& [n, f] : registry()) {
    if (n != name) continue;
    Rng rng(seed ^ name_hash(name));
    SuiteResult r = f(rng, trials);
    r.name = name;
    r.pass = r.failures == 0;
    return r;
  }
  fail(ErrorCode::InvalidInput, "unknown suite '" + name + "'");
}

}  // namespace openimage::verify
