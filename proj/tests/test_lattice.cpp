#include <random>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/lattice.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace openimage;

namespace {

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

LieVector scaled_basis(const PadicContext& c, int blocks, int block, int coord, int k) {
  LieVector v(3 * blocks, 0);
  v[3 * block + coord] = c.power(k);
  return v;
}

std::vector<LieVector> scaled_sl2(const PadicContext& c, int k) {
  return {scaled_basis(c, 1, 0, 0, k), scaled_basis(c, 1, 0, 1, k), scaled_basis(c, 1, 0, 2, k)};
}

Mat2 random_gl2(const PadicContext& c, std::mt19937_64& rng) {
  while (true) {
    Mat2 m(c, {static_cast<std::int64_t>(rng() % c.modulus()), static_cast<std::int64_t>(rng() % c.modulus()),
               static_cast<std::int64_t>(rng() % c.modulus()), static_cast<std::int64_t>(rng() % c.modulus())});
    if (m.det().is_unit()) return m;
  }
}

// Graph of conjugation by M0 on the first block plus l^t sl2 in the second.
LieLattice graph_plus_kernel(const PadicContext& c, const Mat2& M0, int t) {
  std::vector<LieVector> gens;
  const Mat2 Mi = inverse(M0);
  for (int i = 0; i < 3; ++i) {
    auto a = TracelessMat::basis(c, i);
    auto b = TracelessMat(M0 * a.mat() * Mi);
    gens.push_back(lie_vector({a, b}));
  }
  if (t < c.precision())
    for (int j = 0; j < 3; ++j) gens.push_back(scaled_basis(c, 2, 1, j, t));
  return LieLattice::span(c, 2, gens);
}

// All elements of a 1-block lattice, by exhaustive combination.
std::set<LieVector> brute_elements(const PadicContext& c, const std::vector<LieVector>& gens) {
  std::set<LieVector> out{LieVector(3, 0)};
  std::vector<LieVector> frontier{LieVector(3, 0)};
  while (!frontier.empty()) {
    std::vector<LieVector> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) {
        LieVector w(3);
        for (int i = 0; i < 3; ++i) w[i] = (v[i] + g[i]) % c.modulus();
        if (out.insert(w).second) next.push_back(w);
      }
    frontier.swap(next);
  }
  return out;
}

}  // namespace

TEST_CASE("span examples") {
  const auto& c9 = PadicContext::get(3, 2);
  auto Z = LieLattice::span(c9, 1, {});
  CHECK(Z.is_zero());
  auto L = LieLattice::span(c9, 1, {{1, 1, 0}, {0, 3, 0}});
  CHECK(L.basis() == std::vector<LieVector>{{1, 1, 0}, {0, 3, 0}});
  CHECK(L.contains({3, 0, 0}));
  CHECK_FALSE(L.contains({1, 0, 0}));
  for (int k = 0; k < 2; ++k) {
    auto S = LieLattice::span(c9, 1, scaled_sl2(c9, k));
    CHECK(contains_scaled_sl2(S, k));
    if (k >= 1) CHECK_FALSE(contains_scaled_sl2(S, k - 1));
  }
  CHECK(throws_code(ErrorCode::InvalidInput, [&] { LieLattice::span(c9, 1, {{1, 1}}); }));
}

TEST_CASE("echelon idempotence") {
  std::mt19937_64 rng(3);
  const auto& c = PadicContext::get(5, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<LieVector> gens(1 + trial % 6, LieVector(6));
    for (auto& g : gens)
      for (auto& x : g) x = (rng() % c.modulus()) * c.power(rng() % 4) % c.modulus();
    auto L = LieLattice::span(c, 2, gens);
    auto L2 = LieLattice::span(c, 2, L.basis());
    CHECK(L.same_module(L2));
    CHECK(L2.basis() == L.basis());
  }
}

TEST_CASE("lie algebra of SL2(Z/3)") {
  const auto& c = PadicContext::get(3, 1);
  auto G = FiniteMatrixGroup::closure(c, 1, {{Mat2(c, {1, 1, 0, 1})}, {Mat2(c, {1, 0, 1, 1})}});
  REQUIRE(G.order() == 24);
  auto L = lie_algebra_of_group(G);
  CHECK(contains_scaled_sl2(L, 0));
  // Independent count: the span of all Theta images has 27 elements.
  std::vector<LieVector> th;
  for (std::size_t i = 0; i < G.order(); ++i) th.push_back(lie_vector({theta(G.element(i)[0])}));
  CHECK(brute_elements(c, th).size() == 27);
}

TEST_CASE("lie algebra of scalars and identity") {
  const auto& c = PadicContext::get(5, 3);
  auto S = FiniteMatrixGroup::closure(c, 1, {{Mat2::scalar(-c.one())}});
  CHECK(S.order() == 2);
  CHECK(lie_algebra_of_group(S).is_zero());
  auto I = FiniteMatrixGroup::closure(c, 2, {});
  CHECK(lie_algebra_of_group(I).is_zero());
}

TEST_CASE("lie algebra of a group is bracket closed") {
  std::mt19937_64 rng(21);
  struct Cfg {
    int ell, N, blocks;
  };
  for (auto cfg : {Cfg{3, 2, 1}, Cfg{5, 1, 1}, Cfg{2, 3, 1}, Cfg{3, 1, 2}, Cfg{2, 2, 2}}) {
    const auto& c = PadicContext::get(cfg.ell, cfg.N);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<MatTuple> gens;
      for (int g = 0; g < 2; ++g) {
        MatTuple t;
        for (int b = 0; b < cfg.blocks; ++b) {
          Mat2 m = random_gl2(c, rng);
          if (cfg.ell == 2) m = Mat2::identity(c) + c.from_int(2) * m;  // Id mod 2
          if (!m.det().is_unit()) m = Mat2::identity(c);
          t.push_back(m);
        }
        gens.push_back(t);
      }
      auto G = FiniteMatrixGroup::closure(c, cfg.blocks, gens, 200000);
      auto L = lie_algebra_of_group(G);
      CHECK(bracket_closed(L));
      CHECK(L.certified_precision() == (cfg.ell == 2 ? cfg.N - 1 : cfg.N));
    }
  }
}

TEST_CASE("contains_scaled_sl2 edge cases") {
  const auto& c = PadicContext::get(5, 4);
  auto H = LieLattice::span(c, 1, {{0, 1, 0}});
  for (int k = 0; k < 4; ++k) CHECK_FALSE(contains_scaled_sl2(H, k));
  auto S = LieLattice::span(c, 1, scaled_sl2(c, 2));
  CHECK(throws_code(ErrorCode::PrecisionExhausted, [&] { contains_scaled_sl2(S, 4); }));
  CHECK(contains_scaled_sl2(S, 3));
}

TEST_CASE("kernel_component") {
  const auto& c = PadicContext::get(3, 4);
  auto G = graph_plus_kernel(c, Mat2::identity(c), c.precision());
  CHECK(kernel_component(G).is_zero());
  for (int t = 0; t < 4; ++t) {
    auto K = kernel_component(graph_plus_kernel(c, Mat2::identity(c), t));
    CHECK(K.same_module(LieLattice::span(c, 1, scaled_sl2(c, t))));
  }
  auto single = LieLattice::span(c, 2, {{1, 2, 0, 5, 7, 1}});
  CHECK(kernel_component(single).is_zero());
  CHECK(throws_code(ErrorCode::InvalidInput, [&] { kernel_component(LieLattice::span(c, 1, {})); }));
}

TEST_CASE("special_basis") {
  const auto& c = PadicContext::get(3, 5);
  auto sb = special_basis(graph_plus_kernel(c, Mat2::identity(c), 2));
  for (int i = 0; i < 3; ++i) {
    CHECK(sb.a[i] == scaled_basis(c, 1, 0, i, 0));
    CHECK(sb.b[i] == sb.a[i]);
    CHECK(sb.y[i] == scaled_basis(c, 1, 0, i, 2));
  }
  CHECK(sb.kernel_rank == 3);

  const Mat2 M0(c, {1, 1, 0, 1});
  auto ex = special_basis(graph_plus_kernel(c, M0, c.precision()));
  CHECK(ex.kernel_rank == 0);
  for (int i = 0; i < 3; ++i) {
    CHECK(ex.y[i] == LieVector(3, 0));
    auto a = lie_block(c, ex.a[i], 0);
    CHECK(lie_vector({TracelessMat(M0 * a.mat() * inverse(M0))}) == ex.b[i]);
  }
  CHECK(throws_code(ErrorCode::DegenerateProjection,
                    [&] { special_basis(LieLattice::span(c, 2, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}})); }));
}

TEST_CASE("special_basis recovers the kernel depth") {
  std::mt19937_64 rng(17);
  for (int ell : {3, 5}) {
    const auto& c = PadicContext::get(ell, 6);
    for (int trial = 0; trial < 40; ++trial) {
      const int t = static_cast<int>(rng() % 6);
      auto L = graph_plus_kernel(c, random_gl2(c, rng), t);
      auto sb = special_basis(L);
      int minv = c.precision();
      for (const auto& y : sb.y) minv = std::min(minv, lie_valuation(c, y));
      CHECK(minv == t);
      for (int i = 0; i < 3; ++i) {
        LieVector ab = sb.a[i];
        ab.insert(ab.end(), sb.b[i].begin(), sb.b[i].end());
        CHECK(L.contains(ab));
        LieVector zy(3, 0);
        zy.insert(zy.end(), sb.y[i].begin(), sb.y[i].end());
        CHECK(L.contains(zy));
      }
    }
  }
}

TEST_CASE("conj_stable_gain examples") {
  for (int t = 0; t <= 3; ++t) {
    const auto& c = PadicContext::get(5, t + 9);
    auto S = LieLattice::span(c, 1, scaled_sl2(c, t));
    CHECK(conj_stable_gain(S, 1, t));
    std::vector<MatTuple> conj;
    for (const auto& g : ball_generators(c, 1)) conj.push_back({g});
    auto W = conjugation_closure(LieLattice::span(c, 1, {scaled_basis(c, 1, 0, 1, t)}), conj, true);
    CHECK(conjugation_stable(W, conj));
    CHECK(bracket_closed(W));
    CHECK(conj_stable_gain(W, 1, t));
  }
  const auto& c = PadicContext::get(5, 10);
  auto Z = LieLattice::span(c, 1, {});
  CHECK(throws_code(ErrorCode::PreconditionFailed, [&] { conj_stable_gain(Z, 1, 0); }));
  auto S = LieLattice::span(c, 1, scaled_sl2(c, 0));
  CHECK(throws_code(ErrorCode::PreconditionFailed, [&] { conj_stable_gain(S, 0, 0); }));
  CHECK(throws_code(ErrorCode::PrecisionExhausted, [&] { conj_stable_gain(S, 1, 6); }));
  auto H = LieLattice::span(c, 1, {scaled_basis(c, 1, 0, 1, 0)});
  CHECK(throws_code(ErrorCode::PreconditionFailed, [&] { conj_stable_gain(H, 1, 0); }));
  const auto& c2 = PadicContext::get(2, 16);
  CHECK(throws_code(ErrorCode::PreconditionFailed,
                    [&] { conj_stable_gain(LieLattice::span(c2, 1, scaled_sl2(c2, 0)), 1, 0); }));
  CHECK(conj_stable_gain(LieLattice::span(c2, 1, scaled_sl2(c2, 1)), 2, 1));
}

TEST_CASE("solve_T examples") {
  const auto& c = PadicContext::get(3, 4);
  auto T = solve_T(c, {{3, 0}, {3, 3}}, {{0, 9}}, 1);
  CHECK(T.at(0, 0) == 1);
  CHECK(T.at(0, 1) == c.modulus() - 1);
  CHECK(T.at(1, 0) == 0);
  CHECK(T.at(1, 1) == 1);
  auto one = solve_T(c, {{9 * 2}}, {{0}}, 2);
  CHECK(one.at(0, 0) == inv_unit(c.from_int(2)).residue());
  auto id = solve_T(c, {{9, 0, 0}, {0, 9, 0}, {0, 0, 9}}, {}, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id.at(i, j) == (i == j ? 1u : 0u));
  CHECK(throws_code(ErrorCode::SpanTooSmall, [&] { solve_T(c, {{3, 0}, {0, 9}}, {}, 1); }));
  CHECK(throws_code(ErrorCode::PreconditionFailed, [&] { solve_T(c, {{3, 0}, {0, 3}}, {{0, 3}}, 1); }));
  CHECK(throws_code(ErrorCode::PreconditionFailed, [&] { solve_T(c, {{1}}, {}, 4); }));
}

TEST_CASE("solve_T against the inverse of b / l^n") {
  std::mt19937_64 rng(8);
  using boost::multiprecision::cpp_int;
  for (int ell : {2, 3, 5}) {
    const auto& c = PadicContext::get(ell, 7);
    const std::int64_t m = static_cast<std::int64_t>(c.modulus());
    for (int trial = 0; trial < 200; ++trial) {
      const int k = 1 + static_cast<int>(trial % 3);
      const int n = static_cast<int>(rng() % 4);
      // Columns of C are a unit matrix plus an l-multiple; b = l^n C.
      std::vector<std::vector<std::int64_t>> C(k, std::vector<std::int64_t>(k));
      std::int64_t det;
      do {
        for (auto& row : C)
          for (auto& x : row) x = static_cast<std::int64_t>(rng() % m);
        det = k == 1 ? C[0][0]
              : k == 2 ? C[0][0] * C[1][1] - C[0][1] * C[1][0]
                       : C[0][0] * (C[1][1] * C[2][2] - C[1][2] * C[2][1]) -
                             C[0][1] * (C[1][0] * C[2][2] - C[1][2] * C[2][0]) +
                             C[0][2] * (C[1][0] * C[2][1] - C[1][1] * C[2][0]);
      } while (oracle::mod(det, ell) == 0);
      std::vector<LieVector> b(k, LieVector(k)), y;
      for (int i = 0; i < k; ++i)
        for (int r = 0; r < k; ++r) b[i][r] = oracle::mod(C[r][i] * static_cast<std::int64_t>(oracle::ipow(ell, n)), m);
      for (int j = 0; j < static_cast<int>(rng() % 3); ++j) {
        LieVector v(k);
        for (auto& x : v) x = oracle::mod(static_cast<std::int64_t>(rng() % m) * oracle::ipow(ell, n + 1), m);
        y.push_back(v);
      }
      auto T = solve_T(c, b, y, n);
      // T C == I mod l^(N-n), checked with the oracle inverse of C.
      const std::int64_t q = static_cast<std::int64_t>(oracle::ipow(ell, 7 - n));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          cpp_int s = 0;
          for (int r = 0; r < k; ++r) s += cpp_int(T.at(i, r)) * C[r][j];
          CHECK(static_cast<std::int64_t>(s % q) == (i == j ? 1 % q : 0));
        }
      for (int i = 0; i < k; ++i) {
        auto img = apply(c, T, b[i]);
        for (int r = 0; r < k; ++r) CHECK(img[r] == (r == i ? c.power(n) : 0u));
      }
    }
  }
}

TEST_CASE("basis_congruence_bound") {
  const auto& c = PadicContext::get(3, 6);
  std::vector<LieVector> b = {{9, 0, 0}, {0, 9, 0}, {0, 0, 9}};
  CHECK(basis_congruence_bound(c, b, {0, 0, 0}, 2, 3));
  CHECK(basis_congruence_bound(c, b, {27, 54, 0}, 2, 3));
  CHECK(throws_code(ErrorCode::PreconditionFailed, [&] { basis_congruence_bound(c, b, {9, 0, 0}, 2, 3); }));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n2 = 1 + static_cast<int>(rng() % 2), n = 1 + static_cast<int>(rng() % 3);
    // b = l^n2 (I + 3R) spans l^n2 Z^2.
    std::vector<LieVector> bs(2, LieVector(2));
    for (int i = 0; i < 2; ++i)
      for (int r = 0; r < 2; ++r)
        bs[i][r] = ((i == r ? 1 : 0) + 3 * (rng() % c.modulus())) % c.modulus() * c.power(n2) % c.modulus();
    std::vector<std::uint64_t> lam = {rng() % c.modulus(), rng() % c.modulus()};
    bool applicable = true;
    bool result = false;
    try {
      result = basis_congruence_bound(c, bs, lam, n2, n);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PreconditionFailed);
      applicable = false;
    }
    if (applicable) {
      CHECK(result);
    }
    std::vector<std::uint64_t> lam2 = {lam[0] * c.power(n) % c.modulus(), lam[1] * c.power(n) % c.modulus()};
    CHECK(basis_congruence_bound(c, bs, lam2, n2, n));
  }
}
