#include <random>

#include "core/matrix.hpp"
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

Mat2 random_mat(const PadicContext& c, std::mt19937_64& rng) {
  Mat2 m(c);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.set(i, j, c.from_residue(rng()));
  return m;
}

// Characteristic polynomial of a 3x3 integer matrix by the Faddeev-LeVerrier
// recursion, over plain integers mod m.
std::vector<std::int64_t> charpoly3(const std::int64_t A[3][3], std::int64_t m) {
  auto mulmod = [m](std::int64_t a, std::int64_t b) {
    return oracle::mod(static_cast<std::int64_t>(static_cast<__int128>(a) * b % m), m);
  };
  // c2 = -tr, c1 = sum of principal minors, c0 = -det, by cofactor expansion.
  std::int64_t tr = oracle::mod(A[0][0] + A[1][1] + A[2][2], m);
  std::int64_t minors = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) minors = oracle::mod(minors + mulmod(A[i][i], A[j][j]) - mulmod(A[i][j], A[j][i]), m);
  std::int64_t det = 0;
  for (int j = 0; j < 3; ++j) {
    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    det = oracle::mod(det + mulmod(A[0][j], oracle::mod(mulmod(A[1][j1], A[2][j2]) - mulmod(A[1][j2], A[2][j1]), m)), m);
  }
  return {oracle::mod(-det, m), minors, oracle::mod(-tr, m), 1};
}

}  // namespace

TEST_CASE("mat2 basics") {
  const auto& c = PadicContext::get(5, 3);
  Mat2 m(c, {1, 2, 3, 4});
  CHECK(adjugate(m) == Mat2(c, {4, -2, -3, 1}));
  CHECK(adjugate(Mat2::identity(c)) == Mat2::identity(c));
  CHECK(adjugate(Mat2(c)) == Mat2(c));
  CHECK(m.det() == c.from_int(-2));
  CHECK(m.trace() == c.from_int(5));
  CHECK(inverse(m) * m == Mat2::identity(c));
  CHECK(throws_code(ErrorCode::NonUnit, [&] { inverse(Mat2(c, {5, 0, 0, 1})); }));
}

TEST_CASE("adjugate identity on random matrices") {
  std::mt19937_64 rng(1);
  for (auto [ell, N] : {std::pair<int, int>{2, 12}, {3, 8}, {5, 6}}) {
    const auto& c = PadicContext::get(ell, N);
    for (int i = 0; i < 10000; ++i) {
      Mat2 m = random_mat(c, rng);
      REQUIRE(adjugate(m) * m == Mat2::scalar(m.det()));
    }
  }
}

TEST_CASE("theta examples") {
  const auto& c = PadicContext::get(5, 2);
  CHECK(theta(Mat2::identity(c)).mat() == Mat2(c));
  CHECK(theta(Mat2(c, {1, 1, 0, 1})).mat() == Mat2(c, {0, 1, 0, 0}));
  CHECK(theta(Mat2(c, {2, 0, 0, 3})).mat() == Mat2(c, {12, 0, 0, 13}));
  const auto& d = PadicContext::get(2, 5);
  CHECK(theta(Mat2(d, {1, 2, 4, 3})).mat() == Mat2(d, {-1, 2, 4, 1}));
  CHECK(throws_code(ErrorCode::OddTrace, [&] { theta(Mat2(d, {1, 1, 0, 1})); }));
  CHECK(throws_code(ErrorCode::OddTrace, [&] { theta(Mat2(d, {2, 0, 0, 2})); }));
  CHECK(theta_certified_precision(d) == 4);
}

TEST_CASE("theta reconstructs g") {
  std::mt19937_64 rng(2);
  for (int ell : {2, 3, 5}) {
    const auto& c = PadicContext::get(ell, 7);
    for (int i = 0; i < 2000; ++i) {
      Mat2 g = random_mat(c, rng);
      if (ell == 2) g = Mat2::identity(c) + Mat2(c, {2, 2, 2, 2}) * g;
      TracelessMat t = theta(g);
      CHECK(t.mat() + Mat2::scalar(half_trace(g)) == g);
      CHECK(t.mat().trace().is_zero());
    }
  }
}

TEST_CASE("traceless coordinates and bracket") {
  const auto& c = PadicContext::get(7, 3);
  auto x = TracelessMat::basis(c, 0), h = TracelessMat::basis(c, 1), y = TracelessMat::basis(c, 2);
  CHECK(bracket(h, x) == c.from_int(2) * x);
  CHECK(bracket(h, y) == c.from_int(-2) * y);
  CHECK(bracket(x, y) == h);
  CHECK(throws_code(ErrorCode::InvalidInput, [&] { TracelessMat(Mat2::identity(c)); }));
}

TEST_CASE("char_poly_adjoint examples") {
  const auto& c = PadicContext::get(5, 4);
  CHECK(char_poly_adjoint(TracelessMat(Mat2(c, {1, 0, 0, -1}))) == MonicPoly::from_ints(c, {0, -4, 0, 1}));
  CHECK(char_poly_adjoint(TracelessMat(Mat2(c, {0, 1, 0, 0}))) == MonicPoly::from_ints(c, {0, 0, 0, 1}));
  auto g = TracelessMat(Mat2(c, {0, 1, 1, 0}));
  CHECK(char_poly_adjoint(g) == MonicPoly::from_ints(c, {0, -4, 0, 1}));
  CHECK(char_poly(adjoint_op(g)) == char_poly_adjoint(g));
}

TEST_CASE("adjoint operator matches the bracket") {
  std::mt19937_64 rng(3);
  const auto& c = PadicContext::get(3, 6);
  for (int i = 0; i < 500; ++i) {
    auto g = TracelessMat::from_coords(c.from_residue(rng()), c.from_residue(rng()), c.from_residue(rng()));
    auto z = TracelessMat::from_coords(c.from_residue(rng()), c.from_residue(rng()), c.from_residue(rng()));
    CHECK(from_coord_vector(c, adjoint_op(g).apply(to_coord_vector(z))) == bracket(g, z));
  }
}

TEST_CASE("char_poly_adjoint against explicit 3x3 expansion") {
  std::mt19937_64 rng(4);
  for (int ell : {2, 3, 5}) {
    const auto& c = PadicContext::get(ell, 9);
    const std::int64_t M = static_cast<std::int64_t>(c.modulus());
    for (int i = 0; i < 10000; ++i) {
      std::int64_t a = static_cast<std::int64_t>(rng() % M), b = static_cast<std::int64_t>(rng() % M),
                   cc = static_cast<std::int64_t>(rng() % M);
      const std::int64_t A[3][3] = {{2 * a, -2 * b, 0}, {-cc, 0, b}, {0, 2 * cc, -2 * a}};
      auto ref = charpoly3(A, M);
      auto g = TracelessMat::from_coords(c.from_int(b), c.from_int(a), c.from_int(cc));
      auto p = char_poly_adjoint(g);
      for (int k = 0; k < 4; ++k) REQUIRE(static_cast<std::int64_t>(p.coefficients()[k].residue()) == ref[k]);
    }
  }
}

TEST_CASE("approx_eigen_defect examples") {
  const auto& c = PadicContext::get(3, 4);
  Mat2 g(c, {1, 0, 0, -1});
  auto d = approx_eigen_defect(g, c.one(), {c.one(), c.zero()}, 4);
  CHECK(d.b == 0);
  CHECK(d.observed == 4);
  d = approx_eigen_defect(g, c.from_int(10), {c.one(), c.zero()}, 2);
  CHECK(d.b == 0);
  CHECK(d.observed == 2);
  d = approx_eigen_defect(g, c.one(), {c.from_int(3), c.zero()}, 3);
  CHECK(d.b == 1);
  CHECK(d.required == 2);
  CHECK(throws_code(ErrorCode::HypothesisFails, [&] { approx_eigen_defect(g, c.from_int(2), {c.one(), c.zero()}, 1); }));
}

TEST_CASE("approx eigen defect exhaustive sweep at l = 3, N = 3") {
  const auto& c = PadicContext::get(3, 3);
  int hits = 0;
  const int grid[] = {0, 1, 3, 4, 9, 13, 18, 26};
  for (int a : grid)
    for (int b : grid)
      for (int cc : grid)
        for (int d : {1, 2, 8, 25})
          for (int lam = 0; lam < 27; ++lam)
            for (int w0 = 0; w0 < 27; w0 += 2)
              for (int w1 : {0, 1, 3, 9, 10}) {
                Mat2 g(c, {a, b, cc, d});
                PadicVec w{c.from_int(w0), c.from_int(w1)};
                auto gw = g.apply(w);
                auto l = c.from_int(lam);
                for (int n = 1; n <= 3; ++n) {
                  if (!gw[0].congruent(l * w[0], n) || !gw[1].congruent(l * w[1], n)) break;
                  int b0 = std::min(val(w[0]), val(w[1]));
                  if (b0 >= n) continue;
                  auto res = approx_eigen_defect(g, l, w, n);
                  CHECK(res.observed >= n - b0);
                  ++hits;
                }
              }
  CHECK(hits > 1000);
}

TEST_CASE("hensel_failure_dichotomy examples") {
  const auto& c = PadicContext::get(3, 6);
  auto g = TracelessMat(Mat2(c, {1, 0, 0, -1}));
  auto r = hensel_failure_dichotomy(g, c.one(), {c.one(), c.from_int(729 / 3)}, 5);
  REQUIRE(std::holds_alternative<EigenvalueBranch>(r));
  CHECK(std::get<EigenvalueBranch>(r).nu == c.one());
  CHECK(std::get<EigenvalueBranch>(r).depth == 6);

  auto g2 = TracelessMat(Mat2(c, {2, 0, 0, -2}));
  const int n = 5;
  // g w == w mod 3^5 forces w1 == 0 mod 3^5 and w2 == 0 mod 3^4.
  auto r2 = hensel_failure_dichotomy(g2, c.one(), {c.zero(), c.from_int(81)}, n);
  REQUIRE(std::holds_alternative<ValuationBranch>(r2));
  CHECK(std::get<ValuationBranch>(r2).beta == 4);
  CHECK(std::get<ValuationBranch>(r2).bound == n - 4);

  auto z = TracelessMat::zero(c);
  auto r3 = hensel_failure_dichotomy(z, c.zero(), {c.one(), c.zero()}, 5);
  REQUIRE(std::holds_alternative<EigenvalueBranch>(r3));
  CHECK(std::get<EigenvalueBranch>(r3).nu == c.zero());
}

TEST_CASE("hensel_failure_dichotomy on random eigen-congruences") {
  std::mt19937_64 rng(9);
  for (int ell : {2, 3, 5}) {
    const auto& c = PadicContext::get(ell, 8);
    int count = 0;
    while (count < 2000) {
      auto g = TracelessMat::from_coords(c.from_residue(rng()), c.from_residue(rng()), c.from_residue(rng()));
      auto lam = c.from_residue(rng() % c.power(2));
      PadicVec w{c.from_residue(rng()), c.from_residue(rng())};
      // Force g w == lambda w mod l^n by taking w in the approximate kernel.
      auto adj = adjugate(g.mat() - Mat2::scalar(lam));
      w = {adj(0, 0), adj(1, 0)};
      if (std::min(val(w[0]), val(w[1])) >= 8) continue;
      auto gw = g.mat().apply(w);
      int n = 0;
      while (n < 8 && gw[0].congruent(lam * w[0], n + 1) && gw[1].congruent(lam * w[1], n + 1)) ++n;
      if (n == 0) continue;
      auto r = hensel_failure_dichotomy(g, lam, w, n);
      if (auto* e = std::get_if<EigenvalueBranch>(&r)) {
        CHECK((e->nu * e->nu + g.det()).is_zero());
        CHECK(e->depth >= std::min(8, val(lam) + 3));
      } else {
        auto& v = std::get<ValuationBranch>(r);
        CHECK(v.beta >= v.bound);
      }
      ++count;
    }
  }
}
