#include <random>

#include "core/padic.hpp"
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

}  // namespace

TEST_CASE("context validation and interning") {
  const auto& a = PadicContext::get(3, 4);
  const auto& b = PadicContext::get(3, 4);
  CHECK(&a == &b);
  CHECK(a.modulus() == 81);
  CHECK(a.dyadic() == 0);
  CHECK(PadicContext::get(2, 5).dyadic() == 1);
  CHECK(throws_code(ErrorCode::InvalidInput, [] { PadicContext::get(4, 2); }));
  CHECK(throws_code(ErrorCode::InvalidInput, [] { PadicContext::get(3, 0); }));
  CHECK(throws_code(ErrorCode::InvalidInput, [] { PadicContext::get(2, 62); }));
  CHECK(PadicContext::get(2, 61).modulus() == (std::uint64_t{1} << 61));
}

TEST_CASE("valuation examples") {
  CHECK(val(PadicContext::get(2, 8).from_int(12)) == 2);
  CHECK(val(PadicContext::get(3, 5).from_int(0)) == 5);
  CHECK(val(PadicContext::get(3, 4).from_int(9)) == 2);
  CHECK(val(PadicContext::get(3, 4).from_int(-9)) == 2);
}

TEST_CASE("unit inversion") {
  const auto& c = PadicContext::get(3, 3);
  CHECK(inv_unit(c.from_int(2)).residue() == 14);
  CHECK(inv_unit(c.one()).residue() == 1);
  CHECK(throws_code(ErrorCode::NonUnit, [&] { inv_unit(c.from_int(3)); }));
  for (std::int64_t x = 1; x < 27; ++x) {
    if (x % 3 == 0) continue;
    auto y = inv_unit(c.from_int(x));
    CHECK(static_cast<std::int64_t>(y.residue()) == oracle::inverse(x, 27));
    CHECK(inv_unit(y).residue() == static_cast<std::uint64_t>(x));
  }
}

TEST_CASE("valuation laws on random pairs") {
  std::mt19937_64 rng(7);
  for (auto [ell, N] : {std::pair<int, int>{2, 10}, {3, 6}, {5, 5}, {7, 4}}) {
    const auto& c = PadicContext::get(ell, N);
    for (int i = 0; i < 2000; ++i) {
      auto x = c.from_residue(rng()), y = c.from_residue(rng());
      if (i % 3 == 0) x = x.shift_up(static_cast<int>(rng() % N));
      CHECK(val(x * y) == std::min(N, val(x) + val(y)));
      CHECK(val(x + y) >= std::min(val(x), val(y)));
    }
  }
}

TEST_CASE("shifts") {
  const auto& c = PadicContext::get(3, 4);
  CHECK(c.from_int(18).shift_down(2).residue() == 2);
  CHECK(throws_code(ErrorCode::BadValuation, [&] { c.from_int(6).shift_down(2); }));
  CHECK(c.from_int(2).shift_up(3).residue() == 54);
  CHECK(c.from_int(10).congruent(c.from_int(1), 2));
  CHECK(!c.from_int(10).congruent(c.from_int(1), 3));
}

TEST_CASE("sqrt_one_plus examples and branch") {
  CHECK(sqrt_one_plus(PadicContext::get(3, 3).zero()).residue() == 1);
  CHECK(sqrt_one_plus(PadicContext::get(3, 3).from_int(3)).residue() == 25);
  // l = 2: squares mod 32 only pin the root mod 16; the series value is 29.
  const auto& c2 = PadicContext::get(2, 5);
  auto r = sqrt_one_plus(c2.from_int(8));
  CHECK(r.residue() == 29);
  CHECK(sqrt_certified_precision(c2) == 4);
  CHECK((r * r).residue() == 9);
  CHECK(throws_code(ErrorCode::BadValuation, [&] { sqrt_one_plus(c2.from_int(4)); }));
  CHECK(throws_code(ErrorCode::BadValuation, [] { sqrt_one_plus(PadicContext::get(5, 3).from_int(2)); }));
}

TEST_CASE("sqrt_one_plus agrees with the binomial series") {
  std::mt19937_64 rng(11);
  for (auto [ell, N] : {std::pair<int, int>{2, 8}, {2, 12}, {3, 6}, {5, 4}, {7, 3}}) {
    const auto& c = PadicContext::get(ell, N);
    const int need = ell == 2 ? 3 : 1;
    for (int i = 0; i < 60; ++i) {
      std::int64_t t = static_cast<std::int64_t>(rng() % (c.modulus() / c.power(need))) * static_cast<std::int64_t>(c.power(need));
      auto r = sqrt_one_plus(c.from_int(t));
      CHECK((r * r).residue() == c.from_int(1 + t).residue());
      CHECK(static_cast<std::int64_t>(r.residue()) == oracle::binomial_sqrt(t, ell, N));
      CHECK(r.residue() % (ell == 2 ? 4 : ell) == 1);
    }
  }
}

TEST_CASE("sqrt_unit") {
  const auto& c = PadicContext::get(5, 4);
  auto r = sqrt_unit(c.from_int(4));
  CHECK((r * r).residue() == 4);
  CHECK(throws_code(ErrorCode::NonSquareDet, [&] { sqrt_unit(c.from_int(2)); }));
  CHECK(throws_code(ErrorCode::NonSquareDet, [&] { sqrt_unit(c.from_int(5)); }));
  const auto& d = PadicContext::get(2, 6);
  auto s = sqrt_unit(d.from_int(17));
  CHECK((s * s).residue() == 17);
  CHECK(throws_code(ErrorCode::NonSquareDet, [&] { sqrt_unit(d.from_int(5)); }));
}

TEST_CASE("hensel_lift examples") {
  const auto& c = PadicContext::get(3, 3);
  auto p = MonicPoly::from_ints(c, {-4, 0, 1});
  auto r = hensel_lift(p, c.one());
  CHECK(r.residue() == 25);
  CHECK(val(c.one() - r) >= 1);
  const auto& c4 = PadicContext::get(3, 4);
  CHECK(hensel_lift(MonicPoly::from_ints(c4, {0, -1, 1}), c4.from_int(3)).residue() == 0);
  CHECK(hensel_lift(MonicPoly::from_ints(c4, {-1, 0, 1}), c4.one()).residue() == 1);
}

TEST_CASE("hensel_lift errors") {
  const auto& c = PadicContext::get(3, 4);
  // x^2 - 3 at 0: val p = 1, val p' = N (capped).
  CHECK(throws_code(ErrorCode::PrecisionExhausted, [&] { hensel_lift(MonicPoly::from_ints(c, {-3, 0, 1}), c.zero()); }));
  // x^2 - 9 at 0: val p = 2, val p'(0) capped.
  CHECK(throws_code(ErrorCode::PrecisionExhausted, [&] { hensel_lift(MonicPoly::from_ints(c, {-9, 0, 1}), c.zero()); }));
  // x^2 + 1 at 1 mod 3: p = 2, val 0 <= 0.
  CHECK(throws_code(ErrorCode::HypothesisFails, [&] { hensel_lift(MonicPoly::from_ints(c, {1, 0, 1}), c.one()); }));
  CHECK(throws_code(ErrorCode::InvalidInput, [&] { MonicPoly({c.one(), c.from_int(2)}); }));
}

TEST_CASE("hensel_lift matches exhaustive root search") {
  std::mt19937_64 rng(5);
  for (auto [ell, N] : {std::pair<int, int>{2, 6}, {3, 5}, {5, 3}}) {
    const auto& c = PadicContext::get(ell, N);
    const std::int64_t M = static_cast<std::int64_t>(c.modulus());
    int done = 0;
    for (int tries = 0; done < 200 && tries < 200000; ++tries) {
      int deg = 2 + static_cast<int>(rng() % 2);
      std::vector<std::int64_t> coeffs;
      for (int i = 0; i < deg; ++i) coeffs.push_back(static_cast<std::int64_t>(rng() % M));
      coeffs.push_back(1);
      std::int64_t a = static_cast<std::int64_t>(rng() % M);
      std::vector<std::int64_t> deriv;
      for (int i = 1; i <= deg; ++i) deriv.push_back(coeffs[i] * i);
      int vp = oracle::valuation(oracle::poly_eval(coeffs, a, M), ell, N);
      int vd = oracle::valuation(oracle::poly_eval(deriv, a, M), ell, N);
      if (vd >= N || vp <= 2 * vd) continue;
      std::vector<PadicInt> pc;
      for (auto x : coeffs) pc.push_back(c.from_int(x));
      PadicInt r = hensel_lift(MonicPoly(pc), c.from_int(a));
      auto roots = oracle::roots(coeffs, M);
      CHECK(std::find(roots.begin(), roots.end(), static_cast<std::int64_t>(r.residue())) != roots.end());
      CHECK(oracle::valuation(a - static_cast<std::int64_t>(r.residue()), ell, N) >= vp - vd);
      ++done;
    }
    CHECK(done == 200);
  }
}
