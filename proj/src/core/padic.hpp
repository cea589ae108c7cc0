#pragma once

// Fixed-precision arithmetic in Z/l^N.
//
// A PadicInt is a residue modulo l^N together with a pointer to its interned
// PadicContext. Contexts are created once per (l, N) and never destroyed, so
// copying a PadicInt is two words and the pointer comparison is the context
// equality test.
//
// Valuations follow the capped-zero convention: val(0) = N. Anything that needs
// an exact valuation (the Hensel hypothesis, for instance) treats a capped value
// as undecidable and reports PrecisionExhausted.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace openimage {

using u128 = unsigned __int128;
using i128 = __int128;

class PadicInt;

class PadicContext {
 public:
  static constexpr int kMaxPrecisionBits = 62;

  // Interned lookup; throws InvalidInput unless ell is prime, N >= 1 and
  // ell^N < 2^62.
  static const PadicContext& get(std::uint64_t ell, int precision);

  std::uint64_t ell() const noexcept { return ell_; }
  int precision() const noexcept { return precision_; }
  std::uint64_t modulus() const noexcept { return powers_[precision_]; }
  // v = v_l(2): 1 for l = 2, 0 otherwise.
  int dyadic() const noexcept { return ell_ == 2 ? 1 : 0; }
  bool is_dyadic() const noexcept { return ell_ == 2; }

  // l^k for 0 <= k <= N.
  std::uint64_t power(int k) const;

  PadicInt zero() const;
  PadicInt one() const;
  PadicInt from_int(std::int64_t x) const;
  PadicInt from_residue(std::uint64_t r) const;
  PadicInt from_wide(i128 x) const;

  std::uint64_t reduce(i128 x) const noexcept;
  int valuation_of(std::uint64_t residue) const noexcept;

  bool operator==(const PadicContext& other) const noexcept { return this == &other; }

 private:
  PadicContext(std::uint64_t ell, int precision);

  std::uint64_t ell_;
  int precision_;
  std::array<std::uint64_t, kMaxPrecisionBits + 1> powers_{};
};

class PadicInt {
 public:
  PadicInt(const PadicContext& ctx, std::uint64_t residue) : ctx_(&ctx), residue_(residue % ctx.modulus()) {}

  const PadicContext& context() const noexcept { return *ctx_; }
  std::uint64_t residue() const noexcept { return residue_; }
  // Representative in (-l^N/2, l^N/2].
  std::int64_t centered() const noexcept;

  int valuation() const noexcept { return ctx_->valuation_of(residue_); }
  bool is_zero() const noexcept { return residue_ == 0; }
  bool is_unit() const noexcept { return residue_ % ctx_->ell() != 0; }

  PadicInt operator-() const noexcept { return PadicInt(*ctx_, residue_ == 0 ? 0 : ctx_->modulus() - residue_, Raw{}); }
  PadicInt& operator+=(const PadicInt& o);
  PadicInt& operator-=(const PadicInt& o);
  PadicInt& operator*=(const PadicInt& o);
  friend PadicInt operator+(PadicInt a, const PadicInt& b) { return a += b; }
  friend PadicInt operator-(PadicInt a, const PadicInt& b) { return a -= b; }
  friend PadicInt operator*(PadicInt a, const PadicInt& b) { return a *= b; }
  friend PadicInt operator*(std::int64_t k, const PadicInt& b) { return b.context().from_int(k) * b; }

  bool operator==(const PadicInt& o) const noexcept { return ctx_ == o.ctx_ && residue_ == o.residue_; }

  PadicInt pow(std::uint64_t e) const;
  // Multiplication by l^k.
  PadicInt shift_up(int k) const;
  // Exact division by l^k; requires valuation() >= k. The result is only
  // meaningful modulo l^(N-k).
  PadicInt shift_down(int k) const;
  // True when x == y (mod l^k); k is clamped to [0, N].
  bool congruent(const PadicInt& o, int k) const;

 private:
  struct Raw {};
  PadicInt(const PadicContext& ctx, std::uint64_t residue, Raw) noexcept : ctx_(&ctx), residue_(residue) {}
  void check_same(const PadicInt& o) const;

  const PadicContext* ctx_;
  std::uint64_t residue_;
};

std::string to_string(const PadicInt& x);

// l-adic valuation with the capped-zero convention.
inline int val(const PadicInt& x) noexcept { return x.valuation(); }

// Inverse of a unit; NonUnit otherwise.
PadicInt inv_unit(const PadicInt& x);

// sqrt(1 + t) on the branch of the binomial series: r = 1 (mod l) for odd l,
// r = 1 (mod 4) for l = 2. Requires val(t) >= 1 (odd) or >= 3 (l = 2).
//
// For l = 2 the root of a unit is only determined modulo 2^(N-1) by its square
// modulo 2^N; the value returned is the series value of the canonical
// representative of t, and sqrt_certified_precision() reports N - 1.
PadicInt sqrt_one_plus(const PadicInt& t);
int sqrt_certified_precision(const PadicContext& ctx) noexcept;

// Square root of a unit that is a square; the returned root is the one whose
// reduction mod l (mod 4 for l = 2) is smallest. NonSquareDet when u is not a
// square unit.
PadicInt sqrt_unit(const PadicInt& u);

class MonicPoly {
 public:
  // Coefficients from the constant term upward; the last one must be 1.
  MonicPoly(std::vector<PadicInt> coefficients);
  static MonicPoly from_ints(const PadicContext& ctx, std::initializer_list<std::int64_t> coefficients);

  const PadicContext& context() const noexcept { return coeffs_.front().context(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const PadicInt> coefficients() const noexcept { return coeffs_; }

  PadicInt operator()(const PadicInt& x) const;
  PadicInt derivative_at(const PadicInt& x) const;

  bool operator==(const MonicPoly& o) const = default;

 private:
  std::vector<PadicInt> coeffs_;
};

// Newton/Hensel lifting of an approximate root. Requires
// val(p(alpha)) > 2 val(p'(alpha)), both valuations decidable at precision N.
// Returns r with p(r) = 0 (mod l^N) and val(alpha - r) >= val(p(alpha)) - val(p'(alpha)).
PadicInt hensel_lift(const MonicPoly& p, const PadicInt& alpha);

}  // namespace openimage
