#include "core/padic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>

namespace openimage {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::BadValuation: return "BadValuation";
    case ErrorCode::HypothesisFails: return "HypothesisFails";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::OddTrace: return "OddTrace";
    case ErrorCode::SpanTooSmall: return "SpanTooSmall";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::SideConditionViolated: return "SideConditionViolated";
    case ErrorCode::NonSquareDet: return "NonSquareDet";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::IncomparableRepresentations: return "IncomparableRepresentations";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Square root modulo an odd prime (Tonelli-Shanks). Returns false when a is a
// non-residue.
bool sqrt_mod_prime(std::uint64_t a, std::uint64_t p, std::uint64_t& root) {
  a %= p;
  if (a == 0) {
    root = 0;
    return true;
  }
  if (powmod(a, (p - 1) / 2, p) != 1) return false;
  std::uint64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  root = r;
  return true;
}

}  // namespace

PadicContext::PadicContext(std::uint64_t ell, int precision) : ell_(ell), precision_(precision) {
  powers_[0] = 1;
  for (int k = 1; k <= precision; ++k) powers_[k] = powers_[k - 1] * ell;
}

const PadicContext& PadicContext::get(std::uint64_t ell, int precision) {
  require(is_prime(ell), ErrorCode::InvalidInput, "ell = " + std::to_string(ell) + " is not prime");
  require(precision >= 1, ErrorCode::InvalidInput, "precision must be >= 1");
  u128 m = 1;
  for (int k = 0; k < precision; ++k) {
    m *= ell;
    require(m < (u128{1} << kMaxPrecisionBits), ErrorCode::InvalidInput,
            "ell^N must stay below 2^62 (ell = " + std::to_string(ell) + ", N = " + std::to_string(precision) + ")");
  }

  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<PadicContext>> interned;
  std::lock_guard lock(mutex);
  auto& slot = interned[{ell, precision}];
  if (!slot) slot.reset(new PadicContext(ell, precision));
  return *slot;
}

std::uint64_t PadicContext::power(int k) const {
  require(k >= 0 && k <= precision_, ErrorCode::Internal, "power index out of range: " + std::to_string(k));
  return powers_[k];
}

PadicInt PadicContext::zero() const { return PadicInt(*this, 0); }
PadicInt PadicContext::one() const { return PadicInt(*this, 1); }
PadicInt PadicContext::from_residue(std::uint64_t r) const { return PadicInt(*this, r); }
PadicInt PadicContext::from_int(std::int64_t x) const { return PadicInt(*this, reduce(x)); }
PadicInt PadicContext::from_wide(i128 x) const { return PadicInt(*this, reduce(x)); }

std::uint64_t PadicContext::reduce(i128 x) const noexcept {
  const i128 m = static_cast<i128>(modulus());
  i128 r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

int PadicContext::valuation_of(std::uint64_t residue) const noexcept {
  if (residue == 0) return precision_;
  int k = 0;
  while (residue % ell_ == 0) {
    residue /= ell_;
    ++k;
  }
  return k;
}

std::int64_t PadicInt::centered() const noexcept {
  const std::uint64_t m = ctx_->modulus();
  return residue_ > m / 2 ? -static_cast<std::int64_t>(m - residue_) : static_cast<std::int64_t>(residue_);
}

void PadicInt::check_same(const PadicInt& o) const {
  if (ctx_ != o.ctx_) fail(ErrorCode::InvalidInput, "mixing residues from different contexts");
}

PadicInt& PadicInt::operator+=(const PadicInt& o) {
  check_same(o);
  const std::uint64_t m = ctx_->modulus();
  residue_ = residue_ >= m - o.residue_ ? residue_ - (m - o.residue_) : residue_ + o.residue_;
  return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& o) {
  check_same(o);
  residue_ = residue_ >= o.residue_ ? residue_ - o.residue_ : residue_ + (ctx_->modulus() - o.residue_);
  return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& o) {
  check_same(o);
  residue_ = mulmod(residue_, o.residue_, ctx_->modulus());
  return *this;
}

PadicInt PadicInt::pow(std::uint64_t e) const { return PadicInt(*ctx_, powmod(residue_, e, ctx_->modulus()), Raw{}); }

PadicInt PadicInt::shift_up(int k) const {
  if (k >= ctx_->precision()) return ctx_->zero();
  return *this * ctx_->from_residue(ctx_->power(k));
}

PadicInt PadicInt::shift_down(int k) const {
  require(k >= 0 && valuation() >= k, ErrorCode::BadValuation,
          "exact division by ell^" + std::to_string(k) + " of a value with valuation " + std::to_string(valuation()));
  if (k >= ctx_->precision()) return ctx_->zero();
  return PadicInt(*ctx_, residue_ / ctx_->power(k), Raw{});
}

bool PadicInt::congruent(const PadicInt& o, int k) const {
  check_same(o);
  if (k <= 0) return true;
  if (k > ctx_->precision()) k = ctx_->precision();
  return (*this - o).valuation() >= k;
}

std::string to_string(const PadicInt& x) {
  return std::to_string(x.residue()) + " mod " + std::to_string(x.context().ell()) + "^" +
         std::to_string(x.context().precision());
}

PadicInt inv_unit(const PadicInt& x) {
  require(x.is_unit(), ErrorCode::NonUnit, to_string(x) + " is not a unit");
  // Extended Euclid on (residue, modulus).
  const auto m = static_cast<i128>(x.context().modulus());
  i128 r0 = m, r1 = x.residue(), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  return x.context().from_wide(s0);
}

int sqrt_certified_precision(const PadicContext& ctx) noexcept {
  return ctx.is_dyadic() ? ctx.precision() - 1 : ctx.precision();
}

PadicInt sqrt_one_plus(const PadicInt& t) {
  const PadicContext& ctx = t.context();
  if (t.is_zero()) return ctx.one();
  const int need = ctx.is_dyadic() ? 3 : 1;
  require(t.valuation() >= need, ErrorCode::BadValuation,
          "sqrt_one_plus needs val(t) >= " + std::to_string(need) + ", got " + std::to_string(t.valuation()));

  if (ctx.is_dyadic()) {
    // Bitwise Hensel refinement on the exact integer a = 1 + t, carried to
    // 2^(N+2) so that the root is pinned down modulo 2^(N+1).
    const int top = ctx.precision() + 2;
    const u128 a = u128{1} + t.residue();
    const u128 mask = (u128{1} << top) - 1;
    u128 r = 1;
    for (int m = 3; m < top; ++m) {
      const u128 bit = u128{1} << (m + 1);
      if (((r * r - a) & (bit - 1)) != 0) r += u128{1} << (m - 1);
      r &= mask;
    }
    return ctx.from_residue(static_cast<std::uint64_t>(r % ctx.modulus()));
  }

  // Newton iteration r <- (r + a/r)/2 from r = 1; quadratic convergence in the
  // l-adic metric since a = 1 (mod l).
  const PadicInt a = ctx.one() + t;
  const PadicInt half = inv_unit(ctx.from_int(2));
  PadicInt r = ctx.one();
  for (int iter = 0; iter < 2 * PadicContext::kMaxPrecisionBits && !(r * r == a); ++iter)
    r = (r + a * inv_unit(r)) * half;
  require(r * r == a, ErrorCode::Internal, "sqrt Newton iteration did not converge");
  return r;
}

PadicInt sqrt_unit(const PadicInt& u) {
  const PadicContext& ctx = u.context();
  require(u.is_unit(), ErrorCode::NonSquareDet, to_string(u) + " is not a unit");
  if (ctx.is_dyadic()) {
    const std::uint64_t window = std::min<std::uint64_t>(8, ctx.modulus());
    require(u.residue() % window == 1 % window, ErrorCode::NonSquareDet,
            to_string(u) + " is not a square unit (needs u = 1 mod 8)");
    if (ctx.precision() < 3) return ctx.one();
    return sqrt_one_plus(u - ctx.one());
  }
  std::uint64_t r0 = 0;
  require(sqrt_mod_prime(u.residue() % ctx.ell(), ctx.ell(), r0), ErrorCode::NonSquareDet,
          to_string(u) + " is not a square modulo " + std::to_string(ctx.ell()));
  if (ctx.ell() - r0 < r0) r0 = ctx.ell() - r0;
  const PadicInt x = ctx.from_residue(r0);
  // x^2 - u has a simple root near r0 because 2 r0 is a unit.
  return hensel_lift(MonicPoly({-u, ctx.zero(), ctx.one()}), x);
}

MonicPoly::MonicPoly(std::vector<PadicInt> coefficients) : coeffs_(std::move(coefficients)) {
  require(!coeffs_.empty(), ErrorCode::InvalidInput, "empty polynomial");
  require(coeffs_.size() <= 4, ErrorCode::InvalidInput, "degree must be at most 3");
  const PadicContext& ctx = coeffs_.front().context();
  for (const auto& c : coeffs_)
    require(c.context() == ctx, ErrorCode::InvalidInput, "coefficients from different contexts");
  require(coeffs_.back() == ctx.one(), ErrorCode::InvalidInput, "leading coefficient must be exactly 1");
}

MonicPoly MonicPoly::from_ints(const PadicContext& ctx, std::initializer_list<std::int64_t> coefficients) {
  std::vector<PadicInt> c;
  for (auto x : coefficients) c.push_back(ctx.from_int(x));
  return MonicPoly(std::move(c));
}

PadicInt MonicPoly::operator()(const PadicInt& x) const {
  PadicInt acc = x.context().zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PadicInt MonicPoly::derivative_at(const PadicInt& x) const {
  PadicInt acc = x.context().zero();
  for (int k = degree(); k >= 1; --k) acc = acc * x + k * coeffs_[static_cast<std::size_t>(k)];
  return acc;
}

PadicInt hensel_lift(const MonicPoly& p, const PadicInt& alpha) {
  const PadicContext& ctx = alpha.context();
  require(p.context() == ctx, ErrorCode::InvalidInput, "polynomial and point live in different contexts");
  const int N = ctx.precision();

  const int k = val(p.derivative_at(alpha));
  const int m = val(p(alpha));
  require(k < N, ErrorCode::PrecisionExhausted, "val(p'(alpha)) is capped at N; hypothesis undecidable");
  if (m == N) {
    // alpha is already a root mod l^N; the true valuation is >= N > 2k only if 2k < N.
    require(2 * k < N, ErrorCode::PrecisionExhausted, "val(p(alpha)) is capped at N <= 2 val(p'(alpha))");
    return alpha;
  }
  require(m > 2 * k, ErrorCode::HypothesisFails,
          "val(p(alpha)) = " + std::to_string(m) + " is not > 2 val(p'(alpha)) = " + std::to_string(2 * k));

  // Newton steps with exact shifted division by l^k. The correction is only
  // known modulo l^(N-k), which changes p(.) by a multiple of l^N because
  // 2(N-k) >= N.
  PadicInt r = alpha;
  for (int iter = 0; iter < 2 * PadicContext::kMaxPrecisionBits; ++iter) {
    const PadicInt value = p(r);
    if (value.is_zero()) return r;
    const PadicInt slope = p.derivative_at(r);
    require(val(slope) == k, ErrorCode::Internal, "derivative valuation drifted during Newton iteration");
    r -= value.shift_down(k) * inv_unit(slope.shift_down(k));
  }
  fail(ErrorCode::Internal, "Hensel iteration did not converge");
}

}  // namespace openimage
