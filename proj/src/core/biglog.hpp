#pragma once

// Numbers far beyond floating range, kept as one-sided bounds.
//
// Three tiers: an exact rational, log10 of the value, or log10 log10 of the
// value. Every non-exact operation moves its result outward in the direction
// of the bound (Up: the stored number is >= the true value, Down: <=), so a
// comparison of an Up number with a Down number is sound.
//
// The float type is a template parameter; callers that hit an undecidable
// comparison can redo the whole evaluation at a wider type.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "core/error.hpp"

namespace openimage {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

enum class Rounding { Up, Down };

template <class F>
class BasicBigLog {
 public:
  enum class Tier { Exact, Log10, LogLog10 };

  // Promotion threshold for the log10 tier.
  static F promote_at() { return F("1e300"); }

  static BasicBigLog exact(const cpp_rational& q, Rounding dir) {
    require(q > 0, ErrorCode::InvalidInput, "bounds are positive numbers");
    BasicBigLog b(Tier::Exact, dir);
    b.q_ = q;
    return b;
  }
  static BasicBigLog from_log10(const F& l, Rounding dir) {
    BasicBigLog b(Tier::Log10, dir);
    b.v_ = l;
    b.normalize();
    return b;
  }
  static BasicBigLog from_loglog10(const F& ll, Rounding dir) {
    BasicBigLog b(Tier::LogLog10, dir);
    b.v_ = ll;
    return b;
  }

  Tier tier() const noexcept { return tier_; }
  Rounding rounding() const noexcept { return dir_; }
  const cpp_rational& rational() const { return q_; }

  // One-sided log10 in the number's own direction. Throws for LogLog numbers
  // whose log10 overflows the float type.
  F log10() const {
    switch (tier_) {
      case Tier::Exact:
        return nudge(F(boost::multiprecision::log10(to_float(q_))), dir_);
      case Tier::Log10:
        return v_;
      case Tier::LogLog10: {
        F l = boost::multiprecision::pow(F(10), v_);
        require(boost::multiprecision::isfinite(l), ErrorCode::IncomparableRepresentations, "log10 beyond float range");
        return nudge(l, dir_);
      }
    }
    return v_;
  }

  // One-sided log10 log10; needs a value above 10 in its direction.
  F loglog10() const {
    if (tier_ == Tier::LogLog10) return v_;
    F l = log10();
    require(l > 0, ErrorCode::IncomparableRepresentations, "log-log of a number <= 1");
    return nudge(F(boost::multiprecision::log10(l)), dir_);
  }

  friend BasicBigLog operator*(const BasicBigLog& a, const BasicBigLog& b) {
    const Rounding dir = a.combined_dir(b);
    if (a.tier_ == Tier::Exact && b.tier_ == Tier::Exact) {
      cpp_rational p = a.q_ * b.q_;
      if (small(p)) return exact(p, dir);
    }
    if (a.tier_ != Tier::LogLog10 && b.tier_ != Tier::LogLog10)
      return from_log10(nudge(F(a.as(dir).log10() + b.as(dir).log10()), dir), dir);
    // log10(La + Lb) with the larger term factored out.
    const BasicBigLog& big = a.tier_ == Tier::LogLog10 ? a : b;
    const BasicBigLog& other = a.tier_ == Tier::LogLog10 ? b : a;
    F llb = big.v_;
    F ratio;
    if (other.tier_ == Tier::LogLog10) {
      F llo = other.v_;
      if (llo > llb) std::swap(llo, llb);
      ratio = boost::multiprecision::pow(F(10), F(llo - llb));
    } else {
      F lo = other.as(dir).log10();
      F lbig = boost::multiprecision::pow(F(10), llb);
      ratio = boost::multiprecision::isfinite(lbig) ? F(lo / lbig) : F(0);
    }
    F ll = llb + boost::multiprecision::log10(F(1 + ratio));
    return from_loglog10(nudge(ll, dir), dir);
  }

  // x^k for a positive exponent.
  BasicBigLog pow(const cpp_rational& k) const {
    require(k > 0, ErrorCode::InvalidInput, "exponent must be positive");
    if (tier_ == Tier::Exact && boost::multiprecision::denominator(k) == 1) {
      cpp_int e = boost::multiprecision::numerator(k);
      if (e < 4096) {
        cpp_rational p = 1;
        for (int i = 0; i < static_cast<int>(e); ++i) {
          p *= q_;
          if (!small(p)) break;
        }
        if (small(p)) return exact(p, dir_);
      }
    }
    F kf = to_float(k);
    if (tier_ == Tier::LogLog10) return from_loglog10(nudge(F(v_ + boost::multiprecision::log10(kf)), dir_), dir_);
    return from_log10(nudge(F(log10() * kf), dir_), dir_);
  }

  // a <= b with a an upper bound and b a lower bound. Throws
  // IncomparableRepresentations when the stored values are within rounding
  // slack of each other on the wrong side.
  static bool certified_le(const BasicBigLog& upper, const BasicBigLog& lower) {
    require(upper.dir_ == Rounding::Up && lower.dir_ == Rounding::Down, ErrorCode::Internal,
            "certified_le needs (Up, Down)");
    if (upper.tier_ == Tier::Exact && lower.tier_ == Tier::Exact) return upper.q_ <= lower.q_;
    F a, b;
    if (upper.tier_ == Tier::LogLog10 || lower.tier_ == Tier::LogLog10) {
      a = upper.loglog10();
      b = lower.loglog10();
    } else {
      a = upper.log10();
      b = lower.log10();
    }
    if (a <= b) return true;
    F scale = boost::multiprecision::fabs(a) + boost::multiprecision::fabs(b) + 1;
    if (a - b <= scale * eps() * 1024) fail(ErrorCode::IncomparableRepresentations, "bounds agree to working precision");
    return false;
  }

  std::string tier_name() const {
    switch (tier_) {
      case Tier::Exact: return "exact";
      case Tier::Log10: return "log10";
      case Tier::LogLog10: return "loglog10";
    }
    return "?";
  }

  // Value in the tier's own scale, 15 significant digits.
  std::string value_string(int digits = 15) const {
    std::ostringstream os;
    os.precision(digits);
    if (tier_ == Tier::Exact)
      os << to_float(q_);
    else
      os << v_;
    return os.str();
  }

  static F eps() { return std::numeric_limits<F>::epsilon() * 64; }

  static F nudge(const F& x, Rounding dir) {
    F d = (boost::multiprecision::fabs(x) + 1) * eps();
    return dir == Rounding::Up ? F(x + d) : F(x - d);
  }

  static F to_float(const cpp_rational& q) {
    return F(boost::multiprecision::numerator(q)) / F(boost::multiprecision::denominator(q));
  }

 private:
  BasicBigLog(Tier t, Rounding d) : tier_(t), dir_(d) {}

  static bool small(const cpp_rational& p) {
    return boost::multiprecision::msb(boost::multiprecision::numerator(p)) < 4096 &&
           boost::multiprecision::msb(boost::multiprecision::denominator(p)) < 4096;
  }

  Rounding combined_dir(const BasicBigLog& o) const {
    if (tier_ == Tier::Exact) return o.dir_;
    if (o.tier_ == Tier::Exact) return dir_;
    require(dir_ == o.dir_, ErrorCode::Internal, "mixing upper and lower bounds");
    return dir_;
  }

  // Exact numbers carry a nominal direction; re-tag them for a product.
  BasicBigLog as(Rounding d) const {
    BasicBigLog c = *this;
    if (tier_ == Tier::Exact) c.dir_ = d;
    return c;
  }

  void normalize() {
    if (tier_ == Tier::Log10 && v_ > promote_at()) {
      v_ = nudge(F(boost::multiprecision::log10(v_)), dir_);
      tier_ = Tier::LogLog10;
    }
  }

  Tier tier_;
  Rounding dir_;
  cpp_rational q_ = 1;
  F v_ = 0;
};

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;
using BigLogNumber = BasicBigLog<Float50>;

}  // namespace openimage
