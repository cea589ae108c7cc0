#pragma once

// Closed-form index bounds and exponent formulas.
//
// Integer formulas are exact. Everything astronomically large is a one-sided
// BasicBigLog; the evaluation templates take the float type so a comparison
// that is undecidable at 50 digits can be redone at 100.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/biglog.hpp"

namespace openimage {

namespace constants {
inline constexpr std::int64_t kGamma = 10'000'000'000'000;  // 10^13
inline constexpr int kDeltaInnerExponent = 12;                // delta = exp exp exp 12
inline constexpr std::int64_t kFOddConstant = 800;
inline constexpr std::int64_t kFTwoConstant = 15421;
inline constexpr std::int64_t kFTwoCoefficient = 19008;
inline constexpr std::int64_t kFOddCoefficient = 1024;
inline constexpr std::int64_t kAdelicExponentCoefficient = 5000;  // times n(n-1)
inline constexpr std::int64_t kPairExponent = 10'000;
inline constexpr std::int64_t kOddDegreeCap = 2 * 48 * 48;        // [K_l : K], l odd
inline constexpr std::int64_t kTwoDegreeCap = 9 * 65536;          // [K_2 : K]
inline constexpr std::int64_t kPairAuxDegree = kOddDegreeCap;     // d in b(E_i x E_j; d)
// Rational bounds for zeta(2) = 1.6449340668...
inline const cpp_rational kZeta2Upper{1644935, 1000000};
inline const cpp_rational kZeta2Lower{1644934, 1000000};
}  // namespace constants

// Integer formulas.
std::int64_t alpha_g(std::int64_t g);
std::int64_t pink_exponent_odd(std::int64_t k, std::int64_t n1, std::int64_t n2);
std::pair<std::int64_t, std::int64_t> pink_exponent_two(std::int64_t k, std::int64_t n1, std::int64_t n2);
std::int64_t f_pair(std::int64_t v_b0, std::int64_t n1, std::int64_t n2, int v);
std::int64_t t_max(std::int64_t v_b0, std::int64_t n1, std::int64_t n2, int v);
std::int64_t ball_exponent_pair(std::uint64_t ell, std::int64_t f, std::int64_t n1, std::int64_t n2);
std::int64_t f_of_ell(std::uint64_t ell, std::int64_t v_b0_pair, std::int64_t v_D1, std::int64_t v_D2);
std::int64_t n_j_from_valuations(std::uint64_t ell, std::int64_t v_Dj);

struct PrimeValuations {
  std::uint64_t ell = 0;
  std::int64_t v_b0_pair = 0;
  std::int64_t v_D1 = 0;
  std::int64_t v_D2 = 0;
};

struct BoundInputs {
  std::int64_t K_degree = 1;
  int n_curves = 2;
  std::vector<double> heights;
  std::int64_t d = constants::kPairAuxDegree;
  std::vector<PrimeValuations> b0_valuations;
  // Optional explicit H; must not undercut max{1, log[K:Q], max h}.
  std::optional<double> H;

  // InvalidInput on any violated field constraint.
  void validate() const;
  double effective_H() const;
  // Index pair (i, j), i < j, with the largest h_i + h_j.
  std::pair<int, int> worst_pair() const;
};

// Goursat index bound 2^{3n(n-2)} zeta(2)^{n(n-1)} c^{n(n-1)/2}, rounded up.
BigLogNumber goursat_index_bound(std::int64_t c, int n);

template <class F>
struct BoundMath {
  using Big = BasicBigLog<F>;

  static F widen(const F& x, Rounding dir) {
    F d = (boost::multiprecision::fabs(x) + 1) * Big::eps() * 1024;
    return dir == Rounding::Up ? F(x + d) : F(x - d);
  }
  static F ln(const F& x) { return boost::multiprecision::log(x); }
  static F lg(const F& x) { return boost::multiprecision::log10(x); }
  static F from_double(double x) { return F(x); }

  static F log10_b_iso(std::int64_t deg, std::int64_t g, const F& h, Rounding dir) {
    require(deg >= 1 && g >= 1, ErrorCode::InvalidInput, "b needs deg >= 1 and g >= 1");
    const F a = F(alpha_g(g));
    F m = h;
    const F lndeg = ln(F(deg));
    if (lndeg > m) m = lndeg;
    if (m < 1) m = 1;
    F inner = F(64 * g * g) * lg(F(14 * g)) + lg(F(deg)) + 2 * lg(m);
    return widen(a * inner, dir);
  }

  static Big b_iso(std::int64_t deg, std::int64_t g, const F& h, Rounding dir) {
    return Big::from_log10(log10_b_iso(deg, g, h, dir), dir);
  }

  // b(A/K; d) = 4^{e Q^alpha} b^{1 + alpha log Q}, Q = d (1 + log d)^2.
  static Big b_with_degree(std::int64_t deg, std::int64_t g, const F& h, std::int64_t d, Rounding dir) {
    require(d >= 1, ErrorCode::InvalidInput, "d must be >= 1");
    const F a = F(alpha_g(g));
    const F lnd = ln(F(d));
    const F Q = F(d) * (1 + lnd) * (1 + lnd);
    const F lnQ = ln(Q);
    const F e = boost::multiprecision::exp(F(1));
    const F lb = log10_b_iso(deg, g, h, dir);
    // e Q^alpha log10 4, with Q^alpha = exp(alpha ln Q).
    F first = e * boost::multiprecision::exp(a * lnQ) * lg(F(4));
    F second = (1 + a * lnQ) * lb;
    return Big::from_log10(widen(F(first + second), dir), dir);
  }

  static Big zeta2(Rounding dir) {
    return Big::exact(dir == Rounding::Up ? constants::kZeta2Upper : constants::kZeta2Lower, dir);
  }

  // b(E_i x E_j / K; d) with h additive on products.
  static Big pair_b(const BoundInputs& in, int i, int j, Rounding dir) {
    return b_with_degree(in.K_degree, 2, F(in.heights[i]) + F(in.heights[j]), in.d, dir);
  }

  static Big pair_index_bound(const BoundInputs& in, Rounding dir) {
    in.validate();
    auto [i, j] = in.worst_pair();
    return pair_b(in, i, j, dir).pow(constants::kPairExponent);
  }

  static Big bad_prime_product(const std::vector<Big>& components, Rounding dir) {
    Big out = Big::exact(30, dir);
    for (const auto& c : components) out = out * c;
    return out;
  }

  // 30 b(E1;60) b(E1^2;2) b(E2;60) b(E2^2;2) b(E1 x E2;2), each b0 replaced by
  // its b(A/K;d) upper bound.
  static Big bad_prime_product_bound(const BoundInputs& in, Rounding dir) {
    in.validate();
    auto [i, j] = in.worst_pair();
    const F hi = F(in.heights[i]), hj = F(in.heights[j]);
    std::vector<Big> comps = {
        b_with_degree(in.K_degree, 1, hi, 60, dir), b_with_degree(in.K_degree, 2, 2 * hi, 2, dir),
        b_with_degree(in.K_degree, 1, hj, 60, dir), b_with_degree(in.K_degree, 2, 2 * hj, 2, dir),
        b_with_degree(in.K_degree, 2, F(hi + hj), 2, dir)};
    return bad_prime_product(comps, dir);
  }

  static Big adelic_index_bound(const BoundInputs& in, Rounding dir) {
    in.validate();
    const std::int64_t n = in.n_curves;
    auto [i, j] = in.worst_pair();
    Big out = Big::exact(in.K_degree, dir);
    if (n > 2) out = out * Big::exact(cpp_rational(8), dir).pow(n * (n - 2));
    out = out * zeta2(dir).pow(n * (n - 1));
    out = out * pair_b(in, i, j, dir).pow(constants::kAdelicExponentCoefficient * n * (n - 1));
    return out;
  }

  // log10 log10 delta = e^12 log10 e - log10 ln 10.
  static Big delta(Rounding dir) {
    const F e12 = boost::multiprecision::exp(F(constants::kDeltaInnerExponent));
    F ll = e12 / ln(F(10)) - lg(ln(F(10)));
    return Big::from_loglog10(widen(ll, dir), dir);
  }

  // H = max{1, log[K:Q], max h} with the logarithm widened in direction dir.
  static F height_bound(const BoundInputs& in, Rounding dir) {
    if (in.H) return F(*in.H);
    F H = 1;
    if (in.K_degree > 1) H = std::max(H, widen(ln(F(in.K_degree)), dir));
    for (double h : in.heights) H = std::max(H, F(h));
    return H;
  }

  static Big theorem1_bound(const BoundInputs& in, Rounding dir) {
    in.validate();
    const std::int64_t n = in.n_curves;
    const F H = height_bound(in, dir);
    Big out = delta(dir).pow(n * (n - 1));
    const F base = F(in.K_degree) * H * H;
    if (base > 1) {
      F l = widen(F(lg(base) * F(constants::kGamma) * F(n * (n - 1))), dir);
      out = out * Big::from_log10(l, dir);
    }
    return out;
  }

  static bool check_implication(const BoundInputs& in) {
    return Big::certified_le(adelic_index_bound(in, Rounding::Up), theorem1_bound(in, Rounding::Down));
  }
};

BigLogNumber b_iso(std::int64_t deg, std::int64_t g, double h);
BigLogNumber b_with_degree(std::int64_t deg, std::int64_t g, double h, std::int64_t d);
BigLogNumber bad_prime_product_bound(const BoundInputs& in);
BigLogNumber pair_index_bound(const BoundInputs& in);
BigLogNumber adelic_index_bound(const BoundInputs& in);
BigLogNumber theorem1_bound(const BoundInputs& in, Rounding dir = Rounding::Down);
BigLogNumber delta_bound(Rounding dir);

struct ImplicationResult {
  bool holds = false;
  int digits = 50;  // float width that decided the comparison
};

// adelic_index_bound (upper) <= theorem1_bound (lower). Retries at 100 digits
// on an undecidable comparison and rethrows if that is still undecidable.
ImplicationResult check_implication(const BoundInputs& in);

}  // namespace openimage
