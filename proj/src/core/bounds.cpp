#include "core/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace openimage {

namespace {

void nonneg(std::initializer_list<std::int64_t> xs, const char* what) {
  for (auto x : xs) require(x >= 0, ErrorCode::InvalidInput, std::string(what) + ": arguments must be >= 0");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::int64_t alpha_g(std::int64_t g) {
  require(g >= 1 && g <= 1000, ErrorCode::InvalidInput, "alpha(g) needs 1 <= g <= 1000");
  return 1024 * g * g * g;
}

std::int64_t pink_exponent_odd(std::int64_t k, std::int64_t n1, std::int64_t n2) {
  nonneg({k, n1, n2}, "pink_exponent_odd");
  return 2 * k + std::max({2 * k, 8 * n1, 8 * n2});
}

std::pair<std::int64_t, std::int64_t> pink_exponent_two(std::int64_t k, std::int64_t n1, std::int64_t n2) {
  require(n1 >= 4 && n2 >= 4 && k >= 2, ErrorCode::SideConditionViolated, "l = 2 exponents need n1, n2 >= 4 and k >= 2");
  return {12 * (k + 11 * n2 + 5 * n1 + 12) + 1, 12 * (k + 11 * n1 + 5 * n2 + 12) + 1};
}

std::int64_t f_pair(std::int64_t v_b0, std::int64_t n1, std::int64_t n2, int v) {
  nonneg({v_b0, n1, n2, v}, "f_pair");
  return v_b0 / 2 + 16 * std::max(n1, n2) + 11 * v + 7;
}

std::int64_t t_max(std::int64_t v_b0, std::int64_t n1, std::int64_t n2, int v) {
  nonneg({v_b0, n1, n2, v}, "t_max");
  return v_b0 / 2 + 11 * n1 + n2 + 7 * v + 7;
}

std::int64_t ball_exponent_pair(std::uint64_t ell, std::int64_t f, std::int64_t n1, std::int64_t n2) {
  require(is_prime(ell), ErrorCode::InvalidInput, "ell must be prime");
  nonneg({f, n1, n2}, "ball_exponent_pair");
  if (ell == 2) {
    require(n1 >= 2 && n2 >= 2, ErrorCode::SideConditionViolated, "l = 2 needs n1, n2 >= 2");
    return 12 * (f + 17 * std::max(n1, n2) + 13) + 1;
  }
  if (ell <= 5) require(n1 >= 1 && n2 >= 1, ErrorCode::SideConditionViolated, "l = 3, 5 need n1, n2 >= 1");
  return 4 * f;
}

std::int64_t f_of_ell(std::uint64_t ell, std::int64_t v_b0_pair, std::int64_t v_D1, std::int64_t v_D2) {
  require(is_prime(ell), ErrorCode::InvalidInput, "ell must be prime");
  nonneg({v_b0_pair, v_D1, v_D2}, "f_of_ell");
  const std::int64_t m = std::max(v_D1, v_D2);
  if (ell == 2) return 6 * v_b0_pair + constants::kFTwoCoefficient * m + constants::kFTwoConstant;
  return 2 * v_b0_pair + constants::kFOddCoefficient * m + constants::kFOddConstant;
}

std::int64_t n_j_from_valuations(std::uint64_t ell, std::int64_t v_Dj) {
  require(is_prime(ell), ErrorCode::InvalidInput, "ell must be prime");
  nonneg({v_Dj}, "n_j_from_valuations");
  return ell == 2 ? 48 * v_Dj + 38 : 16 * v_Dj + 12;
}

void BoundInputs::validate() const {
  require(K_degree >= 1, ErrorCode::InvalidInput, "K_degree must be >= 1");
  require(n_curves >= 2, ErrorCode::InvalidInput, "n_curves must be >= 2");
  require(static_cast<int>(heights.size()) == n_curves, ErrorCode::InvalidInput,
          "heights must list one value per curve");
  for (double h : heights) require(std::isfinite(h), ErrorCode::InvalidInput, "heights must be finite");
  require(d >= 1, ErrorCode::InvalidInput, "d must be >= 1");
  for (const auto& p : b0_valuations) {
    require(is_prime(p.ell), ErrorCode::InvalidInput, "b0_valuations: ell must be prime");
    require(p.v_b0_pair >= 0 && p.v_D1 >= 0 && p.v_D2 >= 0, ErrorCode::InvalidInput, "b0_valuations must be >= 0");
  }
  if (H) {
    require(*H >= 1, ErrorCode::InvalidInput, "H must be >= 1");
    double hmin = std::max(1.0, std::log(static_cast<double>(K_degree)));
    for (double h : heights) hmin = std::max(hmin, h);
    require(*H >= hmin, ErrorCode::InvalidInput, "H must be >= max{1, log[K:Q], max h}");
  }
}

double BoundInputs::effective_H() const {
  if (H) return *H;
  double out = std::max(1.0, std::log(static_cast<double>(K_degree)));
  for (double h : heights) out = std::max(out, h);
  return out;
}

std::pair<int, int> BoundInputs::worst_pair() const {
  std::pair<int, int> best{0, 1};
  double bh = heights[0] + heights[1];
  for (int i = 0; i < n_curves; ++i)
    for (int j = i + 1; j < n_curves; ++j)
      if (heights[i] + heights[j] > bh) {
        bh = heights[i] + heights[j];
        best = {i, j};
      }
  return best;
}

BigLogNumber goursat_index_bound(std::int64_t c, int n) {
  require(c >= 1 && n >= 2, ErrorCode::InvalidInput, "goursat_index_bound needs c >= 1, n >= 2");
  const std::int64_t nn = static_cast<std::int64_t>(n) * (n - 1);
  BigLogNumber out = BigLogNumber::exact(constants::kZeta2Upper, Rounding::Up).pow(nn);
  if (n > 2) out = out * BigLogNumber::exact(2, Rounding::Up).pow(3 * n * (n - 2));
  if (c > 1) out = out * BigLogNumber::exact(c, Rounding::Up).pow(nn / 2);
  return out;
}

using M50 = BoundMath<Float50>;
using M100 = BoundMath<Float100>;

BigLogNumber b_iso(std::int64_t deg, std::int64_t g, double h) { return M50::b_iso(deg, g, Float50(h), Rounding::Up); }

BigLogNumber b_with_degree(std::int64_t deg, std::int64_t g, double h, std::int64_t d) {
  return M50::b_with_degree(deg, g, Float50(h), d, Rounding::Up);
}

BigLogNumber bad_prime_product_bound(const BoundInputs& in) { return M50::bad_prime_product_bound(in, Rounding::Up); }
BigLogNumber pair_index_bound(const BoundInputs& in) { return M50::pair_index_bound(in, Rounding::Up); }
BigLogNumber adelic_index_bound(const BoundInputs& in) { return M50::adelic_index_bound(in, Rounding::Up); }
BigLogNumber theorem1_bound(const BoundInputs& in, Rounding dir) { return M50::theorem1_bound(in, dir); }
BigLogNumber delta_bound(Rounding dir) { return M50::delta(dir); }

ImplicationResult check_implication(const BoundInputs& in) {
  in.validate();
  try {
    return {M50::check_implication(in), 50};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IncomparableRepresentations) throw;
  }
  return {M100::check_implication(in), 100};
}

}  // namespace openimage
