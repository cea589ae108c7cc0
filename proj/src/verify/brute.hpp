#pragma once

// Brute-force reference arithmetic on plain 64-bit integers modulo m. Used by
// the verification suites as the second route; nothing here touches the
// library types.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace openimage::brute {

using i64 = std::int64_t;
using M2 = std::array<i64, 4>;  // row-major
using M3 = std::array<i64, 9>;

inline i64 mod(__int128 x, i64 m) {
  x %= m;
  return static_cast<i64>(x < 0 ? x + m : x);
}

inline i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int val(i64 x, i64 ell, int N) {
  x = mod(x, ipow(ell, N));
  if (x == 0) return N;
  int v = 0;
  while (x % ell == 0) {
    x /= ell;
    ++v;
  }
  return v;
}

inline i64 inv(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return old_r == 1 ? mod(old_s, m) : -1;
}

// sum c_i x^i mod m, Horner.
inline i64 poly_eval(const std::vector<i64>& c, i64 x, i64 m) {
  __int128 acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = mod(acc * x + c[i], m);
  return static_cast<i64>(acc);
}

inline i64 poly_deriv_eval(const std::vector<i64>& c, i64 x, i64 m) {
  std::vector<i64> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(mod(static_cast<__int128>(c[i]) * static_cast<i64>(i), m));
  return poly_eval(d, x, m);
}

inline std::vector<i64> roots(const std::vector<i64>& c, i64 m) {
  std::vector<i64> out;
  for (i64 x = 0; x < m; ++x)
    if (poly_eval(c, x, m) == 0) out.push_back(x);
  return out;
}

inline M2 mul(const M2& a, const M2& b, i64 m) {
  return {mod(static_cast<__int128>(a[0]) * b[0] + static_cast<__int128>(a[1]) * b[2], m),
          mod(static_cast<__int128>(a[0]) * b[1] + static_cast<__int128>(a[1]) * b[3], m),
          mod(static_cast<__int128>(a[2]) * b[0] + static_cast<__int128>(a[3]) * b[2], m),
          mod(static_cast<__int128>(a[2]) * b[1] + static_cast<__int128>(a[3]) * b[3], m)};
}

inline M2 sub(const M2& a, const M2& b, i64 m) {
  return {mod(a[0] - b[0], m), mod(a[1] - b[1], m), mod(a[2] - b[2], m), mod(a[3] - b[3], m)};
}

inline M2 scale(i64 s, const M2& a, i64 m) {
  M2 r;
  for (int i = 0; i < 4; ++i) r[i] = mod(static_cast<__int128>(s) * a[i], m);
  return r;
}

inline i64 det(const M2& a, i64 m) {
  return mod(static_cast<__int128>(a[0]) * a[3] - static_cast<__int128>(a[1]) * a[2], m);
}

inline M2 adj(const M2& a, i64 m) { return {a[3], mod(-a[1], m), mod(-a[2], m), a[0]}; }

inline i64 trace(const M2& a, i64 m) { return mod(a[0] + a[3], m); }

inline int min_val(const M2& a, i64 ell, int N) {
  int v = N;
  for (i64 e : a) v = std::min(v, val(e, ell, N));
  return v;
}

inline i64 det(const M3& a, i64 m) {
  auto at = [&](int i, int j) -> __int128 { return a[3 * i + j]; };
  __int128 d = at(0, 0) * mod(at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1), m) -
               at(0, 1) * mod(at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0), m) +
               at(0, 2) * mod(at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0), m);
  return mod(d, m);
}

// Coefficients (c0, c1, c2) of det(t I - a) = t^3 + c2 t^2 + c1 t + c0.
inline std::array<i64, 3> charpoly(const M3& a, i64 m) {
  auto at = [&](int i, int j) -> __int128 { return a[3 * i + j]; };
  __int128 minors = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0) + at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0) +
                    at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1);
  return {mod(-static_cast<__int128>(det(a, m)), m), mod(minors, m), mod(-(at(0, 0) + at(1, 1) + at(2, 2)), m)};
}

// det(t I - a) at t = lambda, 2x2 and 3x3.
inline i64 charpoly_at(const M2& a, i64 lambda, i64 m) {
  M2 s{mod(lambda - a[0], m), mod(-a[1], m), mod(-a[2], m), mod(lambda - a[3], m)};
  return det(s, m);
}

inline i64 charpoly_at(const M3& a, i64 lambda, i64 m) {
  M3 s;
  for (int i = 0; i < 9; ++i) s[i] = mod(-a[i], m);
  for (int i = 0; i < 3; ++i) s[4 * i] = mod(s[4 * i] + lambda, m);
  return det(s, m);
}

// Traceless [[h, x], [y, -h]].
inline M2 traceless(i64 x, i64 h, i64 y, i64 m) { return {mod(h, m), mod(x, m), mod(y, m), mod(-h, m)}; }

// Matrix of Z -> [g, Z] in (x, h, y) coordinates: column j holds [g, e_j].
inline M3 adjoint_matrix(const M2& g, i64 m) {
  const M2 basis[3] = {{0, 1, 0, 0}, {1, 0, 0, mod(-1, m)}, {0, 0, 1, 0}};
  M3 out{};
  for (int j = 0; j < 3; ++j) {
    M2 c = sub(mul(g, basis[j], m), mul(basis[j], g, m), m);
    out[0 * 3 + j] = c[1];
    out[1 * 3 + j] = c[0];
    out[2 * 3 + j] = c[2];
  }
  return out;
}

}  // namespace openimage::brute
