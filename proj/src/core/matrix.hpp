#pragma once

// Square matrices over Z/l^N, traceless 2x2 matrices in the (x, h, y) basis,
// and the approximate-eigenvalue tools built on adjugates.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "core/padic.hpp"

namespace openimage {

using PadicVec = std::vector<PadicInt>;

// Dense M x M matrix. Entries are stored as raw residues next to one context
// pointer, which keeps the type trivially copyable.
template <int M>
class SquareMat {
 public:
  static_assert(M == 2 || M == 3);

  explicit SquareMat(const PadicContext& ctx) : ctx_(&ctx) { r_.fill(0); }
  SquareMat(const PadicContext& ctx, std::initializer_list<std::int64_t> row_major);

  static SquareMat identity(const PadicContext& ctx);
  static SquareMat scalar(const PadicInt& s);

  const PadicContext& context() const noexcept { return *ctx_; }
  PadicInt operator()(int i, int j) const { return PadicInt(*ctx_, r_[i * M + j]); }
  std::uint64_t raw(int i, int j) const noexcept { return r_[i * M + j]; }
  void set(int i, int j, const PadicInt& v);

  SquareMat& operator+=(const SquareMat& o);
  SquareMat& operator-=(const SquareMat& o);
  friend SquareMat operator+(SquareMat a, const SquareMat& b) { return a += b; }
  friend SquareMat operator-(SquareMat a, const SquareMat& b) { return a -= b; }
  friend SquareMat operator*(const SquareMat& a, const SquareMat& b) { return a.mul(b); }
  friend SquareMat operator*(const PadicInt& s, const SquareMat& a) { return a.scaled(s); }
  SquareMat operator-() const { return scaled(-ctx_->one()); }
  bool operator==(const SquareMat& o) const noexcept { return ctx_ == o.ctx_ && r_ == o.r_; }

  PadicVec apply(const PadicVec& w) const;
  PadicInt trace() const;
  PadicInt det() const;
  // Minimal entry valuation (N for the zero matrix).
  int min_valuation() const;
  bool congruent(const SquareMat& o, int k) const;
  SquareMat shift_down(int k) const;
  SquareMat shift_up(int k) const;

 private:
  SquareMat mul(const SquareMat& o) const;
  SquareMat scaled(const PadicInt& s) const;
  void check_same(const SquareMat& o) const;

  const PadicContext* ctx_;
  std::array<std::uint64_t, M * M> r_;
};

using Mat2 = SquareMat<2>;
using Mat3 = SquareMat<3>;

std::string to_string(const Mat2& m);

// m* with m* m = det(m) Id.
Mat2 adjugate(const Mat2& m);
// Inverse of a matrix with unit determinant.
Mat2 inverse(const Mat2& m);

// Characteristic polynomial det(t Id - m).
MonicPoly char_poly(const Mat2& m);
MonicPoly char_poly(const Mat3& m);

// Element of sl2 over Z/l^N. Coordinates are taken in the basis
// x = e12, h = diag(1,-1), y = e21, so [[a, b], [c, -a]] = b x + a h + c y.
class TracelessMat {
 public:
  // InvalidInput unless tr(m) == 0 mod l^N.
  explicit TracelessMat(const Mat2& m);
  static TracelessMat from_coords(const PadicInt& x, const PadicInt& h, const PadicInt& y);
  static TracelessMat zero(const PadicContext& ctx) { return TracelessMat(Mat2(ctx)); }
  static TracelessMat basis(const PadicContext& ctx, int index);

  const Mat2& mat() const noexcept { return m_; }
  const PadicContext& context() const noexcept { return m_.context(); }
  PadicInt x() const { return m_(0, 1); }
  PadicInt h() const { return m_(0, 0); }
  PadicInt y() const { return m_(1, 0); }
  // (x, h, y)
  std::array<PadicInt, 3> coords() const { return {x(), h(), y()}; }

  PadicInt det() const { return m_.det(); }
  int min_valuation() const { return m_.min_valuation(); }
  bool congruent(const TracelessMat& o, int k) const { return m_.congruent(o.m_, k); }

  friend TracelessMat operator+(const TracelessMat& a, const TracelessMat& b) { return TracelessMat(a.m_ + b.m_); }
  friend TracelessMat operator-(const TracelessMat& a, const TracelessMat& b) { return TracelessMat(a.m_ - b.m_); }
  friend TracelessMat operator*(const PadicInt& s, const TracelessMat& a) { return TracelessMat(s * a.m_); }
  bool operator==(const TracelessMat& o) const noexcept { return m_ == o.m_; }

 private:
  Mat2 m_;
};

TracelessMat bracket(const TracelessMat& a, const TracelessMat& b);

// g -> g - tr(g)/2 Id. For l = 2 this needs g == Id mod 2 (OddTrace
// otherwise); tr(g)/2 is then the halved trace of the canonical lifts, which is
// well defined mod 2^(N-1) only. theta_certified_precision reports that depth.
TracelessMat theta(const Mat2& g);
int theta_certified_precision(const PadicContext& ctx) noexcept;
// tr(g)/2 as used by theta.
PadicInt half_trace(const Mat2& g);

using AdjointOp = Mat3;

// Matrix of C_g = [g, .] acting on (x, h, y) coordinates.
AdjointOp adjoint_op(const TracelessMat& g);
PadicVec to_coord_vector(const TracelessMat& g);
TracelessMat from_coord_vector(const PadicContext& ctx, const PadicVec& v);

// t^3 + 4 det(g) t, computed from det(g).
MonicPoly char_poly_adjoint(const TracelessMat& g);

struct EigenDefect {
  int b = 0;         // minimal coordinate valuation of w
  int required = 0;  // n - b
  int observed = 0;  // val(p_g(lambda)), capped at N
};

// Checks g w == lambda w mod l^n, then certifies val(p_g(lambda)) >= n - b.
// HypothesisFails when the congruence is false; InvalidInput when n is out of
// range or b >= n; CertificationFailed if the inequality is ever violated.
EigenDefect approx_eigen_defect(const Mat2& g, const PadicInt& lambda, const PadicVec& w, int n);
EigenDefect approx_eigen_defect(const Mat3& g, const PadicInt& lambda, const PadicVec& w, int n);

struct EigenvalueBranch {
  PadicInt nu;
  int depth;  // val(nu - lambda), capped at N
};

struct ValuationBranch {
  int beta;
  int bound;  // n - 2(2 + val(lambda))
};

using Dichotomy = std::variant<EigenvalueBranch, ValuationBranch>;

// Either a root nu of p_g = t^2 + det(g) with val(nu - lambda) >= val(lambda) + 3
// (capped at N), or beta >= n - 2(2 + val(lambda)).
Dichotomy hensel_failure_dichotomy(const TracelessMat& g, const PadicInt& lambda, const PadicVec& w, int n);

}  // namespace openimage
