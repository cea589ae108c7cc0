#include "core/matrix.hpp"

#include <algorithm>

namespace openimage {

template <int M>
SquareMat<M>::SquareMat(const PadicContext& ctx, std::initializer_list<std::int64_t> row_major) : ctx_(&ctx) {
  require(row_major.size() == M * M, ErrorCode::InvalidInput, "matrix needs " + std::to_string(M * M) + " entries");
  int i = 0;
  for (std::int64_t v : row_major) r_[i++] = ctx.reduce(v);
}

template <int M>
SquareMat<M> SquareMat<M>::identity(const PadicContext& ctx) {
  SquareMat out(ctx);
  for (int i = 0; i < M; ++i) out.r_[i * M + i] = 1 % ctx.modulus();
  return out;
}

template <int M>
SquareMat<M> SquareMat<M>::scalar(const PadicInt& s) {
  SquareMat out(s.context());
  for (int i = 0; i < M; ++i) out.r_[i * M + i] = s.residue();
  return out;
}

template <int M>
void SquareMat<M>::set(int i, int j, const PadicInt& v) {
  require(&v.context() == ctx_, ErrorCode::InvalidInput, "matrix entry from another context");
  r_[i * M + j] = v.residue();
}

template <int M>
void SquareMat<M>::check_same(const SquareMat& o) const {
  require(ctx_ == o.ctx_, ErrorCode::InvalidInput, "matrices from different contexts");
}

template <int M>
SquareMat<M>& SquareMat<M>::operator+=(const SquareMat& o) {
  check_same(o);
  const std::uint64_t m = ctx_->modulus();
  for (int i = 0; i < M * M; ++i) {
    std::uint64_t s = r_[i] + o.r_[i];
    r_[i] = s >= m ? s - m : s;
  }
  return *this;
}

template <int M>
SquareMat<M>& SquareMat<M>::operator-=(const SquareMat& o) {
  check_same(o);
  const std::uint64_t m = ctx_->modulus();
  for (int i = 0; i < M * M; ++i) r_[i] = r_[i] >= o.r_[i] ? r_[i] - o.r_[i] : r_[i] + m - o.r_[i];
  return *this;
}

template <int M>
SquareMat<M> SquareMat<M>::mul(const SquareMat& o) const {
  check_same(o);
  const std::uint64_t m = ctx_->modulus();
  SquareMat out(*ctx_);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      u128 acc = 0;
      for (int k = 0; k < M; ++k) acc += static_cast<u128>(r_[i * M + k]) * o.r_[k * M + j] % m;
      out.r_[i * M + j] = static_cast<std::uint64_t>(acc % m);
    }
  return out;
}

template <int M>
SquareMat<M> SquareMat<M>::scaled(const PadicInt& s) const {
  require(&s.context() == ctx_, ErrorCode::InvalidInput, "scalar from another context");
  const std::uint64_t m = ctx_->modulus();
  SquareMat out(*ctx_);
  for (int i = 0; i < M * M; ++i) out.r_[i] = static_cast<std::uint64_t>(static_cast<u128>(r_[i]) * s.residue() % m);
  return out;
}

template <int M>
PadicVec SquareMat<M>::apply(const PadicVec& w) const {
  require(w.size() == M, ErrorCode::InvalidInput, "vector length does not match matrix size");
  PadicVec out;
  out.reserve(M);
  for (int i = 0; i < M; ++i) {
    PadicInt acc = ctx_->zero();
    for (int k = 0; k < M; ++k) acc += (*this)(i, k) * w[k];
    out.push_back(acc);
  }
  return out;
}

template <int M>
PadicInt SquareMat<M>::trace() const {
  PadicInt t = ctx_->zero();
  for (int i = 0; i < M; ++i) t += (*this)(i, i);
  return t;
}

template <int M>
PadicInt SquareMat<M>::det() const {
  const auto& a = *this;
  if constexpr (M == 2) {
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  } else {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }
}

template <int M>
int SquareMat<M>::min_valuation() const {
  int v = ctx_->precision();
  for (std::uint64_t r : r_) v = std::min(v, ctx_->valuation_of(r));
  return v;
}

template <int M>
bool SquareMat<M>::congruent(const SquareMat& o, int k) const {
  check_same(o);
  k = std::clamp(k, 0, ctx_->precision());
  const std::uint64_t pk = ctx_->power(k);
  for (int i = 0; i < M * M; ++i)
    if (r_[i] % pk != o.r_[i] % pk) return false;
  return true;
}

template <int M>
SquareMat<M> SquareMat<M>::shift_down(int k) const {
  SquareMat out(*ctx_);
  for (int i = 0; i < M * M; ++i) out.r_[i] = PadicInt(*ctx_, r_[i]).shift_down(k).residue();
  return out;
}

template <int M>
SquareMat<M> SquareMat<M>::shift_up(int k) const {
  SquareMat out(*ctx_);
  for (int i = 0; i < M * M; ++i) out.r_[i] = PadicInt(*ctx_, r_[i]).shift_up(k).residue();
  return out;
}

template class SquareMat<2>;
template class SquareMat<3>;

std::string to_string(const Mat2& m) {
  return "[[" + to_string(m(0, 0)) + "," + to_string(m(0, 1)) + "],[" + to_string(m(1, 0)) + "," + to_string(m(1, 1)) +
         "]]";
}

Mat2 adjugate(const Mat2& m) {
  Mat2 out(m.context());
  out.set(0, 0, m(1, 1));
  out.set(0, 1, -m(0, 1));
  out.set(1, 0, -m(1, 0));
  out.set(1, 1, m(0, 0));
  return out;
}

Mat2 inverse(const Mat2& m) { return inv_unit(m.det()) * adjugate(m); }

MonicPoly char_poly(const Mat2& m) { return MonicPoly({m.det(), -m.trace(), m.context().one()}); }

MonicPoly char_poly(const Mat3& m) {
  PadicInt c1 = m.context().zero();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) c1 += m(i, i) * m(j, j) - m(i, j) * m(j, i);
  return MonicPoly({-m.det(), c1, -m.trace(), m.context().one()});
}

TracelessMat::TracelessMat(const Mat2& m) : m_(m) {
  require(m.trace().is_zero(), ErrorCode::InvalidInput, "matrix is not traceless: " + to_string(m));
}

TracelessMat TracelessMat::from_coords(const PadicInt& x, const PadicInt& h, const PadicInt& y) {
  Mat2 m(x.context());
  m.set(0, 0, h);
  m.set(0, 1, x);
  m.set(1, 0, y);
  m.set(1, 1, -h);
  return TracelessMat(m);
}

TracelessMat TracelessMat::basis(const PadicContext& ctx, int index) {
  require(index >= 0 && index < 3, ErrorCode::InvalidInput, "sl2 basis index out of range");
  PadicInt z = ctx.zero(), o = ctx.one();
  return from_coords(index == 0 ? o : z, index == 1 ? o : z, index == 2 ? o : z);
}

TracelessMat bracket(const TracelessMat& a, const TracelessMat& b) {
  return TracelessMat(a.mat() * b.mat() - b.mat() * a.mat());
}

PadicInt half_trace(const Mat2& g) {
  const PadicContext& ctx = g.context();
  if (!ctx.is_dyadic()) return g.trace() * inv_unit(ctx.from_int(2));
  require(g(0, 0).residue() % 2 == 1 && g(1, 1).residue() % 2 == 1 && g(0, 1).residue() % 2 == 0 &&
              g(1, 0).residue() % 2 == 0,
          ErrorCode::OddTrace, "theta at l = 2 needs g == Id mod 2, got " + to_string(g));
  u128 s = static_cast<u128>(g.raw(0, 0)) + g.raw(1, 1);
  return ctx.from_wide(static_cast<i128>(s / 2));
}

TracelessMat theta(const Mat2& g) { return TracelessMat(g - Mat2::scalar(half_trace(g))); }

int theta_certified_precision(const PadicContext& ctx) noexcept {
  return ctx.is_dyadic() ? ctx.precision() - 1 : ctx.precision();
}

AdjointOp adjoint_op(const TracelessMat& g) {
  const PadicInt a = g.h(), b = g.x(), c = g.y();
  const PadicContext& ctx = g.context();
  AdjointOp C(ctx);
  const PadicInt two = ctx.from_int(2);
  // image of x: 2a x - c h
  C.set(0, 0, two * a);
  C.set(1, 0, -c);
  // image of h: -2b x + 2c y
  C.set(0, 1, -(two * b));
  C.set(2, 1, two * c);
  // image of y: b h - 2a y
  C.set(1, 2, b);
  C.set(2, 2, -(two * a));
  return C;
}

PadicVec to_coord_vector(const TracelessMat& g) { return {g.x(), g.h(), g.y()}; }

TracelessMat from_coord_vector(const PadicContext&, const PadicVec& v) {
  require(v.size() == 3, ErrorCode::InvalidInput, "sl2 coordinate vector needs 3 entries");
  return TracelessMat::from_coords(v[0], v[1], v[2]);
}

MonicPoly char_poly_adjoint(const TracelessMat& g) {
  const PadicContext& ctx = g.context();
  return MonicPoly({ctx.zero(), ctx.from_int(4) * g.det(), ctx.zero(), ctx.one()});
}

namespace {

int min_coord_valuation(const PadicVec& w, const PadicContext& ctx) {
  int b = ctx.precision();
  for (const auto& c : w) b = std::min(b, c.valuation());
  return b;
}

template <int M>
EigenDefect eigen_defect(const SquareMat<M>& g, const PadicInt& lambda, const PadicVec& w, int n) {
  const PadicContext& ctx = g.context();
  require(n >= 1 && n <= ctx.precision(), ErrorCode::InvalidInput, "n must lie in [1, N]");
  require(w.size() == M, ErrorCode::InvalidInput, "vector length does not match matrix size");
  PadicVec gw = g.apply(w);
  for (int i = 0; i < M; ++i)
    require(gw[i].congruent(lambda * w[i], n), ErrorCode::HypothesisFails, "g w != lambda w mod l^" + std::to_string(n));
  EigenDefect d;
  d.b = min_coord_valuation(w, ctx);
  require(d.b < n, ErrorCode::InvalidInput, "w vanishes mod l^n");
  d.required = n - d.b;
  d.observed = val(char_poly(g)(lambda));
  require(d.observed >= d.required, ErrorCode::CertificationFailed,
          "val p_g(lambda) = " + std::to_string(d.observed) + " < " + std::to_string(d.required));
  return d;
}

}  // namespace

EigenDefect approx_eigen_defect(const Mat2& g, const PadicInt& lambda, const PadicVec& w, int n) {
  return eigen_defect(g, lambda, w, n);
}

EigenDefect approx_eigen_defect(const Mat3& g, const PadicInt& lambda, const PadicVec& w, int n) {
  return eigen_defect(g, lambda, w, n);
}

Dichotomy hensel_failure_dichotomy(const TracelessMat& g, const PadicInt& lambda, const PadicVec& w, int n) {
  const PadicContext& ctx = g.context();
  require(n >= 1 && n <= ctx.precision(), ErrorCode::InvalidInput, "n must lie in [1, N]");
  require(w.size() == 2, ErrorCode::InvalidInput, "w must have 2 coordinates");
  PadicVec gw = g.mat().apply(w);
  for (int i = 0; i < 2; ++i)
    require(gw[i].congruent(lambda * w[i], n), ErrorCode::HypothesisFails, "g w != lambda w mod l^" + std::to_string(n));

  const int N = ctx.precision();
  const int vl = val(lambda);
  const MonicPoly p({g.det(), ctx.zero(), ctx.one()});
  const int want = std::min(N, vl + 3);
  if (p(lambda).is_zero()) return EigenvalueBranch{lambda, N};
  try {
    PadicInt nu = hensel_lift(p, lambda);
    int depth = val(nu - lambda);
    if (depth >= want) return EigenvalueBranch{nu, depth};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::HypothesisFails && e.code() != ErrorCode::PrecisionExhausted) throw;
  }
  ValuationBranch r{min_coord_valuation(w, ctx), n - 2 * (2 + vl)};
  require(r.beta >= r.bound, ErrorCode::CertificationFailed,
          "beta = " + std::to_string(r.beta) + " below " + std::to_string(r.bound) + " with no nearby eigenvalue");
  return r;
}

}  // namespace openimage
