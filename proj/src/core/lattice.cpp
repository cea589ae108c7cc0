#include "core/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace openimage {

namespace {

using boost::multiprecision::cpp_int;

void check_vector(const PadicContext& ctx, int dim, const LieVector& v) {
  require(static_cast<int>(v.size()) == dim, ErrorCode::InvalidInput, "vector has the wrong length");
  for (auto x : v) require(x < ctx.modulus(), ErrorCode::InvalidInput, "coordinates must be reduced residues");
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

LieVector conjugate(const PadicContext& ctx, const MatTuple& g, const LieVector& v) {
  std::vector<TracelessMat> out;
  for (std::size_t b = 0; b < g.size(); ++b)
    out.push_back(TracelessMat(g[b] * lie_block(ctx, v, static_cast<int>(b)).mat() * inverse(g[b])));
  return lie_vector(out);
}

LieVector lie_bracket(const PadicContext& ctx, int blocks, const LieVector& u, const LieVector& v) {
  std::vector<TracelessMat> out;
  for (int b = 0; b < blocks; ++b) out.push_back(bracket(lie_block(ctx, u, b), lie_block(ctx, v, b)));
  return lie_vector(out);
}

// Inverse of a matrix with unit determinant, by Gauss-Jordan on unit pivots.
SquareMatrix invert(const PadicContext& ctx, SquareMatrix A) {
  const int k = A.k;
  const std::uint64_t m = ctx.modulus();
  SquareMatrix I{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k) * k, 0)};
  for (int i = 0; i < k; ++i) I.at(i, i) = 1 % m;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k && piv < 0; ++r)
      if (A.at(r, col) % ctx.ell() != 0) piv = r;
    require(piv >= 0, ErrorCode::Internal, "matrix is not invertible");
    for (int j = 0; j < k; ++j) {
      std::swap(A.at(col, j), A.at(piv, j));
      std::swap(I.at(col, j), I.at(piv, j));
    }
    const std::uint64_t u = inv_unit(ctx.from_residue(A.at(col, col))).residue();
    for (int j = 0; j < k; ++j) {
      A.at(col, j) = mulmod(A.at(col, j), u, m);
      I.at(col, j) = mulmod(I.at(col, j), u, m);
    }
    for (int r = 0; r < k; ++r) {
      if (r == col || A.at(r, col) == 0) continue;
      const std::uint64_t c = A.at(r, col);
      for (int j = 0; j < k; ++j) {
        A.at(r, j) = (A.at(r, j) + m - mulmod(c, A.at(col, j), m)) % m;
        I.at(r, j) = (I.at(r, j) + m - mulmod(c, I.at(col, j), m)) % m;
      }
    }
  }
  return I;
}

}  // namespace

LieVector lie_vector(const std::vector<TracelessMat>& blocks) {
  LieVector v;
  for (const auto& t : blocks)
    for (const auto& c : t.coords()) v.push_back(c.residue());
  return v;
}

TracelessMat lie_block(const PadicContext& ctx, const LieVector& v, int block) {
  require(block >= 0 && 3 * block + 2 < static_cast<int>(v.size()), ErrorCode::InvalidInput, "block out of range");
  return TracelessMat::from_coords(ctx.from_residue(v[3 * block]), ctx.from_residue(v[3 * block + 1]),
                                   ctx.from_residue(v[3 * block + 2]));
}

int lie_valuation(const PadicContext& ctx, const LieVector& v) {
  int out = ctx.precision();
  for (auto x : v) out = std::min(out, ctx.valuation_of(x % ctx.modulus()));
  return out;
}

LieLattice::LieLattice(const PadicContext& ctx, int blocks)
    : blocks_(blocks), certified_(ctx.precision()), ech_(ctx, 3 * std::max(blocks, 1)) {
  require(blocks >= 1 && blocks <= 4, ErrorCode::InvalidInput, "lattices have 1 to 4 blocks");
}

LieLattice LieLattice::span(const PadicContext& ctx, int blocks, const std::vector<LieVector>& generators) {
  LieLattice L(ctx, blocks);
  for (const auto& g : generators) check_vector(ctx, 3 * blocks, g);
  L.gens_ = generators;
  L.ech_ = Echelon::build(ctx, 3 * blocks, generators);
  return L;
}

std::vector<LieVector> LieLattice::basis() const {
  std::vector<LieVector> out;
  for (const auto& r : ech_.rows()) out.push_back(r.v);
  return out;
}

bool LieLattice::insert(const LieVector& v) {
  check_vector(context(), 3 * blocks_, v);
  if (!ech_.insert(v)) return false;
  gens_.push_back(v);
  return true;
}

LieLattice lie_algebra_of_group(const FiniteMatrixGroup& G) {
  const auto& ctx = G.context();
  LieLattice L = LieLattice::span(ctx, G.blocks(), {});
  for (std::size_t i = 0; i < G.order(); ++i) {
    std::vector<TracelessMat> th;
    for (const auto& g : G.element(i)) th.push_back(theta(g));
    L.insert(lie_vector(th));
  }
  L.cap_certified_precision(theta_certified_precision(ctx));
  return L;
}

bool contains_scaled_sl2(const LieLattice& L, int k, int block) {
  const auto& ctx = L.context();
  require(k >= 0, ErrorCode::InvalidInput, "k must be >= 0");
  require(block >= 0 && block < L.blocks(), ErrorCode::InvalidInput, "block out of range");
  if (k >= ctx.precision())
    fail(ErrorCode::PrecisionExhausted, "l^k sl2 is zero mod l^N for k >= N; the question has no content");
  for (int c = 0; c < 3; ++c) {
    LieVector v(3 * L.blocks(), 0);
    v[3 * block + c] = ctx.power(k);
    if (!L.contains(v)) return false;
  }
  return true;
}

bool contains_scaled_sl2(const LieLattice& L, int k) {
  for (int b = 0; b < L.blocks(); ++b)
    if (!contains_scaled_sl2(L, k, b)) return false;
  return true;
}

LieLattice kernel_component(const LieLattice& L) {
  require(L.blocks() >= 2, ErrorCode::InvalidInput, "kernel component needs at least two blocks");
  std::vector<LieVector> gens;
  for (const auto& r : L.echelon().rows())
    if (r.pivot >= 3) gens.emplace_back(r.v.begin() + 3, r.v.end());
  LieLattice K = LieLattice::span(L.context(), L.blocks() - 1, gens);
  K.cap_certified_precision(L.certified_precision());
  return K;
}

LieLattice projection(const LieLattice& L, int block) {
  require(block >= 0 && block < L.blocks(), ErrorCode::InvalidInput, "block out of range");
  std::vector<LieVector> gens;
  for (const auto& r : L.echelon().rows()) gens.emplace_back(r.v.begin() + 3 * block, r.v.begin() + 3 * block + 3);
  LieLattice P = LieLattice::span(L.context(), 1, gens);
  P.cap_certified_precision(L.certified_precision());
  return P;
}

bool bracket_closed(const LieLattice& L) {
  const auto B = L.basis();
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j)
      if (!L.contains(lie_bracket(L.context(), L.blocks(), B[i], B[j]))) return false;
  return true;
}

bool conjugation_stable(const LieLattice& L, const std::vector<MatTuple>& conjugators) {
  for (const auto& g : conjugators) {
    require(static_cast<int>(g.size()) == L.blocks(), ErrorCode::InvalidInput, "conjugator has the wrong block count");
    for (const auto& v : L.basis())
      if (!L.contains(conjugate(L.context(), g, v))) return false;
  }
  return true;
}

LieLattice conjugation_closure(const LieLattice& L, const std::vector<MatTuple>& conjugators, bool with_bracket) {
  for (const auto& g : conjugators)
    require(static_cast<int>(g.size()) == L.blocks(), ErrorCode::InvalidInput, "conjugator has the wrong block count");
  LieLattice W = L;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto B = W.basis();
    for (const auto& g : conjugators)
      for (const auto& v : B) changed |= W.insert(conjugate(W.context(), g, v));
    if (with_bracket)
      for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = i + 1; j < B.size(); ++j)
          changed |= W.insert(lie_bracket(W.context(), W.blocks(), B[i], B[j]));
  }
  return W;
}

SpecialBasis special_basis(const LieLattice& L) {
  require(L.blocks() == 2, ErrorCode::InvalidInput, "special basis needs two blocks");
  SpecialBasis out;
  int head = 0;
  for (const auto& r : L.echelon().rows()) {
    if (r.pivot < 3) {
      out.a[head] = LieVector(r.v.begin(), r.v.begin() + 3);
      out.b[head] = LieVector(r.v.begin() + 3, r.v.end());
      ++head;
    } else {
      out.y[out.kernel_rank++] = LieVector(r.v.begin() + 3, r.v.end());
    }
  }
  if (head < 3) fail(ErrorCode::DegenerateProjection, "first-block projection has rank " + std::to_string(head));
  for (int j = out.kernel_rank; j < 3; ++j) out.y[j] = LieVector(3, 0);
  return out;
}

bool conj_stable_gain(const LieLattice& W, int s, int t) {
  const auto& ctx = W.context();
  require(W.blocks() == 1, ErrorCode::InvalidInput, "conj_stable_gain works on sl2 itself");
  require(s >= 0 && t >= 0, ErrorCode::InvalidInput, "s and t must be >= 0");
  const std::uint64_t ell = ctx.ell();
  if ((ell == 2 && s < 2) || ((ell == 3 || ell == 5) && s < 1))
    fail(ErrorCode::PreconditionFailed, "s is below the side condition for this prime");
  const int k = t + 4 * s + 4 * ctx.dyadic();
  if (k >= ctx.precision())
    fail(ErrorCode::PrecisionExhausted, "t + 4s + 4v = " + std::to_string(k) + " is not below N");
  bool nonzero = false;
  for (const auto& v : W.basis()) nonzero |= lie_valuation(ctx, v) <= t;
  if (!nonzero) fail(ErrorCode::PreconditionFailed, "W vanishes mod l^(t+1)");
  std::vector<MatTuple> conj;
  for (const auto& g : ball_generators(ctx, s)) conj.push_back({g});
  if (!conjugation_stable(W, conj)) fail(ErrorCode::PreconditionFailed, "W is not stable under B(s)");
  if (!bracket_closed(W)) fail(ErrorCode::PreconditionFailed, "W is not closed under the bracket");
  return contains_scaled_sl2(W, k, 0);
}

LieVector apply(const PadicContext& ctx, const SquareMatrix& T, const LieVector& v) {
  require(static_cast<int>(v.size()) == T.k, ErrorCode::InvalidInput, "dimension mismatch");
  const std::uint64_t m = ctx.modulus();
  LieVector out(T.k, 0);
  for (int i = 0; i < T.k; ++i)
    for (int j = 0; j < T.k; ++j) out[i] = (out[i] + mulmod(T.at(i, j), v[j], m)) % m;
  return out;
}

SquareMatrix solve_T(const PadicContext& ctx, const std::vector<LieVector>& b, const std::vector<LieVector>& y, int n) {
  const int k = static_cast<int>(b.size());
  const int my = static_cast<int>(y.size());
  const int N = ctx.precision();
  const std::uint64_t m = ctx.modulus();
  require(k >= 1, ErrorCode::InvalidInput, "need at least one b vector");
  require(n >= 0, ErrorCode::InvalidInput, "n must be >= 0");
  for (const auto& v : b) check_vector(ctx, k, v);
  for (const auto& v : y) check_vector(ctx, k, v);
  if (n + 1 > N) fail(ErrorCode::PreconditionFailed, "need n + 1 <= N");
  for (const auto& v : y)
    if (lie_valuation(ctx, v) < n + 1) fail(ErrorCode::PreconditionFailed, "y vectors must vanish mod l^(n+1)");

  // l^n e_i = sum_j b_j Bt[j][i] + sum_j y_j Yt[j][i] mod l^N.
  std::vector<LieVector> gens = b;
  gens.insert(gens.end(), y.begin(), y.end());
  const auto E = Echelon::build(ctx, k, gens, true);
  std::vector<std::vector<std::uint64_t>> Bt(k, std::vector<std::uint64_t>(k)), Yt(my, std::vector<std::uint64_t>(k));
  for (int i = 0; i < k; ++i) {
    LieVector target(k, 0);
    target[i] = ctx.power(n);
    auto c = E.express(target);
    if (!c) fail(ErrorCode::SpanTooSmall, "b and y vectors do not span l^n e_" + std::to_string(i + 1));
    for (int j = 0; j < k; ++j) Bt[j][i] = (*c)[j];
    for (int j = 0; j < my; ++j) Yt[j][i] = (*c)[k + j];
  }

  // Over Z on canonical lifts: l^n I - B Bt - Y Yt = l^N Z. Appending l^N I to
  // Y and Z to Yt makes the identity exact, with every Y' entry divisible by
  // l^(n+1).
  std::vector<std::vector<std::uint64_t>> Yp(k, std::vector<std::uint64_t>(my + k, 0));  // Y' / l^(n+1), k x (my+k)
  std::vector<std::vector<std::uint64_t>> Ytp(my + k, std::vector<std::uint64_t>(k, 0));  // Yt', (my+k) x k
  const std::uint64_t shift = ctx.power(n + 1);
  for (int r = 0; r < k; ++r) {
    for (int j = 0; j < my; ++j) Yp[r][j] = y[j][r] / shift;
    Yp[r][my + r] = ctx.power(N - n - 1);
  }
  for (int j = 0; j < my; ++j) Ytp[j] = Yt[j];
  const cpp_int lN = cpp_int(m);
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < k; ++i) {
      cpp_int acc = r == i ? cpp_int(ctx.power(n)) : cpp_int(0);
      for (int j = 0; j < k; ++j) acc -= cpp_int(b[j][r]) * Bt[j][i];
      for (int j = 0; j < my; ++j) acc -= cpp_int(y[j][r]) * Yt[j][i];
      if (acc % lN != 0) fail(ErrorCode::Internal, "coefficient identity fails mod l^N");
      cpp_int z = (acc / lN) % lN;
      if (z < 0) z += lN;
      Ytp[my + r][i] = static_cast<std::uint64_t>(z);
    }

  // A = I - l (Y'/l^(n+1)) Yt', congruent to I mod l.
  SquareMatrix A{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k) * k, 0)};
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < k; ++i) {
      std::uint64_t s = 0;
      for (int j = 0; j < my + k; ++j) s = (s + mulmod(Yp[r][j], Ytp[j][i], m)) % m;
      s = mulmod(s, ctx.ell() % m, m);
      A.at(r, i) = ((r == i ? 1 % m : 0) + m - s) % m;
    }
  const SquareMatrix Ainv = invert(ctx, A);
  SquareMatrix T{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k) * k, 0)};
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < k; ++i) {
      std::uint64_t s = 0;
      for (int j = 0; j < k; ++j) s = (s + mulmod(Bt[r][j], Ainv.at(j, i), m)) % m;
      T.at(r, i) = s;
    }
  for (int i = 0; i < k; ++i) {
    auto img = apply(ctx, T, b[i]);
    for (int r = 0; r < k; ++r)
      if (img[r] != (r == i ? ctx.power(n) % m : 0))
        fail(ErrorCode::CertificationFailed, "T b_i differs from l^n e_i");
  }
  return T;
}

bool basis_congruence_bound(const PadicContext& ctx, const std::vector<LieVector>& b,
                            const std::vector<std::uint64_t>& lambdas, int n2, int n) {
  const int k = static_cast<int>(b.size());
  const std::uint64_t m = ctx.modulus();
  require(static_cast<int>(lambdas.size()) == k, ErrorCode::InvalidInput, "one lambda per b vector");
  require(n >= 0 && n2 >= 0, ErrorCode::InvalidInput, "n and n2 must be >= 0");
  if (n2 + n > ctx.precision()) fail(ErrorCode::PreconditionFailed, "need n2 + n <= N");
  LieVector comb(k, 0);
  for (int i = 0; i < k; ++i) {
    check_vector(ctx, k, b[i]);
    for (int r = 0; r < k; ++r) comb[r] = (comb[r] + mulmod(lambdas[i] % m, b[i][r], m)) % m;
  }
  if (lie_valuation(ctx, comb) < n2 + n) fail(ErrorCode::PreconditionFailed, "sum lambda_i b_i is not 0 mod l^(n2+n)");
  // T comb = l^n2 lambda, so l^n2 lambda == 0 mod l^(n2+n).
  const auto T = solve_T(ctx, b, {}, n2);
  const auto img = apply(ctx, T, comb);
  bool ok = lie_valuation(ctx, img) >= n2 + n;
  for (auto l : lambdas) ok = ok && ctx.valuation_of(l % m) >= n;
  return ok;
}

}  // namespace openimage
