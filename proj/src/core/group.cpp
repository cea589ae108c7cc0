#include "core/group.hpp"

#include <algorithm>

namespace openimage {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void check_tuple(const PadicContext& ctx, int blocks, const MatTuple& g) {
  require(static_cast<int>(g.size()) == blocks, ErrorCode::InvalidInput, "tuple has the wrong number of blocks");
  for (const auto& m : g) {
    require(&m.context() == &ctx, ErrorCode::InvalidInput, "tuple entries must share the group context");
    require(m.det().is_unit(), ErrorCode::InvalidInput, "group elements need unit determinants");
  }
}

void pack(const MatTuple& g, std::uint32_t* out) {
  for (std::size_t b = 0; b < g.size(); ++b)
    for (int k = 0; k < 4; ++k) out[4 * b + k] = static_cast<std::uint32_t>(g[b].raw(k / 2, k % 2));
}

// out = x * y blockwise, all residues below m < 2^32.
void mul_packed(const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out, int blocks, std::uint64_t m) {
  for (int b = 0; b < blocks; ++b) {
    const std::uint32_t* p = x + 4 * b;
    const std::uint32_t* q = y + 4 * b;
    std::uint32_t* o = out + 4 * b;
    o[0] = static_cast<std::uint32_t>((std::uint64_t{p[0]} * q[0] + std::uint64_t{p[1]} * q[2] % m) % m);
    o[1] = static_cast<std::uint32_t>((std::uint64_t{p[0]} * q[1] + std::uint64_t{p[1]} * q[3] % m) % m);
    o[2] = static_cast<std::uint32_t>((std::uint64_t{p[2]} * q[0] + std::uint64_t{p[3]} * q[2] % m) % m);
    o[3] = static_cast<std::uint32_t>((std::uint64_t{p[2]} * q[1] + std::uint64_t{p[3]} * q[3] % m) % m);
  }
}

}  // namespace

MatTuple identity_tuple(const PadicContext& ctx, int blocks) { return MatTuple(blocks, Mat2::identity(ctx)); }

MatTuple embed(const Mat2& g, int blocks, int i) {
  require(i >= 0 && i < blocks, ErrorCode::InvalidInput, "block index out of range");
  MatTuple t = identity_tuple(g.context(), blocks);
  t[i] = g;
  return t;
}

std::uint64_t FiniteMatrixGroup::hash(const std::uint32_t* e) const noexcept {
  std::uint64_t h = kFnvOffset;
  for (std::size_t k = 0; k < width(); ++k) {
    h ^= e[k];
    h *= kFnvPrime;
  }
  return h ^ (h >> 29);
}

std::size_t FiniteMatrixGroup::probe(const std::uint32_t* e) const noexcept {
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash(e) & mask;
  while (table_[slot] != 0) {
    const std::uint32_t* f = data_.data() + (table_[slot] - 1) * width();
    if (std::equal(e, e + width(), f)) return slot;
    slot = (slot + 1) & mask;
  }
  return slot;
}

void FiniteMatrixGroup::grow() {
  std::vector<std::uint32_t> old(table_.size() * 2, 0);
  table_.swap(old);
  const std::size_t mask = table_.size() - 1;
  for (std::uint32_t idx : old) {
    if (idx == 0) continue;
    std::size_t slot = hash(data_.data() + (idx - 1) * width()) & mask;
    while (table_[slot] != 0) slot = (slot + 1) & mask;
    table_[slot] = idx;
  }
}

bool FiniteMatrixGroup::insert(const std::uint32_t* e) {
  if (table_.empty()) table_.assign(1024, 0);
  std::size_t slot = probe(e);
  if (table_[slot] != 0) return false;
  data_.insert(data_.end(), e, e + width());
  table_[slot] = static_cast<std::uint32_t>(order());
  if (2 * order() > table_.size()) grow();
  return true;
}

FiniteMatrixGroup FiniteMatrixGroup::closure(const PadicContext& ctx, int blocks, const std::vector<MatTuple>& generators,
                                             std::size_t cap) {
  require(blocks >= 1, ErrorCode::InvalidInput, "need at least one block");
  require(ctx.modulus() < (std::uint64_t{1} << 32), ErrorCode::InvalidInput, "group enumeration needs l^N < 2^32");
  require(cap >= 1 && cap < (std::size_t{1} << 31), ErrorCode::InvalidInput, "cap out of range");
  FiniteMatrixGroup G(ctx, blocks);
  const std::size_t w = G.width();
  std::vector<std::uint32_t> gens(w * generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    check_tuple(ctx, blocks, generators[i]);
    for (const auto& m : generators[i]) G.special_ = G.special_ && m.det() == ctx.one();
    pack(generators[i], gens.data() + i * w);
    G.gens_.push_back(generators[i]);
  }
  std::vector<std::uint32_t> buf(w);
  pack(identity_tuple(ctx, blocks), buf.data());
  G.insert(buf.data());
  // Right multiplication by generators reaches the whole subgroup: the
  // generated monoid of a finite group is the group.
  for (std::size_t head = 0; head < G.order(); ++head) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      mul_packed(G.data_.data() + head * w, gens.data() + g * w, buf.data(), blocks, ctx.modulus());
      if (G.insert(buf.data()) && G.order() > cap)
        fail(ErrorCode::SizeCapExceeded, "closure exceeds the size cap of " + std::to_string(cap));
    }
  }
  return G;
}

MatTuple FiniteMatrixGroup::element(std::size_t i) const {
  require(i < order(), ErrorCode::InvalidInput, "element index out of range");
  MatTuple t;
  const std::uint32_t* e = data_.data() + i * width();
  for (int b = 0; b < blocks_; ++b) {
    Mat2 m(*ctx_);
    for (int k = 0; k < 4; ++k) m.set(k / 2, k % 2, ctx_->from_residue(e[4 * b + k]));
    t.push_back(m);
  }
  return t;
}

bool FiniteMatrixGroup::contains(const MatTuple& g) const {
  if (static_cast<int>(g.size()) != blocks_) return false;
  for (const auto& m : g)
    if (&m.context() != ctx_) return false;
  std::vector<std::uint32_t> buf(width());
  pack(g, buf.data());
  return table_[probe(buf.data())] != 0;
}

FiniteMatrixGroup FiniteMatrixGroup::project(const std::vector<int>& which, std::size_t cap) const {
  require(!which.empty(), ErrorCode::InvalidInput, "projection needs at least one block");
  for (int b : which) require(b >= 0 && b < blocks_, ErrorCode::InvalidInput, "block index out of range");
  std::vector<MatTuple> pg;
  for (const auto& g : gens_) {
    MatTuple t;
    for (int b : which) t.push_back(g[b]);
    pg.push_back(std::move(t));
  }
  return closure(*ctx_, static_cast<int>(which.size()), pg, cap);
}

boost::multiprecision::cpp_int ball_index(std::uint64_t ell, int s) {
  require(s >= 0, ErrorCode::InvalidInput, "ball exponent must be >= 0");
  PadicContext::get(ell, 1);  // validates ell
  if (s == 0) return 1;
  boost::multiprecision::cpp_int l = ell;
  return (l * l - 1) * boost::multiprecision::pow(l, 3 * s - 2);
}

boost::multiprecision::cpp_int sl2_order(std::uint64_t ell, int N) {
  require(N >= 1, ErrorCode::InvalidInput, "N must be >= 1");
  return ball_index(ell, N);
}

std::vector<Mat2> ball_generators(const PadicContext& ctx, int k) {
  require(k >= 0, ErrorCode::InvalidInput, "ball exponent must be >= 0");
  const int N = ctx.precision();
  if (k >= N) return {};
  const auto lk = ctx.from_residue(ctx.power(k));
  Mat2 u = Mat2::identity(ctx), l = Mat2::identity(ctx);
  u.set(0, 1, lk);
  l.set(1, 0, lk);
  std::vector<Mat2> out{u, l};
  if (k >= 1) {
    Mat2 d(ctx);
    const auto t = ctx.one() + lk;
    d.set(0, 0, t);
    d.set(1, 1, inv_unit(t));
    out.push_back(d);
  }
  return out;
}

bool contains_ball(const FiniteMatrixGroup& G, const std::vector<int>& exponents) {
  require(static_cast<int>(exponents.size()) == G.blocks(), ErrorCode::InvalidInput,
          "one ball exponent per block is required");
  for (int i = 0; i < G.blocks(); ++i)
    for (const auto& g : ball_generators(G.context(), exponents[i]))
      if (!G.contains(embed(g, G.blocks(), i))) return false;
  return true;
}

int minimal_pair_exponent(const FiniteMatrixGroup& G, int i, int j) {
  require(i != j, ErrorCode::InvalidInput, "pair exponent needs two distinct blocks");
  const auto P = G.project({i, j});
  const int N = G.context().precision();
  // Balls are nested, so the first hit is the minimum.
  for (int s = 0; s < N; ++s)
    if (contains_ball(P, {s, s})) return s;
  return N;
}

std::uint64_t count_sl2_ball(const PadicContext& ctx, int s) {
  const std::uint64_t m = ctx.modulus();
  require(m <= 64, ErrorCode::InvalidInput, "direct SL2 enumeration is limited to l^N <= 64");
  require(s >= 0, ErrorCode::InvalidInput, "ball exponent must be >= 0");
  const std::uint64_t q = s >= ctx.precision() ? m : ctx.power(s);
  auto near = [&](std::uint64_t x, std::uint64_t target) { return (x + m - target) % q == 0; };
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < m; ++a) {
    if (!near(a, 1)) continue;
    for (std::uint64_t b = 0; b < m; ++b) {
      if (!near(b, 0)) continue;
      for (std::uint64_t c = 0; c < m; ++c) {
        if (!near(c, 0)) continue;
        for (std::uint64_t d = 0; d < m; ++d)
          if (near(d, 1) && (a * d + m * m - b * c) % m == 1 % m) ++count;
      }
    }
  }
  return count;
}

std::vector<std::int64_t> goursat_exponents(const std::vector<std::vector<std::int64_t>>& s, std::uint64_t ell) {
  const auto& ctx = PadicContext::get(ell, 1);
  const int n = static_cast<int>(s.size());
  require(n >= 2, ErrorCode::InvalidInput, "need at least two blocks");
  const std::int64_t min_s = ell == 2 ? 2 : ell == 3 ? 1 : 0;
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(s[i].size()) == n, ErrorCode::InvalidInput, "s matrix must be square");
    require(s[i][i] == 0, ErrorCode::InvalidInput, "s matrix must have a zero diagonal");
    for (int j = 0; j < n; ++j) {
      require(s[i][j] == s[j][i], ErrorCode::InvalidInput, "s matrix must be symmetric");
      require(i == j || s[i][j] >= 0, ErrorCode::InvalidInput, "s entries must be >= 0");
      if (i != j && s[i][j] < min_s)
        fail(ErrorCode::SideConditionViolated,
             "s_ij must be >= " + std::to_string(min_s) + " for l = " + std::to_string(ell));
    }
  }
  std::vector<std::int64_t> out(n, static_cast<std::int64_t>(n - 2) * ctx.dyadic());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) out[i] += s[i][j];
  return out;
}

}  // namespace openimage
