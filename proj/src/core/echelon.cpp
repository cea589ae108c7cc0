#include "core/echelon.hpp"

#include <algorithm>

namespace openimage {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

// x -= c * y, entrywise mod m.
void axpy(Residues& x, std::uint64_t c, const Residues& y, std::uint64_t m) {
  if (c == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::uint64_t t = mulmod(c, y[i], m);
    x[i] = x[i] >= t ? x[i] - t : x[i] + m - t;
  }
}

void scale(Residues& x, std::uint64_t c, std::uint64_t m) {
  for (auto& e : x) e = mulmod(e, c, m);
}

bool all_zero(const Residues& x) {
  return std::all_of(x.begin(), x.end(), [](std::uint64_t e) { return e == 0; });
}

}  // namespace

Echelon::Echelon(const PadicContext& ctx, int dim, bool track) : ctx_(&ctx), dim_(dim), track_(track) {
  require(dim >= 1, ErrorCode::InvalidInput, "module dimension must be positive");
}

Echelon Echelon::build(const PadicContext& ctx, int dim, const std::vector<Residues>& generators, bool track) {
  Echelon e(ctx, dim, track);
  std::vector<Row> pool;
  const int g = static_cast<int>(generators.size());
  for (int i = 0; i < g; ++i) {
    require(static_cast<int>(generators[i].size()) == dim, ErrorCode::InvalidInput, "generator has wrong length");
    Row r;
    r.v = generators[i];
    for (auto& x : r.v) x %= ctx.modulus();
    if (track) {
      r.coeff.assign(g, 0);
      r.coeff[i] = 1 % ctx.modulus();
    }
    pool.push_back(std::move(r));
  }
  e.generators_ = g;
  e.rebuild(std::move(pool));
  return e;
}

void Echelon::rebuild(std::vector<Row> pool) {
  const std::uint64_t m = ctx_->modulus();
  const int N = ctx_->precision();
  rows_.clear();
  std::erase_if(pool, [](const Row& r) { return all_zero(r.v); });
  for (int col = 0; col < dim_ && !pool.empty(); ++col) {
    int best = -1, bv = N;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
      int v = ctx_->valuation_of(pool[i].v[col]);
      if (v < bv) {
        bv = v;
        best = i;
      }
    }
    if (best < 0) continue;
    Row r = std::move(pool[best]);
    pool.erase(pool.begin() + best);
    const std::uint64_t pv = ctx_->power(bv);
    const std::uint64_t unit = inv_unit(ctx_->from_residue(r.v[col] / pv)).residue();
    scale(r.v, unit, m);
    scale(r.coeff, unit, m);
    for (auto& q : pool) {
      std::uint64_t c = q.v[col] / pv;
      axpy(q.v, c, r.v, m);
      axpy(q.coeff, c, r.coeff, m);
    }
    if (bv > 0) {
      Row a = r;
      scale(a.v, ctx_->power(N - bv), m);
      scale(a.coeff, ctx_->power(N - bv), m);
      pool.push_back(std::move(a));
    }
    std::erase_if(pool, [](const Row& q) { return all_zero(q.v); });
    r.pivot = col;
    r.pivot_val = bv;
    rows_.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int col = rows_[i].pivot;
    const std::uint64_t pv = ctx_->power(rows_[i].pivot_val);
    for (std::size_t k = 0; k < i; ++k) {
      std::uint64_t c = rows_[k].v[col] / pv;
      axpy(rows_[k].v, c, rows_[i].v, m);
      axpy(rows_[k].coeff, c, rows_[i].coeff, m);
    }
  }
}

std::optional<Residues> Echelon::reduce(const Residues& v, bool want_coeff) const {
  require(static_cast<int>(v.size()) == dim_, ErrorCode::InvalidInput, "vector has wrong length");
  const std::uint64_t m = ctx_->modulus();
  Residues w = v;
  for (auto& x : w) x %= m;
  Residues coeff;
  if (want_coeff) coeff.assign(generators_, 0);
  std::size_t next = 0;
  for (int col = 0; col < dim_; ++col) {
    if (next < rows_.size() && rows_[next].pivot == col) {
      const Row& r = rows_[next++];
      if (w[col] == 0) continue;
      if (ctx_->valuation_of(w[col]) < r.pivot_val) return std::nullopt;
      std::uint64_t c = w[col] / ctx_->power(r.pivot_val);
      axpy(w, c, r.v, m);
      if (want_coeff)
        for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] = (coeff[i] + mulmod(c, r.coeff[i], m)) % m;
    } else if (w[col] != 0) {
      return std::nullopt;
    }
  }
  return coeff;
}

bool Echelon::contains(const Residues& v) const { return reduce(v, false).has_value(); }

std::optional<Residues> Echelon::express(const Residues& v) const {
  require(track_, ErrorCode::Internal, "express() needs a tracked echelon form");
  return reduce(v, true);
}

bool Echelon::insert(const Residues& v) {
  const std::uint64_t m = ctx_->modulus();
  if (contains(v)) {
    if (track_) {
      // Record the generator so coefficient vectors keep one slot per input.
      for (auto& r : rows_) r.coeff.push_back(0);
      ++generators_;
    }
    return false;
  }
  std::vector<Row> pool = rows_;
  Row r;
  r.v = v;
  for (auto& x : r.v) x %= m;
  if (track_) {
    for (auto& q : pool) q.coeff.push_back(0);
    r.coeff.assign(generators_ + 1, 0);
    r.coeff[generators_] = 1 % m;
  }
  ++generators_;
  pool.push_back(std::move(r));
  rebuild(std::move(pool));
  return true;
}

bool Echelon::same_module(const Echelon& o) const {
  if (ctx_ != o.ctx_ || dim_ != o.dim_) return false;
  for (const auto& r : rows_)
    if (!o.contains(r.v)) return false;
  for (const auto& r : o.rows_)
    if (!contains(r.v)) return false;
  return true;
}

}  // namespace openimage
