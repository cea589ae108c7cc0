#pragma once

// Z/l^N-lattices in sl2^n, stored in (x, h, y) coordinates block after block,
// and the linear algebra used on them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "core/echelon.hpp"
#include "core/group.hpp"
#include "core/matrix.hpp"

namespace openimage {

// 3n residues; block i occupies coordinates 3i, 3i + 1, 3i + 2.
using LieVector = Residues;

LieVector lie_vector(const std::vector<TracelessMat>& blocks);
TracelessMat lie_block(const PadicContext& ctx, const LieVector& v, int block);
// Minimal valuation over all coordinates (N for zero).
int lie_valuation(const PadicContext& ctx, const LieVector& v);

class LieLattice {
 public:
  static LieLattice span(const PadicContext& ctx, int blocks, const std::vector<LieVector>& generators);

  const PadicContext& context() const noexcept { return ech_.context(); }
  int blocks() const noexcept { return blocks_; }
  const std::vector<LieVector>& generators() const noexcept { return gens_; }
  std::vector<LieVector> basis() const;
  const Echelon& echelon() const noexcept { return ech_; }
  bool is_zero() const noexcept { return ech_.is_zero(); }
  bool contains(const LieVector& v) const { return ech_.contains(v); }
  bool same_module(const LieLattice& o) const { return blocks_ == o.blocks_ && ech_.same_module(o.ech_); }

  // Depth to which membership statements are meaningful; N - 1 for lattices
  // built from Theta at l = 2, N otherwise.
  int certified_precision() const noexcept { return certified_; }
  void cap_certified_precision(int k) noexcept { certified_ = std::min(certified_, k); }

  // Adds v; false when it was already a member.
  bool insert(const LieVector& v);

 private:
  LieLattice(const PadicContext& ctx, int blocks);

  int blocks_;
  int certified_;
  std::vector<LieVector> gens_;
  Echelon ech_;
};

// Span of Theta(g) over all elements of G, blockwise.
LieLattice lie_algebra_of_group(const FiniteMatrixGroup& G);

// l^k times each (x, h, y) basis vector of the block lies in L. PrecisionExhausted
// for k >= N, where the question has no content.
bool contains_scaled_sl2(const LieLattice& L, int k, int block);
// The same for every block.
bool contains_scaled_sl2(const LieLattice& L, int k);

// {v : (0, v) in L}, on the remaining blocks.
LieLattice kernel_component(const LieLattice& L);
// Image in a single block.
LieLattice projection(const LieLattice& L, int block);

// Brackets of basis vectors stay in L.
bool bracket_closed(const LieLattice& L);
// g X g^-1 for every basis vector X and conjugator g stays in L.
bool conjugation_stable(const LieLattice& L, const std::vector<MatTuple>& conjugators);
// Smallest lattice containing L that is stable under the conjugators and,
// optionally, under the bracket.
LieLattice conjugation_closure(const LieLattice& L, const std::vector<MatTuple>& conjugators, bool with_bracket);

struct SpecialBasis {
  std::array<LieVector, 3> a;  // first block
  std::array<LieVector, 3> b;  // second block
  std::array<LieVector, 3> y;  // kernel, zero-padded
  int kernel_rank = 0;
};

// Needs n = 2. a_i, b_i from the echelon rows pivoting in the first block,
// y_j the echelon rows of the kernel. DegenerateProjection if the first-block
// image has rank < 3.
SpecialBasis special_basis(const LieLattice& L);

// For W a Lie subalgebra of sl2 stable under B_l(s), tested through the
// conjugators from ball_generators(s), reports whether W contains
// l^{t + 4s + 4v} sl2. PreconditionFailed on a violated hypothesis,
// PrecisionExhausted when t + 4s + 4v >= N.
bool conj_stable_gain(const LieLattice& W, int s, int t);

// k x k matrix over Z/l^N, row-major.
struct SquareMatrix {
  int k = 0;
  std::vector<std::uint64_t> e;
  std::uint64_t at(int i, int j) const { return e[static_cast<std::size_t>(i) * k + j]; }
  std::uint64_t& at(int i, int j) { return e[static_cast<std::size_t>(i) * k + j]; }
};

LieVector apply(const PadicContext& ctx, const SquareMatrix& T, const LieVector& v);

// T with T b_i = l^n e_i, for b_1..b_k in (Z/l^N)^k and y's divisible by
// l^{n+1} such that b's and y's together span l^n (Z/l^N)^k.
// SpanTooSmall when they do not; PreconditionFailed for y's that are not
// divisible enough or n + 1 > N.
SquareMatrix solve_T(const PadicContext& ctx, const std::vector<LieVector>& b, const std::vector<LieVector>& y, int n);

// With span{b} containing l^{n2} e_i and sum lambda_i b_i == 0 mod l^{n2+n},
// reports whether every lambda_i == 0 mod l^n.
bool basis_congruence_bound(const PadicContext& ctx, const std::vector<LieVector>& b,
                            const std::vector<std::uint64_t>& lambdas, int n2, int n);

}  // namespace openimage
