#pragma once

// Finite subgroups of SL2(Z/l^N)^n, congruence balls and the Goursat-type
// exponent predictions.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/matrix.hpp"

namespace openimage {

using MatTuple = std::vector<Mat2>;

class FiniteMatrixGroup {
 public:
  static constexpr std::size_t kDefaultCap = 10'000'000;

  // Smallest subgroup containing the generators, enumerated breadth-first
  // from the identity. Needs l^N < 2^32 and unit determinants; throws
  // SizeCapExceeded as soon as the order would pass cap.
  static FiniteMatrixGroup closure(const PadicContext& ctx, int blocks, const std::vector<MatTuple>& generators,
                                   std::size_t cap = kDefaultCap);

  const PadicContext& context() const noexcept { return *ctx_; }
  int blocks() const noexcept { return blocks_; }
  std::size_t order() const noexcept { return data_.size() / width(); }
  const std::vector<MatTuple>& generators() const noexcept { return gens_; }
  // Determinant 1 in every block for every generator.
  bool special() const noexcept { return special_; }

  MatTuple element(std::size_t i) const;
  bool contains(const MatTuple& g) const;

  // Image in the selected blocks, closed again from the projected generators.
  FiniteMatrixGroup project(const std::vector<int>& which, std::size_t cap = kDefaultCap) const;

 private:
  FiniteMatrixGroup(const PadicContext& ctx, int blocks) : ctx_(&ctx), blocks_(blocks) {}
  std::size_t width() const noexcept { return 4 * static_cast<std::size_t>(blocks_); }
  std::uint64_t hash(const std::uint32_t* e) const noexcept;
  // Slot holding e, or the empty slot where it belongs.
  std::size_t probe(const std::uint32_t* e) const noexcept;
  bool insert(const std::uint32_t* e);
  void grow();

  const PadicContext* ctx_;
  int blocks_;
  bool special_ = true;
  std::vector<MatTuple> gens_;
  std::vector<std::uint32_t> data_;
  std::vector<std::uint32_t> table_;  // element index + 1, 0 = empty
};

MatTuple identity_tuple(const PadicContext& ctx, int blocks);
// g placed in block i, identity elsewhere.
MatTuple embed(const Mat2& g, int blocks, int i);

// Index of B_l(s) in SL2(Z_l): 1 for s = 0, (l^2 - 1) l^{3s-2} otherwise.
boost::multiprecision::cpp_int ball_index(std::uint64_t ell, int s);

// Id + l^k e12, Id + l^k e21 and, for k >= 1, diag(1 + l^k, (1 + l^k)^-1).
std::vector<Mat2> ball_generators(const PadicContext& ctx, int k);

// Membership of every block-embedded ball generator. Exponents >= N give the
// trivial ball and are accepted.
bool contains_ball(const FiniteMatrixGroup& G, const std::vector<int>& exponents);

// Smallest s such that the (i, j) projection contains B(s) x B(s); N when no
// s < N works.
int minimal_pair_exponent(const FiniteMatrixGroup& G, int i, int j);

// Direct enumeration of SL2(Z/l^N) elements congruent to Id mod l^s (s = 0:
// the whole group). Cost l^{4N}.
std::uint64_t count_sl2_ball(const PadicContext& ctx, int s);

// Order of SL2(Z/l^N) from the closed formula l^{3N-2}(l^2 - 1).
boost::multiprecision::cpp_int sl2_order(std::uint64_t ell, int N);

// i-th entry: sum over j != i of s_ij plus (n - 2) v. SideConditionViolated
// unless s_ij >= 2 for l = 2 and s_ij >= 1 for l = 3.
std::vector<std::int64_t> goursat_exponents(const std::vector<std::vector<std::int64_t>>& s, std::uint64_t ell);

}  // namespace openimage
