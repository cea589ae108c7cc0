#pragma once

// Approximate Lie algebra morphisms on a lattice containing l^s sl2, and the
// matrix that makes such a morphism inner up to a controlled error.

#include <vector>

#include "core/echelon.hpp"
#include "core/lattice.hpp"
#include "core/matrix.hpp"

namespace openimage {

// A linear map phi from a lattice L1 of sl2 (given by generators) to sl2,
// together with the integer n of the bracket congruence
// [phi a, phi b] == phi [a, b] mod l^n on l^s sl2, as claimed by the caller.
class ApproxMorphism {
 public:
  // InvalidInput unless the generators span a lattice containing l^s sl2 and
  // every image is given.
  static ApproxMorphism from_images(int s, int n, std::vector<TracelessMat> domain, std::vector<TracelessMat> images);
  // g -> M0 g M0^-1 on l^s sl2, plus l^n times the optional noise on the three
  // scaled basis images (x, h, y order). M0 needs a unit determinant.
  static ApproxMorphism conjugation(const Mat2& M0, int s, int n, const std::vector<TracelessMat>& noise = {});

  const PadicContext& context() const noexcept { return domain_.front().context(); }
  int s() const noexcept { return s_; }
  int n() const noexcept { return n_; }
  const std::vector<TracelessMat>& domain() const noexcept { return domain_; }
  const std::vector<TracelessMat>& images() const noexcept { return images_; }

  // Images of l^s e12, l^s e21, l^s diag(1, -1).
  const TracelessMat& x() const noexcept { return x_; }
  const TracelessMat& y() const noexcept { return y_; }
  const TracelessMat& h() const noexcept { return h_; }

  // phi(g) through one fixed expression of g in the generators; InvalidInput
  // when g is outside the domain.
  TracelessMat operator()(const TracelessMat& g) const;

  // Largest k with [phi a, phi b] == phi [a, b] mod l^k over pairs of scaled
  // basis vectors (N when exact at working precision).
  int bracket_depth() const;

 private:
  ApproxMorphism(int s, int n, std::vector<TracelessMat> domain, std::vector<TracelessMat> images);

  int s_, n_;
  std::vector<TracelessMat> domain_, images_;
  Echelon ech_;
  TracelessMat x_, y_, h_;
};

// Largest a with x and y both nonzero mod l^{a+1}. Degenerate if x or y is 0.
int alpha_of(const ApproxMorphism& phi);

struct InnerCertificate {
  explicit InnerCertificate(const PadicContext& ctx) : M(ctx), lambda(ctx.zero()), mu_plus(ctx.zero()) {}

  Mat2 M;
  int alpha = 0;
  int certified_precision = 0;   // min(N, n - alpha - 6s - 4v - 6)
  int det_valuation_bound = 0;   // 4s + v
  int det_valuation = 0;
  PadicInt lambda;               // root of the C_h characteristic polynomial near 2 l^s
  PadicInt mu_plus;              // eigenvalue of h near l^s
  int localization_depth = 0;    // mu_plus == l^s mod l^this, checked
  int eigvec_shift = 0;          // precision spent extracting v+
  int delta = 0;                 // minimal valuation of the columns l^s v+, v-
  int beta = 0, beta_bound = 0;  // val(x v+) and its proven lower bound
  int gamma = 0, gamma_bound = 0;
};

// Highest-weight construction: eigenvalue of C_h by Hensel at 2 l^s, mu+,
// eigenvector v+, v- = y v+, M = [l^s v+ | v-] / l^delta; then every claimed
// congruence is checked. HypothesisFails when n < alpha + 10s + 5v + 6 or the
// bracket congruence is false for x; PrecisionExhausted when N is too small to
// certify the stated depth; CertificationFailed when a proven step fails.
InnerCertificate construct_inner_matrix(const ApproxMorphism& phi);

// tr(phi(g)^2) == tr(g^2) mod l^k on the samples, k = min(N, n - alpha - 10s
// - 5v - 6) (true when k <= 0). The depth can be forced with the second form.
bool verify_trace_congruence(const ApproxMorphism& phi, const InnerCertificate& cert,
                             const std::vector<TracelessMat>& samples);
bool verify_trace_congruence_at(const ApproxMorphism& phi, const std::vector<TracelessMat>& samples, int depth);

// M g adj(M) == det(M) phi(g) mod l^k for all samples.
bool verify_conjugation(const ApproxMorphism& phi, const InnerCertificate& cert, const std::vector<TracelessMat>& samples,
                        int k);

// Graph defect of a 2-block lattice: the largest t (capped at N) with
// l2 == phi(l1) mod l^t for every basis vector (l1, l2), phi being a_i -> b_i
// from special_basis.
int graph_defect_depth(const LieLattice& L);
bool graph_defect(const LieLattice& L, int t);
// The same against an explicit morphism on the first block.
int graph_defect_depth(const LieLattice& L, const ApproxMorphism& phi);
bool graph_defect(const LieLattice& L, int t, const ApproxMorphism& phi);

struct ScalarMatch {
  explicit ScalarMatch(const PadicContext& ctx) : lambda1(ctx.zero()), lambda2(ctx.zero()) {}

  bool holds = false;
  int depth = 0;  // min(N, T - 2v), one less at l = 2 where the roots live mod 2^(N-1)
  PadicInt lambda1, lambda2;
};

// Writes g_i / sqrt(det) = lambda_i Id + l_i and checks lambda_1 == lambda_2
// and g2 M == M g1 mod l^depth. NonSquareDet for a non-square determinant;
// PreconditionFailed for unequal determinants, for g_i not == Id mod 4 or
// det not == 1 mod 8 at l = 2, and for scalar-mod-l pairs with different
// reductions; BranchAmbiguity at l = 2 when tr(g_i') is not 2 mod 8.
ScalarMatch scalar_match(const Mat2& g1, const Mat2& g2, const InnerCertificate& cert, int T);

}  // namespace openimage
