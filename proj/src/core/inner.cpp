#include "core/inner.hpp"

#include <algorithm>
#include <variant>

namespace openimage {

namespace {

Residues residues_of(const TracelessMat& g) {
  auto c = g.coords();
  return {c[0].residue(), c[1].residue(), c[2].residue()};
}

PadicInt ell_pow(const PadicContext& ctx, int k) {
  return k >= ctx.precision() ? ctx.zero() : ctx.from_residue(ctx.power(k));
}

std::vector<TracelessMat> scaled_basis(const PadicContext& ctx, int s) {
  const auto ls = ell_pow(ctx, s);
  return {ls * TracelessMat::basis(ctx, 0), ls * TracelessMat::basis(ctx, 1), ls * TracelessMat::basis(ctx, 2)};
}

int vec_valuation(const PadicVec& w, const PadicContext& ctx) {
  int b = ctx.precision();
  for (const auto& c : w) b = std::min(b, val(c));
  return b;
}

// Either a proven valuation bound for w or, when w already vanishes to the
// requested depth, that depth as the bound.
std::pair<int, int> valuation_certificate(const TracelessMat& h, const PadicInt& lambda, const PadicVec& w, int depth) {
  const PadicContext& ctx = h.context();
  const int b = vec_valuation(w, ctx);
  if (depth <= 0) return {b, depth};
  if (b >= depth) return {b, depth - 2 * (2 + val(lambda))};
  Dichotomy d = [&] {
    try {
      return hensel_failure_dichotomy(h, lambda, w, depth);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::HypothesisFails)
        fail(ErrorCode::CertificationFailed, std::string("weight relation broken: ") + e.what());
      throw;
    }
  }();
  if (std::holds_alternative<EigenvalueBranch>(d))
    fail(ErrorCode::CertificationFailed, "a third eigenvalue of h appeared near " + to_string(lambda));
  const auto& vb = std::get<ValuationBranch>(d);
  return {vb.beta, vb.bound};
}

}  // namespace

ApproxMorphism::ApproxMorphism(int s, int n, std::vector<TracelessMat> domain, std::vector<TracelessMat> images)
    : s_(s),
      n_(n),
      domain_(std::move(domain)),
      images_(std::move(images)),
      ech_(domain_.front().context(), 3, true),
      x_(TracelessMat::zero(domain_.front().context())),
      y_(x_),
      h_(x_) {
  const PadicContext& ctx = context();
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    require(&domain_[i].context() == &ctx && &images_[i].context() == &ctx, ErrorCode::InvalidInput,
            "domain and images must share one context");
    ech_.insert(residues_of(domain_[i]));
  }
  auto sb = scaled_basis(ctx, s_);
  for (const auto& b : sb)
    require(ech_.contains(residues_of(b)), ErrorCode::InvalidInput, "domain does not contain l^s sl2");
  x_ = (*this)(sb[0]);
  h_ = (*this)(sb[1]);
  y_ = (*this)(sb[2]);
}

ApproxMorphism ApproxMorphism::from_images(int s, int n, std::vector<TracelessMat> domain,
                                           std::vector<TracelessMat> images) {
  require(!domain.empty(), ErrorCode::InvalidInput, "domain needs at least one generator");
  require(domain.size() == images.size(), ErrorCode::InvalidInput, "one image per domain generator is required");
  require(s >= 0 && s < domain.front().context().precision(), ErrorCode::InvalidInput, "s must lie in [0, N)");
  require(n >= 1, ErrorCode::InvalidInput, "n must be >= 1");
  return ApproxMorphism(s, n, std::move(domain), std::move(images));
}

ApproxMorphism ApproxMorphism::conjugation(const Mat2& M0, int s, int n, const std::vector<TracelessMat>& noise) {
  const PadicContext& ctx = M0.context();
  require(M0.det().is_unit(), ErrorCode::InvalidInput, "conjugator needs a unit determinant");
  require(noise.empty() || noise.size() == 3, ErrorCode::InvalidInput, "noise needs three entries");
  require(s >= 0 && s < ctx.precision(), ErrorCode::InvalidInput, "s must lie in [0, N)");
  require(n >= 1, ErrorCode::InvalidInput, "n must be >= 1");
  const Mat2 Minv = inverse(M0);
  auto dom = scaled_basis(ctx, s);
  std::vector<TracelessMat> img;
  const auto ln = ell_pow(ctx, n);
  for (int i = 0; i < 3; ++i) {
    TracelessMat t(M0 * dom[i].mat() * Minv);
    if (!noise.empty()) t = t + ln * noise[i];
    img.push_back(t);
  }
  return ApproxMorphism(s, n, std::move(dom), std::move(img));
}

TracelessMat ApproxMorphism::operator()(const TracelessMat& g) const {
  const PadicContext& ctx = context();
  require(&g.context() == &ctx, ErrorCode::InvalidInput, "argument context mismatch");
  auto c = ech_.express(residues_of(g));
  require(c.has_value(), ErrorCode::InvalidInput, "argument lies outside the domain");
  TracelessMat out = TracelessMat::zero(ctx);
  for (std::size_t i = 0; i < images_.size(); ++i) out = out + ctx.from_residue((*c)[i]) * images_[i];
  return out;
}

int ApproxMorphism::bracket_depth() const {
  const PadicContext& ctx = context();
  auto sb = scaled_basis(ctx, s_);
  const TracelessMat im[3] = {x_, h_, y_};
  int d = ctx.precision();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      TracelessMat diff = bracket(im[i], im[j]) - (*this)(bracket(sb[i], sb[j]));
      d = std::min(d, diff.min_valuation());
    }
  return d;
}

int alpha_of(const ApproxMorphism& phi) {
  const int N = phi.context().precision();
  const int vx = phi.x().min_valuation(), vy = phi.y().min_valuation();
  require(vx < N && vy < N, ErrorCode::Degenerate, "phi(l^s x) or phi(l^s y) vanishes");
  return std::max(vx, vy);
}

InnerCertificate construct_inner_matrix(const ApproxMorphism& phi) {
  const PadicContext& ctx = phi.context();
  const int N = ctx.precision(), s = phi.s(), n = phi.n(), v = ctx.dyadic();
  InnerCertificate cert(ctx);
  cert.alpha = alpha_of(phi);
  const int a = cert.alpha;
  if (n < a + 10 * s + 5 * v + 6)
    fail(ErrorCode::HypothesisFails, "n = " + std::to_string(n) + " < alpha + 10s + 5v + 6 = " +
                                         std::to_string(a + 10 * s + 5 * v + 6));
  const int nn = std::min(n, N);
  if (phi.bracket_depth() < nn)
    fail(ErrorCode::HypothesisFails, "bracket congruence fails below l^" + std::to_string(nn));
  if (N <= 6 * v + 4 * s)
    fail(ErrorCode::PrecisionExhausted, "N = " + std::to_string(N) + " cannot separate the weights of h");

  const TracelessMat& h = phi.h();
  const PadicInt ls = ell_pow(ctx, s);
  const PadicInt two_ls = ctx.from_int(2) * ls;

  try {
    approx_eigen_defect(adjoint_op(h), two_ls, to_coord_vector(phi.x()), nn);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HypothesisFails)
      fail(ErrorCode::HypothesisFails, std::string("[h, x] != 2 l^s x: ") + e.what());
    throw;
  }

  auto lift = [](const MonicPoly& p, const PadicInt& start, const char* what) {
    try {
      return hensel_lift(p, start);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::HypothesisFails || e.code() == ErrorCode::PrecisionExhausted)
        fail(ErrorCode::CertificationFailed, std::string(what) + ": " + e.what());
      throw;
    }
  };
  auto lift_gain = [N](const MonicPoly& p, const PadicInt& start) {
    const PadicInt f = p(start);
    return f.is_zero() ? N : val(f) - val(p.derivative_at(start));
  };

  const MonicPoly pc = char_poly_adjoint(h);
  cert.lambda = lift(pc, two_ls, "no eigenvalue of C_h near 2 l^s");
  int loc_fp = lift_gain(pc, two_ls) - v;
  require(val(cert.lambda - two_ls) > s + v, ErrorCode::CertificationFailed, "eigenvalue of C_h collapsed to 0");

  const PadicInt mu0 = ctx.is_dyadic() ? cert.lambda.shift_down(1) : cert.lambda * inv_unit(ctx.from_int(2));
  const MonicPoly ph({h.det(), ctx.zero(), ctx.one()});
  cert.mu_plus = lift(ph, mu0, "no eigenvalue of h near lambda / 2");
  loc_fp = std::min(loc_fp, lift_gain(ph, mu0));
  cert.localization_depth = std::min({N, n - a - 2 * s - 4 * v, loc_fp});
  require(cert.localization_depth > s + v, ErrorCode::PrecisionExhausted, "eigenvalue of h not localized");
  require(cert.mu_plus.congruent(ls, cert.localization_depth), ErrorCode::CertificationFailed,
          "mu+ != l^s mod l^" + std::to_string(cert.localization_depth));

  // Kernel of h - mu+ from the adjugate column of least valuation.
  const Mat2 shifted = h.mat() - Mat2::scalar(cert.mu_plus);
  const Mat2 adj = adjugate(shifted);
  PadicVec c0{adj(0, 0), adj(1, 0)}, c1{adj(0, 1), adj(1, 1)};
  const int e0 = vec_valuation(c0, ctx), e1 = vec_valuation(c1, ctx);
  PadicVec col = e0 <= e1 ? c0 : c1;
  cert.eigvec_shift = std::min(e0, e1);
  const int e = cert.eigvec_shift;
  if (e >= N) fail(ErrorCode::PrecisionExhausted, "h - mu+ vanishes at working precision");
  PadicVec vp{col[0].shift_down(e), col[1].shift_down(e)};
  const PadicInt unit = vp[0].is_unit() ? vp[0] : vp[1];
  const PadicInt uinv = inv_unit(unit);
  for (auto& c : vp) c = c * uinv;

  const PadicVec xv = phi.x().mat().apply(vp);
  std::tie(cert.beta, cert.beta_bound) =
      valuation_certificate(h, cert.mu_plus + two_ls, xv, std::min(nn, N - e));

  const PadicVec vm = phi.y().mat().apply(vp);
  const PadicVec yv = phi.y().mat().apply(vm);
  std::tie(cert.gamma, cert.gamma_bound) = valuation_certificate(
      h, ctx.from_int(-3) * ls, yv, std::min({cert.localization_depth, nn, N - e}));

  Mat2 Mt(ctx);
  for (int i = 0; i < 2; ++i) {
    Mt.set(i, 0, ls * vp[i]);
    Mt.set(i, 1, vm[i]);
  }
  cert.delta = Mt.min_valuation();
  if (cert.delta >= N) fail(ErrorCode::CertificationFailed, "highest-weight columns vanish");
  cert.M = Mt.shift_down(cert.delta);

  cert.certified_precision = std::min(N, n - a - 6 * s - 4 * v - 6);
  cert.det_valuation_bound = 4 * s + v;
  cert.det_valuation = val(cert.M.det());
  const int available = std::min(cert.localization_depth, N - e) - cert.delta - s;
  auto reject = [&](const std::string& what) {
    if (cert.certified_precision > available)
      fail(ErrorCode::PrecisionExhausted, what + " (working precision supports depth " + std::to_string(available) + ")");
    fail(ErrorCode::CertificationFailed, what);
  };
  if (cert.M.min_valuation() != 0) reject("M has no unit entry");
  if (cert.det_valuation > cert.det_valuation_bound)
    reject("val det M = " + std::to_string(cert.det_valuation) + " exceeds 4s + v");
  auto samples = scaled_basis(ctx, s);
  samples.insert(samples.end(), phi.domain().begin(), phi.domain().end());
  for (const auto& g : samples)
    if (!(cert.M * g.mat()).congruent(phi(g).mat() * cert.M, cert.certified_precision))
      reject("M g != phi(g) M mod l^" + std::to_string(cert.certified_precision));
  return cert;
}

bool verify_trace_congruence_at(const ApproxMorphism& phi, const std::vector<TracelessMat>& samples, int depth) {
  if (depth <= 0) return true;
  for (const auto& g : samples) {
    const Mat2 p = phi(g).mat();
    if (!(p * p).trace().congruent((g.mat() * g.mat()).trace(), depth)) return false;
  }
  return true;
}

bool verify_trace_congruence(const ApproxMorphism& phi, const InnerCertificate& cert,
                             const std::vector<TracelessMat>& samples) {
  const PadicContext& ctx = phi.context();
  const int k = std::min(ctx.precision(), phi.n() - cert.alpha - 10 * phi.s() - 5 * ctx.dyadic() - 6);
  return verify_trace_congruence_at(phi, samples, k);
}

bool verify_conjugation(const ApproxMorphism& phi, const InnerCertificate& cert, const std::vector<TracelessMat>& samples,
                        int k) {
  const Mat2& M = cert.M;
  const Mat2 adj = adjugate(M);
  const PadicInt d = M.det();
  for (const auto& g : samples)
    if (!(M * g.mat() * adj).congruent(d * phi(g).mat(), k)) return false;
  return true;
}

namespace {

template <class Phi>
int defect_depth(const LieLattice& L, Phi&& phi_of) {
  const PadicContext& ctx = L.context();
  require(L.blocks() == 2, ErrorCode::InvalidInput, "graph defect needs a 2-block lattice");
  int d = ctx.precision();
  for (const auto& row : L.basis()) {
    const TracelessMat l1 = lie_block(ctx, row, 0), l2 = lie_block(ctx, row, 1);
    d = std::min(d, (l2 - phi_of(l1)).min_valuation());
  }
  return d;
}

}  // namespace

int graph_defect_depth(const LieLattice& L) {
  const PadicContext& ctx = L.context();
  const SpecialBasis sb = special_basis(L);
  std::vector<Residues> as;
  for (const auto& a : sb.a) as.push_back(a);
  const Echelon ech = Echelon::build(ctx, 3, as, true);
  return defect_depth(L, [&](const TracelessMat& l1) {
    auto c = ech.express(residues_of(l1));
    require(c.has_value(), ErrorCode::Internal, "first-block vector outside the special basis span");
    TracelessMat out = TracelessMat::zero(ctx);
    for (int i = 0; i < 3; ++i) out = out + ctx.from_residue((*c)[i]) * lie_block(ctx, sb.b[i], 0);
    return out;
  });
}

bool graph_defect(const LieLattice& L, int t) { return graph_defect_depth(L) >= t; }

int graph_defect_depth(const LieLattice& L, const ApproxMorphism& phi) {
  require(&L.context() == &phi.context(), ErrorCode::InvalidInput, "context mismatch");
  return defect_depth(L, [&](const TracelessMat& l1) { return phi(l1); });
}

bool graph_defect(const LieLattice& L, int t, const ApproxMorphism& phi) { return graph_defect_depth(L, phi) >= t; }

namespace {

bool scalar_mod_l(const Mat2& g) {
  return g(0, 1).congruent(g.context().zero(), 1) && g(1, 0).congruent(g.context().zero(), 1) &&
         g(0, 0).congruent(g(1, 1), 1);
}

PadicInt scalar_part(const Mat2& g) {
  const PadicContext& ctx = g.context();
  if (!ctx.is_dyadic()) return half_trace(g);
  if (!g.trace().congruent(ctx.from_int(2), 3))
    fail(ErrorCode::BranchAmbiguity, "tr(g') != 2 mod 8 leaves the square root branch open");
  const TracelessMat l = theta(g);
  return sqrt_one_plus(l.h() * l.h() + l.x() * l.y());
}

}  // namespace

ScalarMatch scalar_match(const Mat2& g1, const Mat2& g2, const InnerCertificate& cert, int T) {
  const PadicContext& ctx = g1.context();
  require(&g2.context() == &ctx && &cert.M.context() == &ctx, ErrorCode::InvalidInput, "context mismatch");
  const PadicInt det = g1.det();
  require(det == g2.det(), ErrorCode::PreconditionFailed, "det g1 != det g2");
  if (ctx.is_dyadic()) {
    const Mat2 id = Mat2::identity(ctx);
    require(g1.congruent(id, 2) && g2.congruent(id, 2), ErrorCode::PreconditionFailed, "g_i must be Id mod 4");
    require(det.congruent(ctx.one(), 3), ErrorCode::PreconditionFailed, "det must be 1 mod 8");
  }
  const PadicInt r = sqrt_unit(det);
  if (!ctx.is_dyadic() && scalar_mod_l(g1) && scalar_mod_l(g2) && !g1.congruent(g2, 1))
    fail(ErrorCode::PreconditionFailed, "scalar reductions of g1 and g2 differ");
  const PadicInt rinv = inv_unit(r);
  const Mat2 h1 = rinv * g1, h2 = rinv * g2;
  ScalarMatch out(ctx);
  out.lambda1 = scalar_part(h1);
  out.lambda2 = scalar_part(h2);
  out.depth = std::min(ctx.precision(), T - 2 * ctx.dyadic());
  if (ctx.is_dyadic()) out.depth = std::min(out.depth, ctx.precision() - 1);
  out.holds = out.depth <= 0 ||
              (out.lambda1.congruent(out.lambda2, out.depth) && (g2 * cert.M).congruent(cert.M * g1, out.depth));
  return out;
}

}  // namespace openimage
