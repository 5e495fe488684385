#include "mmexp/frechet.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "mmexp/errors.hpp"
#include "mmexp/quadrature.hpp"

namespace mmexp {

namespace {

constexpr Index kMaxKfDimension = 16;
constexpr Index kMaxKexpKronDimension = 4;
constexpr Index kMaxKlogQuadDimension = 8;

ComplexMatrix block_upper(const ComplexMatrix& diag, const ComplexMatrix& corner) {
  const Index n = diag.rows();
  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = diag;
  out.bottomRightCorner(n, n) = diag;
  out.topRightCorner(n, n) = corner;
  return out;
}

void require_direction(const ComplexMatrix& a, const ComplexMatrix& e, const char* what) {
  if (e.rows() != a.rows() || e.cols() != a.cols()) {
    throw ShapeError(std::string(what) + ": direction is " + std::to_string(e.rows()) +
                     "x" + std::to_string(e.cols()) + ", expected " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_max_dim(Index n, Index limit, const char* what) {
  if (n > limit) {
    throw PreconditionFailed(std::string(what) + ": dimension " + std::to_string(n) +
                             " exceeds limit " + std::to_string(limit));
  }
}

// Gauss-Legendre with node counts min, 2 min, ..., max; stops once two
// successive estimates agree to opts.tol (relative, Frobenius).
IntegralResult adaptive_gauss_legendre(
    const std::function<ComplexMatrix(double)>& integrand, Index rows, Index cols,
    const QuadratureOptions& opts) {
  IntegralResult result;
  ComplexMatrix previous;
  for (int m = opts.min_nodes; m <= opts.max_nodes; m *= 2) {
    const auto rule = gauss_legendre(m);
    ComplexMatrix sum = ComplexMatrix::Zero(rows, cols);
    for (int j = 0; j < m; ++j) sum += rule.weights[j] * integrand(rule.nodes[j]);
    if (previous.size() != 0) {
      const double scale = sum.norm();
      result.achieved_tol = scale > 0.0 ? (sum - previous).norm() / scale : 0.0;
    } else {
      result.achieved_tol = std::numeric_limits<double>::infinity();
    }
    result.value = sum;
    result.nodes = m;
    if (result.achieved_tol < opts.tol) {
      result.converged = true;
      break;
    }
    previous = std::move(sum);
  }
  return result;
}

}  // namespace

double DirectionPair::norm() const { return std::hypot(e.norm(), f.norm()); }

ComplexMatrix unit_direction(Index n, Index k) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  out(k % n, k / n) = 1.0;
  return out;
}

ComplexMatrix frechet_exp(const ComplexMatrix& a, const ComplexMatrix& e) {
  require_square(a, "frechet_exp: argument");
  require_direction(a, e, "frechet_exp");
  const double e_norm = one_norm(e);
  if (e_norm == 0.0) return ComplexMatrix::Zero(a.rows(), a.cols());
  // The (1,2) block is linear in E; scale it to the size of A so the
  // block does not change the squaring count much.
  const double a_norm = one_norm(a);
  const double scale = (a_norm > 0.0 ? a_norm : 1.0) / e_norm;
  const ComplexMatrix big = expm(block_upper(a, scale * e));
  return big.topRightCorner(a.rows(), a.cols()) / scale;
}

ComplexMatrix frechet_log(const DomainCheckedMatrix& a, const ComplexMatrix& e) {
  const ComplexMatrix& am = a.matrix();
  require_direction(am, e, "frechet_log");
  const double e_norm = e.norm();
  if (e_norm == 0.0) return ComplexMatrix::Zero(am.rows(), am.cols());
  const double scale = am.norm() / e_norm;
  // The lifted matrix has the same spectrum as A.
  const ComplexMatrix big = detail::logm_unchecked(block_upper(am, scale * e));
  return big.topRightCorner(am.rows(), am.cols()) / scale;
}

IntegralResult frechet_exp_integral(const ComplexMatrix& a, const ComplexMatrix& e,
                                    const QuadratureOptions& opts) {
  require_square(a, "frechet_exp_integral: argument");
  require_direction(a, e, "frechet_exp_integral");
  return adaptive_gauss_legendre(
      [&](double t) { return ComplexMatrix(expm((1.0 - t) * a) * e * expm(t * a)); },
      a.rows(), a.cols(), opts);
}

IntegralResult frechet_log_integral(const DomainCheckedMatrix& a, const ComplexMatrix& e,
                                    const QuadratureOptions& opts) {
  const ComplexMatrix& am = a.matrix();
  require_direction(am, e, "frechet_log_integral");
  const ComplexMatrix eye = identity(am.rows());
  const ComplexMatrix shift = am - eye;
  return adaptive_gauss_legendre(
      [&](double t) {
        const ComplexMatrix r = inverse(t * shift + eye);
        return ComplexMatrix(r * e * r);
      },
      am.rows(), am.cols(), opts);
}

MatrixPowerDerivative::MatrixPowerDerivative(const MatrixPair& pair)
    : pair_(pair), a_adjoint_(pair.a().adjoint()) {
  log_a_ = logm(pair_.a());
  exponent_ = log_a_ * pair_.b();
  value_ = expm(exponent_);
}

ComplexMatrix MatrixPowerDerivative::apply(const ComplexMatrix& e,
                                           const ComplexMatrix& f) const {
  require_direction(log_a_, e, "frechet_mmexp (E)");
  require_direction(log_a_, f, "frechet_mmexp (F)");
  ComplexMatrix inner_dir = log_a_ * f;
  if (!e.isZero(0.0)) inner_dir += frechet_log(pair_.a(), e) * pair_.b();
  return frechet_exp(exponent_, inner_dir);
}

DirectionPair MatrixPowerDerivative::adjoint(const ComplexMatrix& w) const {
  require_direction(log_a_, w, "adjoint_mmexp");
  const ComplexMatrix z = frechet_exp(exponent_.adjoint(), w);
  return DirectionPair{frechet_log(a_adjoint_, z * pair_.b().adjoint()),
                       log_a_.adjoint() * z};
}

ComplexMatrix frechet_mmexp(const MatrixPair& pair, const ComplexMatrix& e,
                            const ComplexMatrix& f) {
  return MatrixPowerDerivative(pair).apply(e, f);
}

ComplexMatrix frechet_mmexp_block(const MatrixPair& pair, const ComplexMatrix& e,
                                  const ComplexMatrix& f) {
  const ComplexMatrix& a = pair.a().matrix();
  require_direction(a, e, "frechet_mmexp_block (E)");
  require_direction(a, f, "frechet_mmexp_block (F)");
  const double dir_norm = std::hypot(e.norm(), f.norm());
  if (dir_norm == 0.0) return ComplexMatrix::Zero(a.rows(), a.cols());
  const double scale = pair.norm() / dir_norm;
  const MatrixPair lifted = MatrixPair::create(block_upper(a, scale * e),
                                               block_upper(pair.b(), scale * f));
  return mm_exp(lifted).topRightCorner(a.rows(), a.cols()) / scale;
}

DirectionPair adjoint_mmexp(const MatrixPair& pair, const ComplexMatrix& w) {
  return MatrixPowerDerivative(pair).adjoint(w);
}

FrechetKroneckerMatrix build_K_f(const MatrixPair& pair) {
  const Index n = pair.n();
  require_max_dim(n, kMaxKfDimension, "build_K_f");
  const MatrixPowerDerivative op(pair);
  const Index nn = n * n;
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  ComplexMatrix k(nn, 2 * nn);
  // Columns are independent of each other.
  for (Index c = 0; c < nn; ++c) {
    const ComplexMatrix unit = unit_direction(n, c);
    k.col(c) = vec(op.apply(unit, zero));
    k.col(nn + c) = vec(op.apply(zero, unit));
  }
  return {std::move(k), KroneckerKind::mmexp};
}

FrechetKroneckerMatrix build_K_exp(const ComplexMatrix& a) {
  require_square(a, "build_K_exp: argument");
  const Index n = a.rows();
  ComplexMatrix k(n * n, n * n);
  for (Index c = 0; c < n * n; ++c) k.col(c) = vec(frechet_exp(a, unit_direction(n, c)));
  return {std::move(k), KroneckerKind::exp};
}

FrechetKroneckerMatrix build_K_log(const DomainCheckedMatrix& a) {
  const Index n = a.dim();
  ComplexMatrix k(n * n, n * n);
  for (Index c = 0; c < n * n; ++c) k.col(c) = vec(frechet_log(a, unit_direction(n, c)));
  return {std::move(k), KroneckerKind::log};
}

ComplexMatrix psi_matrix(const ComplexMatrix& x) {
  require_square(x, "psi_matrix: argument");
  const Index n = x.rows();
  const ComplexMatrix eye = identity(n);
  int s = 0;
  const double norm = one_norm(x);
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  ComplexMatrix y = x / std::ldexp(1.0, s);

  // Taylor series; ||Y||_1 <= 1/2 so terms fall faster than 2^-k / k!.
  ComplexMatrix term = eye;
  ComplexMatrix psi = eye;
  for (int k = 1; k < 40; ++k) {
    term = term * y / static_cast<double>(k + 1);
    psi += term;
    if (one_norm(term) <= 1e-18 * one_norm(psi)) break;
  }

  for (int i = 0; i < s; ++i) {
    const ComplexMatrix exp_y = eye + y * psi;
    psi = 0.5 * (psi * (exp_y + eye));
    y *= 2.0;
  }
  return psi;
}

FrechetKroneckerMatrix build_K_exp_kron(const ComplexMatrix& a) {
  require_square(a, "build_K_exp_kron: argument");
  const Index n = a.rows();
  require_max_dim(n, kMaxKexpKronDimension, "build_K_exp_kron");
  const ComplexMatrix eye = identity(n);
  const ComplexMatrix kron_sum = kron(a.transpose(), eye) - kron(eye, a);
  return {kron(eye, expm(a)) * psi_matrix(kron_sum), KroneckerKind::exp};
}

FrechetKroneckerMatrix build_K_log_quad(const DomainCheckedMatrix& a,
                                        const QuadratureOptions& opts) {
  const ComplexMatrix& am = a.matrix();
  const Index n = am.rows();
  require_max_dim(n, kMaxKlogQuadDimension, "build_K_log_quad");
  const ComplexMatrix eye = identity(n);
  const ComplexMatrix shift = am - eye;
  auto result = adaptive_gauss_legendre(
      [&](double t) {
        const ComplexMatrix r = inverse(t * shift + eye);
        return kron(r.transpose(), r);
      },
      n * n, n * n, opts);
  return {std::move(result.value), KroneckerKind::log};
}

}  // namespace mmexp
