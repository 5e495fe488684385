#include "mmexp/conditioning.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mmexp/errors.hpp"

namespace mmexp {

namespace {

constexpr Index kExactLogNormDimension = 16;

DirectionPair normalized(ComplexMatrix e, ComplexMatrix f) {
  const double norm = std::hypot(e.norm(), f.norm());
  return DirectionPair{e / norm, f / norm};
}

DirectionPair ones_start(Index n) {
  return normalized(ComplexMatrix::Ones(n, n), ComplexMatrix::Ones(n, n));
}

DirectionPair checkerboard_start(Index n) {
  ComplexMatrix c(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) c(i, j) = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  }
  return normalized(c, c);
}

// ||L_log(A)||_F estimated by power iteration on L_log(A^*; .) o L_log(A; .).
double log_opnorm_power(const DomainCheckedMatrix& a) {
  const DomainCheckedMatrix a_adj = a.adjoint();
  const Index n = a.dim();
  ComplexMatrix e = ComplexMatrix::Ones(n, n) / static_cast<double>(n);
  double gamma = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix w = frechet_log(a, e);
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    const ComplexMatrix z = frechet_log(a_adj, w);
    const double next = z.norm() / wn;
    const bool done = std::abs(next - gamma) <= 1e-10 * next;
    gamma = next;
    if (done) break;
    e = z / z.norm();
  }
  return gamma;
}

}  // namespace

double relative_condition(const MatrixPair& pair, double opnorm, double value_norm) {
  if (value_norm == 0.0) return std::numeric_limits<double>::infinity();
  return opnorm * pair.norm() / value_norm;
}

ConditionReport power_method_estimate(const MatrixPair& pair, const PowerMethodOptions& opts) {
  if (!(opts.tol > 0.0)) throw PreconditionFailed("power_method_estimate: tol must be positive");
  if (opts.max_iter < 1) throw PreconditionFailed("power_method_estimate: max_iter must be >= 1");

  const MatrixPowerDerivative op(pair);
  const Index n = pair.n();
  if (opts.start && (opts.start->e.rows() != n || opts.start->f.rows() != n ||
                     opts.start->e.cols() != n || opts.start->f.cols() != n)) {
    throw ShapeError("power_method_estimate: start directions must be n x n");
  }
  DirectionPair dir = opts.start ? normalized(opts.start->e, opts.start->f) : ones_start(n);
  if (!std::isfinite(dir.norm())) throw PreconditionFailed("power_method_estimate: zero start");

  ConditionReport report;
  report.tol = opts.tol;
  double gamma_prev = 0.0;
  double gamma = 1.0;
  bool restarted = false;

  while (report.iterations < opts.max_iter) {
    const ComplexMatrix w = op.apply(dir);
    const double w_norm = w.norm();
    if (w_norm == 0.0) {
      // Start orthogonal to the range of L*; try a second fixed start,
      // and if L annihilates that too, L is the zero operator.
      if (!restarted) {
        restarted = true;
        dir = checkerboard_start(n);
        continue;
      }
      gamma = 0.0;
      report.converged = true;
      break;
    }
    const DirectionPair z = op.adjoint(w);
    gamma = z.norm() / w_norm;
    report.gammas.push_back(gamma);
    ++report.iterations;
    if (std::abs(gamma - gamma_prev) <= opts.tol * gamma) {
      report.converged = true;
      break;
    }
    gamma_prev = gamma;
    // gamma is invariant to the scale of (E, F); normalizing avoids
    // overflow when ||L|| is large.
    dir = normalized(z.e, z.f);
  }

  report.estimate_opnorm = gamma;
  report.kappa = relative_condition(pair, report.estimate_opnorm, op.value().norm());
  if (opts.compute_upper_bound) report.upper_bound = upper_bound(pair);
  return report;
}

SingularValueResult largest_singular_value(const ComplexMatrix& k, double tol, int max_iter) {
  SingularValueResult result;
  if (k.size() == 0) {
    result.converged = true;
    return result;
  }
  ComplexVector v = ComplexVector::Ones(k.cols()) / std::sqrt(static_cast<double>(k.cols()));
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const ComplexVector w = k * v;
    const double w_norm = w.norm();
    if (w_norm == 0.0) {
      result.sigma = 0.0;
      result.converged = true;
      return result;
    }
    const ComplexVector z = k.adjoint() * w;
    const double sigma = z.norm() / w_norm;
    result.gammas.push_back(sigma);
    result.iterations = it + 1;
    result.sigma = sigma;
    if (std::abs(sigma - prev) <= tol * sigma) {
      result.converged = true;
      return result;
    }
    prev = sigma;
    v = z / z.norm();
  }
  return result;
}

ConditionReport exact_cond(const MatrixPair& pair, const ExactCondOptions& opts) {
  const auto k = build_K_f(pair);
  const auto sv = largest_singular_value(k.matrix, opts.tol, opts.max_iter);
  ConditionReport report;
  report.estimate_opnorm = sv.sigma;
  report.exact_opnorm = sv.sigma;
  report.gammas = sv.gammas;
  report.iterations = sv.iterations;
  report.converged = sv.converged;
  report.tol = opts.tol;
  report.kappa = relative_condition(pair, sv.sigma, mm_exp(pair).norm());
  if (opts.compute_upper_bound) report.upper_bound = upper_bound(pair);
  return report;
}

double upper_bound(const MatrixPair& pair) {
  const ComplexMatrix log_a = logm(pair.a());
  double log_opnorm = 0.0;
  if (pair.n() <= kExactLogNormDimension) {
    log_opnorm = largest_singular_value(build_K_log(pair.a()).matrix).sigma;
  } else {
    log_opnorm = log_opnorm_power(pair.a());
  }
  const double log_norm = log_a.norm();
  const double b_norm = pair.b().norm();
  return std::exp(log_norm * b_norm) *
         std::hypot(log_opnorm * b_norm, log_norm);
}

double log_norm_bound(const ComplexMatrix& a) {
  require_square(a, "log_norm_bound: argument");
  const double d = (a - identity(a.rows())).norm();
  if (!(d < 1.0)) {
    throw PreconditionFailed("log_norm_bound: requires ||A - I||_F < 1, got " +
                             std::to_string(d));
  }
  return d / (1.0 - d);
}

}  // namespace mmexp
