#pragma once

#include <optional>
#include <vector>

#include "mmexp/frechet.hpp"

namespace mmexp {

struct ConditionReport {
  double estimate_opnorm = 0.0;  // estimate of ||L_f(A, B)||_F
  double kappa = 0.0;            // relative condition number
  std::vector<double> gammas;    // gamma_1, gamma_2, ... (gamma_0 = 0 omitted)
  int iterations = 0;
  std::optional<double> exact_opnorm;
  std::optional<double> upper_bound;
  double tol = 0.0;
  bool converged = false;
};

struct PowerMethodOptions {
  double tol = 1e-1;
  int max_iter = 20;
  std::optional<DirectionPair> start;
  bool compute_upper_bound = false;
};

// Power method on L_f* o L_f: alternately applies the Frechet derivative
// and its adjoint, tracking gamma = ||Z|| / ||W||, until successive gammas
// agree to tol (relative) or max_iter is reached.
ConditionReport power_method_estimate(const MatrixPair& pair,
                                      const PowerMethodOptions& opts = {});

struct ExactCondOptions {
  double tol = 1e-10;
  int max_iter = 1000;
  bool compute_upper_bound = true;
};

// Builds K_f explicitly and takes its largest singular value by power
// iteration on K_f^* K_f. O(n^5); n <= 16.
ConditionReport exact_cond(const MatrixPair& pair, const ExactCondOptions& opts = {});

// kappa = ||L|| ||(A, B)||_F / ||A^B||_F.
double relative_condition(const MatrixPair& pair, double opnorm, double value_norm);

// e^{||log A||_F ||B||_F} sqrt(||L_log(A)||_F^2 ||B||_F^2 + ||log A||_F^2).
// ||L_log(A)||_F is sigma_max of K_log for n <= 16, otherwise a power
// method estimate.
double upper_bound(const MatrixPair& pair);

// ||A - I||_F / (1 - ||A - I||_F), an upper bound for ||log A||_F when
// ||A - I||_F < 1.
double log_norm_bound(const ComplexMatrix& a);

struct SingularValueResult {
  double sigma = 0.0;
  std::vector<double> gammas;
  int iterations = 0;
  bool converged = false;
};

// Largest singular value of an explicit matrix by power iteration on
// K^* K from the normalized all-ones vector.
SingularValueResult largest_singular_value(const ComplexMatrix& k, double tol = 1e-10,
                                           int max_iter = 1000);

}  // namespace mmexp
