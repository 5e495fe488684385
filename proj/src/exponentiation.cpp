#include "mmexp/exponentiation.hpp"

#include <cmath>
#include <string>

#include "mmexp/errors.hpp"

namespace mmexp {

MatrixPair::MatrixPair(DomainCheckedMatrix a, ComplexMatrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (b_.rows() != a_.dim() || b_.cols() != a_.dim()) {
    throw ShapeError("matrix pair: B is " + std::to_string(b_.rows()) + "x" +
                     std::to_string(b_.cols()) + ", A is " + std::to_string(a_.dim()) +
                     "x" + std::to_string(a_.dim()));
  }
  require_finite(b_);
}

MatrixPair MatrixPair::create(const ComplexMatrix& a, const ComplexMatrix& b) {
  return MatrixPair(validate_domain(a), b);
}

double MatrixPair::norm() const {
  return std::hypot(fro_norm(a_.matrix()), fro_norm(b_));
}

ComplexMatrix mm_exp(const MatrixPair& pair) {
  return expm(logm(pair.a()) * pair.b());
}

ComplexMatrix mm_exp_left(const MatrixPair& pair) {
  return expm(pair.b() * logm(pair.a()));
}

ComplexMatrix scalar_matrix_exp(Complex t, const ComplexMatrix& b) {
  require_square(b, "scalar_matrix_exp: exponent");
  if (t.imag() == 0.0 && t.real() <= 0.0) {
    throw DomainError("scalar_matrix_exp: base " + std::to_string(t.real()) +
                      " lies on the closed negative real axis");
  }
  return expm(std::log(t) * b);
}

ComplexMatrix series_oracle(const MatrixPair& pair, int terms) {
  const Index n = pair.n();
  const ComplexMatrix m = logm(pair.a()) * pair.b();
  ComplexMatrix term = identity(n);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < terms; ++k) {
    if (k > 0) term = term * m / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

ComplexMatrix closed_form_2x2(double a, double b, const ComplexMatrix& bm) {
  if (bm.rows() != 2 || bm.cols() != 2) throw ShapeError("closed_form_2x2: B must be 2x2");
  if (b == 0.0 && a <= 0.0) {
    throw DomainError("closed_form_2x2: a + ib lies on the closed negative real axis");
  }
  const double log_r = std::log(std::hypot(a, b));
  const double theta = std::atan2(b, a);
  const Complex alpha = bm(0, 0), beta = bm(0, 1), gamma = bm(1, 0), delta = bm(1, 1);

  // log(A) = [[log r, theta], [-theta, log r]]; M = log(A) B.
  const Complex m11 = alpha * log_r + theta * gamma;
  const Complex m12 = beta * log_r + theta * delta;
  const Complex m21 = gamma * log_r - theta * alpha;
  const Complex m22 = delta * log_r - theta * beta;

  const Complex omega = std::sqrt((m11 - m22) * (m11 - m22) + 4.0 * m12 * m21);
  const Complex half_trace = std::exp(0.5 * (m11 + m22));
  const Complex ch = std::cosh(0.5 * omega);
  // sinh(omega / 2) / omega, with its removable singularity at 0.
  Complex sh_over;
  if (std::abs(omega) < 1e-4) {
    const Complex w2 = omega * omega;
    sh_over = 0.5 + w2 / 48.0 + w2 * w2 / 3840.0;
  } else {
    sh_over = std::sinh(0.5 * omega) / omega;
  }

  ComplexMatrix out(2, 2);
  out(0, 0) = half_trace * (ch + (m11 - m22) * sh_over);
  out(0, 1) = half_trace * 2.0 * m12 * sh_over;
  out(1, 0) = half_trace * 2.0 * m21 * sh_over;
  out(1, 1) = half_trace * (ch + (m22 - m11) * sh_over);
  return out;
}

}  // namespace mmexp
