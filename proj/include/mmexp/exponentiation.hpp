#pragma once

#include "mmexp/matfun.hpp"

namespace mmexp {

// (A, B) with A domain-checked and both n x n.
class MatrixPair {
 public:
  MatrixPair(DomainCheckedMatrix a, ComplexMatrix b);

  // Runs validate_domain on A.
  static MatrixPair create(const ComplexMatrix& a, const ComplexMatrix& b);

  const DomainCheckedMatrix& a() const noexcept { return a_; }
  const ComplexMatrix& b() const noexcept { return b_; }
  Index n() const noexcept { return a_.dim(); }

  // ||(A, B)||_F = sqrt(||A||_F^2 + ||B||_F^2).
  double norm() const;

 private:
  DomainCheckedMatrix a_;
  ComplexMatrix b_;
};

// A^B = exp(log(A) B).
ComplexMatrix mm_exp(const MatrixPair& pair);

// exp(B log(A)).
ComplexMatrix mm_exp_left(const MatrixPair& pair);

// t^B = exp(log(t) B) with the principal scalar log; t must be off the
// closed negative real axis.
ComplexMatrix scalar_matrix_exp(Complex t, const ComplexMatrix& b);

// Truncated power series sum_{k < terms} (log(A) B)^k / k!.
ComplexMatrix series_oracle(const MatrixPair& pair, int terms);

// A^B for A = [[a, b], [-b, a]] via the explicit 2x2 exponential formula.
ComplexMatrix closed_form_2x2(double a, double b, const ComplexMatrix& bm);

}  // namespace mmexp
