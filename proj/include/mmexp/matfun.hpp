#pragma once

#include "mmexp/linalg.hpp"

namespace mmexp {

// A square matrix whose spectrum has been checked to stay away from the
// closed negative real axis. Only validate_domain() creates one.
class DomainCheckedMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }
  bool validated() const noexcept { return true; }

  // Smallest distance from an eigenvalue to the closed negative real axis.
  double margin() const noexcept { return margin_; }

  // A^*; its spectrum is the conjugate of A's, so the check carries over.
  DomainCheckedMatrix adjoint() const {
    return DomainCheckedMatrix(matrix_.adjoint(), margin_);
  }

 private:
  DomainCheckedMatrix(ComplexMatrix m, double margin)
      : matrix_(std::move(m)), margin_(margin) {}

  friend DomainCheckedMatrix validate_domain(const ComplexMatrix& a);

  ComplexMatrix matrix_;
  double margin_;
};

// Rejects matrices with an eigenvalue within 1e-12 * ||A||_F of the
// closed negative real axis (DomainError names the offenders).
DomainCheckedMatrix validate_domain(const ComplexMatrix& a);

// Distance from z to the ray (-inf, 0].
double distance_to_negative_axis(Complex z);

// Scaling and squaring with Pade degree 3, 5, 7, 9 or 13.
ComplexMatrix expm(const ComplexMatrix& a);

// Principal logarithm by inverse scaling and squaring.
ComplexMatrix logm(const DomainCheckedMatrix& a);

namespace detail {

// logm without the eigenvalue check, for matrices whose spectrum is
// known to be valid (block-triangular lifts of checked matrices).
ComplexMatrix logm_unchecked(const ComplexMatrix& a);

}  // namespace detail

}  // namespace mmexp
