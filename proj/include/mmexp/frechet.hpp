#pragma once

#include "mmexp/exponentiation.hpp"

namespace mmexp {

// A direction (E, F) in C^{n x n} x C^{n x n}, normed as the stacked
// block [E; F].
struct DirectionPair {
  ComplexMatrix e;
  ComplexMatrix f;

  double norm() const;
  Index dim() const noexcept { return e.rows(); }
};

enum class KroneckerKind { mmexp, exp, log };

// Explicit matrix of a Frechet derivative acting on vec'd directions:
// n^2 x 2n^2 for the matrix-matrix exponentiation (acting on
// [vec E; vec F]), n^2 x n^2 for exp and log.
struct FrechetKroneckerMatrix {
  ComplexMatrix matrix;
  KroneckerKind kind;
};

// L_exp(A; E) from the (1,2) block of exp([[A, E], [0, A]]).
ComplexMatrix frechet_exp(const ComplexMatrix& a, const ComplexMatrix& e);

// L_log(A; E) from the (1,2) block of log([[A, E], [0, A]]).
ComplexMatrix frechet_log(const DomainCheckedMatrix& a, const ComplexMatrix& e);

struct QuadratureOptions {
  int min_nodes = 8;
  int max_nodes = 128;
  double tol = 1e-10;
};

struct IntegralResult {
  ComplexMatrix value;
  double achieved_tol = 0.0;  // relative change at the last doubling
  int nodes = 0;
  bool converged = false;
};

// Integral representations, evaluated by Gauss-Legendre with doubling
// node counts. Independent of the block route; used as cross-checks.
//   L_exp(A; E) = int_0^1 e^{A(1-t)} E e^{At} dt
//   L_log(A; E) = int_0^1 R(t) E R(t) dt,  R(t) = (t(A - I) + I)^{-1}
IntegralResult frechet_exp_integral(const ComplexMatrix& a, const ComplexMatrix& e,
                                    const QuadratureOptions& opts = {});
IntegralResult frechet_log_integral(const DomainCheckedMatrix& a, const ComplexMatrix& e,
                                    const QuadratureOptions& opts = {});

// The Frechet derivative of f(A, B) = A^B and its adjoint, with log(A)
// and log(A) B computed once for repeated application.
class MatrixPowerDerivative {
 public:
  explicit MatrixPowerDerivative(const MatrixPair& pair);

  // L_f(A, B; E, F) = L_exp(log(A) B; log(A) F + L_log(A; E) B).
  ComplexMatrix apply(const ComplexMatrix& e, const ComplexMatrix& f) const;
  ComplexMatrix apply(const DirectionPair& d) const { return apply(d.e, d.f); }

  // Adjoint under <X, Y> = trace(Y^* X):
  //   Z = L_exp((log(A) B)^*; W)
  //   L_f*(W) = (L_log(A^*; Z B^*), log(A)^* Z)
  DirectionPair adjoint(const ComplexMatrix& w) const;

  const MatrixPair& pair() const noexcept { return pair_; }
  const ComplexMatrix& log_a() const noexcept { return log_a_; }
  const ComplexMatrix& exponent() const noexcept { return exponent_; }
  const ComplexMatrix& value() const noexcept { return value_; }

 private:
  MatrixPair pair_;
  DomainCheckedMatrix a_adjoint_;
  ComplexMatrix log_a_;
  ComplexMatrix exponent_;
  ComplexMatrix value_;
};

ComplexMatrix frechet_mmexp(const MatrixPair& pair, const ComplexMatrix& e,
                            const ComplexMatrix& f);

// Block (1,2) of f([[A, E], [0, A]], [[B, F], [0, B]]). Costlier than
// frechet_mmexp; used as an independent check.
ComplexMatrix frechet_mmexp_block(const MatrixPair& pair, const ComplexMatrix& e,
                                  const ComplexMatrix& f);

DirectionPair adjoint_mmexp(const MatrixPair& pair, const ComplexMatrix& w);

// Column-by-column constructions from canonical unit directions.
// build_K_f: n <= 16.
FrechetKroneckerMatrix build_K_f(const MatrixPair& pair);
FrechetKroneckerMatrix build_K_exp(const ComplexMatrix& a);
FrechetKroneckerMatrix build_K_log(const DomainCheckedMatrix& a);

// K_exp(A) = (I (x) e^A) psi(A^T (+) (-A)), psi(x) = (e^x - 1)/x. n <= 4.
FrechetKroneckerMatrix build_K_exp_kron(const ComplexMatrix& a);

// K_log(A) = int_0^1 R(t)^T (x) R(t) dt by Gauss-Legendre. n <= 8.
FrechetKroneckerMatrix build_K_log_quad(const DomainCheckedMatrix& a,
                                        const QuadratureOptions& opts = {});

// psi(X) = sum_k X^k / (k+1)!, evaluated on X / 2^s and unscaled with
// psi(2Y) = psi(Y) (e^Y + I) / 2.
ComplexMatrix psi_matrix(const ComplexMatrix& x);

// Unit matrix with a one at vec index k (row k % n, column k / n).
ComplexMatrix unit_direction(Index n, Index k);

}  // namespace mmexp
