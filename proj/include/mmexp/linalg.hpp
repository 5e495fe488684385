#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mmexp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Eigenvalue multiset, stored in canonical order (real part, then
// imaginary part).
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<Complex> values);

  const std::vector<Complex>& values() const& noexcept { return values_; }
  // By value on temporaries, so eigenvalues(a).values() is safe to iterate.
  std::vector<Complex> values() && noexcept { return std::move(values_); }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<Complex> values_;
};

// Largest distance between matched eigenvalues. Matching is greedy in
// canonical order, which is robust to reordering of near-ties such as
// conjugate pairs.
double spectrum_distance(const Spectrum& a, const Spectrum& b);

ComplexMatrix identity(Index n);

// Throws PreconditionFailed if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a);
void require_square(const ComplexMatrix& a, const char* what);

double fro_norm(const ComplexMatrix& a);
double one_norm(const ComplexMatrix& a);
ComplexMatrix conj_transpose(const ComplexMatrix& a);

// <X, Y> = trace(Y^* X).
Complex inner(const ComplexMatrix& x, const ComplexMatrix& y);

// Solves A X = B by partial-pivoted LU. Throws SingularMatrix when a
// pivot falls below 1e-14 * ||A||_F.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column stacking.
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

// Validation-grade eigenvalues (Hessenberg reduction plus shifted QR).
// Limited to n <= 64.
Spectrum eigenvalues(const ComplexMatrix& a);

struct SqrtmOptions {
  double tol = 1e-14;
  int max_iter = 50;
};

// Principal square root by the scaled product-form Denman-Beavers
// iteration. The caller guarantees no eigenvalues on the closed
// negative real axis; failure to converge signals a violation.
ComplexMatrix sqrtm(const ComplexMatrix& a, const SqrtmOptions& opts = {});

}  // namespace mmexp
