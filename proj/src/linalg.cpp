#include "mmexp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "mmexp/errors.hpp"

namespace mmexp {

namespace {

constexpr double kPivotThreshold = 1e-14;
constexpr Index kMaxEigenDimension = 64;

bool canonical_less(const Complex& x, const Complex& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

Eigen::PartialPivLU<ComplexMatrix> checked_lu(const ComplexMatrix& a) {
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const double threshold = kPivotThreshold * a.norm();
  const auto& packed = lu.matrixLU();
  for (Index i = 0; i < packed.rows(); ++i) {
    if (!(std::abs(packed(i, i)) > threshold)) {
      throw SingularMatrix("pivot " + std::to_string(i) +
                           " below singularity threshold");
    }
  }
  return lu;
}

}  // namespace

Spectrum::Spectrum(std::vector<Complex> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), canonical_less);
}

double spectrum_distance(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a.values()) {
    std::size_t best = b.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b.values()[j]);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

void require_finite(const ComplexMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        throw PreconditionFailed("matrix entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") is not finite");
      }
    }
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw ShapeError(std::string(what) + " must be a nonempty square matrix, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

double fro_norm(const ComplexMatrix& a) { return a.norm(); }

double one_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) { return a.adjoint(); }

Complex inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  // trace(Y^* X) = sum_ij conj(y_ij) x_ij
  return (y.conjugate().cwiseProduct(x)).sum();
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve: coefficient matrix");
  if (b.rows() != a.rows()) {
    throw ShapeError("solve: right-hand side has " + std::to_string(b.rows()) +
                     " rows, expected " + std::to_string(a.rows()));
  }
  return checked_lu(a).solve(b);
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, identity(a.rows()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector vec(const ComplexMatrix& a) {
  // Eigen storage is column-major, so the flat view is already vec(A).
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (rows * cols != v.size()) {
    throw ShapeError("unvec: vector of length " + std::to_string(v.size()) +
                     " cannot be reshaped to " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

Spectrum eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues: argument");
  if (a.rows() > kMaxEigenDimension) {
    throw PreconditionFailed("eigenvalues: dimension " + std::to_string(a.rows()) +
                             " exceeds validation limit 64");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  solver.setMaxIterations(100 * static_cast<int>(a.rows()));
  solver.compute(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("eigenvalues: QR iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return Spectrum(std::vector<Complex>(ev.data(), ev.data() + ev.size()));
}

ComplexMatrix sqrtm(const ComplexMatrix& a, const SqrtmOptions& opts) {
  require_square(a, "sqrtm: argument");
  const Index n = a.rows();
  if (n == 1) {
    const Complex z = a(0, 0);
    if (z == Complex(0.0)) throw SingularMatrix("sqrtm: zero scalar");
    if (z.imag() == 0.0 && z.real() < 0.0) {
      throw NoConvergence("sqrtm: scalar on the negative real axis");
    }
    return ComplexMatrix::Constant(1, 1, std::sqrt(z));
  }

  const ComplexMatrix eye = identity(n);
  ComplexMatrix m = a;
  ComplexMatrix x = a;
  bool scaling = true;
  double prev_delta = std::numeric_limits<double>::infinity();

  for (int k = 0; k < opts.max_iter; ++k) {
    const auto lu = checked_lu(m);
    const ComplexMatrix m_inv = lu.inverse();

    double mu = 1.0;
    if (scaling) {
      double log_det = 0.0;
      for (Index i = 0; i < n; ++i) log_det += std::log(std::abs(lu.matrixLU()(i, i)));
      mu = std::exp(-log_det / (2.0 * static_cast<double>(n)));
    }
    const double mu2 = mu * mu;

    ComplexMatrix x_next = (0.5 * mu) * (x * (eye + m_inv / mu2));
    ComplexMatrix m_next = 0.5 * (eye + 0.5 * (mu2 * m + m_inv / mu2));

    const double delta = (x_next - x).norm() / x_next.norm();
    x = std::move(x_next);
    m = std::move(m_next);

    if (!std::isfinite(delta)) break;
    if (delta <= opts.tol || (m - eye).norm() <= opts.tol) return x;
    if (delta < 1e-2) scaling = false;
    // Quadratic convergence has stalled at the rounding floor.
    if (!scaling && delta < 1e-8 && delta > 0.5 * prev_delta) return x;
    prev_delta = delta;
  }
  throw NoConvergence("sqrtm: Denman-Beavers iteration did not converge");
}

}  // namespace mmexp
