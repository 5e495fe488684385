#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "mmexp/exponentiation.hpp"
#include "mmexp/frechet.hpp"
#include "mmexp/gallery.hpp"

namespace mmexp::testing {

inline ComplexMatrix random_matrix(GalleryRng& rng, Index n, double scale = 1.0) {
  ComplexMatrix m(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double re = rng.symmetric();
      m(i, j) = scale * Complex(re, rng.symmetric());
    }
  }
  return m;
}

inline ComplexMatrix random_with_norm(GalleryRng& rng, Index n, double fro) {
  ComplexMatrix m = random_matrix(rng, n);
  return m * (fro / m.norm());
}

// ||X - Y||_F / ||Y||_F, absolute when Y = 0.
inline double rel_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  const double d = (x - y).norm();
  const double s = y.norm();
  return s > 0.0 ? d / s : d;
}

// Truncated Taylor series of exp, summed in order.
inline ComplexMatrix taylor_expm(const ComplexMatrix& x, int terms) {
  const Index n = x.rows();
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  ComplexMatrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

// A = exp(L) with ||L||_F = log_norm, so log(A) = L whenever the spectrum
// of L lies in the strip |Im z| < pi (guaranteed for log_norm < pi).
struct RandomPair {
  ComplexMatrix log_a;
  MatrixPair pair;
};

inline RandomPair random_pair(GalleryRng& rng, Index n, double log_norm, double b_norm) {
  const ComplexMatrix l = random_with_norm(rng, n, log_norm);
  const ComplexMatrix b = random_with_norm(rng, n, b_norm);
  return RandomPair{l, MatrixPair::create(taylor_expm(l, 40), b)};
}

// Central difference of A^B along (E, F) with the documented step
// h = 1e-6 ||(A, B)||_F / ||(E, F)||_F.
inline ComplexMatrix central_difference(const MatrixPair& pair, const ComplexMatrix& e,
                                        const ComplexMatrix& f) {
  const double h = 1e-6 * pair.norm() / std::hypot(e.norm(), f.norm());
  const ComplexMatrix& a = pair.a().matrix();
  const ComplexMatrix plus = mm_exp(MatrixPair::create(a + h * e, pair.b() + h * f));
  const ComplexMatrix minus = mm_exp(MatrixPair::create(a - h * e, pair.b() - h * f));
  return (plus - minus) / (2.0 * h);
}

// Largest gap between sorted spectra, relative to the larger spectral radius.
inline double spectrum_gap(const ComplexMatrix& x, const ComplexMatrix& y) {
  const Spectrum sx = eigenvalues(x);
  const Spectrum sy = eigenvalues(y);
  double radius = 1.0;
  for (const Complex& z : sx.values()) radius = std::max(radius, std::abs(z));
  return spectrum_distance(sx, sy) / radius;
}

// Small pairs used by the correctness suites (n <= 8), then the
// experiment pairs (n in [10, 15]).
inline std::vector<GalleryPair> all_gallery_pairs() {
  auto pairs = make_gallery_pairs(small_gallery_spec());
  for (auto& p : make_gallery_pairs(default_experiment_spec())) pairs.push_back(std::move(p));
  return pairs;
}

}  // namespace mmexp::testing
