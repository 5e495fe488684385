#include "mmexp/matfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmexp/errors.hpp"
#include "mmexp/quadrature.hpp"

namespace mmexp {

namespace {

constexpr double kDomainTolerance = 1e-12;

// Largest ||A||_1 for which the degree-m diagonal Pade approximant of
// exp attains unit-roundoff backward error.
constexpr std::array<std::pair<int, double>, 4> kExpThetaSmall{{
    {3, 1.495585217958292e-2},
    {5, 2.539398330063230e-1},
    {7, 9.504178996162932e-1},
    {9, 2.097847961257068e0},
}};
constexpr double kExpTheta13 = 5.371920351148152e0;

// log(I + X) Pade degree and the ||A - I||_1 target for square rooting.
constexpr int kLogPadeDegree = 7;
constexpr double kLogSqrtTarget = 0.25;
constexpr int kMaxSquareRoots = 64;

const double* pade_coefficients(int m) {
  static constexpr double b3[] = {120.0, 60.0, 12.0, 1.0};
  static constexpr double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                  25200.0,    1512.0,    56.0,      1.0};
  static constexpr double b9[] = {17643225600.0, 8821612800.0, 2075673600.0,
                                  302702400.0,   30270240.0,   2162160.0,
                                  110880.0,      3960.0,       90.0,
                                  1.0};
  switch (m) {
    case 3: return b3;
    case 5: return b5;
    case 7: return b7;
    default: return b9;
  }
}

// r_m(A) = (V - U)^{-1} (V + U) for odd/even parts U, V.
ComplexMatrix pade_low(const ComplexMatrix& a, int m) {
  const double* b = pade_coefficients(m);
  const Index n = a.rows();
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = identity(n);
  ComplexMatrix u_even = b[1] * power;
  ComplexMatrix v = b[0] * power;
  for (int k = 2; k <= m; k += 2) {
    power = power * a2;
    u_even += b[k + 1] * power;
    v += b[k] * power;
  }
  const ComplexMatrix u = a * u_even;
  return solve(v - u, v + u);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  static constexpr double b[] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const Index n = a.rows();
  const ComplexMatrix eye = identity(n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                                b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye;
  const ComplexMatrix u = a * u_inner;
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                          b[4] * a4 + b[2] * a2 + b[0] * eye;
  return solve(v - u, v + u);
}

// Partial-fraction form of the [m/m] Pade approximant to log(I + X):
// sum_j w_j X (I + x_j X)^{-1} with Gauss-Legendre nodes on [0, 1].
ComplexMatrix log1p_pade(const ComplexMatrix& x, int m) {
  const auto rule = gauss_legendre(m);
  const ComplexMatrix eye = identity(x.rows());
  ComplexMatrix sum = ComplexMatrix::Zero(x.rows(), x.cols());
  for (int j = 0; j < m; ++j) {
    sum += rule.weights[j] * solve(eye + rule.nodes[j] * x, x);
  }
  return sum;
}

}  // namespace

double distance_to_negative_axis(Complex z) {
  return z.real() <= 0.0 ? std::abs(z.imag()) : std::abs(z);
}

DomainCheckedMatrix validate_domain(const ComplexMatrix& a) {
  require_square(a, "validate_domain: argument");
  require_finite(a);
  const Spectrum spectrum = eigenvalues(a);
  const double threshold = kDomainTolerance * fro_norm(a);
  double margin = std::numeric_limits<double>::infinity();
  std::ostringstream offenders;
  bool bad = false;
  for (const Complex& z : spectrum.values()) {
    const double d = distance_to_negative_axis(z);
    margin = std::min(margin, d);
    if (!(d > threshold)) {
      offenders << (bad ? ", " : "") << z.real() << (z.imag() < 0 ? "" : "+")
                << z.imag() << "i";
      bad = true;
    }
  }
  if (bad) {
    throw DomainError("eigenvalue(s) on or near the closed negative real axis: " +
                      offenders.str());
  }
  return DomainCheckedMatrix(a, margin);
}

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm: argument");
  const Index n = a.rows();
  if (n == 1) return ComplexMatrix::Constant(1, 1, std::exp(a(0, 0)));

  const double norm = one_norm(a);
  for (const auto& [m, theta] : kExpThetaSmall) {
    if (norm <= theta) return pade_low(a, m);
  }
  int s = 0;
  if (norm > kExpTheta13) s = static_cast<int>(std::ceil(std::log2(norm / kExpTheta13)));
  ComplexMatrix x = pade13(a / std::ldexp(1.0, s));
  for (int k = 0; k < s; ++k) x = x * x;
  return x;
}

ComplexMatrix logm(const DomainCheckedMatrix& a) { return detail::logm_unchecked(a.matrix()); }

namespace detail {

ComplexMatrix logm_unchecked(const ComplexMatrix& a) {
  require_square(a, "logm: argument");
  const Index n = a.rows();
  if (n == 1) return ComplexMatrix::Constant(1, 1, std::log(a(0, 0)));

  const ComplexMatrix eye = identity(n);
  ComplexMatrix t = a;
  int s = 0;
  while (one_norm(t - eye) >= kLogSqrtTarget) {
    if (s == kMaxSquareRoots) {
      throw NoConvergence("logm: too many square roots in inverse scaling");
    }
    t = sqrtm(t);
    ++s;
  }
  return std::ldexp(1.0, s) * log1p_pade(t - eye, kLogPadeDegree);
}

}  // namespace detail

}  // namespace mmexp
