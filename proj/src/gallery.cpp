#include "mmexp/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "mmexp/errors.hpp"

namespace mmexp {

namespace {

constexpr Index kMinSize = 2;
constexpr Index kMaxSize = 32;

ComplexMatrix from_formula(Index n, double (*entry)(double, double)) {
  ComplexMatrix a(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      a(i, j) = entry(static_cast<double>(i + 1), static_cast<double>(j + 1));
    }
  }
  return a;
}

ComplexMatrix condex(Index n) {
  ComplexMatrix a = identity(n);
  for (Index j = 1; j < n; ++j) {
    for (Index i = 0; i < j; ++i) a(i, j) = -0.5;
  }
  return a;
}

ComplexMatrix randc(Index n, std::uint64_t seed) {
  GalleryRng rng(seed);
  ComplexMatrix r(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double re = rng.symmetric();
      const double im = rng.symmetric();
      r(i, j) = Complex(re, im);
    }
  }
  // ||rho R||_F = 0.9 bounds the spectral radius, so every eigenvalue lies
  // in the disc |z - 1| <= 0.9.
  return identity(n) + (0.9 / r.norm()) * r;
}

ComplexMatrix randshift(Index n, std::uint64_t seed) {
  GalleryRng rng(seed);
  ComplexMatrix r(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) r(i, j) = rng.symmetric();
  }
  for (int mu = 0;; ++mu) {
    const ComplexMatrix shifted = r + static_cast<double>(mu) * identity(n);
    const Spectrum spectrum = eigenvalues(shifted);
    const auto& values = spectrum.values();
    const bool ok = std::all_of(values.begin(), values.end(),
                                [](const Complex& z) { return z.real() >= 0.5; });
    if (ok) return shifted;
  }
}

// Numerically singular generators (hilbert, cauchy for n >= 10) are
// regularized so that every eigenvalue keeps this relative distance from
// the closed negative real axis.
constexpr double kMinRelativeMargin = 1e-6;
constexpr int kFirstShiftExponent = -6;

std::optional<DomainCheckedMatrix> acceptable(const ComplexMatrix& a, double floor) {
  try {
    DomainCheckedMatrix checked = validate_domain(a);
    if (checked.margin() >= floor) return checked;
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

std::string canonical_name(std::string_view name) {
  if (name == "condex-like") return "condex";
  return std::string(name);
}

}  // namespace

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {"lehmer", "hilbert", "cauchy",   "minij",
                                                 "condex", "randc",   "randshift"};
  return names;
}

ComplexMatrix gallery(std::string_view name, Index n, std::uint64_t seed) {
  const std::string key = canonical_name(name);
  const auto& names = gallery_names();
  if (std::find(names.begin(), names.end(), key) == names.end()) {
    throw UnknownGenerator("unknown gallery generator '" + std::string(name) + "'");
  }
  if (n < kMinSize || n > kMaxSize) {
    throw PreconditionFailed("gallery: size " + std::to_string(n) +
                             " outside supported range [2, 32]");
  }
  if (key == "lehmer") {
    return from_formula(n, [](double i, double j) { return std::min(i, j) / std::max(i, j); });
  }
  if (key == "hilbert") {
    return from_formula(n, [](double i, double j) { return 1.0 / (i + j - 1.0); });
  }
  if (key == "cauchy") {
    return from_formula(n, [](double i, double j) { return 1.0 / (i + (j - 0.5)); });
  }
  if (key == "minij") {
    return from_formula(n, [](double i, double j) { return std::min(i, j); });
  }
  if (key == "condex") return condex(n);
  if (key == "randc") return randc(n, seed);
  return randshift(n, seed);
}

GallerySpec default_experiment_spec(std::uint64_t seed) {
  GallerySpec spec;
  spec.names = {"lehmer", "hilbert", "cauchy", "minij", "condex",
                "randc",  "randshift", "lehmer", "minij", "randc"};
  for (std::size_t j = 0; j < spec.names.size(); ++j) {
    spec.sizes.push_back(10 + static_cast<Index>(j % 6));
  }
  spec.seed = seed;
  return spec;
}

GallerySpec small_gallery_spec(std::uint64_t seed) {
  GallerySpec spec;
  spec.names = gallery_names();
  spec.sizes = {6, 3, 3, 5, 6, 8, 7};
  spec.seed = seed;
  return spec;
}

GalleryPair make_gallery_pair(const GallerySpec& spec, std::size_t j) {
  if (spec.names.size() != spec.sizes.size()) {
    throw PreconditionFailed("gallery spec: names and sizes differ in length");
  }
  if (j >= spec.size()) throw PreconditionFailed("gallery spec: pair index out of range");

  const std::string name = canonical_name(spec.names[j]);
  const Index n = spec.sizes[j];
  const ComplexMatrix g = gallery(name, n, spec.seed + 1000 + j);

  const double floor = kMinRelativeMargin * g.norm();
  double shift = 0.0;
  std::optional<DomainCheckedMatrix> a = acceptable(g, floor);
  for (int k = kFirstShiftExponent; k <= 0 && !a; ++k) {
    shift = std::pow(10.0, k) * g.norm();
    a = acceptable(g + shift * identity(n), floor);
  }
  if (!a) throw DomainError("gallery pair " + std::to_string(j) + ": no valid shift");

  ComplexMatrix b = 0.5 * gallery("randc", n, spec.seed + j);
  const double exponent_norm = (logm(*a) * b).norm();
  if (exponent_norm > spec.exponent_cap) b *= spec.exponent_cap / exponent_norm;

  char id[16];
  std::snprintf(id, sizeof(id), "%02zu", j + 1);
  return GalleryPair{std::string(id) + "-" + name, name, MatrixPair(std::move(*a), std::move(b)),
                     shift};
}

std::vector<GalleryPair> make_gallery_pairs(const GallerySpec& spec) {
  std::vector<GalleryPair> out;
  out.reserve(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) out.push_back(make_gallery_pair(spec, j));
  return out;
}

}  // namespace mmexp
