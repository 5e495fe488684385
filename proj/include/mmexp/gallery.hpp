#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mmexp/exponentiation.hpp"

namespace mmexp {

// Seeded source for gallery entries: std::mt19937_64 with doubles taken
// from the top 53 bits, so sequences are reproducible across platforms.
class GalleryRng {
 public:
  explicit GalleryRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  static constexpr std::string_view name() { return "mt19937_64"; }

 private:
  std::mt19937_64 engine_;
};

// Generators (1-based i, j):
//   lehmer     min(i,j) / max(i,j)
//   hilbert    1 / (i + j - 1)
//   cauchy     1 / (x_i + y_j), x_i = i, y_j = j - 1/2
//   minij      min(i, j)
//   condex     unit upper triangular, -1/2 above the diagonal
//              (spectrum {1}, strongly non-normal; "condex-like" is an alias)
//   randc      I + rho (R + i S), R, S uniform on [-1,1), rho = 0.9 / ||R + iS||_F
//   randshift  R + mu I, R uniform on [-1,1), mu = 0, 1, 2, ... until every
//              eigenvalue has real part >= 1/2
// Sizes 2 <= n <= 32. Only randc and randshift consume the seed.
ComplexMatrix gallery(std::string_view name, Index n, std::uint64_t seed);

const std::vector<std::string>& gallery_names();

struct GallerySpec {
  std::vector<std::string> names;
  std::vector<Index> sizes;
  std::uint64_t seed = 42;
  // Upper limit for ||log(A) B||_F; B is shrunk to meet it.
  double exponent_cap = 10.0;

  std::size_t size() const noexcept { return names.size(); }
};

// Ten pairs, sizes cycling 10..15.
GallerySpec default_experiment_spec(std::uint64_t seed = 42);

// Seven pairs of size <= 8, one per generator.
GallerySpec small_gallery_spec(std::uint64_t seed = 42);

struct GalleryPair {
  std::string id;
  std::string generator;
  MatrixPair pair;
  double shift = 0.0;  // multiple of I added to make A domain-valid
};

// Pair j of the spec:
//   A = gallery(names[j], sizes[j], seed + 1000 + j), plus mu I with
//       mu = 10^k ||A||_F, k = -6, -5, ..., 0, if A fails validate_domain
//       or has an eigenvalue within 1e-6 ||A||_F of the closed negative
//       real axis (the smallest such k is used);
//   B = 0.5 randc(sizes[j], seed + j), scaled down so that
//       ||log(A) B||_F <= exponent_cap.
GalleryPair make_gallery_pair(const GallerySpec& spec, std::size_t j);
std::vector<GalleryPair> make_gallery_pairs(const GallerySpec& spec);

}  // namespace mmexp
