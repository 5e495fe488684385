#pragma once

#include <vector>

namespace mmexp {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// m-point Gauss-Legendre rule mapped to [0, 1].
QuadratureRule gauss_legendre(int m);

}  // namespace mmexp
