#pragma once

#include <vector>

namespace quatreg {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// n-point trapezoid rule for a periodic integrand on [0, period).
QuadratureRule periodic_trapezoid(int n, double period);

}  // namespace quatreg
