#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace l1lab {

/// Adaptive Gauss-Kronrod (10/21) on [a, b]; works for real and complex
/// integrands. tol is relative to the L1 norm of the integrand.
template <class F>
auto integrate(F&& f, double a, double b, double tol = 1e-13, unsigned max_depth = 20) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, max_depth, tol, &error);
}

}  // namespace l1lab
