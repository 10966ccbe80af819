#pragma once

// The contour kernel
//   w(u) = (1 / 2 pi i) int_{(sigma)} F(s) u^{-s} ds,
//   F(s) = (s + i gamma - 1) L(s + i gamma, chi) / (C (s - beta)) * ((1 - e^{-(s-beta)}) / (s - beta))^{2A},
//   C    = L(2 rho, chi^2) (rho - 1),
// attached to a zero rho = beta + i gamma of L(s, chi), and the functionals
// that pair it with twisted Liouville sums.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "l1lab/expsums.hpp"
#include "l1lab/lfunctions.hpp"
#include "l1lab/mult_arith.hpp"
#include "l1lab/testfns.hpp"

namespace l1lab {

struct KernelOptions {
  int A = 12;
  double sigma = 2.0;
  double u_min = 1e-4;       // smallest u the tau step must resolve
  double T = 0.0;            // truncation height; 0 picks it adaptively
  double step = 0.0;         // tau step; 0 picks min(0.05, 1 / (4 log(1/u_min)))
  double tail_budget = 1e-9; // relative to the retained integrand mass
  double sigma_max = 0.0;    // above sigma: add contours at 2 sigma, 4 sigma, ... up to this
};

struct KernelSpec {
  int A = 12;
  CriticalZero zero;
  double sigma = 2.0;
  double T = 0.0;
  double step = 0.0;
  double u_min = 1e-4;
  cplx C = 1.0;
  double tail_estimate = 0.0;  // bound on the dropped tails, relative to the retained mass
  double tail_budget = 1e-9;
  double sigma_max = 2.0;
};

/// ((1 - e^{-z}) / z)^{2A}, with a series for |z| < 1e-4.
cplx decay_factor(cplx z, int A);

KernelSpec make_kernel_spec(const CriticalZero& zero, const KernelOptions& options = {});

/// F(s) for s on the contour (the u^{-s} factor excluded).
cplx integrand(const KernelSpec& spec, cplx s);

/// Trapezoid samples of the integrand on one vertical line Re s = sigma.
struct ContourRung {
  double sigma = 2.0;
  double T = 0.0;
  double tail_estimate = 0.0;
  std::vector<double> taus;
  std::vector<cplx> weighted;  // F(sigma + i tau_k) times the trapezoid weight and 1 / (2 pi)
};

class KernelTable {
 public:
  const KernelSpec& spec() const noexcept { return spec_; }
  std::span<const double> u_grid() const noexcept { return u_grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  /// Samples on the base line Re s = spec().sigma.
  std::span<const double> taus() const noexcept { return rungs_.front().taus; }
  std::span<const cplx> weighted_integrand() const noexcept { return rungs_.front().weighted; }

  /// The base contour, then (if spec().sigma_max allows) contours at 2 sigma,
  /// 4 sigma, ... The integrand is analytic right of Re s = beta, so every rung
  /// gives the same w; the rung nearest the saddle 2A / log(1/u) has the least
  /// cancellation. Near u = 1 the base line alone bottoms out around 1e-23.
  std::span<const ContourRung> rungs() const noexcept { return rungs_; }
  const ContourRung& rung_for(double log_inverse_u) const;

  /// w(u) from the cached contour samples.
  cplx operator()(double u) const;

  /// max_{u in [1.05, 2]} |w(u)| / max over the grid of |w(u)|.
  double support_leak() const;
  /// max over the grid of |w(u)| / u^A.
  double decay_constant() const;
  /// int_{u_min}^{1} |w(u)| du on the grid.
  double l1_norm() const;
  double max_abs() const;

 private:
  friend KernelTable build_kernel(const KernelSpec& spec, double u_min, std::size_t grid_size);
  KernelSpec spec_;
  std::vector<ContourRung> rungs_;
  std::vector<double> u_grid_;
  std::vector<cplx> values_;
};

/// Samples the integrand once on [-T, T] and tabulates w on a geometric grid
/// of grid_size points in [u_min, 1].
KernelTable build_kernel(const KernelSpec& spec, double u_min, std::size_t grid_size);
inline KernelTable build_kernel(const KernelSpec& spec, std::size_t grid_size = 512) {
  return build_kernel(spec, spec.u_min, grid_size);
}

struct QuadratureResult {
  cplx value = 0.0;
  std::size_t nodes = 0;
  double last_change = 0.0;  // relative change at the final refinement
};

struct LogQuadratureOptions {
  double rel_tol = 0.002;
  std::size_t min_nodes = 64;
  std::size_t max_nodes = std::size_t{1} << 16;
};

/// int_0^inf w(y / Y) S(lambda, gamma, chi, phi)(y) dy / y, with the twisted
/// coefficients built for t = gamma and the kernel's character.
QuadratureResult resonance_lhs(const KernelTable& kernel, const SmoothWindow& phi,
                               const TwistedCoefficients& lambda_twisted, double Y,
                               const LogQuadratureOptions& options = {});

/// mellin(phi, beta) Y^beta.
cplx resonance_rhs(const SmoothWindow& phi, double beta, double Y);

struct ContourIdentity {
  double ratio = 0.0;        // Y / y
  cplx direct = 0.0;         // sum_n lambda(n) chi(n) n^{-i gamma} w(n y / Y)
  cplx contour = 0.0;        // contour integral with L(2s + 2i gamma, chi^2) / L(s + i gamma, chi)
  double target = 0.0;       // (Y / y)^beta
  double route_deviation = 0.0;   // |direct - contour| / max(|direct|, |contour|)
  double target_deviation = 0.0;  // |direct - target| / target
};

ContourIdentity contour_identity_check(const KernelTable& kernel, const CoefficientTable& lambda, double y,
                                       double Y);

struct PrimeTerm {
  std::int64_t p = 0;
  cplx integral = 0.0;  // int_{p^2}^{inf} w(y/X) S(a_p, t, chi, phi)(y) dy / y
  std::size_t nodes = 0;
};

struct PropAResult {
  double value = 0.0;  // (1/X) sum_p |integral_p|
  std::vector<PrimeTerm> terms;
};

/// Weight w(u) with support contained in [lower, 1].
struct KernelWeight {
  std::function<cplx(double)> w;
  double lower = 0.0;
};

KernelWeight weight_of(const KernelTable& kernel);
KernelWeight weight_of(const SmoothWindow& window);

template <CoefficientSource S>
PropAResult prop_a_rhs(const S& a, const KernelWeight& weight, const SmoothWindow& phi,
                       const DirichletCharacter& chi, double t, double X,
                       const LogQuadratureOptions& options = {});

namespace detail {
/// Trapezoid refinement of int_0^{x_max} f(x) dx until the relative change is below rel_tol.
QuadratureResult refine_trapezoid(const std::function<cplx(double)>& f, double x_max,
                                  const LogQuadratureOptions& options);
}

template <CoefficientSource S>
PropAResult prop_a_rhs(const S& a, const KernelWeight& weight, const SmoothWindow& phi,
                       const DirichletCharacter& chi, double t, double X, const LogQuadratureOptions& options) {
  if (!(X >= 1.0)) throw DomainError("prop_a_rhs: X must be at least 1");
  const auto upper = static_cast<std::int64_t>(std::floor(X * phi.support().hi));
  if (upper > a.limit())
    throw RangeError("prop_a_rhs: coefficients needed up to " + std::to_string(upper) + ", limit is " +
                     std::to_string(a.limit()));
  PropAResult result;
  const auto primes = primes_up_to(static_cast<std::int64_t>(std::floor(std::sqrt(X))));
  for (const std::int64_t p : primes.primes) {
    const double y_lo = std::max(static_cast<double>(p * p), weight.lower * X);
    if (!(y_lo < X)) {
      result.terms.push_back({p, 0.0, 0});
      continue;
    }
    const TwistedCoefficients twisted(ap_transform(a, p), t, chi, std::max<std::int64_t>(upper, 1));
    auto f = [&](double x) -> cplx {
      const double y = X * std::exp(-x);
      const cplx wv = weight.w(y / X);
      if (wv == 0.0) return 0.0;
      return wv * twisted(phi, y);
    };
    const auto q = detail::refine_trapezoid(f, std::log(X / y_lo), options);
    result.terms.push_back({p, q.value, q.nodes});
    result.value += std::abs(q.value);
  }
  result.value /= X;
  return result;
}

}  // namespace l1lab
