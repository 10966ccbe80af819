#pragma once

// Compactly supported test functions and their transforms, with the
// conventions e(x) = exp(2 pi i x),
//   fourier(f)(u) = int f(x) e(-x u) dx,
//   mellin(f)(s)  = int_0^inf f(x) x^{s-1} dx,
//   ||f||_{p,r}   = sum_{i<=r} (int |f^(i)|^p)^{1/p}.

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace l1lab {

using cplx = std::complex<double>;

/// exp(-1/(x(1-x))) on (0,1); order selects the derivative (0..2).
double bump(double x, int order = 0);

/// f(x) = 1 - |2x| on [-1/2, 1/2]. Derivatives are taken piecewise.
double triangle_f(double x, int order = 0);

/// Closed-form Fourier transform of triangle_f: (1/2) (sin(pi u/2) / (pi u/2))^2.
double fhat(double u, int order = 0);

/// varrho(x) = f(x) fhat(-x), supported in [-1/2, 1/2].
double varrho(double x, int order = 0);

/// Fourier transform of varrho as the convolution int fhat(u - x) f(x) dx.
double varrho_hat(double u);

/// Derivatives of varrho_hat from int varrho(x) (-2 pi i x)^k e(-x u) dx.
double varrho_hat_derivative(double u, int order);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class WindowKind { Bump, Triangle, Varrho, Scaled, PhiOne };

/// Value type wrapping a compactly supported function with derivative access.
class SmoothWindow {
 public:
  using Evaluator = std::function<double(double x, int order)>;

  SmoothWindow(WindowKind kind, std::string name, Interval support, std::vector<double> breakpoints,
               int sobolev_order, bool flat_ends, Evaluator eval);

  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;

  WindowKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  Interval support() const noexcept { return support_; }
  /// Interior points where a derivative jumps.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  /// Highest r for which ||.||_{p,r} is defined by genuine derivatives.
  int sobolev_order() const noexcept { return sobolev_order_; }
  /// Vanishes to infinite order at both ends of its support.
  bool flat_ends() const noexcept { return flat_ends_; }

  /// Support split at the breakpoints, clipped to [lo, hi].
  std::vector<Interval> pieces(double lo, double hi) const;

 private:
  WindowKind kind_;
  std::string name_;
  Interval support_;
  std::vector<double> breakpoints_;
  int sobolev_order_;
  bool flat_ends_;
  std::shared_ptr<const Evaluator> eval_;
};

SmoothWindow bump_window();
SmoothWindow triangle_window();
SmoothWindow varrho_window();
/// x -> w((x - shift) / dilation), dilation > 0.
SmoothWindow scaled(const SmoothWindow& w, double shift, double dilation);

/// varrho_hat on [0, 1], precomputed on a 1e-3 grid with quintic Hermite
/// interpolation; m is the grid minimum.
class VarrhoHatTable {
 public:
  VarrhoHatTable();
  double operator()(double x, int order = 0) const;
  double minimum() const noexcept { return minimum_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  double step_;
  std::vector<double> values_, first_, second_;
  double minimum_;
};

/// Shared, lazily built table.
const VarrhoHatTable& varrho_hat_table();

/// phi_1 = phi / (m varrho_hat) with m = min of varrho_hat on [0, 1].
SmoothWindow phi_one(const SmoothWindow& phi);

cplx mellin(const SmoothWindow& w, cplx s);
cplx fourier(const SmoothWindow& w, double u);
double sobolev_norm(const SmoothWindow& w, int p, int r);

}  // namespace l1lab
