#pragma once

// Exponential sums S(alpha; X) = sum_{n <= X} a(n) e(n alpha) on uniform
// grids, their L1 / L2 / sup norms, and the twisted windowed sums
//   S(a, t, chi, phi)(y) = sum_n a(n) chi(n) n^{-it} phi(n / y).

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "l1lab/dirichlet.hpp"
#include "l1lab/errors.hpp"
#include "l1lab/mult_arith.hpp"
#include "l1lab/testfns.hpp"

namespace l1lab {

using cplx = std::complex<double>;

template <class S>
concept CoefficientSource = requires(const S& s, std::int64_t n) {
  { s(n) } -> std::convertible_to<double>;
  { s.limit() } -> std::convertible_to<std::int64_t>;
};

/// Values S(j / M; X) for j = 0..M-1.
struct GridSum {
  std::int64_t X = 0;
  std::size_t M = 0;
  std::vector<cplx> values;
};

struct NormEstimate {
  double value = 0.0;
  std::size_t grid = 0;
  double refinement_delta = 0.0;  // relative change against the M/2 subgrid
};

/// Evaluates sum_{n=0}^{X} c[n] e(n j / M) by one FFT; X = c.size() - 1.
/// M must be a power of two with M >= X + 1.
GridSum grid_sum(std::span<const cplx> coefficients, std::size_t M);

template <CoefficientSource S>
GridSum grid_sum(const S& a, std::int64_t X, std::size_t M) {
  if (X > a.limit()) throw RangeError("grid_sum: X exceeds the coefficient limit");
  std::vector<cplx> c(static_cast<std::size_t>(X) + 1, 0.0);
  for (std::int64_t n = 1; n <= X; ++n) c[static_cast<std::size_t>(n)] = a(n);
  return grid_sum(c, M);
}

/// Mean of |S| over the grid, with the delta against the even-index subgrid.
NormEstimate l1_norm(const GridSum& g);
/// Mean of |S|^2 over the grid; equals sum |c[n]|^2 when M > X.
double l2_norm_sq(const GridSum& g);
double sup_norm(const GridSum& g);

struct L1Options {
  double tolerance = 0.005;       // accepted refinement_delta
  std::size_t oversampling = 8;   // initial M = 2^ceil(log2(oversampling * X))
  std::size_t max_grid = std::size_t{1} << 26;
};

struct NormReport {
  std::int64_t X = 0;
  NormEstimate l1;
  double l2_sq = 0.0;
  double sup = 0.0;
};

/// Doubles the grid until the L1 refinement delta is below tolerance.
NormReport norms_adaptive(std::span<const cplx> coefficients, const L1Options& options = {});

template <CoefficientSource S>
NormReport norms_adaptive(const S& a, std::int64_t X, const L1Options& options = {}) {
  if (X > a.limit()) throw RangeError("norms_adaptive: X exceeds the coefficient limit");
  std::vector<cplx> c(static_cast<std::size_t>(X) + 1, 0.0);
  for (std::int64_t n = 1; n <= X; ++n) c[static_cast<std::size_t>(n)] = a(n);
  return norms_adaptive(c, options);
}

std::size_t next_power_of_two(std::size_t n);

/// Lazy view a_p(n) = a(n) (p 1_{p | n} - 1).
template <CoefficientSource S>
class ApView {
 public:
  ApView(const S& a, std::int64_t p) : a_(&a), p_(p) {}

  std::int64_t limit() const { return a_->limit(); }
  std::int64_t prime() const noexcept { return p_; }
  double operator()(std::int64_t n) const {
    const double base = (*a_)(n);
    return n % p_ == 0 ? base * static_cast<double>(p_ - 1) : -base;
  }

 private:
  const S* a_;
  std::int64_t p_;
};

template <CoefficientSource S>
ApView<S> ap_transform(const S& a, std::int64_t p) {
  if (!is_prime(p)) throw DomainError("ap_transform: " + std::to_string(p) + " is not prime");
  return ApView<S>(a, p);
}

namespace detail {
inline cplx twist(double a, const DirichletCharacter& chi, double t, std::int64_t n) {
  if (a == 0.0) return 0.0;
  const cplx c = chi(n);
  if (c == 0.0) return 0.0;
  return a * c * std::polar(1.0, -t * std::log(static_cast<double>(n)));
}

/// Largest n that can contribute to S(y) for a window supported in (lo, hi).
inline std::int64_t twisted_upper(const SmoothWindow& phi, double y) {
  return static_cast<std::int64_t>(std::floor(y * phi.support().hi));
}
}  // namespace detail

/// Precomputed a(n) chi(n) n^{-it}, reused across many y.
class TwistedCoefficients {
 public:
  template <CoefficientSource S>
  TwistedCoefficients(const S& a, double t, const DirichletCharacter& chi, std::int64_t limit = -1) : t_(t) {
    if (limit < 0) limit = a.limit();
    if (limit > a.limit()) throw RangeError("twisted coefficients requested beyond the table limit");
    c_.assign(static_cast<std::size_t>(limit) + 1, 0.0);
    for (std::int64_t n = 1; n <= limit; ++n) c_[static_cast<std::size_t>(n)] = detail::twist(a(n), chi, t, n);
  }

  std::int64_t limit() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }
  double t() const noexcept { return t_; }
  std::span<const cplx> coefficients() const noexcept { return c_; }

  /// S(y) = sum_n c(n) phi(n / y).
  cplx operator()(const SmoothWindow& phi, double y) const;

  /// Coefficients c(n) phi(n / y) for n = 0..floor(y * sup supp phi).
  std::vector<cplx> windowed(const SmoothWindow& phi, double y) const;

 private:
  double t_;
  std::vector<cplx> c_;
};

/// One-off S(a, t, chi, phi)(y) without precomputing the full table.
template <CoefficientSource S>
cplx twisted_sum(const S& a, double t, const DirichletCharacter& chi, const SmoothWindow& phi, double y) {
  if (!(y > 0.0)) throw DomainError("twisted_sum: y must be positive");
  const std::int64_t upper = detail::twisted_upper(phi, y);
  if (upper > a.limit())
    throw RangeError("twisted_sum: y = " + std::to_string(y) + " needs coefficients up to " + std::to_string(upper) +
                     " but the limit is " + std::to_string(a.limit()));
  cplx sum = 0.0;
  for (std::int64_t n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(y * phi.support().lo)));
       n <= upper; ++n) {
    const double w = phi(static_cast<double>(n) / y);
    if (w == 0.0) continue;
    sum += detail::twist(a(n), chi, t, n) * w;
  }
  return sum;
}

/// |S(lambda_p, gamma, chi, phi)(y) - (-p^{1-i gamma} chi(p) S(lambda, ...)(y/p) - S(lambda, ...)(y))|.
double complete_mult_identity_check(const CoefficientTable& lambda, double gamma, const DirichletCharacter& chi,
                                    const SmoothWindow& phi, double y, std::int64_t p);

}  // namespace l1lab
