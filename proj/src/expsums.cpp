#include "l1lab/expsums.hpp"

#include <fftw3.h>

#include <algorithm>
#include <numeric>

namespace l1lab {

std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

GridSum grid_sum(std::span<const cplx> coefficients, std::size_t M) {
  if (coefficients.empty()) throw DomainError("grid_sum: empty coefficient array");
  const auto X = static_cast<std::int64_t>(coefficients.size()) - 1;
  if (M < coefficients.size())
    throw DomainError("grid_sum: grid size " + std::to_string(M) + " would alias a sum of length " +
                      std::to_string(X) + "; need M >= X + 1");
  if ((M & (M - 1)) != 0) throw DomainError("grid_sum: grid size must be a power of two");

  GridSum g;
  g.X = X;
  g.M = M;
  g.values.assign(M, 0.0);
  auto* data = reinterpret_cast<fftw_complex*>(g.values.data());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(M), data, data, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  std::copy(coefficients.begin(), coefficients.end(), g.values.begin());
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return g;
}

NormEstimate l1_norm(const GridSum& g) {
  double full = 0.0, even = 0.0;
  for (std::size_t j = 0; j < g.M; ++j) {
    const double a = std::abs(g.values[j]);
    full += a;
    if ((j & 1) == 0) even += a;
  }
  NormEstimate e;
  e.grid = g.M;
  e.value = full / static_cast<double>(g.M);
  const double coarse = g.M >= 2 ? even / static_cast<double>(g.M / 2) : e.value;
  e.refinement_delta = e.value > 0.0 ? std::abs(e.value - coarse) / e.value : 0.0;
  return e;
}

double l2_norm_sq(const GridSum& g) {
  double sum = 0.0;
  for (const auto& v : g.values) sum += std::norm(v);
  return sum / static_cast<double>(g.M);
}

double sup_norm(const GridSum& g) {
  double best = 0.0;
  for (const auto& v : g.values) best = std::max(best, std::abs(v));
  return best;
}

NormReport norms_adaptive(std::span<const cplx> coefficients, const L1Options& options) {
  const std::size_t length = coefficients.size();
  std::size_t M = next_power_of_two(std::max(length, options.oversampling * (length - 1)));
  while (true) {
    if (M > options.max_grid)
      throw ResourceError("L1 grid would exceed " + std::to_string(options.max_grid) +
                          " points before the refinement delta fell below the tolerance");
    const auto g = grid_sum(coefficients, M);
    NormReport r;
    r.X = g.X;
    r.l1 = l1_norm(g);
    if (r.l1.refinement_delta < options.tolerance) {
      r.l2_sq = l2_norm_sq(g);
      r.sup = sup_norm(g);
      return r;
    }
    M *= 2;
  }
}

cplx TwistedCoefficients::operator()(const SmoothWindow& phi, double y) const {
  if (!(y > 0.0)) throw DomainError("twisted sum: y must be positive");
  const std::int64_t upper = detail::twisted_upper(phi, y);
  if (upper > limit())
    throw RangeError("twisted sum at y = " + std::to_string(y) + " needs coefficients up to " +
                     std::to_string(upper) + " but only " + std::to_string(limit()) + " are available");
  const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(y * phi.support().lo)));
  cplx sum = 0.0;
  for (std::int64_t n = lo; n <= upper; ++n) {
    const double w = phi(static_cast<double>(n) / y);
    if (w != 0.0) sum += c_[static_cast<std::size_t>(n)] * w;
  }
  return sum;
}

std::vector<cplx> TwistedCoefficients::windowed(const SmoothWindow& phi, double y) const {
  if (!(y > 0.0)) throw DomainError("twisted sum: y must be positive");
  const std::int64_t upper = std::max<std::int64_t>(detail::twisted_upper(phi, y), 0);
  if (upper > limit()) throw RangeError("windowed coefficients requested beyond the table limit");
  std::vector<cplx> out(static_cast<std::size_t>(upper) + 1, 0.0);
  for (std::int64_t n = 1; n <= upper; ++n)
    out[static_cast<std::size_t>(n)] = c_[static_cast<std::size_t>(n)] * phi(static_cast<double>(n) / y);
  return out;
}

double complete_mult_identity_check(const CoefficientTable& lambda, double gamma, const DirichletCharacter& chi,
                                    const SmoothWindow& phi, double y, std::int64_t p) {
  if (lambda.kind() != CoefficientKind::Liouville)
    throw DomainError("the complete multiplicativity identity needs the Liouville table");
  const auto lambda_p = ap_transform(lambda, p);
  const cplx lhs = twisted_sum(lambda_p, gamma, chi, phi, y);
  const double pd = static_cast<double>(p);
  const cplx factor = pd * std::polar(1.0, -gamma * std::log(pd)) * chi(p);
  const cplx rhs = -factor * twisted_sum(lambda, gamma, chi, phi, y / pd) - twisted_sum(lambda, gamma, chi, phi, y);
  return std::abs(lhs - rhs);
}

}  // namespace l1lab
