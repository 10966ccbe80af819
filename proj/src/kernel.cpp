#include "l1lab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "l1lab/errors.hpp"

namespace l1lab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Keeps L(s + i gamma) and L(2s + 2i gamma) inside |Im| <= 200.
double max_height(const CriticalZero& zero) { return 100.0 - std::abs(zero.gamma); }

double tail_bound(const KernelSpec& spec, double T, double retained_mass) {
  // |F| ~ C' tau^{-(2A-1)}; C' from samples at T/2 and T on both sides.
  const double power = 2.0 * spec.A - 1.0;
  double c_prime = 0.0;
  for (double tau : {-T, -0.5 * T, 0.5 * T, T})
    c_prime = std::max(c_prime, std::abs(integrand(spec, cplx(spec.sigma, tau))) * std::pow(std::abs(tau), power));
  const double tail = 2.0 * c_prime * std::pow(T, 1.0 - power) / (power - 1.0);
  return retained_mass > 0.0 ? tail / retained_mass : tail;
}

double integrand_mass(const KernelSpec& spec, double T, double step) {
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * T / step));
  const double h = 2.0 * T / static_cast<double>(n);
  double mass = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double tau = -T + static_cast<double>(k) * h;
    const double weight = (k == 0 || k == n) ? 0.5 : 1.0;
    mass += weight * std::abs(integrand(spec, cplx(spec.sigma, tau)));
  }
  return mass * h;
}

}  // namespace

cplx decay_factor(cplx z, int A) {
  cplx base;
  if (std::abs(z) < 1e-4) {
    base = 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0 + z * z * z * z / 120.0;
  } else {
    base = (1.0 - std::exp(-z)) / z;
  }
  cplx result = 1.0;
  for (int k = 0; k < 2 * A; ++k) result *= base;
  return result;
}

cplx integrand(const KernelSpec& spec, cplx s) {
  const auto& zero = spec.zero;
  const cplx shift(0.0, zero.gamma);
  const cplx z = s - zero.beta;
  return (s + shift - 1.0) * dirichlet_l(s + shift, zero.character) / (spec.C * z) * decay_factor(z, spec.A);
}

namespace {

// Picks T (unless fixed) so the tail estimate meets the budget; false if the
// height cap is reached first.
bool choose_truncation(KernelSpec& spec, double fixed_T) {
  if (fixed_T > 0.0) {
    spec.T = fixed_T;
    spec.tail_estimate = tail_bound(spec, spec.T, integrand_mass(spec, spec.T, spec.step));
    return spec.tail_estimate <= spec.tail_budget;
  }
  const double cap = max_height(spec.zero);
  double T = 8.0;
  while (true) {
    const double tail = tail_bound(spec, T, integrand_mass(spec, T, spec.step));
    if (tail < spec.tail_budget || T >= cap) {
      spec.T = T;
      spec.tail_estimate = tail;
      return tail < spec.tail_budget;
    }
    T = std::min(cap, 1.5 * T);
  }
}

ContourRung sample_rung(const KernelSpec& spec) {
  ContourRung rung;
  rung.sigma = spec.sigma;
  rung.T = spec.T;
  rung.tail_estimate = spec.tail_estimate;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * spec.T / spec.step));
  const double h = 2.0 * spec.T / static_cast<double>(n);
  rung.taus.resize(n + 1);
  rung.weighted.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double tau = -spec.T + static_cast<double>(k) * h;
    const double weight = (k == 0 || k == n) ? 0.5 : 1.0;
    rung.taus[k] = tau;
    rung.weighted[k] = integrand(spec, cplx(spec.sigma, tau)) * (weight * h / kTwoPi);
  }
  return rung;
}

}  // namespace

KernelSpec make_kernel_spec(const CriticalZero& zero, const KernelOptions& options) {
  if (options.A < 10) throw DomainError("kernel needs A >= 10");
  if (!(options.sigma > 1.0)) throw DomainError("contour abscissa must lie right of Re s = 1");
  if (!(options.u_min > 0.0 && options.u_min < 1.0)) throw DomainError("u_min must lie in (0, 1)");
  if (options.T > max_height(zero)) throw DomainError("truncation height exceeds the validated L-function range");

  KernelSpec spec;
  spec.A = options.A;
  spec.zero = zero;
  spec.sigma = options.sigma;
  spec.sigma_max = std::max(options.sigma, options.sigma_max);
  spec.u_min = options.u_min;
  spec.tail_budget = options.tail_budget;
  spec.C = dirichlet_l(2.0 * zero.rho(), zero.character.pow(2)) * (zero.rho() - 1.0);
  if (!(std::abs(spec.C) > 0.0)) throw InconsistencyError("kernel normaliser L(2 rho, chi^2)(rho - 1) vanishes");

  spec.step = options.step > 0.0 ? options.step : std::min(0.05, 1.0 / (4.0 * std::log(1.0 / options.u_min)));
  choose_truncation(spec, options.T);
  return spec;
}

KernelTable build_kernel(const KernelSpec& spec, double u_min, std::size_t grid_size) {
  if (spec.tail_estimate > spec.tail_budget)
    throw DomainError("truncation tail estimate " + std::to_string(spec.tail_estimate) + " exceeds the budget " +
                      std::to_string(spec.tail_budget) + "; increase T");
  if (u_min < spec.u_min)
    throw DomainError("u_min below the value the tau step was chosen for; rebuild the spec with a smaller u_min");
  if (grid_size < 2) throw DomainError("kernel grid needs at least two points");

  KernelTable table;
  table.spec_ = spec;
  table.rungs_.push_back(sample_rung(spec));
  for (double sigma = 2.0 * spec.sigma; sigma <= spec.sigma_max * (1.0 + 1e-12); sigma *= 2.0) {
    KernelSpec shifted = spec;
    shifted.sigma = sigma;
    if (!choose_truncation(shifted, 0.0)) break;
    table.rungs_.push_back(sample_rung(shifted));
  }

  table.u_grid_.resize(grid_size);
  table.values_.resize(grid_size);
  const double log_min = std::log(u_min);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double u = std::exp(log_min * (1.0 - static_cast<double>(i) / static_cast<double>(grid_size - 1)));
    table.u_grid_[i] = u;
    table.values_[i] = table(u);
  }
  table.u_grid_.back() = 1.0;
  return table;
}

const ContourRung& KernelTable::rung_for(double log_inverse_u) const {
  if (!(log_inverse_u > 0.0)) return rungs_.back();
  const double saddle = 2.0 * spec_.A / log_inverse_u;
  const ContourRung* best = &rungs_.front();
  for (const auto& r : rungs_)
    if (std::abs(std::log(r.sigma / saddle)) < std::abs(std::log(best->sigma / saddle))) best = &r;
  return *best;
}

cplx KernelTable::operator()(double u) const {
  if (!(u > 0.0)) throw DomainError("kernel is evaluated at u > 0 only");
  const double log_u = std::log(u);
  const auto& r = rung_for(-log_u);
  cplx sum = 0.0;
  for (std::size_t k = 0; k < r.taus.size(); ++k) sum += r.weighted[k] * std::polar(1.0, -r.taus[k] * log_u);
  return sum * std::exp(-r.sigma * log_u);
}

double KernelTable::max_abs() const {
  double best = 0.0;
  for (const auto& v : values_) best = std::max(best, std::abs(v));
  return best;
}

double KernelTable::support_leak() const {
  constexpr int kSamples = 64;
  double leak = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double u = 1.05 + (2.0 - 1.05) * i / (kSamples - 1);
    leak = std::max(leak, std::abs((*this)(u)));
  }
  const double peak = max_abs();
  return peak > 0.0 ? leak / peak : leak;
}

double KernelTable::decay_constant() const {
  double best = 0.0;
  for (std::size_t i = 0; i < u_grid_.size(); ++i)
    best = std::max(best, std::abs(values_[i]) / std::pow(u_grid_[i], spec_.A));
  return best;
}

double KernelTable::l1_norm() const {
  // du = u d(log u); trapezoid in log u.
  double total = 0.0;
  for (std::size_t i = 1; i < u_grid_.size(); ++i) {
    const double a = std::abs(values_[i - 1]) * u_grid_[i - 1];
    const double b = std::abs(values_[i]) * u_grid_[i];
    total += 0.5 * (a + b) * (std::log(u_grid_[i]) - std::log(u_grid_[i - 1]));
  }
  return total;
}

namespace detail {

QuadratureResult refine_trapezoid(const std::function<cplx(double)>& f, double x_max,
                                  const LogQuadratureOptions& options) {
  QuadratureResult r;
  if (!(x_max > 0.0)) return r;
  std::size_t n = 1;
  cplx sum = 0.5 * (f(0.0) + f(x_max));
  double h = x_max;
  cplx estimate = sum * h;
  while (true) {
    // add midpoints
    cplx mid = 0.0;
    for (std::size_t k = 0; k < n; ++k) mid += f((static_cast<double>(k) + 0.5) * h);
    sum += mid;
    n *= 2;
    h *= 0.5;
    const cplx next = sum * h;
    const double scale = std::max(std::abs(next), std::abs(estimate));
    const double change = scale > 0.0 ? std::abs(next - estimate) / scale : 0.0;
    estimate = next;
    r.value = estimate;
    r.nodes = n + 1;
    r.last_change = change;
    if (n >= options.min_nodes && change < options.rel_tol) return r;
    if (n >= options.max_nodes) return r;
  }
}

}  // namespace detail

QuadratureResult resonance_lhs(const KernelTable& kernel, const SmoothWindow& phi,
                               const TwistedCoefficients& lambda_twisted, double Y,
                               const LogQuadratureOptions& options) {
  const double hi = phi.support().hi;
  if (!(Y * hi >= 1.0)) return {};  // every twisted sum is empty
  const auto needed = static_cast<std::int64_t>(std::floor(Y * hi));
  if (needed > lambda_twisted.limit())
    throw RangeError("resonance_lhs: coefficient table limit " + std::to_string(lambda_twisted.limit()) +
                     " is below " + std::to_string(needed));
  // The y-integrand vanishes below y = 1 / hi, i.e. u = 1 / (Y hi).
  const double x_max = std::log(Y * hi);
  if (x_max > -std::log(kernel.u_grid().front()) + 1e-12)
    throw DomainError("resonance_lhs: kernel u_min is too large for Y; rebuild the kernel with u_min <= 1/Y");
  auto f = [&](double x) -> cplx {
    const double y = Y * std::exp(-x);
    return kernel(y / Y) * lambda_twisted(phi, y);
  };
  return detail::refine_trapezoid(f, x_max, options);
}

cplx resonance_rhs(const SmoothWindow& phi, double beta, double Y) {
  return mellin(phi, cplx(beta, 0.0)) * std::pow(Y, beta);
}

ContourIdentity contour_identity_check(const KernelTable& kernel, const CoefficientTable& lambda, double y,
                                       double Y) {
  if (lambda.kind() != CoefficientKind::Liouville) throw DomainError("contour identity needs the Liouville table");
  if (!(y > 0.0 && Y >= y)) throw DomainError("contour identity needs 0 < y <= Y");
  const auto& spec = kernel.spec();
  const auto& chi = spec.zero.character;
  const double gamma = spec.zero.gamma;

  ContourIdentity out;
  out.ratio = Y / y;
  out.target = std::pow(out.ratio, spec.zero.beta);

  const auto n_max = static_cast<std::int64_t>(std::floor(out.ratio));
  if (n_max > lambda.limit()) throw RangeError("contour identity needs lambda up to " + std::to_string(n_max));
  if (1.0 / out.ratio < kernel.u_grid().front() * (1.0 - 1e-12))
    throw DomainError("contour identity: kernel u_min is too large for Y / y");
  for (std::int64_t n = 1; n <= n_max; ++n)
    out.direct += detail::twist(lambda(n), chi, gamma, n) * kernel(static_cast<double>(n) / out.ratio);

  const double log_ratio = std::log(out.ratio);
  const auto& rung = kernel.rung_for(log_ratio);
  for (std::size_t k = 0; k < rung.taus.size(); ++k) {
    const cplx s(rung.sigma, rung.taus[k]);
    const cplx series = lambda_series_ratio(s + cplx(0.0, gamma), chi);
    out.contour += rung.weighted[k] * series * std::exp(s * log_ratio);
  }

  const double scale = std::max(std::abs(out.direct), std::abs(out.contour));
  out.route_deviation = scale > 0.0 ? std::abs(out.direct - out.contour) / scale : 0.0;
  out.target_deviation = std::abs(out.direct - out.target) / out.target;
  return out;
}

KernelWeight weight_of(const KernelTable& kernel) {
  return {[&kernel](double u) -> cplx { return u > 1.0 ? cplx(0.0) : kernel(u); }, kernel.u_grid().front()};
}

KernelWeight weight_of(const SmoothWindow& window) {
  if (window.support().lo < 0.0 || window.support().hi > 1.0)
    throw DomainError("prime-sum weight must be supported in [0, 1]");
  return {[window](double u) -> cplx { return window(u); }, window.support().lo};
}

}  // namespace l1lab
