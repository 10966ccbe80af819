#include "l1lab/lfunctions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "l1lab/errors.hpp"

namespace l1lab {

namespace {

// B_2, B_4, ..., B_24
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,          1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,      7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,    854513.0 / 138.0,  -236364091.0 / 2730.0};

constexpr double kMaxImag = 200.0;

cplx cpow_real_base(double base, cplx s) { return std::exp(-s * std::log(base)); }  // base^{-s}

}  // namespace

cplx hurwitz_zeta(cplx s, double a) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
  if (s.real() <= -1.0 || std::abs(s.imag()) > kMaxImag)
    throw DomainError("hurwitz_zeta: s = (" + std::to_string(s.real()) + ", " + std::to_string(s.imag()) +
                      ") outside the validated region Re s > -1, |Im s| <= 200");
  if (s == cplx(1.0, 0.0)) throw DomainError("hurwitz_zeta: pole at s = 1");

  const int n_terms = std::max(30, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
  cplx sum = 0.0;
  for (int n = n_terms - 1; n >= 0; --n) sum += cpow_real_base(n + a, s);

  const double x = n_terms + a;
  const cplx x_pow = cpow_real_base(x, s);  // x^{-s}
  sum += x_pow * x / (s - 1.0) + 0.5 * x_pow;

  // sum_k B_2k / (2k)! * s (s+1) ... (s+2k-2) * x^{-s-2k+1}
  cplx rising = s;  // s (s+1) ... (s+2k-2)
  cplx term_pow = x_pow / x;
  double factorial = 2.0;  // (2k)!
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    sum += kBernoulli[k - 1] / factorial * rising * term_pow;
    const double m = 2.0 * static_cast<double>(k);
    rising *= (s + m - 1.0) * (s + m);
    term_pow /= x * x;
    factorial *= (m + 1.0) * (m + 2.0);
  }
  return sum;
}

double digamma(double a) {
  if (!(a > 0.0)) throw DomainError("digamma: argument must be positive");
  constexpr int kShift = 30;
  double sum = 0.0;
  for (int n = 0; n < kShift; ++n) sum -= 1.0 / (n + a);
  const double x = kShift + a;
  sum += std::log(x) - 0.5 / x;
  double xp = x * x;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    sum -= kBernoulli[k - 1] / (2.0 * static_cast<double>(k) * xp);
    xp *= x * x;
  }
  return sum;
}

cplx log_gamma(cplx z) {
  if (z.real() <= 0.0) throw DomainError("log_gamma: requires Re z > 0");
  // Shift up with the recurrence, then Stirling.
  cplx shift = 0.0;
  while (std::abs(z) < 20.0) {
    shift += std::log(z);
    z += 1.0;
  }
  constexpr double half_log_2pi = 0.91893853320467274178;
  cplx result = (z - 0.5) * std::log(z) - z + half_log_2pi;
  const cplx z2 = z * z;
  cplx zp = z;
  for (std::size_t k = 1; k <= 8; ++k) {
    const double m = 2.0 * static_cast<double>(k);
    result += kBernoulli[k - 1] / (m * (m - 1.0) * zp);
    zp *= z2;
  }
  return result - shift;
}

cplx dirichlet_l(cplx s, const DirichletCharacter& chi) {
  const int q = chi.modulus();
  if (q == 1) return hurwitz_zeta(s, 1.0);
  if (s == cplx(1.0, 0.0)) {
    if (chi.is_principal()) throw DomainError("dirichlet_l: pole at s = 1 for the principal character");
    // L(1, chi) = -(1/q) sum_a chi(a) psi(a/q) for non-principal chi.
    cplx csum = 0.0;
    for (int a = 1; a <= q; ++a) {
      const auto v = chi(a);
      if (v == 0.0) continue;
      csum += v * digamma(static_cast<double>(a) / q);
    }
    return -csum / static_cast<double>(q);
  }
  cplx sum = 0.0;
  for (int a = 1; a <= q; ++a) {
    const auto v = chi(a);
    if (v == 0.0) continue;
    sum += v * hurwitz_zeta(s, static_cast<double>(a) / q);
  }
  return cpow_real_base(q, s) * sum;
}

cplx lambda_series_ratio(cplx s, const DirichletCharacter& chi) {
  const cplx denominator = dirichlet_l(s, chi);
  if (std::abs(denominator) < 1e-12) throw DomainError("lambda_series_ratio: L(s, chi) is numerically zero");
  return dirichlet_l(2.0 * s, chi.pow(2)) / denominator;
}

cplx root_number(const DirichletCharacter& chi) {
  const int q = chi.modulus();
  if (q == 1 || chi.is_principal()) return 1.0;
  if (!chi.is_primitive()) throw DomainError("root_number: character is not primitive");
  const cplx i_kappa = chi.is_odd() ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
  return gauss_sum(chi) / (i_kappa * std::sqrt(static_cast<double>(q)));
}

namespace {

void require_zero_search_character(const DirichletCharacter& chi) {
  if (chi.modulus() == 1 || chi.is_principal()) return;
  if (!chi.is_real() || !chi.is_primitive())
    throw DomainError("zero search needs the trivial character or a real primitive character");
}

}  // namespace

double rotated_l(double t, const DirichletCharacter& chi) {
  require_zero_search_character(chi);
  const cplx s(0.5, t);
  if (chi.modulus() == 1 || chi.is_principal()) {
    const double theta = log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(std::numbers::pi);
    return (std::polar(1.0, theta) * hurwitz_zeta(s, 1.0)).real();
  }
  const double q = chi.modulus();
  const double kappa = chi.is_odd() ? 1.0 : 0.0;
  const double theta =
      log_gamma(cplx((0.5 + kappa) / 2.0, 0.5 * t)).imag() + 0.5 * t * std::log(q / std::numbers::pi);
  const cplx rotation = std::polar(1.0, theta) / std::sqrt(root_number(chi));
  return (rotation * dirichlet_l(s, chi)).real();
}

namespace {

CriticalZero refine(const DirichletCharacter& chi, double lo, double hi, double f_lo,
                    const ZeroSearchOptions& options) {
  while (hi - lo > options.gamma_tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = rotated_l(mid, chi);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  CriticalZero zero;
  zero.beta = 0.5;
  zero.gamma = 0.5 * (lo + hi);
  zero.character = chi;
  zero.residual = std::abs(dirichlet_l(zero.rho(), chi));
  if (!(zero.residual < options.residual_bound)) {
    throw InconsistencyError("sign change near t = " + std::to_string(zero.gamma) + " has residual " +
                             std::to_string(zero.residual) + ", above the bound " +
                             std::to_string(options.residual_bound));
  }
  return zero;
}

template <class Visitor>
void scan_sign_changes(const DirichletCharacter& chi, double t_lo, double t_hi,
                       const ZeroSearchOptions& options, Visitor&& visit) {
  require_zero_search_character(chi);
  if (!(t_lo > 0.0 && t_lo < t_hi && t_hi <= 100.0))
    throw DomainError("zero search range must satisfy 0 < t_lo < t_hi <= 100");
  const int steps = std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / options.scan_step)));
  const double h = (t_hi - t_lo) / steps;
  double a = t_lo;
  double fa = rotated_l(a, chi);
  for (int k = 1; k <= steps; ++k) {
    const double b = (k == steps) ? t_hi : t_lo + k * h;
    const double fb = rotated_l(b, chi);
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
      if (!visit(refine(chi, a, b, fa, options))) return;
    }
    a = b;
    fa = fb;
  }
}

}  // namespace

CriticalZero find_zero(const DirichletCharacter& chi, double t_lo, double t_hi,
                       const ZeroSearchOptions& options) {
  std::vector<CriticalZero> found;
  scan_sign_changes(chi, t_lo, t_hi, options, [&](CriticalZero z) {
    found.push_back(std::move(z));
    return false;
  });
  if (found.empty())
    throw NotFoundError("no sign change of the rotated L-function in (" + std::to_string(t_lo) + ", " +
                        std::to_string(t_hi) + "); widen the range");
  return found.front();
}

std::vector<CriticalZero> find_zeros(const DirichletCharacter& chi, double t_lo, double t_hi,
                                     const ZeroSearchOptions& options) {
  std::vector<CriticalZero> found;
  scan_sign_changes(chi, t_lo, t_hi, options, [&](CriticalZero z) {
    found.push_back(std::move(z));
    return true;
  });
  return found;
}

}  // namespace l1lab
