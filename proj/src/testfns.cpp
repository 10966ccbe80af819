#include "l1lab/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "l1lab/errors.hpp"
#include "l1lab/quadrature.hpp"

namespace l1lab {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(v)/v and its first two derivatives.
struct Sinc {
  double value, first, second;
};

Sinc sinc(double v) {
  if (std::abs(v) < 0.05) {
    const double v2 = v * v;
    return {1.0 - v2 / 6.0 + v2 * v2 / 120.0 - v2 * v2 * v2 / 5040.0,
            v * (-1.0 / 3.0 + v2 / 30.0 - v2 * v2 / 840.0 + v2 * v2 * v2 / 45360.0),
            -1.0 / 3.0 + v2 / 10.0 - v2 * v2 / 168.0 + v2 * v2 * v2 / 6480.0};
  }
  const double s = std::sin(v), c = std::cos(v);
  return {s / v, (v * c - s) / (v * v), (-v * v * s - 2.0 * v * c + 2.0 * s) / (v * v * v)};
}

}  // namespace

double bump(double x, int order) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double h = x * (1.0 - x);
  const double value = std::exp(-1.0 / h);
  if (order == 0 || value == 0.0) return value;
  const double dh = 1.0 - 2.0 * x;
  const double g1 = dh / (h * h);
  if (order == 1) return g1 * value;
  const double g2 = (-2.0 * h - 2.0 * dh * dh) / (h * h * h);
  return (g2 + g1 * g1) * value;
}

double triangle_f(double x, int order) {
  if (std::abs(x) >= 0.5) return 0.0;
  switch (order) {
    case 0: return 1.0 - 2.0 * std::abs(x);
    case 1: return x > 0.0 ? -2.0 : (x < 0.0 ? 2.0 : 0.0);
    default: return 0.0;
  }
}

double fhat(double u, int order) {
  const double c = 0.5 * kPi;
  const auto s = sinc(c * u);
  switch (order) {
    case 0: return 0.5 * s.value * s.value;
    case 1: return c * s.value * s.first;
    default: return c * c * (s.first * s.first + s.value * s.second);
  }
}

double varrho(double x, int order) {
  if (std::abs(x) >= 0.5) return 0.0;
  const double f0 = triangle_f(x, 0), f1 = triangle_f(x, 1);
  switch (order) {
    case 0: return f0 * fhat(x, 0);
    case 1: return f1 * fhat(x, 0) + f0 * fhat(x, 1);
    default: return 2.0 * f1 * fhat(x, 1) + f0 * fhat(x, 2);
  }
}

double varrho_hat(double u) {
  auto g = [u](double x) { return fhat(u - x) * triangle_f(x); };
  return integrate(g, -0.5, 0.0, 1e-14) + integrate(g, 0.0, 0.5, 1e-14);
}

double varrho_hat_derivative(double u, int order) {
  // varrho is even, so only the cosine (even order) or sine (odd order) part survives.
  switch (order) {
    case 0:
      return 2.0 * integrate([u](double x) { return varrho(x) * std::cos(2.0 * kPi * x * u); }, 0.0, 0.5, 1e-14);
    case 1:
      return -2.0 * integrate(
                        [u](double x) { return 2.0 * kPi * x * varrho(x) * std::sin(2.0 * kPi * x * u); },
                        0.0, 0.5, 1e-14);
    case 2:
      return -2.0 * integrate(
                        [u](double x) {
                          const double w = 2.0 * kPi * x;
                          return w * w * varrho(x) * std::cos(2.0 * kPi * x * u);
                        },
                        0.0, 0.5, 1e-14);
    default:
      throw DomainError("varrho_hat_derivative: order must be 0, 1 or 2");
  }
}

SmoothWindow::SmoothWindow(WindowKind kind, std::string name, Interval support, std::vector<double> breakpoints,
                           int sobolev_order, bool flat_ends, Evaluator eval)
    : kind_(kind),
      name_(std::move(name)),
      support_(support),
      breakpoints_(std::move(breakpoints)),
      sobolev_order_(sobolev_order),
      flat_ends_(flat_ends),
      eval_(std::make_shared<const Evaluator>(std::move(eval))) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

double SmoothWindow::derivative(double x, int order) const {
  if (order < 0 || order > 2) throw DomainError("window derivatives are available for orders 0..2");
  if (x <= support_.lo || x >= support_.hi) return 0.0;
  return (*eval_)(x, order);
}

std::vector<Interval> SmoothWindow::pieces(double lo, double hi) const {
  lo = std::max(lo, support_.lo);
  hi = std::min(hi, support_.hi);
  std::vector<Interval> out;
  if (!(lo < hi)) return out;
  double start = lo;
  for (double b : breakpoints_) {
    if (b <= start || b >= hi) continue;
    out.push_back({start, b});
    start = b;
  }
  out.push_back({start, hi});
  return out;
}

SmoothWindow bump_window() {
  return SmoothWindow(WindowKind::Bump, "bump", {0.0, 1.0}, {}, 2, true,
                      [](double x, int order) { return bump(x, order); });
}

SmoothWindow triangle_window() {
  return SmoothWindow(WindowKind::Triangle, "triangle", {-0.5, 0.5}, {0.0}, 1, false,
                      [](double x, int order) { return triangle_f(x, order); });
}

SmoothWindow varrho_window() {
  return SmoothWindow(WindowKind::Varrho, "varrho", {-0.5, 0.5}, {0.0}, 1, false,
                      [](double x, int order) { return varrho(x, order); });
}

SmoothWindow scaled(const SmoothWindow& w, double shift, double dilation) {
  if (!(dilation > 0.0)) throw DomainError("scaled window needs a positive dilation");
  std::vector<double> breaks;
  for (double b : w.breakpoints()) breaks.push_back(shift + dilation * b);
  std::ostringstream name;
  name.precision(17);
  name << "scaled(" << w.name() << ",shift=" << shift << ",dilation=" << dilation << ")";
  const Interval support{shift + dilation * w.support().lo, shift + dilation * w.support().hi};
  return SmoothWindow(WindowKind::Scaled, name.str(), support, std::move(breaks), w.sobolev_order(), w.flat_ends(),
                      [w, shift, dilation](double x, int order) {
                        return w.derivative((x - shift) / dilation, order) / std::pow(dilation, order);
                      });
}

VarrhoHatTable::VarrhoHatTable() : step_(1e-3) {
  const std::size_t n = 1001;
  values_.resize(n);
  first_.resize(n);
  second_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * step_;
    values_[i] = varrho_hat(x);
    first_[i] = varrho_hat_derivative(x, 1);
    second_[i] = varrho_hat_derivative(x, 2);
  }
  minimum_ = *std::min_element(values_.begin(), values_.end());
}

double VarrhoHatTable::operator()(double x, int order) const {
  if (x < 0.0 || x > 1.0) throw DomainError("varrho_hat table covers [0, 1] only");
  const std::size_t last = values_.size() - 1;
  auto i = static_cast<std::size_t>(x / step_);
  if (i >= last) i = last - 1;
  const double h = step_;
  const double t = (x - static_cast<double>(i) * h) / h;

  // Quintic Hermite through value, first and second derivative at both nodes.
  const double c0 = values_[i], c1 = h * first_[i], c2 = 0.5 * h * h * second_[i];
  const double a = values_[i + 1] - (c0 + c1 + c2);
  const double b = h * first_[i + 1] - (c1 + 2.0 * c2);
  const double c = h * h * second_[i + 1] - 2.0 * c2;
  const double c3 = 10.0 * a - 4.0 * b + 0.5 * c;
  const double c4 = -15.0 * a + 7.0 * b - c;
  const double c5 = 6.0 * a - 3.0 * b + 0.5 * c;
  switch (order) {
    case 0: return c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
    case 1: return (c1 + t * (2.0 * c2 + t * (3.0 * c3 + t * (4.0 * c4 + t * 5.0 * c5)))) / h;
    default: return (2.0 * c2 + t * (6.0 * c3 + t * (12.0 * c4 + t * 20.0 * c5))) / (h * h);
  }
}

const VarrhoHatTable& varrho_hat_table() {
  static const VarrhoHatTable table;
  return table;
}

SmoothWindow phi_one(const SmoothWindow& phi) {
  const auto support = phi.support();
  if (support.lo < 0.0 || support.hi > 1.0) throw DomainError("phi_one needs a window supported in [0, 1]");
  const auto& table = varrho_hat_table();
  const double m = table.minimum();
  if (!(m > 0.0)) throw InconsistencyError("varrho_hat is not positive on [0, 1]; minimum " + std::to_string(m));

  return SmoothWindow(WindowKind::PhiOne, "phi_one(" + phi.name() + ")", support, phi.breakpoints(),
                      std::min(phi.sobolev_order(), 2), phi.flat_ends(), [phi, m, &table](double x, int order) {
                        const double r0 = table(x, 0);
                        const double g0 = 1.0 / r0;
                        const double p0 = phi.derivative(x, 0);
                        if (order == 0) return p0 * g0 / m;
                        const double r1 = table(x, 1);
                        const double g1 = -r1 / (r0 * r0);
                        const double p1 = phi.derivative(x, 1);
                        if (order == 1) return (p1 * g0 + p0 * g1) / m;
                        const double r2 = table(x, 2);
                        const double g2 = (2.0 * r1 * r1 - r0 * r2) / (r0 * r0 * r0);
                        return (phi.derivative(x, 2) * g0 + 2.0 * p1 * g1 + p0 * g2) / m;
                      });
}

cplx mellin(const SmoothWindow& w, cplx s) {
  const auto support = w.support();
  if (support.hi <= 0.0) return 0.0;
  const bool touches_zero = support.lo <= 0.0;
  const bool flat_at_zero = w.flat_ends() && support.lo == 0.0;
  if (touches_zero && !flat_at_zero && !(s.real() > 0.0))
    throw DomainError("mellin transform diverges: Re s must be positive for a window that does not vanish at 0");

  cplx total = 0.0;
  for (const auto piece : w.pieces(0.0, support.hi)) {
    if (piece.lo == 0.0 && !flat_at_zero && s.real() < 1.0) {
      // x = t^k removes the x^{s-1} endpoint singularity.
      const double k = std::ceil(2.0 / s.real());
      const double upper = std::pow(piece.hi, 1.0 / k);
      total += integrate(
          [&](double t) {
            if (t <= 0.0) return cplx(0.0);
            return k * w(std::pow(t, k)) * std::exp((k * s - 1.0) * std::log(t));
          },
          0.0, upper);
    } else {
      total += integrate(
          [&](double x) {
            if (x <= 0.0) return cplx(0.0);
            return w(x) * std::exp((s - 1.0) * std::log(x));
          },
          piece.lo, piece.hi);
    }
  }
  return total;
}

cplx fourier(const SmoothWindow& w, double u) {
  cplx total = 0.0;
  const auto support = w.support();
  for (const auto piece : w.pieces(support.lo, support.hi))
    total += integrate([&](double x) { return w(x) * std::polar(1.0, -2.0 * kPi * x * u); }, piece.lo, piece.hi);
  return total;
}

double sobolev_norm(const SmoothWindow& w, int p, int r) {
  if (p != 1 && p != 2) throw DomainError("sobolev_norm supports p in {1, 2}");
  if (r < 0 || r > 2) throw DomainError("sobolev_norm supports r in {0, 1, 2}");
  if (r > w.sobolev_order())
    throw DomainError("window '" + w.name() + "' has no derivative of order " + std::to_string(r) +
                      " in the Sobolev sense");
  const auto support = w.support();
  double total = 0.0;
  for (int i = 0; i <= r; ++i) {
    double integral = 0.0;
    for (const auto piece : w.pieces(support.lo, support.hi)) {
      integral += integrate(
          [&](double x) {
            const double v = std::abs(w.derivative(x, i));
            return p == 1 ? v : v * v;
          },
          piece.lo, piece.hi, 1e-12);
    }
    total += p == 1 ? integral : std::sqrt(integral);
  }
  return total;
}

}  // namespace l1lab
