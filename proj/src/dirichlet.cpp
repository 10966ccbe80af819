#include "l1lab/dirichlet.hpp"

#include <numbers>
#include <numeric>
#include <string>

#include "l1lab/errors.hpp"

namespace l1lab {

namespace detail {

struct UnitGroup {
  int q = 1;
  std::vector<int> orders;      // order of each cyclic factor
  std::vector<int> generators;  // generator of each factor, lifted to mod q
  std::vector<int> strides;     // mixed-radix strides for the index
  int exponent = 1;             // lcm of the orders
  // logs[n * factors + i] = discrete log of unit n in factor i; -1 for non-units
  std::vector<int> logs;

  std::size_t factors() const { return orders.size(); }
};

}  // namespace detail

namespace {

constexpr int kMaxModulus = 10000;

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int primitive_root_prime_power(int p, int pe) {
  const int phi = pe / p * (p - 1);
  const auto prime_factors = factorize(phi);
  for (int g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [r, e] : prime_factors) {
      (void)e;
      if (powmod(g, phi / r, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

// x = a mod m, x = 1 mod (q / m), with gcd(m, q/m) = 1.
int crt_lift(int a, int m, int q) {
  const int rest = q / m;
  for (int x = a; x < q; x += m)
    if (x % rest == 1 % rest) return x;
  return a;
}

std::shared_ptr<const detail::UnitGroup> make_group(int q) {
  auto g = std::make_shared<detail::UnitGroup>();
  g->q = q;
  for (auto [p, e] : factorize(q)) {
    int pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 2) {
        g->orders.push_back(2);
        g->generators.push_back(crt_lift(3, pe, q));
      } else if (e >= 3) {
        g->orders.push_back(2);
        g->generators.push_back(crt_lift(pe - 1, pe, q));
        g->orders.push_back(pe / 4);
        g->generators.push_back(crt_lift(5, pe, q));
      }
    } else {
      g->orders.push_back(pe / p * (p - 1));
      g->generators.push_back(crt_lift(primitive_root_prime_power(p, pe), pe, q));
    }
  }
  const std::size_t r = g->factors();
  int stride = 1;
  for (std::size_t i = 0; i < r; ++i) {
    g->strides.push_back(stride);
    stride *= g->orders[i];
    g->exponent = std::lcm(g->exponent, g->orders[i]);
  }

  g->logs.assign(static_cast<std::size_t>(q) * std::max<std::size_t>(r, 1), -1);
  if (r == 0) {
    // q in {1, 2}: the only unit class is 1 (and 0 when q = 1).
    g->logs[static_cast<std::size_t>(1 % q)] = 0;
    return g;
  }
  std::vector<int> e(r, 0);
  const int total = stride;
  for (int k = 0; k < total; ++k) {
    std::int64_t n = 1;
    for (std::size_t i = 0; i < r; ++i) n = n * powmod(g->generators[i], e[i], q) % q;
    for (std::size_t i = 0; i < r; ++i) g->logs[static_cast<std::size_t>(n) * r + i] = e[i];
    for (std::size_t i = 0; i < r; ++i) {
      if (++e[i] < g->orders[i]) break;
      e[i] = 0;
    }
  }
  return g;
}

// e(num / den), exact for multiples of a quarter turn.
std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  num %= den;
  if (num < 0) num += den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const detail::UnitGroup> group,
                                       std::vector<int> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto& g = *group_;
  const std::size_t r = g.factors();
  index_ = 0;
  for (std::size_t i = 0; i < r; ++i) index_ += exponents_[i] * g.strides[i];

  values_.assign(static_cast<std::size_t>(g.q), {0.0, 0.0});
  if (r == 0) {
    values_[static_cast<std::size_t>(1 % g.q)] = 1.0;
  } else {
    for (int n = 0; n < g.q; ++n) {
      const std::size_t base = static_cast<std::size_t>(n) * r;
      if (g.logs[base] < 0) continue;
      std::int64_t phase = 0;  // in units of 1 / exponent
      for (std::size_t i = 0; i < r; ++i)
        phase += static_cast<std::int64_t>(exponents_[i]) * g.logs[base + i] * (g.exponent / g.orders[i]);
      values_[static_cast<std::size_t>(n)] = unit_root(phase, g.exponent);
    }
  }
  real_ = true;
  for (const auto& v : values_) real_ = real_ && v.imag() == 0.0;
  odd_ = g.q > 2 && values_[static_cast<std::size_t>(g.q - 1)].real() < 0.0;
  conductor_ = l1lab::conductor(*this);
}

int DirichletCharacter::modulus() const noexcept { return group_->q; }

bool DirichletCharacter::is_principal() const noexcept {
  for (int e : exponents_)
    if (e != 0) return false;
  return true;
}

DirichletCharacter DirichletCharacter::pow(int k) const {
  std::vector<int> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const int ord = group_->orders[i];
    e[i] = static_cast<int>(((static_cast<std::int64_t>(exponents_[i]) * k) % ord + ord) % ord);
  }
  return DirichletCharacter(group_, std::move(e));
}

std::vector<DirichletCharacter> characters_mod(int q) {
  if (q < 1 || q > kMaxModulus)
    throw DomainError("modulus " + std::to_string(q) + " outside [1, " + std::to_string(kMaxModulus) + "]");
  auto group = make_group(q);
  const std::size_t r = group->factors();
  int total = 1;
  for (int o : group->orders) total *= o;

  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> e(r, 0);
  for (int k = 0; k < total; ++k) {
    out.push_back(DirichletCharacter(group, e));
    for (std::size_t i = 0; i < r; ++i) {
      if (++e[i] < group->orders[i]) break;
      e[i] = 0;
    }
  }
  return out;
}

DirichletCharacter trivial_character() { return characters_mod(1).front(); }

DirichletCharacter character(int q, int index) {
  auto all = characters_mod(q);
  if (index < 0 || index >= static_cast<int>(all.size()))
    throw DomainError("character index " + std::to_string(index) + " out of range for modulus " +
                      std::to_string(q) + " (" + std::to_string(all.size()) + " characters)");
  return all[static_cast<std::size_t>(index)];
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  const int q = chi.modulus();
  std::complex<double> sum = 0.0;
  for (int x = 0; x < q; ++x) {
    const auto v = chi.values()[static_cast<std::size_t>(x)];
    if (v == 0.0) continue;
    sum += v * unit_root(x, q);
  }
  return sum;
}

int conductor(const DirichletCharacter& chi) {
  const int q = chi.modulus();
  const auto values = chi.values();
  for (int d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool induced = true;
    for (int n = 1 + d; n < q && induced; n += d) {
      const auto v = values[static_cast<std::size_t>(n)];
      if (v == 0.0) continue;
      induced = std::abs(v - 1.0) < 1e-12;
    }
    if (induced) return d;
  }
  return q;
}

int euler_phi(int n) {
  int result = n;
  for (auto [p, e] : factorize(n)) {
    (void)e;
    result = result / p * (p - 1);
  }
  return result;
}

}  // namespace l1lab
