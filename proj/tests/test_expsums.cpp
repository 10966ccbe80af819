#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "l1lab/dirichlet.hpp"
#include "l1lab/errors.hpp"
#include "l1lab/expsums.hpp"
#include "l1lab/mult_arith.hpp"
#include "l1lab/testfns.hpp"

using namespace l1lab;
using std::numbers::pi;

namespace {

cplx direct_sum(std::span<const cplx> c, double alpha) {
  cplx s = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) s += c[n] * std::polar(1.0, 2.0 * pi * static_cast<double>(n) * alpha);
  return s;
}

std::vector<cplx> as_complex(const CoefficientTable& t) {
  std::vector<cplx> c(static_cast<std::size_t>(t.limit()) + 1);
  for (std::int64_t n = 1; n <= t.limit(); ++n) c[static_cast<std::size_t>(n)] = t(n);
  return c;
}

}  // namespace

TEST_CASE("grid sum matches direct evaluation") {
  std::mt19937_64 rng(7);
  const auto lambda = sieve(CoefficientKind::Liouville, 5000);
  const auto c = as_complex(lambda);
  const auto g = grid_sum(c, 8192);
  REQUIRE(g.values.size() == 8192);
  std::uniform_int_distribution<std::size_t> pick(0, 8191);
  for (int i = 0; i < 16; ++i) {
    const auto j = pick(rng);
    const cplx d = direct_sum(c, static_cast<double>(j) / 8192.0);
    CHECK(std::abs(g.values[j] - d) < 1e-9);
  }
  const auto h = grid_sum(lambda, 5000, 8192);
  CHECK(std::abs(h.values[123] - g.values[123]) < 1e-12);
}

TEST_CASE("grid sum preconditions") {
  std::vector<cplx> c(100, 1.0);
  CHECK_THROWS(grid_sum(c, 96));
  CHECK_THROWS(grid_sum(c, 64));
  CHECK_NOTHROW(grid_sum(c, 128));
  CHECK(next_power_of_two(1000) == 1024);
  CHECK(next_power_of_two(1024) == 1024);
  const auto lambda = sieve(CoefficientKind::Liouville, 100);
  CHECK_THROWS_AS(norms_adaptive(lambda, 101), RangeError);
}

TEST_CASE("Parseval and sup norm") {
  const auto lambda = sieve(CoefficientKind::Liouville, 10000);
  for (std::int64_t X : {1000, 10000}) {
    const auto r = norms_adaptive(lambda, X);
    CHECK(std::abs(r.l2_sq - static_cast<double>(X)) < 1e-6 * static_cast<double>(X));
    CHECK(r.sup <= static_cast<double>(X));
    CHECK(r.l1.value <= std::sqrt(r.l2_sq));
    CHECK(r.l1.refinement_delta < 0.005);
  }
  std::vector<cplx> ones(1001, 1.0);
  ones[0] = 0.0;
  const auto r = norms_adaptive(ones);
  CHECK(r.sup == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("Dirichlet kernel L1 growth") {
  // int_0^1 |sum_{n<=X} e(n a)| da = (4 / pi^2) log X + O(1).
  auto l1_of = [](std::size_t X) {
    std::vector<cplx> c(X + 1, 1.0);
    c[0] = 0.0;
    L1Options opts;
    opts.tolerance = 1e-4;
    return norms_adaptive(c, opts).l1.value;
  };
  const double a = l1_of(1 << 12), b = l1_of(1 << 16);
  CHECK((b - a) / (4.0 * std::log(2.0)) == doctest::Approx(4.0 / (pi * pi)).epsilon(2e-3));
}

TEST_CASE("L1 refinement converges") {
  const auto lambda = sieve(CoefficientKind::Liouville, 4096);
  L1Options coarse, fine;
  coarse.tolerance = 0.005;
  fine.tolerance = 1e-5;
  const auto a = norms_adaptive(lambda, 4096, coarse);
  const auto b = norms_adaptive(lambda, 4096, fine);
  CHECK(b.l1.grid >= a.l1.grid);
  CHECK(std::abs(a.l1.value - b.l1.value) < 0.01 * b.l1.value);
  L1Options capped;
  capped.tolerance = 1e-12;
  capped.max_grid = 1 << 16;
  CHECK_THROWS(norms_adaptive(lambda, 4096, capped));
}

TEST_CASE("ap transform") {
  const auto lambda = sieve(CoefficientKind::Liouville, 100);
  const auto a3 = ap_transform(lambda, 3);
  CHECK(a3(9) == doctest::Approx(2.0 * lambda(9)));
  CHECK(a3(10) == doctest::Approx(-lambda(10)));
  CHECK(a3.limit() == 100);
  CHECK_THROWS_AS(ap_transform(lambda, 4), DomainError);
}

TEST_CASE("twisted sums") {
  const auto lambda = sieve(CoefficientKind::Liouville, 20000);
  const auto chi = character(5, 1);
  const auto phi = bump_window();
  const TwistedCoefficients tw(lambda, 14.1, chi);
  for (double y : {50.0, 777.7, 10000.0}) {
    cplx direct = 0.0;
    for (std::int64_t n = 1; n <= static_cast<std::int64_t>(y); ++n)
      direct += lambda(n) * chi(n) * std::polar(1.0, -14.1 * std::log(static_cast<double>(n))) *
                phi(static_cast<double>(n) / y);
    CHECK(std::abs(tw(phi, y) - direct) < 1e-10);
    CHECK(std::abs(twisted_sum(lambda, 14.1, chi, phi, y) - direct) < 1e-10);
    const auto w = tw.windowed(phi, y);
    cplx total = 0.0;
    for (const auto& v : w) total += v;
    CHECK(std::abs(total - direct) < 1e-10);
  }
  CHECK_THROWS_AS(twisted_sum(lambda, 0.0, chi, phi, 30000.0), RangeError);
}

TEST_CASE("complete multiplicativity identity") {
  const auto lambda = sieve(CoefficientKind::Liouville, 20000);
  const auto phi = bump_window();
  for (const auto& chi : {trivial_character(), character(4, 1), character(7, 2)})
    for (std::int64_t p : {2, 3, 11})
      for (double y : {300.0, 5000.0}) CHECK(complete_mult_identity_check(lambda, 14.134725, chi, phi, y, p) < 1e-10);
  CHECK_THROWS_AS(complete_mult_identity_check(sieve(CoefficientKind::Moebius, 100), 1.0, trivial_character(), phi,
                                               50.0, 2),
                  DomainError);
}
