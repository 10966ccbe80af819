#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "l1lab/dirichlet.hpp"
#include "l1lab/errors.hpp"
#include "l1lab/lfunctions.hpp"
#include "l1lab/mult_arith.hpp"

using namespace l1lab;
using std::numbers::pi;

namespace {
constexpr double kZeta1 = 14.1347251417346937904572519836;
constexpr double kZeta2 = 21.0220396387715549926284795939;
constexpr double kChi3Zero = 8.03973715568146668171362321417;
constexpr double kCatalan = 0.915965594177219015054603514932;
constexpr double kEulerGamma = 0.5772156649015328606;

DirichletCharacter real_nonprincipal(int q) {
  for (const auto& chi : characters_mod(q))
    if (chi.is_real() && !chi.is_principal()) return chi;
  throw std::logic_error("no real character");
}
}  // namespace

TEST_CASE("Hurwitz zeta special values") {
  CHECK(std::abs(hurwitz_zeta(2.0, 1.0) - pi * pi / 6.0) < 1e-13);
  CHECK(std::abs(hurwitz_zeta(2.0, 0.5) - pi * pi / 2.0) < 1e-12);
  CHECK(std::abs(hurwitz_zeta(3.0, 1.0 / 3.0) - 27.5610611997008037762278779774) < 1e-11);
  CHECK(std::abs(hurwitz_zeta(0.5, 1.0) - (-1.4603545088095868129)) < 1e-12);
  CHECK(std::abs(hurwitz_zeta(0.0, 0.25) - 0.25) < 1e-12);  // zeta(0, a) = 1/2 - a
}

TEST_CASE("Hurwitz zeta against a direct sum") {
  const cplx s(3.5, 7.0);
  for (double a : {0.1, 0.5, 1.0}) {
    cplx direct = 0.0;
    for (int n = 200000; n >= 0; --n) direct += std::pow(n + a, -s);
    CHECK(std::abs(hurwitz_zeta(s, a) - direct) < 1e-12 * std::abs(direct) + 1e-14);
  }
}

TEST_CASE("Hurwitz zeta domain") {
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(-1.5, 0.5), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(cplx(2.0, 300.0), 0.5), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 1.5), DomainError);
}

TEST_CASE("digamma and log gamma") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(digamma(0.25) == doctest::Approx(-kEulerGamma - pi / 2.0 - 3.0 * std::log(2.0)).epsilon(1e-13));
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(pi)) < 1e-13);
  CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-13);
  for (double y : {0.5, 3.0, 20.0, 60.0}) {
    const double expected = 0.5 * std::log(pi / std::cosh(pi * y));
    CHECK(std::abs(log_gamma(cplx(0.5, y)).real() - expected) < 1e-11);
  }
  // Recurrence lnGamma(z + 1) = lnGamma(z) + ln z, modulo 2 pi i.
  const cplx z(0.7, 4.3);
  const cplx diff = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
  CHECK(std::abs(diff.real()) < 1e-12);
  CHECK(std::abs(std::remainder(diff.imag(), 2.0 * pi)) < 1e-12);
}

TEST_CASE("Dirichlet L values") {
  const auto chi4 = real_nonprincipal(4);
  const auto chi3 = real_nonprincipal(3);
  CHECK(std::abs(dirichlet_l(2.0, chi4) - kCatalan) < 1e-13);
  CHECK(std::abs(dirichlet_l(1.0, chi4) - pi / 4.0) < 1e-13);
  CHECK(std::abs(dirichlet_l(1.0, chi3) - pi / (3.0 * std::sqrt(3.0))) < 1e-13);
  CHECK(std::abs(dirichlet_l(2.0, trivial_character()) - pi * pi / 6.0) < 1e-13);
  const cplx z = dirichlet_l(cplx(2.0, kZeta1), trivial_character());
  CHECK(std::abs(z - cplx(0.689186814689163603011728753183, 0.0475240447492602429526890111253)) < 1e-13);
  // Principal character mod 4 removes the Euler factor at 2.
  const cplx s(1.5, 2.0);
  CHECK(std::abs(dirichlet_l(s, character(4, 0)) - (1.0 - std::pow(2.0, -s)) * dirichlet_l(s, trivial_character())) <
        1e-12);
}

TEST_CASE("complex character L value against direct sum") {
  const auto chi = character(5, 1);
  const cplx s(3.0, 1.0);
  cplx direct = 0.0;
  for (int n = 100000; n >= 1; --n) direct += chi(n) * std::pow(static_cast<double>(n), -s);
  CHECK(std::abs(dirichlet_l(s, chi) - direct) < 1e-12);
}

TEST_CASE("lambda series ratio against a brute-force sum") {
  const auto lambda = sieve(CoefficientKind::Liouville, 1000000);
  for (const auto& chi : {trivial_character(), real_nonprincipal(4), character(5, 1)}) {
    const cplx s(2.0, 3.0);
    cplx direct = 0.0;
    for (std::int64_t n = lambda.limit(); n >= 1; --n)
      direct += lambda(n) * chi(n) * std::pow(static_cast<double>(n), -s);
    CHECK(std::abs(lambda_series_ratio(s, chi) - direct) < 1e-5);
  }
  // Real s, chi mod 4: L(4, principal mod 4) / L(2, chi_4).
  CHECK(std::abs(lambda_series_ratio(2.0, real_nonprincipal(4)) - 1.10776871757464109892033162467) < 1e-12);
}

TEST_CASE("zeros of zeta") {
  const auto z = find_zero(trivial_character(), 14.0, 15.0);
  CHECK(std::abs(z.gamma - kZeta1) < 1e-8);
  CHECK(z.residual < 1e-8);
  CHECK(z.beta == 0.5);
  const auto all = find_zeros(trivial_character(), 10.0, 22.0);
  REQUIRE(all.size() == 2);
  CHECK(std::abs(all[1].gamma - kZeta2) < 1e-8);
  CHECK(find_zeros(trivial_character(), 1.0, 100.0).size() == 29);
  CHECK_THROWS_AS(find_zero(trivial_character(), 15.0, 20.0), NotFoundError);
}

TEST_CASE("zero of the character mod 3") {
  const auto chi3 = real_nonprincipal(3);
  const auto z = find_zero(chi3, 1.0, 10.0);
  CHECK(std::abs(z.gamma - kChi3Zero) < 1e-8);
  CHECK(z.residual < 1e-8);
  CHECK(std::abs(dirichlet_l(z.rho(), chi3)) < 1e-8);
}

TEST_CASE("rotation is real with the modulus of L") {
  const auto chi = real_nonprincipal(5);
  CHECK(std::abs(root_number(chi) - 1.0) < 1e-12);
  for (double t : {3.0, 10.5, 40.0}) {
    CHECK(std::abs(std::abs(rotated_l(t, chi)) - std::abs(dirichlet_l(cplx(0.5, t), chi))) < 1e-10);
    CHECK(std::abs(std::abs(rotated_l(t, trivial_character())) -
                   std::abs(dirichlet_l(cplx(0.5, t), trivial_character()))) < 1e-10);
  }
}

TEST_CASE("zero search preconditions") {
  CHECK_THROWS_AS(find_zero(character(5, 1), 1.0, 10.0), DomainError);
  CHECK_THROWS_AS(find_zero(trivial_character(), 0.0, 10.0), DomainError);
  CHECK_THROWS_AS(find_zero(trivial_character(), 10.0, 120.0), DomainError);
}
