#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "l1lab/dirichlet.hpp"
#include "l1lab/errors.hpp"

using namespace l1lab;
using cd = std::complex<double>;

TEST_CASE("counts and principal character") {
  for (int q : {1, 2, 3, 4, 8, 12, 15, 16, 27, 60, 97, 100, 210}) {
    const auto chars = characters_mod(q);
    REQUIRE(static_cast<int>(chars.size()) == euler_phi(q));
    CHECK(chars.front().is_principal());
    for (int n = 0; n < q; ++n) CHECK(std::abs(chars.front()(n) - cd(std::gcd(n, q) == 1 ? 1.0 : 0.0)) < 1e-15);
  }
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(100) == 40);
}

TEST_CASE("multiplicativity, periodicity, unit values") {
  for (int q : {5, 8, 9, 12, 20, 63}) {
    for (const auto& chi : characters_mod(q)) {
      for (int m = 0; m < 2 * q; ++m) {
        CHECK(std::abs(chi(m) - chi(m + q)) < 1e-15);
        const double mag = std::gcd(m, q) == 1 ? 1.0 : 0.0;
        CHECK(std::abs(std::abs(chi(m)) - mag) < 1e-13);
        for (int n = 0; n < q; ++n) CHECK(std::abs(chi(m * n) - chi(m) * chi(n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("orthogonality") {
  for (int q : {7, 8, 12, 45}) {
    const auto chars = characters_mod(q);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      for (std::size_t j = 0; j < chars.size(); ++j) {
        cd s = 0.0;
        for (int a = 0; a < q; ++a) s += chars[i](a) * std::conj(chars[j](a));
        const double expected = i == j ? euler_phi(q) : 0.0;
        CHECK(std::abs(s - expected) < 1e-10);
      }
    }
  }
}

TEST_CASE("conductors against brute-force induction") {
  for (int q : {4, 8, 9, 12, 15, 16, 24, 36}) {
    for (const auto& chi : characters_mod(q)) {
      int expected = q;
      for (int d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool induced = true;
        for (int a = 1; a < q && induced; ++a)
          for (int b = 1; b < q && induced; ++b)
            if (std::gcd(a, q) == 1 && std::gcd(b, q) == 1 && (a - b) % d == 0 &&
                std::abs(chi(a) - chi(b)) > 1e-9)
              induced = false;
        if (induced) {
          expected = d;
          break;
        }
      }
      CHECK(chi.conductor() == expected);
      CHECK(conductor(chi) == expected);
    }
  }
}

TEST_CASE("primitive character counts") {
  // Number of primitive characters mod q for q = 1..12.
  const int expected[] = {1, 0, 1, 1, 3, 0, 5, 2, 4, 0, 9, 1};
  for (int q = 1; q <= 12; ++q) {
    int count = 0;
    for (const auto& chi : characters_mod(q)) count += chi.is_primitive();
    CHECK(count == expected[q - 1]);
  }
}

TEST_CASE("Gauss sums") {
  for (int q : {3, 4, 5, 7, 8, 11, 12, 13, 16, 21}) {
    for (const auto& chi : characters_mod(q)) {
      if (!chi.is_primitive()) continue;
      CHECK(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))) < 1e-10);
      if (chi.is_real()) {
        const cd expected = chi.is_odd() ? cd(0.0, std::sqrt(q)) : cd(std::sqrt(q), 0.0);
        CHECK(std::abs(gauss_sum(chi) - expected) < 1e-10);
      }
    }
  }
  CHECK(std::abs(gauss_sum(character(5, 0)) - cd(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("Legendre symbol mod 7") {
  const auto chars = characters_mod(7);
  int found = 0;
  for (const auto& chi : chars) {
    if (!chi.is_real() || chi.is_principal()) continue;
    ++found;
    const int legendre[] = {0, 1, 1, -1, 1, -1, -1};
    for (int a = 0; a < 7; ++a) CHECK(std::abs(chi(a) - cd(legendre[a], 0.0)) < 1e-14);
    CHECK(chi.is_odd());
  }
  CHECK(found == 1);
}

TEST_CASE("powers and conjugates") {
  const auto chi = character(13, 1);
  const auto sq = chi.pow(2);
  const auto cc = chi.conj();
  for (int n = 0; n < 13; ++n) {
    CHECK(std::abs(sq(n) - chi(n) * chi(n)) < 1e-13);
    CHECK(std::abs(cc(n) - std::conj(chi(n))) < 1e-13);
  }
  CHECK(chi.pow(12).is_principal());
}

TEST_CASE("trivial character and range checks") {
  const auto one = trivial_character();
  CHECK(one.modulus() == 1);
  CHECK(one(0) == cd(1.0));
  CHECK(one(123) == cd(1.0));
  CHECK_THROWS_AS(characters_mod(0), DomainError);
  CHECK_THROWS_AS(characters_mod(10001), DomainError);
  CHECK_THROWS(character(5, 4));
  CHECK_NOTHROW(characters_mod(10000));
}
