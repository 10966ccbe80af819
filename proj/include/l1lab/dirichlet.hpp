#pragma once

// Dirichlet characters modulo q, built from generators of the cyclic factors
// of (Z/q)^*. A character is labelled by its exponent tuple; the index is the
// mixed-radix encoding of that tuple with the first factor varying fastest.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace l1lab {

namespace detail {
struct UnitGroup;
}

class DirichletCharacter {
 public:
  int modulus() const noexcept;
  int index() const noexcept { return index_; }
  int conductor() const noexcept { return conductor_; }
  bool is_primitive() const noexcept { return conductor_ == modulus(); }
  bool is_principal() const noexcept;
  bool is_real() const noexcept { return real_; }
  /// chi(-1) = -1.
  bool is_odd() const noexcept { return odd_; }
  std::span<const int> exponents() const noexcept { return exponents_; }

  /// Value table indexed by residues 0..q-1.
  std::span<const std::complex<double>> values() const noexcept { return values_; }

  std::complex<double> operator()(std::int64_t n) const noexcept {
    const auto q = static_cast<std::int64_t>(values_.size());
    auto r = n % q;
    if (r < 0) r += q;
    return values_[static_cast<std::size_t>(r)];
  }

  /// chi^k as a character of the same modulus.
  DirichletCharacter pow(int k) const;
  DirichletCharacter conj() const { return pow(-1); }

 private:
  friend std::vector<DirichletCharacter> characters_mod(int q);
  DirichletCharacter(std::shared_ptr<const detail::UnitGroup> group, std::vector<int> exponents);

  std::shared_ptr<const detail::UnitGroup> group_;
  std::vector<int> exponents_;
  int index_ = 0;
  int conductor_ = 1;
  bool real_ = true;
  bool odd_ = false;
  std::vector<std::complex<double>> values_;
};

/// All phi(q) characters mod q, ordered by index (index 0 is principal).
std::vector<DirichletCharacter> characters_mod(int q);

/// The character mod 1, i.e. the constant 1; L(s, chi) = zeta(s).
DirichletCharacter trivial_character();

/// Character k mod q; throws if k is out of range.
DirichletCharacter character(int q, int index);

/// Sum over x mod q of chi(x) e(x/q).
std::complex<double> gauss_sum(const DirichletCharacter& chi);

/// Least modulus d | q such that chi is induced by a character mod d.
int conductor(const DirichletCharacter& chi);

int euler_phi(int n);

}  // namespace l1lab
