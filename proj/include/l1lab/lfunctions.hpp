#pragma once

#include <complex>
#include <vector>

#include "l1lab/dirichlet.hpp"

namespace l1lab {

using cplx = std::complex<double>;

/// zeta(s, a) = sum_{n >= 0} (n + a)^{-s}, continued analytically.
/// Validated for Re s > -1, |Im s| <= 200, 0 < a <= 1, s != 1.
cplx hurwitz_zeta(cplx s, double a);

/// Digamma psi(a) for a > 0.
double digamma(double a);

/// Complex log-gamma for Re z > 0 (principal branch up to multiples of 2 pi i).
cplx log_gamma(cplx z);

/// L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).
cplx dirichlet_l(cplx s, const DirichletCharacter& chi);

/// sum_n lambda(n) chi(n) n^{-s} = L(2s, chi^2) / L(s, chi) for Re s > 1/2.
cplx lambda_series_ratio(cplx s, const DirichletCharacter& chi);

/// Root number of the completed L-function; 1 for real primitive characters.
cplx root_number(const DirichletCharacter& chi);

/// Real-valued rotation of L(1/2 + it, chi) for trivial or real primitive chi;
/// its sign changes locate zeros on the critical line.
double rotated_l(double t, const DirichletCharacter& chi);

struct CriticalZero {
  double beta = 0.5;
  double gamma = 0.0;
  DirichletCharacter character = trivial_character();
  double residual = 0.0;  // |L(beta + i gamma, chi)|

  cplx rho() const { return {beta, gamma}; }
};

struct ZeroSearchOptions {
  double scan_step = 0.01;
  double gamma_tolerance = 1e-9;
  double residual_bound = 1e-8;
};

/// Lowest critical-line zero with ordinate in (t_lo, t_hi).
CriticalZero find_zero(const DirichletCharacter& chi, double t_lo, double t_hi,
                       const ZeroSearchOptions& options = {});

/// Every critical-line zero detected by a sign change in (t_lo, t_hi).
std::vector<CriticalZero> find_zeros(const DirichletCharacter& chi, double t_lo, double t_hi,
                                     const ZeroSearchOptions& options = {});

}  // namespace l1lab
