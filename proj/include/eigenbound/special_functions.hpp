#pragma once

#include <functional>
#include <vector>

#include "eigenbound/error.hpp"

namespace eigenbound::sf {

// Gamma function for x > 0 (Lanczos approximation, relative error well below
// 1e-12 at desk scale).
double gamma_fn(double x);
double log_gamma(double x);

// Bessel function of the first kind, real order nu >= 0, x >= 0. Ascending
// series for small arguments, normalized backward recurrence elsewhere.
double bessel_j(double nu, double x);
double bessel_j_prime(double nu, double x);

// Modified Bessel I_nu. bessel_i throws overflow for arguments where
// I_nu(x) exceeds the double range (x around 700 and beyond); the scaled
// variants e^{-x} I_nu(x), e^{-x} I_nu'(x) stay representable and back the
// clamped-plate determinant.
double bessel_i(double nu, double x);
double bessel_i_scaled(double nu, double x);
double bessel_i_prime_scaled(double nu, double x);

// k-th positive zero of J_nu (k >= 1).
double bessel_j_zero(double nu, int k);
std::vector<double> bessel_j_zeros(double nu, int k_max);
// All zeros of J_nu in (0, x_limit], ascending.
std::vector<double> bessel_j_zeros_upto(double nu, double x_limit);

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

// All sign-change roots of f on [lo, hi]: uniform scan with the step refined
// until the root count stabilizes, then bisection to 1e-11 absolute.
std::vector<double> find_roots(const std::function<double(double)>& f, double lo, double hi,
                               int max_roots);

// Plain bisection on a bracketing interval; exposed for test oracles.
double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol);

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
// the Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace eigenbound::sf
