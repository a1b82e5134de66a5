#include "eigenbound/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eigenbound::sf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos, g = 7, 9 coefficients.
const double kLanczos[9] = {0.99999999999980993,      676.5203681218851,
                            -1259.1392167224028,      771.32342877765313,
                            -176.61502916214059,      12.507343278686905,
                            -0.13857109526572012,     9.9843695780195716e-6,
                            1.5056327351493116e-7};

double lanczos_sum(double x) {
  // x >= 0.5 assumed; series argument is x-1 in the classic formulation
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x - 1.0 + i);
  return a;
}

void check_nu_x(double nu, double x, const char* fn) {
  if (!(nu >= 0.0) || !std::isfinite(nu))
    fail(ErrorCode::domain_error, std::string(fn) + ": order must be >= 0");
  if (!(x >= 0.0) || !std::isfinite(x))
    fail(ErrorCode::domain_error, std::string(fn) + ": argument must be >= 0");
}

// Ascending series; safe (no destructive cancellation beyond budget) for
// x <= 12 at double precision.
double bessel_j_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 600; ++m) {
    term *= -q / (m * (nu + m));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300 && m > 0.5 * x) break;
  }
  const double lead = nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
  if (lead < -700.0) return 0.0;
  return std::exp(lead) * sum;
}

// Normalized backward (Miller) recurrence. Returns J_{nu}(x) and
// J_{nu+1}(x). Valid for any nu >= 0, x > 0; used for x > 12.
void bessel_j_miller(double nu, double x, double& j_nu, double& j_nu_p1) {
  const int idx = (int)std::floor(nu);
  const double mu = nu - idx;  // fractional part in [0,1)
  const int extra = 60 + (int)std::ceil(std::max(0.0, x - nu));
  const int jtop = idx + extra;

  std::vector<double> f(jtop + 2, 0.0);
  f[jtop + 1] = 0.0;
  f[jtop] = 1e-30;
  for (int j = jtop; j >= 1; --j) {
    f[j - 1] = (2.0 * (mu + j) / x) * f[j] - f[j + 1];
    if (std::abs(f[j - 1]) > 1e250) {
      const double s = 1e-250;
      for (int t = j - 1; t <= jtop + 1; ++t) f[t] *= s;
    }
  }

  // sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x) = (x/2)^mu
  double sum = gamma_fn(mu + 1.0) * f[0];  // k = 0 coefficient is mu*Gamma(mu)
  double ck = (mu + 2.0) * gamma_fn(mu + 1.0);
  for (int k = 1; 2 * k <= jtop; ++k) {
    sum += ck * f[2 * k];
    ck *= (mu + 2.0 * (k + 1)) * (mu + k) / ((mu + 2.0 * k) * (k + 1.0));
  }
  const double scale = std::pow(0.5 * x, mu) / sum;
  j_nu = f[idx] * scale;
  j_nu_p1 = f[idx + 1] * scale;
}

// log I_nu(x) for x > 0 via the all-positive ascending series, summed
// relative to its largest term so nothing overflows on the way.
double log_bessel_i(double nu, double x) {
  const double q = 0.25 * x * x;
  // peak index: solve t (t + nu) = q for t = m + 1
  const double t = 0.5 * (-nu + std::sqrt(nu * nu + 4.0 * q));
  const int mstar = std::max(0, (int)std::floor(t));
  const double log_peak =
      (2.0 * mstar + nu) * std::log(0.5 * x) - log_gamma(mstar + 1.0) - log_gamma(nu + mstar + 1.0);

  double sum = 1.0;
  double term = 1.0;
  for (int m = mstar + 1; m < mstar + 10000; ++m) {
    term *= q / (m * (nu + m));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  term = 1.0;
  for (int m = mstar; m >= 1; --m) {
    term *= (m * (nu + m)) / q;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return log_peak + std::log(sum);
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(ErrorCode::domain_error, "gamma_fn requires x > 0");
  if (x < 0.5) {
    // reflection keeps the Lanczos series in its accurate range
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  const double t = x + 6.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_sum(x);
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(ErrorCode::domain_error, "log_gamma requires x > 0");
  if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  const double t = x + 6.5;
  return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

double bessel_j(double nu, double x) {
  check_nu_x(nu, x, "bessel_j");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 12.0) return bessel_j_series(nu, x);
  double a, b;
  bessel_j_miller(nu, x, a, b);
  return a;
}

double bessel_j_prime(double nu, double x) {
  check_nu_x(nu, x, "bessel_j_prime");
  if (x == 0.0) {
    if (nu == 1.0) return 0.5;
    if (nu == 0.0) return 0.0;
    fail(ErrorCode::domain_error, "bessel_j_prime undefined at x = 0 for this order");
  }
  if (x <= 12.0)
    return (nu / x) * bessel_j_series(nu, x) - bessel_j_series(nu + 1.0, x);
  double a, b;
  bessel_j_miller(nu, x, a, b);
  return (nu / x) * a - b;
}

double bessel_i(double nu, double x) {
  check_nu_x(nu, x, "bessel_i");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double lg = log_bessel_i(nu, x);
  if (lg > 709.0) {
    std::ostringstream os;
    os << "bessel_i overflow: log I_" << nu << "(" << x << ") = " << lg;
    fail(ErrorCode::overflow, os.str());
  }
  return std::exp(lg);
}

double bessel_i_scaled(double nu, double x) {
  check_nu_x(nu, x, "bessel_i_scaled");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return std::exp(log_bessel_i(nu, x) - x);
}

double bessel_i_prime_scaled(double nu, double x) {
  check_nu_x(nu, x, "bessel_i_prime_scaled");
  if (x == 0.0) {
    if (nu == 1.0) return 0.5;
    if (nu == 0.0) return 0.0;
    fail(ErrorCode::domain_error, "bessel_i_prime_scaled undefined at x = 0 for this order");
  }
  // I_nu' = (nu/x) I_nu + I_{nu+1}
  return (nu / x) * bessel_i_scaled(nu, x) + bessel_i_scaled(nu + 1.0, x);
}

namespace {

// Safeguarded Newton inside a sign-change bracket.
double polish_zero(double nu, double a, double b, double fa, double fb) {
  double x = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    if (b - a < 5e-13 * std::max(1.0, std::abs(b))) break;
    const double fx = bessel_j(nu, x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    const double dfx = bessel_j_prime(nu, x);
    double xn = (dfx != 0.0) ? x - fx / dfx : 0.5 * (a + b);
    if (!(xn > a) || !(xn < b)) xn = 0.5 * (a + b);
    x = xn;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> bessel_j_zeros_upto(double nu, double x_limit) {
  check_nu_x(nu, 0.0, "bessel_j_zeros");
  std::vector<double> zeros;
  if (x_limit <= 0.0) return zeros;
  // J_nu has no zeros below its order; start just under nu and sweep.
  double x = std::max(0.01, nu * 0.999);
  if (x >= x_limit) return zeros;
  const double step = 0.4;  // well below the minimal zero spacing (~3.0)
  double fx = bessel_j(nu, x);
  while (x < x_limit) {
    double x2 = std::min(x + step, x_limit);
    double f2 = bessel_j(nu, x2);
    if (fx == 0.0) {
      zeros.push_back(x);
    } else if (fx * f2 < 0.0) {
      zeros.push_back(polish_zero(nu, x, x2, fx, f2));
    }
    x = x2;
    fx = f2;
    if (x2 >= x_limit) break;
  }
  return zeros;
}

std::vector<double> bessel_j_zeros(double nu, int k_max) {
  if (k_max < 1) fail(ErrorCode::domain_error, "bessel_j_zeros requires k >= 1");
  // McMahon-style estimate of the k-th zero bounds the sweep; extend if the
  // estimate fell short (possible for large order, small k).
  double limit = (k_max + 0.5 * nu - 0.25) * kPi + nu + 4.0;
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<double> zeros = bessel_j_zeros_upto(nu, limit);
    if ((int)zeros.size() >= k_max) {
      zeros.resize(k_max);
      return zeros;
    }
    limit += kPi * (k_max - (int)zeros.size() + 1);
  }
  fail(ErrorCode::convergence_failure, "bessel_j_zeros: sweep failed to isolate enough zeros");
}

double bessel_j_zero(double nu, int k) { return bessel_j_zeros(nu, k).back(); }

double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
  double fa = f(lo), fb = f(hi);
  if (fa == 0.0) return lo;
  if (fb == 0.0) return hi;
  if (fa * fb > 0.0) fail(ErrorCode::bracket_exhausted, "bisect: no sign change on bracket");
  for (int it = 0; it < 400 && hi - lo > x_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      lo = mid;
      fa = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> find_roots(const std::function<double(double)>& f, double lo, double hi,
                               int max_roots) {
  if (!(hi > lo)) fail(ErrorCode::domain_error, "find_roots: empty interval");
  int n = 64;
  std::vector<RootBracket> brackets;
  int prev_count = -1;
  for (; n <= (1 << 20); n *= 2) {
    brackets.clear();
    const double h = (hi - lo) / n;
    double x0 = lo;
    double f0 = f(x0);
    bool zero_pending = (f0 == 0.0);
    for (int i = 1; i <= n; ++i) {
      const double x1 = (i == n) ? hi : lo + i * h;
      const double f1 = f(x1);
      if (f1 == 0.0) {
        brackets.push_back({x1, x1, 0.0, 0.0});
      } else if (!zero_pending && f0 * f1 < 0.0) {
        brackets.push_back({x0, x1, f0, f1});
      }
      zero_pending = (f1 == 0.0);
      x0 = x1;
      f0 = f1;
    }
    if ((int)brackets.size() > max_roots)
      fail(ErrorCode::bracket_exhausted, "find_roots: more sign changes than max_roots");
    if ((int)brackets.size() == prev_count) break;
    prev_count = (int)brackets.size();
  }
  std::vector<double> roots;
  roots.reserve(brackets.size());
  for (const auto& b : brackets) {
    if (b.lo == b.hi) {
      roots.push_back(b.lo);
      continue;
    }
    roots.push_back(bisect(f, b.lo, b.hi, 1e-11));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

}  // namespace eigenbound::sf
