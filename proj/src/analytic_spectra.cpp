#include "eigenbound/analytic_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "eigenbound/special_functions.hpp"

namespace eigenbound::spectra {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Mode {
  double value;
  int l;  // angular index (or 0 for box modes)
  int k;  // radial index (or running lattice index)
  long long mult;
};

// Sort key (value, l, k) keeps concurrent-friendly merges deterministic.
bool mode_less(const Mode& a, const Mode& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.l != b.l) return a.l < b.l;
  return a.k < b.k;
}

// Expand multiplicities, keep `count` values but never split the trailing
// multiplicity cluster; notes the extension in `extended`.
std::vector<double> expand_and_truncate(std::vector<Mode> modes, int count, double tie_rel,
                                        bool& extended) {
  std::sort(modes.begin(), modes.end(), mode_less);
  std::vector<double> vals;
  for (const auto& m : modes)
    for (long long c = 0; c < m.mult; ++c) vals.push_back(m.value);
  std::size_t keep = (std::size_t)count;
  const double cut = vals[count - 1] * (1.0 + tie_rel);
  while (keep < vals.size() && vals[keep] <= cut) ++keep;
  extended = keep > (std::size_t)count;
  vals.resize(keep);
  return vals;
}

std::string extension_note(bool extended, std::size_t n) {
  if (!extended) return "";
  std::ostringstream os;
  os << "; extended to " << n << " values to complete the last multiplicity cluster";
  return os.str();
}

void check_simple_ground_state(const Spectrum& s) {
  if (s.op == Operator::laplacian && s.values.size() >= 2 && !(s.values[0] < s.values[1]))
    fail(ErrorCode::convergence_failure,
         "generator produced a non-simple first Dirichlet eigenvalue");
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Enumerate all positive lattice points with pi^2 sum (p_j/L_j)^2 <= cap.
void enumerate_box(const std::vector<double>& lengths, double cap, std::size_t axis,
                   double partial, std::vector<double>& out) {
  const double L = lengths[axis];
  for (int p = 1;; ++p) {
    const double term = kPi * kPi * (p / L) * (p / L);
    const double v = partial + term;
    if (v > cap) break;
    if (axis + 1 == lengths.size())
      out.push_back(v);
    else
      enumerate_box(lengths, cap, axis + 1, v, out);
  }
}

}  // namespace

long long harmonic_multiplicity(int n, int l) {
  if (n < 2 || l < 0) fail(ErrorCode::invalid_config, "harmonic_multiplicity: bad n or l");
  const long long a = binomial(n + l - 1, l);
  const long long b = (l >= 2) ? binomial(n + l - 3, l - 2) : 0;
  return a - b;
}

Spectrum box_dirichlet_spectrum(const std::vector<double>& lengths, int count) {
  if (lengths.empty()) fail(ErrorCode::invalid_config, "box needs at least one length");
  for (double L : lengths)
    if (!(L > 0.0)) fail(ErrorCode::invalid_config, "box lengths must be positive");
  if (count < 1) fail(ErrorCode::invalid_config, "count must be >= 1");

  double lam1 = 0.0;
  for (double L : lengths) lam1 += kPi * kPi / (L * L);

  std::vector<double> vals;
  for (double cap = 2.0 * lam1;; cap *= 2.0) {
    vals.clear();
    enumerate_box(lengths, cap, 0, 0.0, vals);
    std::sort(vals.begin(), vals.end());
    if ((int)vals.size() >= count && vals[count - 1] * (1.0 + 1e-9) < cap) break;
    if (!std::isfinite(cap)) fail(ErrorCode::convergence_failure, "box enumeration cap overflow");
  }
  std::size_t keep = (std::size_t)count;
  const double cut = vals[count - 1] * (1.0 + 1e-12);
  while (keep < vals.size() && vals[keep] <= cut) ++keep;
  const bool extended = keep > (std::size_t)count;
  vals.resize(keep);

  std::ostringstream src;
  src << "box dirichlet, separable lattice enumeration, n=" << lengths.size()
      << extension_note(extended, vals.size());
  Spectrum s{Operator::laplacian, (int)lengths.size(), (int)lengths.size(), vals, src.str()};
  check_simple_ground_state(s);
  return validate_spectrum(s);
}

Spectrum ball_dirichlet_spectrum(int n, double radius, int count) {
  if (n < 2) fail(ErrorCode::invalid_config, "ball dimension must be >= 2");
  if (!(radius > 0.0)) fail(ErrorCode::invalid_config, "radius must be positive");
  if (count < 1) fail(ErrorCode::invalid_config, "count must be >= 1");

  const double j01 = sf::bessel_j_zero(0.5 * n - 1.0, 1);
  const double lam1 = (j01 / radius) * (j01 / radius);

  std::vector<Mode> modes;
  for (double cap = 2.0 * lam1;; cap *= 2.0) {
    modes.clear();
    long long total = 0;
    const double zlimit = radius * std::sqrt(cap);
    for (int l = 0;; ++l) {
      const double nu = l + 0.5 * n - 1.0;
      if (nu >= zlimit) break;  // first zero exceeds the order
      const auto zeros = sf::bessel_j_zeros_upto(nu, zlimit);
      if (zeros.empty()) break;
      const long long mult = harmonic_multiplicity(n, l);
      for (std::size_t k = 0; k < zeros.size(); ++k) {
        const double z = zeros[k] / radius;
        modes.push_back({z * z, l, (int)k + 1, mult});
        total += mult;
      }
    }
    if (total >= count) {
      std::vector<Mode> tmp = modes;
      std::sort(tmp.begin(), tmp.end(), mode_less);
      long long seen = 0;
      double vcount = 0.0;
      for (const auto& m : tmp) {
        seen += m.mult;
        if (seen >= count) {
          vcount = m.value;
          break;
        }
      }
      if (vcount * (1.0 + 1e-9) < cap) break;
    }
  }

  bool extended = false;
  auto vals = expand_and_truncate(std::move(modes), count, 1e-12, extended);
  std::ostringstream src;
  src << "euclidean ball dirichlet, bessel zeros, n=" << n << ", R=" << radius
      << extension_note(extended, vals.size());
  Spectrum s{Operator::laplacian, n, n, vals, src.str()};
  check_simple_ground_state(s);
  return validate_spectrum(s);
}

Spectrum ball_plate_spectrum(int n, double radius, int count) {
  if (n < 2) fail(ErrorCode::invalid_config, "ball dimension must be >= 2");
  if (!(radius > 0.0)) fail(ErrorCode::invalid_config, "radius must be positive");
  if (count < 1) fail(ErrorCode::invalid_config, "count must be >= 1");

  // clamped-plate radial determinant for J_nu(y), I_nu(y) solutions
  auto det = [](double nu, double y) {
    const double j = sf::bessel_j(nu, y);
    const double jp = sf::bessel_j_prime(nu, y);
    const double is = sf::bessel_i_scaled(nu, y);
    const double ips = sf::bessel_i_prime_scaled(nu, y);
    return j * ips - is * jp;
  };

  const double seed = sf::bessel_j_zero(0.5 * n - 1.0, 1) + 1.0;
  const double gamma1_guess = std::pow(seed / radius, 4.0);

  std::vector<Mode> modes;
  for (double cap = 2.0 * gamma1_guess;; cap *= 2.0) {
    modes.clear();
    long long total = 0;
    const double ylimit = radius * std::pow(cap, 0.25);
    for (int l = 0;; ++l) {
      const double nu = l + 0.5 * n - 1.0;
      const double lo = std::max(0.3, 0.9 * nu);
      if (lo >= ylimit) break;  // determinant roots sit above the order
      auto f = [&](double y) { return det(nu, y); };
      const int max_roots = (int)((ylimit - lo) / 2.0) + 8;
      const auto roots = sf::find_roots(f, lo, ylimit, max_roots);
      if (roots.empty()) break;
      const long long mult = harmonic_multiplicity(n, l);
      for (std::size_t k = 0; k < roots.size(); ++k) {
        const double y = roots[k] / radius;
        modes.push_back({y * y * y * y, l, (int)k + 1, mult});
        total += mult;
      }
    }
    if (total >= count) {
      std::vector<Mode> tmp = modes;
      std::sort(tmp.begin(), tmp.end(), mode_less);
      long long seen = 0;
      double vcount = 0.0;
      for (const auto& m : tmp) {
        seen += m.mult;
        if (seen >= count) {
          vcount = m.value;
          break;
        }
      }
      if (vcount * (1.0 + 1e-9) < cap) break;
    }
  }

  bool extended = false;
  auto vals = expand_and_truncate(std::move(modes), count, 1e-12, extended);
  std::ostringstream src;
  src << "euclidean ball clamped plate, bessel determinant roots, n=" << n << ", R=" << radius
      << extension_note(extended, vals.size());
  Spectrum s{Operator::bilaplacian, n, n, vals, src.str()};
  return validate_spectrum(s);
}

namespace {

// One shooting pass for the cap radial problem written in the regularized
// variable v = u / theta^l, which removes the theta^l power law at the
// origin. Forward integration damps the singular second solution.
struct ShootOutcome {
  double end_value;  // v(theta0), same sign as u(theta0)
  int nodes;         // sign changes of v in (0, theta0)
};

struct CapRadialProblem {
  int n = 2;
  int l = 0;
  double theta0 = 1.0;
};

ShootOutcome cap_shoot(const CapRadialProblem& pr, double mu) {
  const int n = pr.n;
  const int l = pr.l;
  const double L2 = (double)l * (l + n - 2);

  auto rhs = [&](double th, double v, double w, double& dv, double& dw) {
    const double cot = std::cos(th) / std::sin(th);
    const double inv_sin2 = 1.0 / (std::sin(th) * std::sin(th));
    const double damp = 2.0 * l / th + (n - 1.0) * cot;
    const double pot =
        l * (l - 1.0) / (th * th) + l * (n - 1.0) * cot / th + mu - L2 * inv_sin2;
    dv = w;
    dw = -damp * w - pot * v;
  };

  const double eps = 1e-6;
  const double p0 = mu - l * (l + 2.0 * n - 3.0) / 3.0;  // potential at the origin
  const double c1 = -p0 / (2.0 * (2.0 * l + n));
  double th = eps;
  double v = 1.0 + c1 * eps * eps;
  double w = 2.0 * c1 * eps;

  int nodes = 0;
  double prev_sign_v = v;

  auto rk4_step = [&](double h) {
    double k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w;
    rhs(th, v, w, k1v, k1w);
    rhs(th + 0.5 * h, v + 0.5 * h * k1v, w + 0.5 * h * k1w, k2v, k2w);
    rhs(th + 0.5 * h, v + 0.5 * h * k2v, w + 0.5 * h * k2w, k3v, k3w);
    rhs(th + h, v + h * k3v, w + h * k3w, k4v, k4w);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    th += h;
    if (prev_sign_v != 0.0 && v != 0.0 && (prev_sign_v < 0.0) != (v < 0.0)) ++nodes;
    if (v != 0.0) prev_sign_v = v;
    const double mag = std::max(std::abs(v), std::abs(w));
    if (mag > 1e120) {
      v /= mag;
      w /= mag;
      prev_sign_v = v;  // sign unchanged by positive rescale
    }
  };

  // graded phase: steps proportional to theta keep the damping term stable
  const double theta_c = std::min(0.05, 0.25 * pr.theta0);
  const int grade = std::max(16, (int)std::ceil(1.5 * (2.0 * l + n)));
  while (th < theta_c) {
    const double h = std::min(th / grade, theta_c - th);
    rk4_step(std::max(h, 1e-9));
  }
  // uniform phase: resolve the radial oscillation
  const int n_uniform =
      std::max(1200, (int)std::ceil(32.0 * std::sqrt(std::max(mu, 1.0) + L2) * pr.theta0));
  const double hu = (pr.theta0 - th) / n_uniform;
  for (int i = 0; i < n_uniform; ++i) rk4_step(hu);

  return {v, nodes};
}

// p-th radial eigenvalue (p >= 1) for angular index l, found by node-count
// bracketing then sign bisection on the endpoint value.
double cap_radial_eigenvalue(const CapRadialProblem& pr, int p, double mu_lo_hint) {
  const double L2 = (double)pr.l * (pr.l + pr.n - 2);
  double lo = std::max(L2, mu_lo_hint);
  // ensure card(lo) <= p-1
  ShootOutcome olo = cap_shoot(pr, lo);
  int guard = 0;
  while (olo.nodes >= p) {
    lo = std::max(0.0, lo * 0.5 - 1.0);
    olo = cap_shoot(pr, lo);
    if (++guard > 80) fail(ErrorCode::convergence_failure, "cap shooting: bracket search failed");
  }
  double hi = std::max(2.0 * (lo + 1.0), L2 + 10.0);
  ShootOutcome ohi = cap_shoot(pr, hi);
  guard = 0;
  while (ohi.nodes < p) {
    hi *= 2.0;
    ohi = cap_shoot(pr, hi);
    if (++guard > 80) fail(ErrorCode::convergence_failure, "cap shooting: no eigenvalue found");
  }
  // narrow by node count until exactly one eigenvalue can sit inside
  while (hi - lo > std::max(1e-12 * hi, 1e-12)) {
    const double mid = 0.5 * (lo + hi);
    const ShootOutcome om = cap_shoot(pr, mid);
    if (om.nodes >= p) {
      hi = mid;
      ohi = om;
    } else {
      lo = mid;
      olo = om;
    }
    // once the bracket holds a single crossing, bisect on the endpoint sign
    if (olo.nodes == p - 1 && ohi.nodes == p && olo.end_value * ohi.end_value < 0.0 &&
        hi - lo < 0.05 * std::max(1.0, hi)) {
      double a = lo, b = hi, fa = olo.end_value;
      while (b - a > std::max(1e-13 * b, 1e-13)) {
        const double m = 0.5 * (a + b);
        const double fm = cap_shoot(pr, m).end_value;
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Spectrum cap_dirichlet_spectrum(int n, double sphere_radius, double cap_angle, int count) {
  if (n < 2) fail(ErrorCode::invalid_config, "sphere dimension must be >= 2");
  if (!(sphere_radius > 0.0)) fail(ErrorCode::invalid_config, "sphere radius must be positive");
  if (!(cap_angle > 0.0) || !(cap_angle < kPi))
    fail(ErrorCode::invalid_config, "cap angle must lie in (0, pi)");
  if (cap_angle > kPi - 1e-2)
    fail(ErrorCode::ill_conditioned, "cap angle too close to pi for the radial shooting method");
  if (count < 1) fail(ErrorCode::invalid_config, "count must be >= 1");

  const double R2 = sphere_radius * sphere_radius;
  std::map<std::pair<int, int>, double> mu_cache;  // (l, p) -> mu

  auto mu_of = [&](int l, int p) {
    const auto key = std::make_pair(l, p);
    auto it = mu_cache.find(key);
    if (it != mu_cache.end()) return it->second;
    CapRadialProblem pr{n, l, cap_angle};
    const double hint = (p > 1) ? mu_cache.at(std::make_pair(l, p - 1)) * (1.0 + 1e-9) + 1e-9 : 0.0;
    const double mu = cap_radial_eigenvalue(pr, p, hint);
    mu_cache[key] = mu;
    return mu;
  };

  const double mu1 = mu_of(0, 1);
  std::vector<Mode> modes;
  for (double cap = 2.0 * mu1 / R2;; cap *= 2.0) {
    modes.clear();
    long long total = 0;
    const double mu_cap = cap * R2;
    for (int l = 0;; ++l) {
      const double L2 = (double)l * (l + n - 2);
      if (L2 > mu_cap) break;  // centrifugal floor exceeds the cap
      const long long mult = harmonic_multiplicity(n, l);
      bool any = false;
      for (int p = 1;; ++p) {
        const double mu = mu_of(l, p);
        if (mu > mu_cap) break;
        modes.push_back({mu / R2, l, p, mult});
        total += mult;
        any = true;
      }
      if (!any && l > 0) break;
    }
    if (total >= count) {
      std::vector<Mode> tmp = modes;
      std::sort(tmp.begin(), tmp.end(), mode_less);
      long long seen = 0;
      double vcount = 0.0;
      for (const auto& m : tmp) {
        seen += m.mult;
        if (seen >= count) {
          vcount = m.value;
          break;
        }
      }
      if (vcount * (1.0 + 1e-9) < cap) break;
    }
  }

  bool extended = false;
  // shooting accuracy rather than exact arithmetic sets the tie tolerance
  auto vals = expand_and_truncate(std::move(modes), count, 1e-7, extended);
  std::ostringstream src;
  src << "spherical cap dirichlet, radial shooting, n=" << n << ", R=" << sphere_radius
      << ", theta0=" << cap_angle << extension_note(extended, vals.size());
  Spectrum s{Operator::laplacian, n, n + 1, vals, src.str()};
  check_simple_ground_state(s);
  return validate_spectrum(s);
}

}  // namespace eigenbound::spectra
