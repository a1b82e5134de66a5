#include "eigenbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eigenbound::la {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form, with the
// orthogonal transformation accumulated in place of `a`.
void tred2(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  auto A = [&](int r, int c) -> double& { return a[(std::size_t)r * n + c]; };

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          A(j, i) = A(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = A(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (int k = 0; k <= j; ++k) A(j, k) -= f * e[k] + g * A(i, k);
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k) g += A(i, k) * A(k, j);
        for (int k = 0; k <= l; ++k) A(k, j) -= g * A(k, i);
      }
    }
    d[i] = A(i, i);
    A(i, i) = 1.0;
    for (int j = 0; j <= l; ++j) A(j, i) = A(i, j) = 0.0;
  }
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the accumulated
// transformation columns along.
void tqli(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z, int n) {
  auto Z = [&](int r, int c) -> double& { return z[(std::size_t)r * n + c]; };
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          fail(ErrorCode::convergence_failure, "tqli: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = Z(k, i + 1);
            Z(k, i + 1) = s * Z(k, i) + c * f;
            Z(k, i) = c * Z(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

void sym_eigen(std::vector<double> a, int n, std::vector<double>& evals,
               std::vector<double>& evecs) {
  if (n <= 0) fail(ErrorCode::invalid_config, "sym_eigen: empty matrix");
  std::vector<double> d, e;
  tred2(a, n, d, e);
  tqli(d, e, a, n);

  // sort ascending, reorder columns
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
  evals.resize(n);
  evecs.assign((std::size_t)n * n, 0.0);
  for (int c = 0; c < n; ++c) {
    evals[c] = d[order[c]];
    for (int r = 0; r < n; ++r) evecs[(std::size_t)r * n + c] = a[(std::size_t)r * n + order[c]];
  }
}

bool cholesky(std::vector<double>& a, int n) {
  auto A = [&](int r, int c) -> double& { return a[(std::size_t)r * n + c]; };
  for (int j = 0; j < n; ++j) {
    double s = A(j, j);
    for (int k = 0; k < j; ++k) s -= A(j, k) * A(j, k);
    if (!(s > 0.0)) return false;
    const double ljj = std::sqrt(s);
    A(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double t = A(i, j);
      for (int k = 0; k < j; ++k) t -= A(i, k) * A(j, k);
      A(i, j) = t / ljj;
    }
    for (int i = 0; i < j; ++i) A(i, j) = 0.0;
  }
  return true;
}

void solve_lower(const std::vector<double>& l, int n, std::vector<double>& b) {
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    const double* row = &l[(std::size_t)i * n];
    for (int k = 0; k < i; ++k) s -= row[k] * b[k];
    b[i] = s / row[i];
  }
}

void solve_lower_transposed(const std::vector<double>& l, int n, std::vector<double>& b) {
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= l[(std::size_t)k * n + i] * b[k];
    b[i] = s / l[(std::size_t)i * n + i];
  }
}

std::vector<double> matvec(const std::vector<double>& a, int n, const std::vector<double>& x) {
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* row = &a[(std::size_t)i * n];
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace eigenbound::la
