#include "amconv/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace amconv {

Eigen::MatrixXcd HermitianTridiagonal::dense() const {
  const int n = dimension();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = diagonal[k];
  for (int k = 0; k + 1 < n; ++k) {
    m(k + 1, k) = lower[k];
    m(k, k + 1) = std::conj(lower[k]);
  }
  return m;
}

RealTridiagonalEigen symmetric_tridiagonal_eigen(
    std::span<const double> diagonal, std::span<const double> off_diagonal,
    bool want_vectors) {
  const int n = static_cast<int>(diagonal.size());
  if (n == 0) return {};
  if (static_cast<int>(off_diagonal.size()) != n - 1) {
    throw std::invalid_argument("off-diagonal must have n-1 entries");
  }

  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());

  Eigen::MatrixXd z;
  if (want_vectors) z = Eigen::MatrixXd::Identity(n, n);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 60;
  double shift_total = 0.0;
  double scale = 0.0;

  for (int l = 0; l < n; ++l) {
    scale = std::max(scale, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * scale) ++m;

    int sweeps = 0;
    while (m > l) {
      if (++sweeps > max_sweeps) {
        throw std::runtime_error("tridiagonal QL failed to converge");
      }
      // Shift from the leading 2x2 block.
      double g = d[l];
      double p = (d[l + 1] - g) / (2.0 * e[l]);
      double r = std::hypot(p, 1.0);
      if (p < 0) r = -r;
      d[l] = e[l] / (p + r);
      d[l + 1] = e[l] * (p + r);
      const double dl1 = d[l + 1];
      double h = g - d[l];
      for (int i = l + 2; i < n; ++i) d[i] -= h;
      shift_total += h;

      // Chase the bulge from m back to l with Givens rotations.
      p = d[m];
      double c = 1.0, c2 = 1.0, c3 = 1.0;
      const double el1 = e[l + 1];
      double s = 0.0, s2 = 0.0;
      for (int i = m - 1; i >= l; --i) {
        c3 = c2;
        c2 = c;
        s2 = s;
        g = c * e[i];
        h = c * p;
        r = std::hypot(p, e[i]);
        e[i + 1] = s * r;
        s = e[i] / r;
        c = p / r;
        p = c * d[i] - s * g;
        d[i + 1] = h + s * (c * g + s * d[i]);
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double zk = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * zk;
            z(k, i) = c * z(k, i) - s * zk;
          }
        }
      }
      p = -s * s2 * c3 * el1 * e[l] / dl1;
      e[l] = s * p;
      d[l] = c * p;

      if (std::abs(e[l]) <= eps * scale) break;
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d[a] < d[b]; });

  RealTridiagonalEigen out;
  out.values.resize(n);
  for (int k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) out.vectors.col(k) = z.col(order[k]);
  }
  return out;
}

Spectrum hermitian_tridiagonal_eigen(const HermitianTridiagonal& matrix,
                                     bool want_vectors) {
  const int n = matrix.dimension();
  if (static_cast<int>(matrix.lower.size()) != std::max(n - 1, 0)) {
    throw std::invalid_argument("tridiagonal lower diagonal has wrong size");
  }
  // D^H A D with D = diag(phase_k) makes every off-diagonal |lower_k|.
  std::vector<std::complex<double>> phase(n, 1.0);
  std::vector<double> off(std::max(n - 1, 0));
  for (int k = 0; k + 1 < n; ++k) {
    const double mag = std::abs(matrix.lower[k]);
    off[k] = mag;
    phase[k + 1] = mag > 0.0 ? phase[k] * (matrix.lower[k] / mag) : phase[k];
  }

  RealTridiagonalEigen real =
      symmetric_tridiagonal_eigen(matrix.diagonal, off, want_vectors);

  Spectrum out;
  out.values = std::move(real.values);
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) out.vectors(k, j) = phase[k] * real.vectors(k, j);
    }
  }
  return out;
}

}  // namespace amconv
