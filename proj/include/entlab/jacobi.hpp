#pragma once

// Dense real symmetric eigenvalues by cyclic Jacobi rotations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace entlab {

/// Row-major dense symmetric matrix. Only the accessors enforce nothing about
/// symmetry; producers are expected to fill both triangles.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<double>& data() const noexcept { return data_; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_exactly_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct JacobiOptions {
  int max_sweeps = 100;
};

struct EigenvalueResult {
  std::vector<double> eigenvalues;  // descending
  int sweeps = 0;
  long rotations = 0;
};

class EigensolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full spectrum of a symmetric matrix. Converges when every off-diagonal
/// element is negligible against both diagonal entries it couples, or when the
/// off-diagonal mass falls below eps * sum |d_i|; the latter bounds every
/// eigenvalue's absolute error at round-off level and keeps sweeps bounded
/// for spectra spanning hundreds of decades.
inline EigenvalueResult jacobi_eigenvalues(SymmetricMatrix a, JacobiOptions options = {}) {
  const std::size_t n = a.size();
  EigenvalueResult out;
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = b[i] = a(i, i);

  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    double diag = 0.0;
    for (double v : d) diag += std::abs(v);
    if (off == 0.0 || off <= std::numeric_limits<double>::epsilon() * diag) {
      out.sweeps = sweep - 1;
      out.eigenvalues = std::move(d);
      std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
      return out;
    }
    const double threshold = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(d[p]) + g == std::abs(d[p]) &&
            std::abs(d[q]) + g == std::abs(d[q])) {
          a(p, q) = 0.0;
          continue;
        }
        if (std::abs(apq) <= threshold) continue;

        const double h = d[q] - d[p];
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double shift = t * apq;
        z[p] -= shift;
        z[q] += shift;
        d[p] -= shift;
        d[q] += shift;
        a(p, q) = 0.0;

        auto rotate = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
          const double x = a(i, j);
          const double y = a(k, l);
          a(i, j) = x - s * (y + x * tau);
          a(k, l) = y + s * (x - y * tau);
        };
        for (std::size_t j = 0; j < p; ++j) rotate(j, p, j, q);
        for (std::size_t j = p + 1; j < q; ++j) rotate(p, j, j, q);
        for (std::size_t j = q + 1; j < n; ++j) rotate(p, j, q, j);
        ++out.rotations;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      b[i] += z[i];
      d[i] = b[i];
      z[i] = 0.0;
    }
  }
  throw EigensolverError("jacobi_eigenvalues: no convergence within sweep budget");
}

}  // namespace entlab
