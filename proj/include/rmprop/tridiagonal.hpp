#pragma once

// Lowest eigenpairs of a real symmetric tridiagonal matrix by Sturm-sequence
// bisection followed by inverse iteration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rmprop/errors.hpp"

namespace rmprop {

struct EigenPair {
  double value;
  std::vector<double> vector;  // unit 2-norm
  double residual;             // ||A v - value v||_2
};

class SymmetricTridiagonal {
 public:
  SymmetricTridiagonal(std::vector<double> diag, std::vector<double> off)
      : diag_(std::move(diag)), off_(std::move(off)) {
    if (diag_.empty()) throw ConfigError("tridiagonal matrix is empty");
    if (off_.size() + 1 != diag_.size())
      throw ConfigError("off-diagonal must have size n-1");
    for (double d : diag_)
      if (!std::isfinite(d)) throw ConfigError("non-finite diagonal entry");
    double max_off2 = 1.0;
    for (double e : off_) {
      if (!std::isfinite(e)) throw ConfigError("non-finite off-diagonal entry");
      max_off2 = std::max(max_off2, e * e);
    }
    // Smallest admissible pivot in the Sturm recurrence (LAPACK dstebz).
    pivmin_ = std::numeric_limits<double>::min() * max_off2;
  }

  std::size_t size() const noexcept { return diag_.size(); }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> off() const noexcept { return off_; }

  /// Infinity norm (equal to the 1-norm by symmetry).
  double norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      double row = std::abs(diag_[i]);
      if (i > 0) row += std::abs(off_[i - 1]);
      if (i + 1 < size()) row += std::abs(off_[i]);
      m = std::max(m, row);
    }
    return m;
  }

  std::vector<double> apply(std::span<const double> v) const {
    std::size_t n = size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag_[i] * v[i];
      if (i > 0) s += off_[i - 1] * v[i - 1];
      if (i + 1 < n) s += off_[i] * v[i + 1];
      out[i] = s;
    }
    return out;
  }

  /// Number of eigenvalues strictly less than x (Sturm count of the LDL^T
  /// pivots of A - x I).
  std::size_t count_below(double x) const {
    std::size_t count = 0;
    double d = diag_[0] - x;
    if (std::abs(d) < pivmin_) d = -pivmin_;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < size(); ++i) {
      d = diag_[i] - x - off_[i - 1] * off_[i - 1] / d;
      if (std::abs(d) < pivmin_) d = -pivmin_;
      if (d < 0.0) ++count;
    }
    return count;
  }

  /// k-th smallest eigenvalue (k = 0, 1, ...) by bisection to machine
  /// resolution.
  double eigenvalue(std::size_t k) const {
    if (k >= size())
      throw ConfigError("eigenvalue index " + std::to_string(k) +
                        " out of range");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < size(); ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(off_[i - 1]);
      if (i + 1 < size()) r += std::abs(off_[i]);
      lo = std::min(lo, diag_[i] - r);
      hi = std::max(hi, diag_[i] + r);
    }
    double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                 std::max(std::abs(lo), std::abs(hi));
    lo -= pad;
    hi += pad;
    for (int it = 0; it < 2000; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    return 0.5 * (lo + hi);
  }

  /// Eigenvector for a converged eigenvalue by inverse iteration.
  EigenPair eigenpair(double lambda) const {
    std::size_t n = size();
    double anorm = norm();
    double eps = std::numeric_limits<double>::epsilon();
    // Shift slightly off the eigenvalue so the factorization stays regular.
    double shift = lambda + eps * std::max(anorm, 1.0);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = 1.0 + 0.01 * std::sin(1.0 + 7.0 * static_cast<double>(i));
    normalize(v);
    for (int it = 0; it < 4; ++it) {
      v = solve_shifted(shift, v);
      normalize(v);
    }
    auto av = apply(v);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = av[i] - lambda * v[i];
      res += r * r;
    }
    // Fix the sign so the first significant component is positive.
    for (double c : v) {
      if (std::abs(c) > 1e-8) {
        if (c < 0.0)
          for (double& x : v) x = -x;
        break;
      }
    }
    return {lambda, std::move(v), std::sqrt(res)};
  }

  /// The lowest `count` eigenpairs, ascending. Every accepted pair satisfies
  /// ||A v - lambda v|| <= tol * ||A||.
  std::vector<EigenPair> lowest(std::size_t count, double tol = 1e-10) const {
    if (count > size())
      throw ConfigError("requested more eigenvalues than the matrix order");
    std::vector<EigenPair> out;
    out.reserve(count);
    double bound = tol * norm();
    for (std::size_t k = 0; k < count; ++k) {
      double lambda = eigenvalue(k);
      auto pair = eigenpair(lambda);
      if (!(pair.residual <= bound))
        throw ConvergenceError("eigenpair " + std::to_string(k) +
                               " residual " + std::to_string(pair.residual) +
                               " exceeds " + std::to_string(bound));
      out.push_back(std::move(pair));
    }
    return out;
  }

 private:
  static void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
  }

  // Solves (A - shift I) x = b with Gaussian elimination and partial pivoting
  // (LAPACK dgttrf/dgtts2 layout).
  std::vector<double> solve_shifted(double shift, std::span<const double> b) const {
    std::size_t n = size();
    constexpr double tiny = 1e-300;
    std::vector<double> dl(off_.begin(), off_.end());
    std::vector<double> d(n), du(off_.begin(), off_.end()), du2(n, 0.0);
    std::vector<char> swapped(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag_[i] - shift;
    std::vector<double> x(b.begin(), b.end());

    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (std::abs(d[i]) < tiny) d[i] = tiny;
        double f = dl[i] / d[i];
        dl[i] = f;
        d[i + 1] -= f * du[i];
        x[i + 1] -= f * x[i];
      } else {
        double f = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = f;
        double tmp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = tmp - f * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -f * du[i + 1];
        }
        std::swap(x[i], x[i + 1]);
        x[i + 1] -= f * x[i];
        swapped[i] = 1;
      }
    }
    if (std::abs(d[n - 1]) < tiny) d[n - 1] = tiny;

    x[n - 1] /= d[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (std::size_t ii = n >= 2 ? n - 2 : 0; ii-- > 0;) {
      x[ii] = (x[ii] - du[ii] * x[ii + 1] - du2[ii] * x[ii + 2]) / d[ii];
    }
    return x;
  }

  std::vector<double> diag_;
  std::vector<double> off_;
  double pivmin_ = 0.0;
};

}  // namespace rmprop
