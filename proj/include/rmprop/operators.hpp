#pragma once

// Finite-difference angular Laplacian on S^3 and the chi-equation
//   [-kappa hbar^2/(2mu) d^2/dchi^2 + V(chi)] S = E S,  S(0) = S(pi) = 0,
// whose solutions give psi = sin(chi) S.
//
// Eigenvalues are always reported in the S-equation convention. For G = 0
// they are kappa hbar^2/(2mu) (K+1)^2, i.e. the K^2 Casimir value K(K+2)
// shifted by one unit of the energy scale.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmprop/errors.hpp"
#include "rmprop/geometry.hpp"
#include "rmprop/potentials.hpp"
#include "rmprop/tridiagonal.hpp"

namespace rmprop {

/// Uniform interior grid chi_j = j h, j = 1..n, h = pi/(n+1).
class ChiGrid {
 public:
  static constexpr int min_points = 16;

  explicit ChiGrid(int n_points) : n_(n_points) {
    if (n_points < min_points)
      throw ConfigError("chi grid needs at least " +
                        std::to_string(min_points) + " points, got " +
                        std::to_string(n_points));
  }

  int size() const noexcept { return n_; }
  double spacing() const noexcept { return pi / (n_ + 1); }
  double node(int j) const noexcept { return (j + 1) * spacing(); }  // j = 0..n-1

  std::vector<double> nodes() const {
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(j)] = node(j);
    return out;
  }

  /// The grid with twice the interior point count (used for Richardson pairs).
  ChiGrid refined() const { return ChiGrid(2 * n_); }

  template <class F>
  std::vector<double> sample(F&& f) const {
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(j)] = f(node(j));
    return out;
  }

 private:
  int n_;
};

struct KQuantumNumbers {
  int K;
  int l;
  int m = 0;

  KQuantumNumbers(int K_, int l_, int m_ = 0) : K(K_), l(l_), m(m_) {
    if (K < 0) throw ConfigError("K must be >= 0");
    if (l < 0 || l > K) throw ConfigError("l must satisfy 0 <= l <= K");
    if (m < -l || m > l) throw ConfigError("m must satisfy -l <= m <= l");
  }

  int n() const noexcept { return K + 1; }
  int casimir() const noexcept { return K * (K + 2); }
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  PhysicalParams params;
  int n_points;
  bool extrapolated = false;
  /// Grid sizes (coarse, fine) combined by Richardson extrapolation.
  std::optional<std::pair<int, int>> extrapolation_grids;
};

/// Second-order conservative discretization of
///   (1/sin^2) d/dchi (sin^2 df/dchi) - l(l+1) f / sin^2
/// with zero ghost values at chi = 0 and chi = pi.
inline std::vector<double> apply_radial_laplacian(std::span<const double> f,
                                                  int l, const ChiGrid& grid) {
  if (static_cast<int>(f.size()) != grid.size())
    throw ConfigError("sampled function does not match the grid size");
  if (l < 0) throw ConfigError("l must be >= 0");
  for (double v : f)
    if (!std::isfinite(v))
      throw DomainError("sampled function contains non-finite values");

  const int n = grid.size();
  const double h = grid.spacing();
  const double ll = static_cast<double>(l) * (l + 1);
  std::vector<double> out(f.size());
  for (int j = 0; j < n; ++j) {
    double chi = grid.node(j);
    double sm = std::sin(chi - 0.5 * h);
    double sp = std::sin(chi + 0.5 * h);
    double s = std::sin(chi);
    double fm = j > 0 ? f[static_cast<std::size_t>(j - 1)] : 0.0;
    double fp = j + 1 < n ? f[static_cast<std::size_t>(j + 1)] : 0.0;
    double fj = f[static_cast<std::size_t>(j)];
    double flux = sp * sp * (fp - fj) - sm * sm * (fj - fm);
    out[static_cast<std::size_t>(j)] = flux / (h * h * s * s) - ll * fj / (s * s);
  }
  return out;
}

/// Max |Laplacian(cot chi)| over the nodes inside [lo, hi].
inline double harmonicity_residual(const ChiGrid& grid, double lo = 0.1,
                                   double hi = pi - 0.1) {
  if (!(lo > 0.0 && hi < pi && lo < hi))
    throw ConfigError("harmonicity window must satisfy 0 < lo < hi < pi");
  auto f = grid.sample([](double chi) { return std::cos(chi) / std::sin(chi); });
  auto lap = apply_radial_laplacian(f, 0, grid);
  double worst = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    double chi = grid.node(j);
    if (chi < lo || chi > hi) continue;
    worst = std::max(worst, std::abs(lap[static_cast<std::size_t>(j)]));
  }
  return worst;
}

/// psi(chi_j) = sin(chi_j) S(chi_j).
inline std::vector<double> psi_from_s(std::span<const double> S,
                                      const ChiGrid& grid) {
  if (static_cast<int>(S.size()) != grid.size())
    throw ConfigError("sampled function does not match the grid size");
  std::vector<double> psi(S.size());
  for (int j = 0; j < grid.size(); ++j) {
    double s = S[static_cast<std::size_t>(j)];
    if (!std::isfinite(s)) throw DomainError("S contains non-finite values");
    psi[static_cast<std::size_t>(j)] = std::sin(grid.node(j)) * s;
  }
  return psi;
}

/// Central-difference matrix of the S-equation on the interior grid.
inline SymmetricTridiagonal assemble_s_operator(const PhysicalParams& p,
                                                const ChiGrid& grid) {
  p.validate();
  const double h = grid.spacing();
  const double a = p.energy_scale() / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(grid.size()));
  std::vector<double> off(static_cast<std::size_t>(grid.size() - 1), -a);
  for (int j = 0; j < grid.size(); ++j) {
    double v = rosen_morse(grid.node(j), p);
    if (!std::isfinite(v))
      throw DomainError("non-finite potential sample at chi = " +
                        std::to_string(grid.node(j)));
    diag[static_cast<std::size_t>(j)] = 2.0 * a + v;
  }
  return SymmetricTridiagonal(std::move(diag), std::move(off));
}

namespace detail {
inline void check_levels(int n_levels, const ChiGrid& grid) {
  if (n_levels < 1) throw ConfigError("n_levels must be >= 1");
  if (n_levels > grid.size() / 4)
    throw ConfigError("n_levels = " + std::to_string(n_levels) +
                      " exceeds n_points/4 = " +
                      std::to_string(grid.size() / 4));
}
}  // namespace detail

/// Lowest n_levels eigenvalues on a single grid.
inline SpectrumResult solve_spectrum(const PhysicalParams& p,
                                     const ChiGrid& grid, int n_levels) {
  detail::check_levels(n_levels, grid);
  auto op = assemble_s_operator(p, grid);
  auto pairs = op.lowest(static_cast<std::size_t>(n_levels));
  SpectrumResult r{{}, p, grid.size(), false, std::nullopt};
  r.eigenvalues.reserve(pairs.size());
  for (const auto& e : pairs) r.eigenvalues.push_back(e.value);
  return r;
}

/// Combines O(h^2)-accurate values from two grids into an O(h^4) estimate.
inline double richardson(double coarse, double h_coarse, double fine,
                         double h_fine) {
  double c2 = h_coarse * h_coarse;
  double f2 = h_fine * h_fine;
  return (c2 * fine - f2 * coarse) / (c2 - f2);
}

/// Solves on `grid` and its refinement and Richardson-extrapolates each level.
inline SpectrumResult solve_spectrum_extrapolated(const PhysicalParams& p,
                                                  const ChiGrid& grid,
                                                  int n_levels) {
  detail::check_levels(n_levels, grid);
  ChiGrid fine = grid.refined();
  auto rc = solve_spectrum(p, grid, n_levels);
  auto rf = solve_spectrum(p, fine, n_levels);
  SpectrumResult r{{}, p, grid.size(), true,
                   std::make_pair(grid.size(), fine.size())};
  for (int k = 0; k < n_levels; ++k) {
    auto i = static_cast<std::size_t>(k);
    r.eigenvalues.push_back(richardson(rc.eigenvalues[i], grid.spacing(),
                                       rf.eigenvalues[i], fine.spacing()));
  }
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  return r;
}

struct DegeneracyEntry {
  int n;            // K + 1
  int l;
  int level_index;  // k >= 1 within the l-problem, n = l + k
  double eigenvalue;
};

struct LevelSpread {
  int n;
  int multiplicity;  // number of l values contributing
  double mean;
  double spread;     // (max - min) / max(|mean|, energy scale)
};

struct DegeneracyReport {
  PhysicalParams params;
  int K_max;
  int n_points;
  bool extrapolated;
  std::vector<DegeneracyEntry> entries;  // ordered by (l, level_index)
  std::vector<LevelSpread> spreads;      // ordered by n

  double max_spread() const {
    double m = 0.0;
    for (const auto& s : spreads) m = std::max(m, s.spread);
    return m;
  }

  const LevelSpread& spread_for(int n) const {
    for (const auto& s : spreads)
      if (s.n == n) return s;
    throw ConfigError("no level n = " + std::to_string(n) + " in report");
  }
};

/// Solves the l = 0..K_max problems and aligns level k of the l-problem with
/// n = l + k. Reports, for n = 1..K_max+1, the relative spread across l.
inline DegeneracyReport degeneracy_report(const PhysicalParams& p, int K_max,
                                          const ChiGrid& grid,
                                          bool extrapolate = true) {
  if (K_max < 1) throw ConfigError("K_max must be >= 1");
  p.validate();
  detail::check_levels(K_max + 1, grid);

  std::vector<std::future<SpectrumResult>> jobs;
  for (int l = 0; l <= K_max; ++l) {
    jobs.push_back(std::async(std::launch::async, [&p, &grid, l, K_max,
                                                   extrapolate] {
      auto pl = p.with_l(l);
      int levels = K_max + 1 - l;
      return extrapolate ? solve_spectrum_extrapolated(pl, grid, levels)
                         : solve_spectrum(pl, grid, levels);
    }));
  }

  DegeneracyReport rep{p, K_max, grid.size(), extrapolate, {}, {}};
  for (int l = 0; l <= K_max; ++l) {
    auto res = jobs[static_cast<std::size_t>(l)].get();
    for (std::size_t k = 0; k < res.eigenvalues.size(); ++k) {
      int level = static_cast<int>(k) + 1;
      rep.entries.push_back({l + level, l, level, res.eigenvalues[k]});
    }
  }

  const double scale = p.energy_scale();
  for (int n = 1; n <= K_max + 1; ++n) {
    double lo = 0.0, hi = 0.0, sum = 0.0;
    int count = 0;
    for (const auto& e : rep.entries) {
      if (e.n != n) continue;
      lo = count == 0 ? e.eigenvalue : std::min(lo, e.eigenvalue);
      hi = count == 0 ? e.eigenvalue : std::max(hi, e.eigenvalue);
      sum += e.eigenvalue;
      ++count;
    }
    double mean = sum / count;
    rep.spreads.push_back(
        {n, count, mean, (hi - lo) / std::max(std::abs(mean), scale)});
  }
  return rep;
}

}  // namespace rmprop
