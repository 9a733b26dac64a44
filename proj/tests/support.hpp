// Shared test support: deterministic tensor generation and brute-force
// oracles kept independent of the library implementations they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "ceig/piezo_tensor.hpp"

namespace testsup {

// Deterministic splitmix64 stream; independent copy from the solver's.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }
};

// Entries uniform in [-1,1] for every (i,j,k), then symmetrized in the last
// two indices by averaging.
inline ceig::PiezoTensor random_tensor(int n, Rng& rng) {
  std::vector<ceig::TensorEntry> entries;
  entries.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) entries.push_back({i, j, k, rng.uniform_pm1()});
  return ceig::PiezoTensor::build(n, entries, ceig::SymmetrizationPolicy::average());
}

// --- brute-force bound oracles, straight from the definitions -------------

inline std::vector<double> brute_r1(const ceig::PiezoTensor& A) {
  const int n = A.dim();
  std::vector<double> r(n, 0.0);
  for (int i = 1; i <= n; ++i)
    for (int l = 1; l <= n; ++l)
      for (int k = 1; k <= n; ++k) r[i - 1] += std::abs(A.at(i, l, k));
  return r;
}

inline std::vector<double> brute_r3(const ceig::PiezoTensor& A) {
  const int n = A.dim();
  std::vector<double> r(n, 0.0);
  for (int j = 1; j <= n; ++j)
    for (int l = 1; l <= n; ++l)
      for (int k = 1; k <= n; ++k) r[j - 1] += std::abs(A.at(l, k, j));
  return r;
}

inline double brute_rho(const ceig::PiezoTensor& A) {
  double best = 0.0;
  const auto r1 = brute_r1(A);
  const auto r3 = brute_r3(A);
  for (double a : r1)
    for (double b : r3) best = std::max(best, std::sqrt(a * b));
  return best;
}

// rho_S evaluated directly: per-j split sums by pair membership, the exact
// quadratic-root formula, max over (i, j) with the i-max explicit.
inline double brute_rho_subset(const ceig::PiezoTensor& A, const std::set<int>& S) {
  const int n = A.dim();
  const auto r1 = brute_r1(A);
  double best = 0.0;
  for (int j = 1; j <= n; ++j) {
    double d = 0.0, db = 0.0;
    for (int l = 1; l <= n; ++l)
      for (int k = 1; k <= n; ++k) {
        if (S.count(l) || S.count(k)) {
          d += std::abs(A.at(l, k, j));
        } else {
          db += std::abs(A.at(l, k, j));
        }
      }
    for (int i = 1; i <= n; ++i) {
      best = std::max(best, 0.5 * (d + std::sqrt(d * d + 4.0 * r1[i - 1] * db)));
    }
  }
  return best;
}

struct BruteMin {
  double value = 0.0;
  std::set<int> argmin;
};

inline BruteMin brute_rho_min(const ceig::PiezoTensor& A) {
  const int n = A.dim();
  BruteMin out;
  bool first = true;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::set<int> S;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) S.insert(b + 1);
    const double v = brute_rho_subset(A, S);
    if (first || v < out.value) {
      out.value = v;
      out.argmin = S;
      first = false;
    }
  }
  return out;
}

// Max of ||Ayy||_2 over a (theta, phi) spherical grid of unit y (n = 3).
inline double grid_max_ayy(const ceig::PiezoTensor& A, double step_deg) {
  const double rad = std::numbers::pi / 180.0;
  double best = 0.0;
  for (double th = 0.0; th <= 180.0 + 1e-9; th += step_deg) {
    for (double ph = 0.0; ph < 360.0; ph += step_deg) {
      const double t = th * rad, p = ph * rad;
      const double y0 = std::sin(t) * std::cos(p);
      const double y1 = std::sin(t) * std::sin(p);
      const double y2 = std::cos(t);
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        double u = 0.0;
        const double y[3] = {y0, y1, y2};
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) u += A(i, j, k) * y[j] * y[k];
        s += u * u;
      }
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

inline bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

// Relative with an absolute floor of tol; robust when a component cancels to
// roundoff while the surrounding quantities are O(1).
inline bool close_scaled(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testsup
