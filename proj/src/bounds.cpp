#include "ceig/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ceig {

namespace {

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

void check_mask(SubsetMask S, int n) {
  if (n > 31) throw std::invalid_argument("subset masks support dimension <= 31");
  if ((S >> n) != 0) {
    throw std::invalid_argument("subset mask " + std::to_string(S) +
                                " has indices out of range for dimension " + std::to_string(n));
  }
}

SubsetMask full_mask(int n) { return (SubsetMask{1} << n) - 1; }

// Complement row sums directly (ascending (l,k)); delta part as complement
// against r3 from the same order. Rounding can leave (r3 - bar) + bar one
// ulp away from r3, so the larger part is stepped until the partition
// identity holds bit-exactly (its ulp matches the needed correction; the
// smaller part's would not).
SubsetSplit split_against(const PiezoTensor& A, SubsetMask S, const RowSums& rs) {
  const int n = A.dim();
  SubsetSplit sp;
  sp.subset = S;
  sp.r3_delta.assign(n, 0.0);
  sp.r3_delta_bar.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double bar = 0.0;
    for (int l = 0; l < n; ++l) {
      if (S & (SubsetMask{1} << l)) continue;
      for (int k = 0; k < n; ++k) {
        if (S & (SubsetMask{1} << k)) continue;
        bar += std::abs(A(l, k, j));
      }
    }
    double delta = rs.r3[j] - bar;
    if (delta < 0.0) delta = 0.0;
    int guard = 0;
    while (delta + bar != rs.r3[j] && guard++ < 128) {
      const bool was_low = delta + bar < rs.r3[j];
      double& big = delta >= bar ? delta : bar;
      double& small = delta >= bar ? bar : delta;
      big = std::nextafter(big, was_low ? HUGE_VAL : -HUGE_VAL);
      const double sum = delta + bar;
      if (sum != rs.r3[j] && (sum < rs.r3[j]) != was_low && small > 0.0) {
        // stepped across r3: the real sum sits on a rounding midpoint, and
        // big's ulp keeps landing on it; one finer step of the smaller part
        // moves it off the tie
        small = std::nextafter(small, sum < rs.r3[j] ? HUGE_VAL : -HUGE_VAL);
      }
    }
    sp.r3_delta[j] = delta;
    sp.r3_delta_bar[j] = bar;
  }
  return sp;
}

double rho_subset_against(const PiezoTensor& A, SubsetMask S, const RowSums& rs, double r1max) {
  const SubsetSplit sp = split_against(A, S, rs);
  double best = 0.0;
  for (int j = 0; j < A.dim(); ++j) {
    best = std::max(best, quadratic_root_check(sp.r3_delta[j], r1max, sp.r3_delta_bar[j]));
  }
  return best;
}

}  // namespace

RowSums row_sums(const PiezoTensor& A) {
  const int n = A.dim();
  RowSums rs;
  rs.r1.assign(n, 0.0);
  rs.r3.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) s += std::abs(A(i, l, k));
    rs.r1[i] = s;
  }
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) s += std::abs(A(l, k, j));
    rs.r3[j] = s;
  }
  return rs;
}

double rho(const PiezoTensor& A) {
  const RowSums rs = row_sums(A);
  return std::sqrt(max_of(rs.r1) * max_of(rs.r3));
}

std::vector<int> subset_indices(SubsetMask mask, int n) {
  std::vector<int> out;
  for (int b = 0; b < n; ++b)
    if (mask & (SubsetMask{1} << b)) out.push_back(b + 1);
  return out;
}

SubsetSplit subset_split(const PiezoTensor& A, SubsetMask S) {
  check_mask(S, A.dim());
  return split_against(A, S, row_sums(A));
}

double quadratic_root_check(double r_delta, double r1max, double r_delta_bar) {
  if (!(r_delta >= 0.0) || !(r1max >= 0.0) || !(r_delta_bar >= 0.0) ||
      !std::isfinite(r_delta) || !std::isfinite(r1max) || !std::isfinite(r_delta_bar)) {
    throw std::invalid_argument("quadratic_root_check: inputs must be finite and >= 0");
  }
  const double c = r1max * r_delta_bar;
  if (c == 0.0) return r_delta;             // t*(t - d) = 0, nonnegative root t = d
  if (r_delta == 0.0) return std::sqrt(c);  // t^2 = c
  return 0.5 * (r_delta + std::sqrt(r_delta * r_delta + 4.0 * c));
}

double rho_subset(const PiezoTensor& A, SubsetMask S) {
  check_mask(S, A.dim());
  const RowSums rs = row_sums(A);
  return rho_subset_against(A, S, rs, max_of(rs.r1));
}

BoundsReport rho_min(const PiezoTensor& A, EnumerationMode mode, int n_cap) {
  const int n = A.dim();
  check_mask(0, n);
  const RowSums rs = row_sums(A);
  const double r1max = max_of(rs.r1);

  BoundsReport rep;
  rep.rho = std::sqrt(r1max * max_of(rs.r3));
  rep.enumeration_mode = mode;

  std::vector<SubsetMask> masks;
  if (mode == EnumerationMode::full) {
    if (n > n_cap) {
      throw std::invalid_argument("full subset enumeration needs 2^" + std::to_string(n) +
                                  " evaluations; raise the cap (n_cap = " +
                                  std::to_string(n_cap) + ") or use heuristic mode");
    }
    masks.resize(std::size_t{1} << n);
    for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = static_cast<SubsetMask>(m);
  } else {
    masks.push_back(0);
    for (int b = 0; b < n; ++b) masks.push_back(SubsetMask{1} << b);
    for (int b = 0; b < n; ++b) masks.push_back(full_mask(n) & ~(SubsetMask{1} << b));
    masks.push_back(full_mask(n));
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  }

  double best = -1.0;
  SubsetMask best_mask = 0;
  for (SubsetMask m : masks) {
    const double v = rho_subset_against(A, m, rs, r1max);
    if (mode == EnumerationMode::full) rep.per_subset.emplace_back(m, v);
    if (best < 0.0 || v < best) {  // ascending masks: ties keep the smallest
      best = v;
      best_mask = m;
    }
  }
  rep.rho_min = best;
  rep.argmin_subset = best_mask;
  rep.interval = {-best, best};
  return rep;
}

}  // namespace ceig
