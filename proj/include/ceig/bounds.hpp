#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ceig/piezo_tensor.hpp"

namespace ceig {

/// Absolute row sums over the first and third modes:
///   r1[i] = sum_{l,k} |a_ilk|,   r3[j] = sum_{l,k} |a_lkj|.
/// Both accumulate over all n^2 pairs (l,k) in ascending order.
struct RowSums {
  std::vector<double> r1;
  std::vector<double> r3;
};

RowSums row_sums(const PiezoTensor& A);

/// Interval radius sqrt(max_i r1[i] * max_j r3[j]); every C-eigenvalue of A
/// lies in [-rho, rho].
double rho(const PiezoTensor& A);

/// Index subset of {1,...,n} as a bitmask: bit b set means index b+1 is in S.
using SubsetMask = std::uint32_t;

/// Members of a mask as sorted 1-based indices.
std::vector<int> subset_indices(SubsetMask mask, int n);

/// Partition of the mode-3 row sums by the pair set
///   Delta_S = {(l,k) : l in S or k in S} and its complement:
///   r3_delta[j]     = sum over (l,k) in Delta_S of |a_lkj|
///   r3_delta_bar[j] = sum over (l,k) avoiding S of |a_lkj|
/// r3_delta_bar is accumulated directly in ascending (l,k) order, r3_delta as
/// its complement against the full row sum from the same order; the
/// construction guarantees r3_delta[j] + r3_delta_bar[j] == r3[j] bit-exactly.
/// S = {} gives r3_delta == 0 and S = N gives r3_delta_bar == 0, also exactly.
struct SubsetSplit {
  SubsetMask subset = 0;
  std::vector<double> r3_delta;
  std::vector<double> r3_delta_bar;
};

SubsetSplit subset_split(const PiezoTensor& A, SubsetMask S);

/// Nonnegative root of t*(t - r_delta) = r1max*r_delta_bar, i.e.
///   t = (r_delta + sqrt(r_delta^2 + 4*r1max*r_delta_bar)) / 2.
/// Degenerate inputs resolve exactly: r1max*r_delta_bar == 0 returns r_delta,
/// r_delta == 0 returns sqrt(r1max*r_delta_bar).
/// Throws std::invalid_argument on negative or non-finite input.
double quadratic_root_check(double r_delta, double r1max, double r_delta_bar);

/// Interval radius for one subset S:
///   rho_S = max_j (r3_delta[j] + sqrt(r3_delta[j]^2
///                  + 4 * max_i r1[i] * r3_delta_bar[j])) / 2.
/// The maximum over i reduces to max_i r1[i] since r1 enters through a
/// nonnegative product only. rho_subset(A, 0) == rho(A) and
/// rho_subset(A, full mask) == max_j r3[j].
double rho_subset(const PiezoTensor& A, SubsetMask S);

enum class EnumerationMode { full, heuristic };

/// Result of the subset minimization. rho_min <= rho always; the interval
/// [-rho_min, rho_min] contains every C-eigenvalue of A.
struct BoundsReport {
  double rho = 0.0;
  double rho_min = 0.0;
  SubsetMask argmin_subset = 0;
  std::pair<double, double> interval{0.0, 0.0};  // (-rho_min, +rho_min)
  std::vector<std::pair<SubsetMask, double>> per_subset;  // full mode only
  EnumerationMode enumeration_mode = EnumerationMode::full;
};

inline constexpr int kDefaultSubsetCap = 14;

/// Minimizes rho_S over subsets. Full mode scans all 2^n masks in ascending
/// order (ties keep the smallest mask) and records the per-subset table;
/// it refuses n > n_cap. Heuristic mode scans {}, N, all singletons and all
/// complements of singletons — every member gives a valid radius, so the
/// result is correct but possibly larger than the full minimum.
BoundsReport rho_min(const PiezoTensor& A, EnumerationMode mode = EnumerationMode::full,
                     int n_cap = kDefaultSubsetCap);

}  // namespace ceig
