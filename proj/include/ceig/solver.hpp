#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ceig/bounds.hpp"
#include "ceig/piezo_tensor.hpp"

namespace ceig {

/// Raised when a numerical routine cannot produce an acceptable result
/// (no start converged, inner eigensolver stalled).
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A C-eigenpair: Ayy = lambda*x, xAy = lambda*y with unit x, y.
/// residual_x = ||Ayy - lambda*x||_inf, residual_y = ||xAy - lambda*y||_inf.
struct CEigenpair {
  double lambda = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  double residual_x = 0.0;
  double residual_y = 0.0;
};

struct SolveConfig {
  int random_starts = 50;       // on top of the 2n signed coordinate starts
  std::uint64_t seed = 0;
  double tol = 1e-12;           // relative change of lambda per iteration
  double residual_tol = 1e-8;   // acceptance threshold on both residuals
  int max_iters = 1000;         // per-start cap

  /// Optional observer called after every ascent step with
  /// (start index, iteration, objective value).
  std::function<void(int, int, double)> on_iteration;
};

/// Multi-start result. best.lambda is the largest stationary value found —
/// the computed largest C-eigenvalue — and is reported >= 0 (sign symmetry
/// allows flipping (lambda, x) together).
struct SolveReport {
  CEigenpair best;
  std::vector<double> stationary_values;  // sorted ascending, deduplicated
  int starts_used = 0;
  long iterations_total = 0;
};

/// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
  int n = 0;
  std::vector<double> a;

  static SymmetricMatrix zero(int n) {
    return SymmetricMatrix{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
  }
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

/// M(x)_jk = sum_i a_ijk x_i. Symmetric bit-exactly (mirrored from j <= k).
/// With it the solver objective regroups as xAyy = y^T M(x) y and the right
/// eigen-equation as xAy = M(x) y.
SymmetricMatrix projected_matrix(const PiezoTensor& A, std::span<const double> x);

/// Largest eigenvalue and a unit eigenvector of a symmetric matrix, by cyclic
/// Jacobi rotations until every off-diagonal magnitude is <= tol * ||M||_F
/// (50-sweep cap; throws SolveError beyond it). The eigenvector sign is fixed
/// so that its largest-magnitude component is positive.
std::pair<double, std::vector<double>> leading_sym_eigenpair(const SymmetricMatrix& M,
                                                             double tol = 1e-14);

/// Computes the largest C-eigenvalue by block-coordinate ascent on the two
/// unit spheres from 2n signed coordinate starts plus cfg.random_starts
/// uniform-on-sphere starts (deterministic per-start streams derived from
/// cfg.seed). Each ascent step maximizes xAyy exactly in one block:
/// x <- Ayy/||Ayy||, then y <- leading eigenvector of M(x); the objective is
/// nondecreasing. A start is accepted once the objective change is <= tol
/// (relative) and both residuals are <= residual_tol.
/// Throws SolveError if no start is accepted.
SolveReport solve_largest(const PiezoTensor& A, const SolveConfig& cfg = {});

/// Residuals of a candidate pair; inputs must be unit within 1e-10.
std::pair<double, double> residuals(const PiezoTensor& A, const CEigenpair& pair);

/// The four sign-symmetric variants [(l,x,y), (l,x,-y), (-l,-x,y), (-l,-x,-y)].
/// Residuals carry over unchanged (the defining equations are sign-covariant),
/// so the stored residuals are copied from the input.
std::array<CEigenpair, 4> sign_quadruple(const CEigenpair& pair);

/// Containment checks tying solver and bounds together.
struct VerificationRecord {
  double lambda_star = 0.0;
  double rho = 0.0;
  double rho_min = 0.0;
  bool lambda_within_rho_min = false;   // lambda* <= rho_min + 1e-8
  bool rho_min_within_rho = false;      // rho_min <= rho + 1e-12
  bool stationary_within_interval = false;
  bool pass = false;
  SolveReport solve;
  BoundsReport bounds;
};

VerificationRecord verify_containment(const PiezoTensor& A, const SolveConfig& cfg = {},
                                      EnumerationMode mode = EnumerationMode::full,
                                      int n_cap = kDefaultSubsetCap);

}  // namespace ceig
