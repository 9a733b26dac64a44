#pragma once

#include <span>
#include <string>
#include <vector>

namespace ceig {

/// How to resolve a mirror pair (i,j,k)/(i,k,j) when both are supplied.
struct SymmetrizationPolicy {
  enum class Mode { strict, average };

  Mode mode = Mode::strict;
  double tolerance = 1e-12;  // strict mode: max allowed |a_ijk - a_ikj|

  static SymmetrizationPolicy strict(double tol = 1e-12) {
    return SymmetrizationPolicy{Mode::strict, tol};
  }
  static SymmetrizationPolicy average() {
    return SymmetrizationPolicy{Mode::average, 0.0};
  }
};

/// One sparse entry with 1-based indices.
struct TensorEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Order-3 real tensor of dimension n, symmetric in its last two indices:
/// a_ijk == a_ikj holds bit-exactly for every constructed instance, and every
/// entry is finite. Dense n^3 storage; immutable after construction, so all
/// operations on it are safe to call concurrently.
class PiezoTensor {
 public:
  static PiezoTensor zero(int n, std::string name = {});

  /// Builds from sparse 1-based entries. Missing mirrors are filled with the
  /// listed value; if both members of a mirror pair are listed, the policy
  /// decides (strict: values must agree within tolerance, the first listed
  /// wins; average: their mean lands in both slots). Unlisted entries are 0.
  ///
  /// Throws std::invalid_argument on out-of-range indices, duplicate (i,j,k)
  /// triples, non-finite values, or a strict-mode symmetry violation.
  static PiezoTensor build(int n, std::span<const TensorEntry> entries,
                           const SymmetrizationPolicy& policy = {},
                           std::string name = {});

  int dim() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }

  /// 1-based, bounds-checked access.
  double at(int i, int j, int k) const;

  /// 0-based, unchecked access (hot path).
  double operator()(int i, int j, int k) const noexcept {
    return a_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }

  /// Canonical sparse view: nonzero entries with j <= k (mirrors implied),
  /// sorted by (i, j, k), 1-based.
  std::vector<TensorEntry> nonzero_entries() const;

  /// Entry-wise equality (n and all values; names are ignored).
  bool values_equal(const PiezoTensor& other) const noexcept {
    return n_ == other.n_ && a_ == other.a_;
  }

 private:
  PiezoTensor(int n, std::string name);

  int n_ = 0;
  std::string name_;
  std::vector<double> a_;  // index (i*n + j)*n + k, 0-based
};

/// (Ayy)_i = sum_{j,k} a_ijk y_j y_k. No normalization applied.
std::vector<double> contract_yy(const PiezoTensor& A, std::span<const double> y);

/// (xAy)_i = sum_{j,k} a_jki x_j y_k.
std::vector<double> contract_xy(const PiezoTensor& A, std::span<const double> x,
                                std::span<const double> y);

/// xAyy = sum_{i,j,k} a_ijk x_i y_j y_k.
double form_xyy(const PiezoTensor& A, std::span<const double> x,
                std::span<const double> y);

}  // namespace ceig
