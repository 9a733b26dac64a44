#include "ceig/piezo_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace ceig {

namespace {

void check_vector(std::span<const double> v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n) {
    throw std::invalid_argument(std::string(what) + ": length " +
                                std::to_string(v.size()) + " does not match tensor dimension " +
                                std::to_string(n));
  }
  for (double c : v) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument(std::string(what) + ": non-finite component");
    }
  }
}

}  // namespace

PiezoTensor::PiezoTensor(int n, std::string name)
    : n_(n), name_(std::move(name)), a_(static_cast<std::size_t>(n) * n * n, 0.0) {}

PiezoTensor PiezoTensor::zero(int n, std::string name) {
  if (n < 1) {
    throw std::invalid_argument("tensor dimension must be >= 1, got " + std::to_string(n));
  }
  return PiezoTensor(n, std::move(name));
}

PiezoTensor PiezoTensor::build(int n, std::span<const TensorEntry> entries,
                               const SymmetrizationPolicy& policy, std::string name) {
  PiezoTensor t = zero(n, std::move(name));
  if (policy.tolerance < 0.0 || !std::isfinite(policy.tolerance)) {
    throw std::invalid_argument("symmetrization tolerance must be finite and >= 0");
  }

  // Listed values keyed by exact (i,j,k); detect duplicates before mirroring.
  std::map<std::tuple<int, int, int>, double> listed;
  for (const TensorEntry& e : entries) {
    if (e.i < 1 || e.i > n || e.j < 1 || e.j > n || e.k < 1 || e.k > n) {
      throw std::invalid_argument("entry index (" + std::to_string(e.i) + "," +
                                  std::to_string(e.j) + "," + std::to_string(e.k) +
                                  ") out of range for dimension " + std::to_string(n));
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("entry (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                  "," + std::to_string(e.k) + ") has non-finite value");
    }
    auto [it, inserted] = listed.emplace(std::tuple{e.i, e.j, e.k}, e.value);
    (void)it;
    if (!inserted) {
      throw std::invalid_argument("duplicate entry (" + std::to_string(e.i) + "," +
                                  std::to_string(e.j) + "," + std::to_string(e.k) + ")");
    }
  }

  // Resolve each mirror pair once, in the order entries were listed.
  std::set<std::tuple<int, int, int>> resolved;  // canonical (i, min(j,k), max(j,k))
  for (const TensorEntry& e : entries) {
    const auto canon = std::tuple{e.i, std::min(e.j, e.k), std::max(e.j, e.k)};
    auto other = listed.find(std::tuple{e.i, e.k, e.j});
    double v = e.value;
    if (e.j != e.k && other != listed.end()) {
      if (policy.mode == SymmetrizationPolicy::Mode::strict) {
        if (std::abs(e.value - other->second) > policy.tolerance) {
          throw std::invalid_argument(
              "symmetry violation at (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
              std::to_string(e.k) + "): " + std::to_string(e.value) + " vs mirrored " +
              std::to_string(other->second));
        }
        // Both listed and consistent: the first listed value wins.
        if (resolved.contains(canon)) continue;
      } else {
        v = 0.5 * (e.value + other->second);
      }
    }
    resolved.insert(canon);
    const std::size_t fwd = (static_cast<std::size_t>(e.i - 1) * n + (e.j - 1)) * n + (e.k - 1);
    const std::size_t mir = (static_cast<std::size_t>(e.i - 1) * n + (e.k - 1)) * n + (e.j - 1);
    t.a_[fwd] = v;
    t.a_[mir] = v;
  }
  return t;
}

double PiezoTensor::at(int i, int j, int k) const {
  if (i < 1 || i > n_ || j < 1 || j > n_ || k < 1 || k > n_) {
    throw std::invalid_argument("index (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + ") out of range for dimension " +
                                std::to_string(n_));
  }
  return (*this)(i - 1, j - 1, k - 1);
}

std::vector<TensorEntry> PiezoTensor::nonzero_entries() const {
  std::vector<TensorEntry> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = j; k < n_; ++k)
        if (double v = (*this)(i, j, k); v != 0.0) {
          out.push_back(TensorEntry{i + 1, j + 1, k + 1, v});
        }
  return out;
}

std::vector<double> contract_yy(const PiezoTensor& A, std::span<const double> y) {
  const int n = A.dim();
  check_vector(y, n, "contract_yy: y");
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += A(i, j, k) * y[j] * y[k];
    out[i] = s;
  }
  return out;
}

std::vector<double> contract_xy(const PiezoTensor& A, std::span<const double> x,
                                std::span<const double> y) {
  const int n = A.dim();
  check_vector(x, n, "contract_xy: x");
  check_vector(y, n, "contract_xy: y");
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += A(j, k, i) * x[j] * y[k];
    out[i] = s;
  }
  return out;
}

double form_xyy(const PiezoTensor& A, std::span<const double> x, std::span<const double> y) {
  const int n = A.dim();
  check_vector(x, n, "form_xyy: x");
  check_vector(y, n, "form_xyy: y");
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += A(i, j, k) * x[i] * y[j] * y[k];
  return s;
}

}  // namespace ceig
