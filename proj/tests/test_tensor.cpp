#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <vector>

#include "ceig/dataset.hpp"
#include "ceig/piezo_tensor.hpp"
#include "support.hpp"

using ceig::PiezoTensor;
using ceig::SymmetrizationPolicy;
using ceig::TensorEntry;

namespace {

int count_nonzero_slots(const PiezoTensor& A) {
  int c = 0;
  for (int i = 1; i <= A.dim(); ++i)
    for (int j = 1; j <= A.dim(); ++j)
      for (int k = 1; k <= A.dim(); ++k)
        if (A.at(i, j, k) != 0.0) ++c;
  return c;
}

}  // namespace

TEST_CASE("build mirrors single-sided entries") {
  const double v = -3.68180677;
  const auto A = PiezoTensor::build(3, std::vector<TensorEntry>{{1, 2, 3, v}, {2, 1, 3, v},
                                                                {3, 1, 2, v}});
  CHECK(count_nonzero_slots(A) == 6);
  CHECK(A.at(1, 2, 3) == v);
  CHECK(A.at(1, 3, 2) == v);
  CHECK(A.at(2, 1, 3) == v);
  CHECK(A.at(2, 3, 1) == v);
  CHECK(A.at(3, 1, 2) == v);
  CHECK(A.at(3, 2, 1) == v);
}

TEST_CASE("empty entry list gives the zero tensor") {
  const auto A = PiezoTensor::build(2, std::vector<TensorEntry>{});
  CHECK(A.dim() == 2);
  CHECK(count_nonzero_slots(A) == 0);
}

TEST_CASE("strict mode rejects an inconsistent mirror pair") {
  const std::vector<TensorEntry> e{{1, 1, 2, 1.0}, {1, 2, 1, 3.0}};
  CHECK_THROWS_AS(PiezoTensor::build(2, e, SymmetrizationPolicy::strict(1e-12)),
                  std::invalid_argument);
}

TEST_CASE("strict mode keeps the first listed value of a consistent pair") {
  const double v1 = 1.0;
  const double v2 = 1.0 + 4e-13;
  const auto A = PiezoTensor::build(2, std::vector<TensorEntry>{{1, 1, 2, v1}, {1, 2, 1, v2}},
                                    SymmetrizationPolicy::strict(1e-12));
  CHECK(A.at(1, 1, 2) == v1);
  CHECK(A.at(1, 2, 1) == v1);
}

TEST_CASE("average mode stores the mean in both slots") {
  const auto A = PiezoTensor::build(2, std::vector<TensorEntry>{{1, 1, 2, 1.0}, {1, 2, 1, 3.0}},
                                    SymmetrizationPolicy::average());
  CHECK(A.at(1, 1, 2) == 2.0);
  CHECK(A.at(1, 2, 1) == 2.0);
}

TEST_CASE("build rejects bad input") {
  CHECK_THROWS_AS(PiezoTensor::build(2, std::vector<TensorEntry>{{1, 1, 3, 1.0}}),
                  std::invalid_argument);  // index out of range
  CHECK_THROWS_AS(PiezoTensor::build(2, std::vector<TensorEntry>{{0, 1, 1, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      PiezoTensor::build(2, std::vector<TensorEntry>{{1, 1, 2, 1.0}, {1, 1, 2, 1.0}}),
      std::invalid_argument);  // duplicate triple, even with equal values
  CHECK_THROWS_AS(PiezoTensor::build(
                      2, std::vector<TensorEntry>{{1, 1, 1, std::numeric_limits<double>::infinity()}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PiezoTensor::build(
                      2, std::vector<TensorEntry>{{1, 1, 1, std::numeric_limits<double>::quiet_NaN()}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PiezoTensor::zero(0), std::invalid_argument);
}

TEST_CASE("constructed tensors are symmetric bit-for-bit") {
  testsup::Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto A = testsup::random_tensor(3, rng);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) CHECK(A.at(i, j, k) == A.at(i, k, j));
  }
}

TEST_CASE("mirror-order of average inputs does not matter") {
  testsup::Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    const double v1 = rng.uniform_pm1();
    const double v2 = v1 + 1e-9 * rng.uniform_pm1();
    const auto A1 = PiezoTensor::build(
        3, std::vector<TensorEntry>{{1, 2, 3, v1}, {1, 3, 2, v2}}, SymmetrizationPolicy::average());
    const auto A2 = PiezoTensor::build(
        3, std::vector<TensorEntry>{{1, 2, 3, v2}, {1, 3, 2, v1}}, SymmetrizationPolicy::average());
    CHECK(A1.values_equal(A2));
    const std::vector<double> y{0.3, -0.8, 0.52};
    CHECK(contract_yy(A1, y) == contract_yy(A2, y));
  }
}

TEST_CASE("contract_yy on dataset examples") {
  const auto& ba = ceig::dataset_get("BaNiO3").tensor;
  const std::vector<double> e3{0.0, 0.0, 1.0};
  const auto u = contract_yy(ba, e3);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == 0.0);
  CHECK(u[2] == 27.4628);

  const auto& vf = ceig::dataset_get("VFeSb").tensor;
  const double c = 1.0 / std::sqrt(3.0);
  const std::vector<double> yd{c, c, c};
  const auto w = contract_yy(vf, yd);
  const double expect = 2.0 * -3.68180677 / 3.0;  // two equal terms per row
  for (double wi : w) CHECK(testsup::close_rel(wi, expect, 1e-12));

  const std::vector<double> y0{0.0, 0.0, 0.0};
  for (double wi : contract_yy(vf, y0)) CHECK(wi == 0.0);
}

TEST_CASE("contract_xy on dataset examples") {
  const auto& ba = ceig::dataset_get("BaNiO3").tensor;
  const std::vector<double> e3{0.0, 0.0, 1.0};
  const auto u = contract_xy(ba, e3, e3);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == 0.0);
  CHECK(u[2] == 27.4628);

  const auto& vf = ceig::dataset_get("VFeSb").tensor;
  const std::vector<double> e1{1.0, 0.0, 0.0};
  for (double ui : contract_xy(vf, e1, e1)) CHECK(ui == 0.0);

  const std::vector<double> x0{0.0, 0.0, 0.0};
  const std::vector<double> y{0.4, 0.2, -0.9};
  for (double ui : contract_xy(ba, x0, y)) CHECK(ui == 0.0);
}

TEST_CASE("form_xyy on dataset examples") {
  const auto& ba = ceig::dataset_get("BaNiO3").tensor;
  const std::vector<double> e3{0.0, 0.0, 1.0};
  CHECK(form_xyy(ba, e3, e3) == 27.4628);

  const auto& vf = ceig::dataset_get("VFeSb").tensor;
  const double c = 1.0 / std::sqrt(3.0);
  const std::vector<double> d{c, c, c};
  CHECK(testsup::close_rel(form_xyy(vf, d, d), 2.0 * -3.68180677 / std::sqrt(3.0), 1e-12));

  const std::vector<double> x0{0.0, 0.0, 0.0};
  CHECK(form_xyy(vf, x0, d) == 0.0);
}

TEST_CASE("contraction shape and finiteness errors") {
  const auto& vf = ceig::dataset_get("VFeSb").tensor;
  const std::vector<double> bad_len{1.0, 2.0};
  const std::vector<double> y{1.0, 0.0, 0.0};
  const std::vector<double> with_nan{1.0, std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS(contract_yy(vf, bad_len), std::invalid_argument);
  CHECK_THROWS_AS(contract_yy(vf, with_nan), std::invalid_argument);
  CHECK_THROWS_AS(contract_xy(vf, bad_len, y), std::invalid_argument);
  CHECK_THROWS_AS(contract_xy(vf, y, with_nan), std::invalid_argument);
  CHECK_THROWS_AS(form_xyy(vf, y, bad_len), std::invalid_argument);
}

TEST_CASE("homogeneity, linearity and adjointness") {
  testsup::Rng rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    const auto A = testsup::random_tensor(3, rng);
    std::vector<double> x(3), y(3), y2(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.uniform_pm1();
      y[i] = rng.uniform_pm1();
      y2[i] = rng.uniform_pm1();
    }
    const double c = 4.0 * rng.uniform_pm1();

    // contract_yy(A, c y) == c^2 contract_yy(A, y)
    std::vector<double> cy(3);
    for (int i = 0; i < 3; ++i) cy[i] = c * y[i];
    const auto u = contract_yy(A, y);
    const auto uc = contract_yy(A, cy);
    for (int i = 0; i < 3; ++i) CHECK(testsup::close_scaled(uc[i], c * c * u[i], 1e-12));

    // contract_xy linear in x
    std::vector<double> cx(3);
    for (int i = 0; i < 3; ++i) cx[i] = c * x[i];
    const auto w = contract_xy(A, x, y);
    const auto wc = contract_xy(A, cx, y);
    for (int i = 0; i < 3; ++i) CHECK(testsup::close_scaled(wc[i], c * w[i], 1e-12));

    // contract_xy additive in y (linearity checked against summed inputs)
    std::vector<double> ysum(3);
    for (int i = 0; i < 3; ++i) ysum[i] = y[i] + y2[i];
    const auto wy = contract_xy(A, x, y);
    const auto wy2 = contract_xy(A, x, y2);
    const auto wsum = contract_xy(A, x, ysum);
    for (int i = 0; i < 3; ++i) CHECK(testsup::close_scaled(wsum[i], wy[i] + wy2[i], 1e-12));

    // adjointness: x . Ayy == y . xAy == form_xyy
    double dot_x_u = 0.0, dot_y_w = 0.0;
    for (int i = 0; i < 3; ++i) {
      dot_x_u += x[i] * u[i];
      dot_y_w += y[i] * w[i];
    }
    const double f = form_xyy(A, x, y);
    CHECK(testsup::close_scaled(dot_x_u, f, 1e-12));
    CHECK(testsup::close_scaled(dot_y_w, f, 1e-12));
  }
}
