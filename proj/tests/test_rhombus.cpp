#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "rbfreg/rhombus.hpp"

using namespace rbfreg;

namespace {

double generic_det(const RhombusModel& model, double y) {
  return jacobian(closed_form_transformation(model), Point2(0.0, y)).determinant();
}

}  // namespace

TEST_CASE("closed-form coefficients match a 50-digit solve") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int draw = 0; draw < 60; ++draw) {
    const KernelSpec spec{kAllFamilies[draw % 6], std::pow(10.0, 3.0 * unit(rng))};
    const double delta = 1.0 - unit(rng);
    const auto model = build_rhombus(spec, delta);
    INFO(describe(spec), " delta=", delta);
    CHECK(oracle::relative_gap(model.c2, oracle::rhombus_c2(spec, delta)) <= 1e-9);
    CHECK(model.fitted.coefficients().col(0).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(model.c2(1) == model.c2(3));
  }
}

TEST_CASE("matern32 c=100 delta=0.4 against the fitted system") {
  const auto model = build_rhombus({KernelFamily::Matern32, 100.0}, 0.4);
  const Eigen::Vector4d fitted = model.fitted.coefficients().col(1);
  CHECK(oracle::relative_gap(model.c2, fitted) <= 1e-10);
  CHECK(std::abs(fitted(1) - fitted(3)) <= 1e-10 * std::max(1.0, std::abs(fitted(1))));
  CHECK(model.alpha_adj == eval({KernelFamily::Matern32, 100.0}, std::numbers::sqrt2));
  CHECK(model.beta_opp == eval({KernelFamily::Matern32, 100.0}, 2.0));
}

TEST_CASE("zero shift gives the identity") {
  for (auto family : kAllFamilies) {
    const auto model = build_rhombus({family, 3.0}, 0.0);
    CHECK(model.c2 == Eigen::Vector4d::Zero());
    for (double y : {1.01, 2.0, 4.5}) CHECK(det_j_exact(model, y) == 1.0);
  }
  const auto flat = fig2_profile({{KernelFamily::Gaussian, 2.0}, {KernelFamily::Matern12, 2.0}}, 0.0, 5.0, 10);
  for (const auto& p : flat) {
    for (double v : p.exact) CHECK(v == 1.0);
  }
}

TEST_CASE("exact determinant agrees with the generic Jacobian") {
  for (auto family : kAllFamilies) {
    for (double c : {2.0, 50.0, 700.0}) {
      const auto model = build_rhombus({family, c}, 0.3);
      for (int k = 1; k <= 50; ++k) {
        const double y = 1.0 + 4.0 * k / 50.0;
        CHECK(std::abs(det_j_exact(model, y) - generic_det(model, y)) <= 1e-10);
        CHECK(std::abs(det_j_exact(model, y) -
                       jacobian(model.fitted, Point2(0.0, y)).determinant()) <= 1e-8);
      }
    }
  }
  const auto model = build_rhombus({KernelFamily::Matern32, 10.0}, 0.3);
  CHECK_THROWS_AS(det_j_exact(model, 1.0), Error);
}

TEST_CASE("degenerate and invalid rhombus inputs") {
  CHECK_THROWS_AS(build_rhombus({KernelFamily::Gaussian, 1.0}, -0.1), Error);
  CHECK_THROWS_AS(build_rhombus({KernelFamily::Gaussian, 0.0}, 0.1), Error);
  try {
    build_rhombus({KernelFamily::Gaussian, 1e8}, 0.1);
    FAIL("expected degenerate configuration");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateConfiguration);
  }
}

TEST_CASE("asymptotic formulas") {
  const double delta = 0.25;
  CHECK(det_j_approx(KernelFamily::Matern32, delta, 1.0) ==
        doctest::Approx(1.0 - 1.7071 * delta * (2.0 - std::numbers::sqrt2)).epsilon(1e-14));
  CHECK(det_j_approx(KernelFamily::Matern52, 2.0 / 3.0, 1e6) == doctest::Approx(0.1464).epsilon(1e-3));
  CHECK(det_j_approx(KernelFamily::Matern12, 0.7, 1e8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(det_j_approx(KernelFamily::Matern12, 0.7, 3.0) > 1.0);
  CHECK_THROWS_AS(det_j_approx(KernelFamily::Gaussian, delta, 2.0), Error);
  CHECK_THROWS_AS(det_j_approx(KernelFamily::Matern32, delta, 0.5), Error);
}

TEST_CASE("fig2 sign structure with normalized localities") {
  const std::vector<KernelSpec> kernels = {
      {KernelFamily::Gaussian, 50.0 / 0.15}, {KernelFamily::Wendland31, 100.0 / 0.15},
      {KernelFamily::Wu12, 100.0 / 0.15},    {KernelFamily::Matern12, 100.0 / 0.15},
      {KernelFamily::Matern32, 100.0 / 0.15}, {KernelFamily::Matern52, 100.0 / 0.15}};
  const auto profiles = fig2_profile(kernels, 2.0 / 3.0, 5.0, 400);
  REQUIRE(profiles.size() == 6);
  auto lowest = [](const DetProfile& p) { return *std::min_element(p.exact.begin(), p.exact.end()); };
  CHECK(lowest(profiles[0]) < 0.0);
  CHECK(lowest(profiles[5]) < 0.01);
  for (int i = 1; i <= 4; ++i) CHECK(lowest(profiles[i]) > 0.0);
  CHECK(lowest(profiles[3]) >= 1.0);
  for (const auto& p : profiles) {
    CHECK(p.y_values.size() == 400);
    CHECK(p.y_values.front() > 1.0);
    CHECK(p.y_values.back() == 5.0);
    CHECK(p.approx.has_value() == is_matern(p.kernel.family));
  }
  const auto csv = profiles_csv(profiles);
  CHECK(csv.rfind("y,kernel,exact,approx\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 6 * 400);
}
