#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rbfreg/kernels.hpp"

using namespace rbfreg;

namespace {

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

double central_difference(const KernelSpec& spec, double r, double h) {
  return (eval(spec, r + h) - eval(spec, r - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("eval matches the closed forms at reference points") {
  for (auto family : kAllFamilies) {
    CHECK(eval({family, 1.0}, 0.0) == 1.0);
    CHECK(eval({family, 0.37}, 0.0) == 1.0);
  }
  CHECK(eval({KernelFamily::Wendland31, 1.0}, 1.0) == 0.0);
  CHECK(eval({KernelFamily::Matern32, 1.0}, 1.0) == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-15));
  CHECK(eval({KernelFamily::Wu12, 2.0}, 1.0) == doctest::Approx(0.0625 * 3.84375).epsilon(1e-15));
  CHECK(eval({KernelFamily::Wu12, 2.0}, 1.0) == doctest::Approx(0.24023438).epsilon(1e-8));
  CHECK(eval({KernelFamily::Gaussian, 2.0}, 2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(eval({KernelFamily::Matern52, 1.0}, 3.0) == doctest::Approx(7.0 * std::exp(-3.0)));
}

TEST_CASE("eval rejects bad input") {
  CHECK_THROWS_AS(eval({KernelFamily::Gaussian, 0.0}, 1.0), Error);
  CHECK_THROWS_AS(eval({KernelFamily::Gaussian, -1.0}, 1.0), Error);
  CHECK_THROWS_AS(eval({KernelFamily::Gaussian, 1.0}, -0.1), Error);
  try {
    eval({KernelFamily::Matern12, 0.0}, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
  try {
    eval({KernelFamily::Matern12, 1.0}, -1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("profiles decay monotonically and compact kernels vanish outside support") {
  for (auto family : kAllFamilies) {
    for (double c : {0.1, 1.0, 7.5}) {
      const KernelSpec spec{family, c};
      double prev = eval(spec, 0.0);
      for (int i = 1; i <= 1000; ++i) {
        const double r = 5.0 * c * i / 1000.0;
        const double v = eval(spec, r);
        CHECK(v <= prev);
        if (is_compact(family)) {
          if (r >= c) CHECK(v == 0.0);
        } else {
          CHECK(v > 0.0);
        }
        prev = v;
      }
    }
  }
}

TEST_CASE("radial derivative agrees with central differences") {
  for (auto family : kAllFamilies) {
    for (double c : {0.25, 1.0, 40.0}) {
      const KernelSpec spec{family, c};
      const double h = 1e-6 * c;
      for (int i = 0; i < 100; ++i) {
        const double r = c * (0.01 + (3.0 - 0.01) * (i + 0.5) / 100.0);
        if (is_compact(family) && std::abs(r - c) <= 2.0 * h) continue;
        const double analytic = radial_derivative(spec, r);
        const double numeric = central_difference(spec, r, h);
        CHECK(std::abs(analytic - numeric) <= 1e-6 * std::max(1.0, std::abs(analytic)));
      }
    }
  }
}

TEST_CASE("radial derivative reference values and origin limits") {
  CHECK(radial_derivative({KernelFamily::Matern32, 1.0}, 1.0) == doctest::Approx(-std::exp(-1.0)));
  CHECK(radial_derivative({KernelFamily::Wendland31, 1.0}, 1.0) == 0.0);
  CHECK(radial_derivative({KernelFamily::Wu12, 1.0}, 1.5) == 0.0);
  CHECK(radial_derivative({KernelFamily::Gaussian, 1.0}, 1.0 / std::numbers::sqrt2) ==
        doctest::Approx(-std::numbers::sqrt2 * std::exp(-0.5)));
  CHECK(radial_derivative({KernelFamily::Gaussian, 1.0}, 1.0 / std::numbers::sqrt2) ==
        doctest::Approx(-0.8577639).epsilon(1e-7));
  for (auto family : kAllFamilies) {
    const double at_origin = radial_derivative({family, 2.0}, 0.0);
    if (has_cusp_at_origin(family)) {
      CHECK(at_origin == -0.5);
    } else {
      CHECK(at_origin == 0.0);
    }
  }
  CHECK(has_cusp_at_origin(KernelFamily::Matern12));
  CHECK_FALSE(has_cusp_at_origin(KernelFamily::Matern32));
}

TEST_CASE("scale covariance of value and derivative") {
  for (auto family : kAllFamilies) {
    for (double c : {0.05, 3.0, 90.0}) {
      for (double s : {0.0, 0.2, 0.77, 1.3, 4.0}) {
        const double r = s * c;
        CHECK(eval({family, c}, r) == doctest::Approx(eval({family, 1.0}, s)).epsilon(1e-14));
        CHECK(radial_derivative({family, c}, r) ==
              doctest::Approx(radial_derivative({family, 1.0}, s) / c).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("unit derivative minima") {
  const auto m32 = unit_derivative_min(KernelFamily::Matern32);
  CHECK(m32.r_star == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m32.value == doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));

  const double golden = (std::sqrt(5.0) + 1.0) / 2.0;
  const auto m52 = unit_derivative_min(KernelFamily::Matern52);
  CHECK(m52.r_star == doctest::Approx(golden).epsilon(1e-8));
  // (s + s^2)/3 e^{-s} at the golden ratio, with s^2 = s + 1.
  CHECK(m52.value == doctest::Approx(-(2.0 * golden + 1.0) / 3.0 * std::exp(-golden)).epsilon(1e-12));
  CHECK(m52.value == doctest::Approx(-0.27996).epsilon(2e-4));

  const auto w = unit_derivative_min(KernelFamily::Wendland31);
  CHECK(w.r_star == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(w.value == doctest::Approx(-135.0 / 64.0).epsilon(1e-12));

  const auto g = unit_derivative_min(KernelFamily::Gaussian);
  CHECK(g.r_star == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-8));

  const auto m12 = unit_derivative_min(KernelFamily::Matern12);
  CHECK(m12.limit_at_origin);
  CHECK(m12.r_star == 0.0);
  CHECK(m12.value == -1.0);
  CHECK_FALSE(m32.limit_at_origin);
}

TEST_CASE("half-integer Bessel K closed forms") {
  const double root = std::sqrt(std::numbers::pi / 2.0);
  CHECK(bessel_k_half(HalfIntegerOrder::from_numerator(1), 1.0) == doctest::Approx(root / std::numbers::e));
  CHECK(bessel_k_half(HalfIntegerOrder::from_numerator(1), 1.0) == doctest::Approx(0.4610685).epsilon(1e-7));
  CHECK(bessel_k_half(HalfIntegerOrder::from_numerator(3), 1.0) == doctest::Approx(0.9221370).epsilon(1e-7));
  CHECK(bessel_k_half(HalfIntegerOrder::from_numerator(5), 700.0) < 1e-300);
  // Recurrence K_{v+1}(z) = K_{v-1}(z) + (2v/z) K_v(z), with K_{-1/2} = K_{1/2}.
  for (double z : {0.01, 0.5, 2.0, 13.0}) {
    const double k1 = bessel_k_half(HalfIntegerOrder::from_numerator(1), z);
    const double k3 = bessel_k_half(HalfIntegerOrder::from_numerator(3), z);
    const double k5 = bessel_k_half(HalfIntegerOrder::from_numerator(5), z);
    CHECK(k3 == doctest::Approx(k1 + (1.0 / z) * k1).epsilon(1e-14));
    CHECK(k5 == doctest::Approx(k1 + (3.0 / z) * k3).epsilon(1e-14));
  }
  CHECK_THROWS_AS(bessel_k_half(HalfIntegerOrder::from_numerator(3), 0.0), Error);
  CHECK_THROWS_AS(HalfIntegerOrder::from_numerator(7), Error);
  CHECK_THROWS_AS(HalfIntegerOrder::for_family(KernelFamily::Gaussian), Error);
}

TEST_CASE("Bessel form of the Matern kernel equals the closed forms") {
  const KernelFamily families[] = {KernelFamily::Matern12, KernelFamily::Matern32, KernelFamily::Matern52};
  for (auto family : families) {
    const auto order = HalfIntegerOrder::for_family(family);
    for (double c : {0.3, 1.0, 250.0}) {
      for (double s : log_space(1e-6, 20.0, 200)) {
        const double via_bessel = matern_via_bessel(order, c, s * c);
        const double closed = eval({family, c}, s * c);
        CHECK(std::abs(via_bessel - closed) <= 1e-12 * closed);
      }
    }
  }
  CHECK(matern_via_bessel(HalfIntegerOrder::from_numerator(3), 1.0, 1.0) ==
        doctest::Approx(2.0 / std::numbers::e).epsilon(1e-14));
  CHECK(matern_via_bessel(HalfIntegerOrder::from_numerator(5), 1.0, 3.0) ==
        doctest::Approx(0.3485095).epsilon(1e-7));
  CHECK_THROWS_AS(matern_via_bessel(HalfIntegerOrder::from_numerator(1), 1.0, 0.0), Error);
}

TEST_CASE("family names round-trip") {
  for (auto family : kAllFamilies) CHECK(parse_family(family_name(family)) == family);
  CHECK_FALSE(parse_family("tps").has_value());
}
