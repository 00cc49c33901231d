#include "rbfreg/rhombus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rbfreg/format.hpp"

namespace rbfreg {

namespace {

constexpr double kDegenerateTolerance = 1e-14;
constexpr double kOracleTolerance = 1e-8;

const std::array<Point2, 4>& rhombus_vertices() {
  static const std::array<Point2, 4> vertices = {Point2(0.0, 1.0), Point2(-1.0, 0.0),
                                                 Point2(0.0, -1.0), Point2(1.0, 0.0)};
  return vertices;
}

}  // namespace

LandmarkPairs rhombus_landmarks(double delta) {
  LandmarkPairs pairs;
  for (const auto& v : rhombus_vertices()) {
    pairs.source.push_back(v);
    pairs.target.push_back(v);
  }
  pairs.target[2].y() -= delta;
  return pairs;
}

RhombusModel build_rhombus(const KernelSpec& kernel, double delta) {
  kernel.validate();
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::InvalidArgument, "rhombus shift must be finite and nonnegative");
  }
  const double a = eval(kernel, std::numbers::sqrt2);
  const double b = eval(kernel, 2.0);

  // With a, b close to 1 the differences below are exact in binary floating
  // point, which keeps the small denominators accurate for large supports.
  const double one_minus_a = 1.0 - a;
  const double one_minus_b = 1.0 - b;
  const double a_minus_b = a - b;
  const double t = one_minus_a - a_minus_b;  // 1 + b - 2a
  const double denom = t * (1.0 + b + 2.0 * a);  // (1+b)^2 - 4a^2
  if (std::abs(one_minus_b) < kDegenerateTolerance || std::abs(denom) < kDegenerateTolerance) {
    throw Error(ErrorKind::DegenerateConfiguration,
                "rhombus system is degenerate for " + describe(kernel));
  }
  const double num1 = -a_minus_b * (1.0 + a + b) + a * one_minus_a;  // b^2 + b - 2a^2
  const double num3 = one_minus_a * (1.0 + 2.0 * a) - a_minus_b;     // 1 + b - 2a^2

  Eigen::Vector4d c2;
  c2(0) = delta * num1 / (one_minus_b * denom);
  c2(1) = delta * a / denom;
  c2(2) = -delta * num3 / (one_minus_b * denom);
  c2(3) = c2(1);

  auto [fitted, diag] = fit(rhombus_landmarks(delta), kernel);

  const auto& coeffs = fitted.coefficients();
  if (coeffs.col(0).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::InternalConsistency,
                "rhombus fit produced nonzero x-coefficients for " + describe(kernel));
  }
  // A backward-stable solve is only accurate to about cond * eps.
  const double scale = std::max(1.0, c2.cwiseAbs().maxCoeff());
  const double tol = std::max(kOracleTolerance, 1e3 * std::numeric_limits<double>::epsilon() *
                                                    diag.condition_estimate) *
                     scale;
  const double mismatch = (coeffs.col(1) - c2).cwiseAbs().maxCoeff();
  if (!(mismatch <= tol)) {
    throw Error(ErrorKind::InternalConsistency,
                "rhombus closed form disagrees with the fitted system by " + format_sig(mismatch, 3) +
                    " for " + describe(kernel));
  }

  return RhombusModel{kernel, delta, a, b, c2, std::move(fitted), std::move(diag)};
}

Transformation closed_form_transformation(const RhombusModel& model) {
  PointMatrix nodes(4, 2);
  PointMatrix coeffs = PointMatrix::Zero(4, 2);
  for (int i = 0; i < 4; ++i) nodes.row(i) = rhombus_vertices()[i].transpose();
  coeffs.col(1) = model.c2;
  return Transformation(model.kernel, std::move(nodes), std::move(coeffs));
}

double det_j_exact(const RhombusModel& model, double y) {
  if (!(y > 1.0)) throw Error(ErrorKind::InvalidArgument, "det_j_exact requires y > 1");
  const auto family = model.kernel.family;
  const double c = model.kernel.locality;
  auto dphi = [&](double r) { return unit_profile_derivative(family, r / c) / c; };
  const double side = std::sqrt(1.0 + y * y);
  // dPhi_i/dy = Phi'(r_i) (y - y_i) / r_i at the point (0, y).
  const double d1 = dphi(y - 1.0);
  const double d24 = dphi(side) * y / side;
  const double d3 = dphi(y + 1.0);
  return 1.0 + model.c2(0) * d1 + model.c2(1) * d24 + model.c2(2) * d3 + model.c2(3) * d24;
}

double det_j_approx(KernelFamily family, double delta, double y) {
  if (!(y >= 1.0)) throw Error(ErrorKind::InvalidArgument, "det_j_approx requires y >= 1");
  const double side = std::sqrt(y * y + 1.0);
  switch (family) {
    case KernelFamily::Matern12:
      return 1.0 - 2.4142 * delta * (-1.0 + y / side);
    case KernelFamily::Matern32:
      return 1.0 - 1.7071 * delta * (y * y + 1.0 - y * side);
    case KernelFamily::Matern52:
      return 1.0 - 2.5607 * delta * (y * y + 1.0 - y * side);
    default:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "no large-support approximation for " +
                                              std::string(family_name(family)));
}

std::vector<DetProfile> fig2_profile(const std::vector<KernelSpec>& kernels, double delta,
                                     double y_max, int samples) {
  if (!(y_max > 1.0) || samples < 2) {
    throw Error(ErrorKind::InvalidArgument, "profile needs y_max > 1 and at least 2 samples");
  }
  std::vector<DetProfile> profiles;
  profiles.reserve(kernels.size());
  for (const auto& kernel : kernels) {
    const RhombusModel model = build_rhombus(kernel, delta);
    DetProfile profile{kernel, {}, {}, std::nullopt};
    const bool matern = is_matern(kernel.family);
    if (matern) profile.approx.emplace();
    for (int k = 1; k <= samples; ++k) {
      const double y = 1.0 + (y_max - 1.0) * k / samples;
      profile.y_values.push_back(y);
      profile.exact.push_back(det_j_exact(model, y));
      if (matern) profile.approx->push_back(det_j_approx(kernel.family, delta, y));
    }
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

std::string profiles_csv(const std::vector<DetProfile>& profiles) {
  std::ostringstream out;
  out << "y,kernel,exact,approx\n";
  for (const auto& profile : profiles) {
    for (std::size_t k = 0; k < profile.y_values.size(); ++k) {
      out << format_sig(profile.y_values[k]) << ',' << family_name(profile.kernel.family) << ','
          << format_sig(profile.exact[k]) << ',';
      if (profile.approx) out << format_sig((*profile.approx)[k]);
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace rbfreg
