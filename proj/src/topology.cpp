#include "rbfreg/topology.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rbfreg {

namespace {

// Published closed forms: sqrt(2) * |min dPhi/dr| at unit locality.
double paper_ratio(KernelFamily family) {
  using std::numbers::sqrt2;
  using std::numbers::e;
  switch (family) {
    case KernelFamily::Gaussian:
      return 2.0 / std::sqrt(e);
    case KernelFamily::Wendland31:
      return sqrt2 * 135.0 / 64.0;
    case KernelFamily::Wu12: {
      // Stationary point of s(1-s)^3(8+9s+3s^2): root of 9s^3 + 18s^2 + 7s - 4.
      constexpr double s = 0.30182466868864479;
      const double t = 1.0 - s;
      return sqrt2 * 1.75 * s * t * t * t * (8.0 + 9.0 * s + 3.0 * s * s);
    }
    case KernelFamily::Matern12:
      return sqrt2 / std::exp(0.25);
    case KernelFamily::Matern32:
      return sqrt2 / e;
    case KernelFamily::Matern52:
      return (2.0 * sqrt2 + std::sqrt(10.0)) / (3.0 * std::exp(std::numbers::phi));
  }
  return 0.0;
}

}  // namespace

std::string_view mode_name(BoundMode mode) { return mode == BoundMode::Paper ? "paper" : "strict"; }

std::optional<BoundMode> parse_mode(std::string_view name) {
  if (name == "paper") return BoundMode::Paper;
  if (name == "strict") return BoundMode::Strict;
  return std::nullopt;
}

SupportBound min_support_ratio(KernelFamily family, BoundMode mode) {
  if (mode == BoundMode::Paper) return {family, mode, paper_ratio(family)};
  const auto minimum = unit_derivative_min(family);
  return {family, mode, std::numbers::sqrt2 * std::abs(minimum.value)};
}

bool check_one_landmark(double delta, const KernelSpec& kernel) {
  kernel.validate();
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "landmark shift must be positive");
  }
  const double m = unit_derivative_min(kernel.family).value;
  return delta * std::abs(m) / kernel.locality < 1.0 / std::numbers::sqrt2;
}

JacobianScanReport scan_jacobian(const Transformation& t, const Point2& origin,
                                 const Eigen::Vector2d& extent, int rows, int cols) {
  if (rows < 2 || cols < 2) {
    throw Error(ErrorKind::InvalidArgument, "scan lattice needs at least 2 rows and 2 columns");
  }
  JacobianScanReport report;
  report.grid_rows = rows;
  report.grid_cols = cols;
  report.min_det = std::numeric_limits<double>::infinity();
  const bool cusp = has_cusp_at_origin(t.kernel().family);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const Point2 p = lattice_point(origin, extent, rows, cols, i, j);
      if (cusp && nearest_node_distance(t, p) <= kCuspSkipRadius) {
        ++report.skipped_nodes;
        continue;
      }
      const double det = jacobian(t, p).determinant();
      if (det < report.min_det) {
        report.min_det = det;
        report.argmin = p;
      }
      if (det < 0.0) ++report.negative_count;
    }
  }
  return report;
}

}  // namespace rbfreg
