#pragma once

#include <optional>
#include <string_view>

#include "rbfreg/registration.hpp"

namespace rbfreg {

/// `Paper` reproduces the published minimum-support table; `Strict` derives
/// every ratio from the numerically minimized radial derivative.
enum class BoundMode { Paper, Strict };

std::string_view mode_name(BoundMode mode);
std::optional<BoundMode> parse_mode(std::string_view name);

/// Minimum locality divided by the landmark shift Delta.
struct SupportBound {
  KernelFamily family = KernelFamily::Gaussian;
  BoundMode mode = BoundMode::Paper;
  double ratio = 0.0;
};

/// Smallest locality/Delta for which Delta * dPhi/dr > -1/sqrt(2) everywhere.
/// The two modes agree except for M1/2, where the published value assumes a
/// minimizer at r = c/4 while the derivative's infimum lies at r -> 0.
SupportBound min_support_ratio(KernelFamily family, BoundMode mode);

/// Sufficient condition for a single landmark shifted by Delta = max(dx, dy):
/// Delta * |m| / locality < 1/sqrt(2), with m the strict unit derivative minimum.
bool check_one_landmark(double delta, const KernelSpec& kernel);

struct JacobianScanReport {
  int grid_rows = 0;
  int grid_cols = 0;
  double min_det = 0.0;
  Point2 argmin = Point2::Zero();
  long negative_count = 0;
  long skipped_nodes = 0;
};

/// Lattice points this close to a node are skipped for M1/2.
inline constexpr double kCuspSkipRadius = 1e-9;

/// Lattice coordinate (row i, column j) of a rows x cols grid over the rectangle.
inline Point2 lattice_point(const Point2& origin, const Eigen::Vector2d& extent, int rows, int cols,
                            int i, int j) {
  return {origin.x() + extent.x() * j / (cols - 1), origin.y() + extent.y() * i / (rows - 1)};
}

/// Evaluates det J on a uniform rows x cols lattice (row-major, y outer).
/// Ties for the minimum resolve to the first lattice point in that order.
JacobianScanReport scan_jacobian(const Transformation& t, const Point2& origin,
                                 const Eigen::Vector2d& extent, int rows, int cols);

}  // namespace rbfreg
