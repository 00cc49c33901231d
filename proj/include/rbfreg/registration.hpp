#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbfreg/kernels.hpp"

namespace rbfreg {

using Point2 = Eigen::Vector2d;
/// One row per node; columns are the x and y components.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Matched source/target landmarks. Valid when both lists have the same
/// nonzero length, all coordinates are finite and source points are distinct.
struct LandmarkPairs {
  std::vector<Point2> source;
  std::vector<Point2> target;

  [[nodiscard]] std::size_t size() const { return source.size(); }
  void validate() const;
};

/// Minimum separation below which two landmarks count as coincident.
inline constexpr double kMinLandmarkSeparation = 1e-12;

/// Swaps the roles of source and target, e.g. for backward warping.
/// Throws Validation if the targets are not pairwise distinct.
LandmarkPairs invert_roles(const LandmarkPairs& pairs);

/// Parses "sx sy tx ty" lines; '#' lines and blank lines are skipped.
LandmarkPairs parse_landmarks(std::string_view text);
LandmarkPairs read_landmarks(const std::filesystem::path& path);
std::string format_landmarks(const LandmarkPairs& pairs);

struct Jacobian2 {
  Eigen::Matrix2d matrix = Eigen::Matrix2d::Identity();

  [[nodiscard]] double j11() const { return matrix(0, 0); }
  [[nodiscard]] double j12() const { return matrix(0, 1); }
  [[nodiscard]] double j21() const { return matrix(1, 0); }
  [[nodiscard]] double j22() const { return matrix(1, 1); }
  [[nodiscard]] double determinant() const { return j11() * j22() - j12() * j21(); }
};

/// f(x) = x + F(x), F_k(x) = sum_j alpha_jk Phi(|x - x_j|). Immutable once built.
class Transformation {
 public:
  Transformation(KernelSpec kernel, PointMatrix nodes, PointMatrix coefficients);

  [[nodiscard]] const KernelSpec& kernel() const { return kernel_; }
  [[nodiscard]] const PointMatrix& nodes() const { return nodes_; }
  [[nodiscard]] const PointMatrix& coefficients() const { return coefficients_; }
  [[nodiscard]] Eigen::Index size() const { return nodes_.rows(); }

 private:
  KernelSpec kernel_;
  PointMatrix nodes_;
  PointMatrix coefficients_;
};

enum class SolveMethod { Cholesky, PivotedElimination };

struct SolveDiagnostics {
  SolveMethod method = SolveMethod::Cholesky;
  /// Pivot ratio of the Cholesky factor, or the LU reciprocal-condition estimate.
  double condition_estimate = 1.0;
  /// Largest landmark interpolation error |f(x_j) - t_j| after the solve.
  double max_residual = 0.0;
  int refinement_steps = 0;
  std::vector<std::string> warnings;
};

/// Condition estimates above this trigger a warning, never a failure.
inline constexpr double kIllConditionedThreshold = 1e12;
/// LU pivots below this times max|A| are treated as singular.
inline constexpr double kSingularPivotTolerance = 1e-14;
/// Interpolation tolerance checked after every fit.
inline constexpr double kInterpolationTolerance = 1e-9;

struct FitResult {
  Transformation transformation;
  SolveDiagnostics diagnostics;
};

/// Solves the two N x N systems A alpha_k = t_k - x_k with A_ij = Phi(|x_i - x_j|).
/// Tries Cholesky first and falls back to partial-pivot LU, then applies a few
/// steps of iterative refinement with extended-precision residuals.
FitResult fit(const LandmarkPairs& pairs, const KernelSpec& kernel);

/// Interpolation matrix A for the given nodes.
Eigen::MatrixXd interpolation_matrix(const std::vector<Point2>& nodes, const KernelSpec& kernel);

Eigen::Vector2d displace(const Transformation& t, const Point2& p);
Point2 map_point(const Transformation& t, const Point2& p);

/// Analytic Jacobian of f. Throws SingularGradient for M1/2 at a node.
Jacobian2 jacobian(const Transformation& t, const Point2& p);

/// Distance from p to the closest node.
double nearest_node_distance(const Transformation& t, const Point2& p);

std::string_view method_name(SolveMethod method);

}  // namespace rbfreg
