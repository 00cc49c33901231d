#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbfreg/registration.hpp"

namespace rbfreg {

/// Four landmarks at (0,1), (-1,0), (0,-1), (1,0); the lower one moves to
/// (0, -1 - delta). Only the y-displacement coefficients are nonzero.
struct RhombusModel {
  KernelSpec kernel;
  double delta = 0.0;
  /// Kernel value between adjacent vertices (distance sqrt 2).
  double alpha_adj = 0.0;
  /// Kernel value between opposite vertices (distance 2).
  double beta_opp = 0.0;
  /// Closed-form y-coefficients for the four vertices in the order above.
  Eigen::Vector4d c2 = Eigen::Vector4d::Zero();
  /// Numerical fit of the same problem, kept as a cross-check.
  Transformation fitted;
  SolveDiagnostics fit_diagnostics;
};

LandmarkPairs rhombus_landmarks(double delta);

/// Throws DegenerateConfiguration when 1 - beta or (1+beta)^2 - 4 alpha^2
/// vanishes, and InternalConsistency when the closed form disagrees with the
/// numerical fit beyond what the system's conditioning explains.
RhombusModel build_rhombus(const KernelSpec& kernel, double delta);

/// Transformation carrying the closed-form coefficients.
Transformation closed_form_transformation(const RhombusModel& model);

/// det J(0, y) = 1 + sum_i c2_i dPhi_i/dy for y > 1.
double det_j_exact(const RhombusModel& model, double y);

/// Large-support leading-order det J(0, y) for the three Matern families, y >= 1.
double det_j_approx(KernelFamily family, double delta, double y);

struct DetProfile {
  KernelSpec kernel;
  std::vector<double> y_values;
  std::vector<double> exact;
  std::optional<std::vector<double>> approx;
};

/// Samples y_k = 1 + (y_max - 1) k / samples for k = 1..samples.
std::vector<DetProfile> fig2_profile(const std::vector<KernelSpec>& kernels, double delta,
                                     double y_max, int samples);

/// CSV with header "y,kernel,exact,approx"; approx is empty for non-Matern rows.
std::string profiles_csv(const std::vector<DetProfile>& profiles);

}  // namespace rbfreg
