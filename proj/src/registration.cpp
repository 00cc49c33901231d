#include "rbfreg/registration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbfreg/format.hpp"

namespace rbfreg {

namespace {

void check_distinct(const std::vector<Point2>& points, const char* which) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].allFinite()) {
      throw Error(ErrorKind::Validation,
                  std::string(which) + " landmark " + std::to_string(i) + " is not finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((points[i] - points[j]).norm() <= kMinLandmarkSeparation) {
        throw Error(ErrorKind::Validation, std::string("duplicate ") + which + " landmarks " +
                                               std::to_string(j) + " and " + std::to_string(i));
      }
    }
  }
}

// b - A x accumulated in long double.
Eigen::MatrixX2d extended_residual(const Eigen::MatrixXd& a, const Eigen::MatrixX2d& x,
                                   const Eigen::MatrixX2d& b) {
  Eigen::MatrixX2d r(b.rows(), 2);
  for (Eigen::Index k = 0; k < 2; ++k) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      long double acc = b(i, k);
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        acc -= static_cast<long double>(a(i, j)) * static_cast<long double>(x(j, k));
      }
      r(i, k) = static_cast<double>(acc);
    }
  }
  return r;
}

}  // namespace

void LandmarkPairs::validate() const {
  if (source.size() != target.size()) {
    throw Error(ErrorKind::Validation, "source and target landmark counts differ (" +
                                           std::to_string(source.size()) + " vs " +
                                           std::to_string(target.size()) + ")");
  }
  if (source.empty()) throw Error(ErrorKind::Validation, "at least one landmark pair is required");
  check_distinct(source, "source");
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (!target[i].allFinite()) {
      throw Error(ErrorKind::Validation, "target landmark " + std::to_string(i) + " is not finite");
    }
  }
}

LandmarkPairs invert_roles(const LandmarkPairs& pairs) {
  LandmarkPairs swapped{pairs.target, pairs.source};
  swapped.validate();
  return swapped;
}

Transformation::Transformation(KernelSpec kernel, PointMatrix nodes, PointMatrix coefficients)
    : kernel_(kernel), nodes_(std::move(nodes)), coefficients_(std::move(coefficients)) {
  kernel_.validate();
  if (nodes_.rows() != coefficients_.rows()) {
    throw Error(ErrorKind::InvalidArgument, "coefficient rows must match node count");
  }
}

Eigen::MatrixXd interpolation_matrix(const std::vector<Point2>& nodes, const KernelSpec& kernel) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = eval(kernel, 0.0);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = eval(kernel, (nodes[i] - nodes[j]).norm());
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

FitResult fit(const LandmarkPairs& pairs, const KernelSpec& kernel) {
  kernel.validate();
  pairs.validate();
  const auto n = static_cast<Eigen::Index>(pairs.size());

  const Eigen::MatrixXd a = interpolation_matrix(pairs.source, kernel);
  Eigen::MatrixX2d rhs(n, 2);
  PointMatrix nodes(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    nodes.row(i) = pairs.source[i].transpose();
    rhs.row(i) = (pairs.target[i] - pairs.source[i]).transpose();
  }

  SolveDiagnostics diag;
  Eigen::MatrixX2d alpha;

  Eigen::LLT<Eigen::MatrixXd> llt(a);
  bool spd = llt.info() == Eigen::Success;
  if (spd) {
    const Eigen::VectorXd d = llt.matrixLLT().diagonal();
    spd = (d.array() > 0.0).all() && d.allFinite();
    if (spd) {
      const double ratio = d.maxCoeff() / d.minCoeff();
      diag.condition_estimate = ratio * ratio;
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  if (spd) {
    diag.method = SolveMethod::Cholesky;
    alpha = llt.solve(rhs);
  } else {
    diag.method = SolveMethod::PivotedElimination;
    lu.compute(a);
    const double scale = a.cwiseAbs().maxCoeff();
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(std::abs(pivots(i)) > kSingularPivotTolerance * scale)) {
        // P sends original row k to position indices(k); recover the original row.
        Eigen::Index original = i;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (lu.permutationP().indices()(k) == i) original = k;
        }
        throw Error(ErrorKind::SingularSystem,
                    "interpolation matrix is singular at landmark pair " + std::to_string(original) +
                        " (" + describe(kernel) + ")");
      }
    }
    const double rcond = lu.rcond();
    diag.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    alpha = lu.solve(rhs);
  }

  auto solve = [&](const Eigen::MatrixX2d& b) -> Eigen::MatrixX2d {
    return spd ? Eigen::MatrixX2d(llt.solve(b)) : Eigen::MatrixX2d(lu.solve(b));
  };

  Eigen::MatrixX2d residual = extended_residual(a, alpha, rhs);
  double residual_norm = residual.cwiseAbs().maxCoeff();
  for (int step = 0; step < 4 && residual_norm > 0.0; ++step) {
    const Eigen::MatrixX2d candidate = alpha + solve(residual);
    const Eigen::MatrixX2d candidate_residual = extended_residual(a, candidate, rhs);
    const double candidate_norm = candidate_residual.cwiseAbs().maxCoeff();
    if (!(candidate_norm < residual_norm)) break;
    alpha = candidate;
    residual = candidate_residual;
    residual_norm = candidate_norm;
    diag.refinement_steps = step + 1;
  }

  Transformation t(kernel, std::move(nodes), PointMatrix(alpha));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double err = (map_point(t, pairs.source[i]) - pairs.target[i]).norm();
    diag.max_residual = std::max(diag.max_residual, err);
  }
  if (diag.condition_estimate > kIllConditionedThreshold) {
    diag.warnings.push_back("interpolation matrix is ill-conditioned (condition estimate " +
                            format_sig(diag.condition_estimate, 3) + ")");
  }
  if (diag.max_residual > kInterpolationTolerance) {
    diag.warnings.push_back("landmark interpolation error " + format_sig(diag.max_residual, 3) +
                            " exceeds " + format_sig(kInterpolationTolerance, 3));
  }
  return {std::move(t), std::move(diag)};
}

Eigen::Vector2d displace(const Transformation& t, const Point2& p) {
  Eigen::Vector2d d = Eigen::Vector2d::Zero();
  const auto& nodes = t.nodes();
  const auto& coeffs = t.coefficients();
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    const double r = (p - nodes.row(j).transpose()).norm();
    d += coeffs.row(j).transpose() * unit_profile(t.kernel().family, r / t.kernel().locality);
  }
  return d;
}

Point2 map_point(const Transformation& t, const Point2& p) { return p + displace(t, p); }

Jacobian2 jacobian(const Transformation& t, const Point2& p) {
  const auto& kernel = t.kernel();
  const auto& nodes = t.nodes();
  const auto& coeffs = t.coefficients();
  Jacobian2 jac;
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    const Eigen::Vector2d offset = p - nodes.row(j).transpose();
    const double r = offset.norm();
    if (r <= kMinLandmarkSeparation) {
      if (has_cusp_at_origin(kernel.family)) {
        throw Error(ErrorKind::SingularGradient,
                    "matern12 gradient is undefined at landmark node " + std::to_string(j));
      }
      continue;
    }
    const double dphi = unit_profile_derivative(kernel.family, r / kernel.locality) / kernel.locality;
    const Eigen::Vector2d grad = offset * (dphi / r);
    jac.matrix.noalias() += coeffs.row(j).transpose() * grad.transpose();
  }
  return jac;
}

double nearest_node_distance(const Transformation& t, const Point2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    best = std::min(best, (p - t.nodes().row(j).transpose()).norm());
  }
  return best;
}

std::string_view method_name(SolveMethod method) {
  return method == SolveMethod::Cholesky ? "cholesky" : "pivoted-elimination";
}

}  // namespace rbfreg
