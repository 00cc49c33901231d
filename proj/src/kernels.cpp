#include "rbfreg/kernels.hpp"

#include <cmath>
#include <numbers>

#include "rbfreg/detail/golden_section.hpp"
#include "rbfreg/format.hpp"

namespace rbfreg {

std::string_view family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Wendland31: return "wendland31";
    case KernelFamily::Wu12: return "wu12";
    case KernelFamily::Matern12: return "matern12";
    case KernelFamily::Matern32: return "matern32";
    case KernelFamily::Matern52: return "matern52";
  }
  return "unknown";
}

std::optional<KernelFamily> parse_family(std::string_view name) {
  for (auto family : kAllFamilies) {
    if (family_name(family) == name) return family;
  }
  return std::nullopt;
}

void KernelSpec::validate() const {
  if (!std::isfinite(locality) || locality <= 0.0) {
    throw Error(ErrorKind::InvalidParameter,
                "locality must be positive and finite, got " + format_sig(locality));
  }
}

std::string describe(const KernelSpec& spec) {
  const char* symbol = spec.family == KernelFamily::Gaussian ? "sigma" : "c";
  return std::string(family_name(spec.family)) + " (" + symbol + "=" + format_sig(spec.locality) +
         ")";
}

double eval(const KernelSpec& spec, double r) {
  spec.validate();
  if (!(r >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "kernel distance must be nonnegative");
  }
  return unit_profile(spec.family, r / spec.locality);
}

double radial_derivative(const KernelSpec& spec, double r) {
  spec.validate();
  if (!(r >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "kernel distance must be nonnegative");
  }
  return unit_profile_derivative(spec.family, r / spec.locality) / spec.locality;
}

DerivativeMinimum unit_derivative_min(KernelFamily family) {
  if (has_cusp_at_origin(family)) {
    // -e^{-s} is increasing, so the infimum -1 sits at the origin.
    return {0.0, -1.0, true};
  }
  const double upper = is_compact(family) ? 1.0 : 10.0;
  auto f = [family](double s) { return unit_profile_derivative(family, s); };
  const auto [r_star, value] = detail::scan_then_refine(f, 0.0, upper, 10000, 1e-12);
  return {r_star, value, false};
}

HalfIntegerOrder HalfIntegerOrder::from_numerator(int numerator) {
  if (numerator != 1 && numerator != 3 && numerator != 5) {
    throw Error(ErrorKind::InvalidArgument,
                "only Matern orders 1/2, 3/2 and 5/2 are supported");
  }
  return HalfIntegerOrder(numerator);
}

HalfIntegerOrder HalfIntegerOrder::for_family(KernelFamily family) {
  switch (family) {
    case KernelFamily::Matern12: return HalfIntegerOrder(1);
    case KernelFamily::Matern32: return HalfIntegerOrder(3);
    case KernelFamily::Matern52: return HalfIntegerOrder(5);
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument,
              std::string(family_name(family)) + " is not a Matern family");
}

double bessel_k_half(HalfIntegerOrder order, double z) {
  if (!(z > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Bessel K argument must be positive");
  }
  const double lead = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
  switch (order.numerator()) {
    case 1: return lead;
    case 3: return lead * (1.0 + 1.0 / z);
    default: return lead * (1.0 + 3.0 / z + 3.0 / (z * z));
  }
}

double matern_via_bessel(HalfIntegerOrder order, double c, double r) {
  if (!(c > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "Matern locality must be positive");
  }
  if (!(r > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Bessel form of the Matern kernel is singular at r = 0");
  }
  const double v = order.value();
  const double s = r / c;
  return std::pow(2.0, 1.0 - v) / std::tgamma(v) * std::pow(s, v) * bessel_k_half(order, s);
}

}  // namespace rbfreg
