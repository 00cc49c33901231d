#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "rbfreg/error.hpp"

namespace rbfreg {

enum class KernelFamily { Gaussian, Wendland31, Wu12, Matern12, Matern32, Matern52 };

inline constexpr std::array<KernelFamily, 6> kAllFamilies = {
    KernelFamily::Gaussian, KernelFamily::Wendland31, KernelFamily::Wu12,
    KernelFamily::Matern12, KernelFamily::Matern32,   KernelFamily::Matern52};

/// Stable lower-case identifier used on the command line and in CSV output.
std::string_view family_name(KernelFamily family);
std::optional<KernelFamily> parse_family(std::string_view name);

/// Wendland and Wu vanish identically beyond the support radius.
constexpr bool is_compact(KernelFamily family) {
  return family == KernelFamily::Wendland31 || family == KernelFamily::Wu12;
}

/// Only M1/2 has a cusp at the origin, so its gradient is undefined at a node.
constexpr bool has_cusp_at_origin(KernelFamily family) {
  return family == KernelFamily::Matern12;
}

constexpr bool is_matern(KernelFamily family) {
  return family == KernelFamily::Matern12 || family == KernelFamily::Matern32 ||
         family == KernelFamily::Matern52;
}

/// A kernel family with its locality parameter (support radius c, or sigma
/// for the Gaussian).
struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double locality = 1.0;

  /// Throws InvalidParameter unless locality is finite and positive.
  void validate() const;
};

std::string describe(const KernelSpec& spec);

/// Profile of the unit-scale kernel at scaled distance s = r / locality.
template <typename Scalar>
Scalar unit_profile(KernelFamily family, Scalar s) {
  using std::exp;
  switch (family) {
    case KernelFamily::Gaussian:
      return exp(-s * s);
    case KernelFamily::Wendland31: {
      if (s >= Scalar(1)) return Scalar(0);
      const Scalar t = Scalar(1) - s;
      const Scalar t2 = t * t;
      return t2 * t2 * (Scalar(4) * s + Scalar(1));
    }
    case KernelFamily::Wu12: {
      if (s >= Scalar(1)) return Scalar(0);
      const Scalar t = Scalar(1) - s;
      const Scalar t2 = t * t;
      return t2 * t2 * (Scalar(1) + s * (Scalar(4) + s * (Scalar(3) + Scalar(0.75) * s)));
    }
    case KernelFamily::Matern12:
      return exp(-s);
    case KernelFamily::Matern32:
      return (Scalar(1) + s) * exp(-s);
    case KernelFamily::Matern52:
      return (Scalar(1) + s + s * s / Scalar(3)) * exp(-s);
  }
  return Scalar(0);
}

/// d/ds of unit_profile. At s = 0 this is the one-sided limit (-1 for M1/2).
template <typename Scalar>
Scalar unit_profile_derivative(KernelFamily family, Scalar s) {
  using std::exp;
  switch (family) {
    case KernelFamily::Gaussian:
      return Scalar(-2) * s * exp(-s * s);
    case KernelFamily::Wendland31: {
      if (s >= Scalar(1)) return Scalar(0);
      const Scalar t = Scalar(1) - s;
      return Scalar(-20) * s * t * t * t;
    }
    case KernelFamily::Wu12: {
      if (s >= Scalar(1)) return Scalar(0);
      const Scalar t = Scalar(1) - s;
      return Scalar(-1.75) * s * t * t * t * (Scalar(8) + s * (Scalar(9) + Scalar(3) * s));
    }
    case KernelFamily::Matern12:
      return -exp(-s);
    case KernelFamily::Matern32:
      return -s * exp(-s);
    case KernelFamily::Matern52:
      return -(s + s * s) / Scalar(3) * exp(-s);
  }
  return Scalar(0);
}

/// Kernel value Phi(r); 1 at r = 0, exactly 0 outside a compact support.
double eval(const KernelSpec& spec, double r);

/// dPhi/dr. At r = 0 returns the radial limit: 0 for the smooth families and
/// -1/c for M1/2 (see has_cusp_at_origin).
double radial_derivative(const KernelSpec& spec, double r);

struct DerivativeMinimum {
  double r_star = 0.0;
  double value = 0.0;
  /// Set when the infimum is only approached as r -> 0 (M1/2).
  bool limit_at_origin = false;
};

/// Minimum of the unit-locality radial derivative over (0, R], R = 1 for the
/// compact families and 10 otherwise.
DerivativeMinimum unit_derivative_min(KernelFamily family);

/// Matern order v = numerator / 2 with numerator in {1, 3, 5}.
class HalfIntegerOrder {
 public:
  static HalfIntegerOrder from_numerator(int numerator);
  static HalfIntegerOrder for_family(KernelFamily family);

  [[nodiscard]] int numerator() const { return numerator_; }
  [[nodiscard]] double value() const { return numerator_ / 2.0; }

 private:
  explicit HalfIntegerOrder(int numerator) : numerator_(numerator) {}
  int numerator_;
};

/// Modified Bessel function of the second kind at half-integer order, from
/// its terminating closed form.
double bessel_k_half(HalfIntegerOrder order, double z);

/// Matern kernel written through K_v: 2^(1-v)/Gamma(v) (r/c)^v K_v(r/c).
/// Independent of eval(); singular at r = 0.
double matern_via_bessel(HalfIntegerOrder order, double c, double r);

}  // namespace rbfreg
