#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

namespace rbfreg::detail {

/// Minimizes a unimodal function on [lo, hi] by golden-section search until the
/// bracket is no wider than `tol`. Returns (argmin, value).
template <typename Scalar, typename F>
std::pair<Scalar, Scalar> golden_section_minimize(F&& f, Scalar lo, Scalar hi, Scalar tol) {
  const Scalar inv_phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar a = lo;
  Scalar b = hi;
  Scalar x1 = b - inv_phi * (b - a);
  Scalar x2 = a + inv_phi * (b - a);
  Scalar f1 = f(x1);
  Scalar f2 = f(x2);
  // The bracket shrinks geometrically; the iteration cap only guards against
  // a tolerance below the representable spacing.
  for (int it = 0; it < 400 && (b - a) > tol; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
    if (x1 >= x2) break;
  }
  const Scalar mid = (a + b) / Scalar(2);
  return {mid, f(mid)};
}

/// Grid scan over (lo, hi] with `points` samples followed by golden-section
/// refinement inside the neighbouring cells of the best sample.
template <typename Scalar, typename F>
std::pair<Scalar, Scalar> scan_then_refine(F&& f, Scalar lo, Scalar hi, std::size_t points,
                                           Scalar tol) {
  const Scalar h = (hi - lo) / static_cast<Scalar>(points);
  std::size_t best = 1;
  Scalar best_value = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 1; i <= points; ++i) {
    const Scalar v = f(lo + h * static_cast<Scalar>(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const Scalar a = lo + h * static_cast<Scalar>(best - 1);
  const Scalar b = (best == points) ? hi : lo + h * static_cast<Scalar>(best + 1);
  auto refined = golden_section_minimize(f, a, b, tol);
  if (refined.second <= best_value) return refined;
  return {lo + h * static_cast<Scalar>(best), best_value};
}

}  // namespace rbfreg::detail
