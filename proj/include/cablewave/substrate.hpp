#ifndef CABLEWAVE_SUBSTRATE_HPP
#define CABLEWAVE_SUBSTRATE_HPP

#include "cablewave/errors.hpp"

namespace cablewave {

/// Bilinear elastic substrate: one stiffness while the cable is pushed into the
/// foundation (w <= 0), another while it lifts off (w > 0).  Stiffnesses are
/// nondimensional (scaled by wavelength^2 / base_speed^2).
struct Substrate {
  double k1{1.0};  ///< compression-side stiffness, active for w <= 0
  double k2{1.0};  ///< tension-side stiffness, active for w > 0

  /// Branch stiffness at displacement w.  The w == 0 tie goes to the
  /// compression branch so the selection is total and deterministic.
  [[nodiscard]] double stiffness(double w) const { return w <= 0.0 ? k1 : k2; }

  /// Primitive of stiffness(w)*w with value 0 at w = 0; continuous and convex
  /// piecewise quadratic.  This is the substrate's stored-energy density.
  [[nodiscard]] double stiffness_primitive(double w) const {
    return 0.5 * stiffness(w) * w * w;
  }

  [[nodiscard]] Substrate swapped() const { return Substrate{k2, k1}; }
};

/// Throws DegenerateSubstrateError unless both stiffnesses are strictly positive.
inline void require_nondegenerate(const Substrate& s) {
  if (!(s.k1 > 0.0) || !(s.k2 > 0.0)) {
    throw DegenerateSubstrateError(
        "degenerate substrate: both stiffnesses must be strictly positive (k1=" +
        std::to_string(s.k1) + ", k2=" + std::to_string(s.k2) + ")");
  }
}

}  // namespace cablewave

#endif
