#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace siegert {

using Complex = std::complex<double>;

// Units are hbar = 2m = 1 throughout: energies are squared wavenumbers.

/// V(r) = intensity * delta(r - radius) on the half line r >= 0.
///
/// The delta spike is never evaluated pointwise; it enters analytically
/// through the matching condition at r = radius.
struct DeltaShellPotential {
    double intensity; // lambda > 0, inverse length
    double radius;    // a > 0

    DeltaShellPotential(double intensity_, double radius_)
        : intensity(intensity_), radius(radius_) {
        if (!(intensity > 0.0))
            throw std::invalid_argument("DeltaShellPotential: intensity must be > 0");
        if (!(radius > 0.0))
            throw std::invalid_argument("DeltaShellPotential: radius must be > 0");
    }
};

/// V(x) = height on [0, width], zero elsewhere on the full line.
struct RectangularBarrier {
    double height; // V0 > 0, energy
    double width;  // L > 0

    RectangularBarrier(double height_, double width_)
        : height(height_), width(width_) {
        if (!(height > 0.0))
            throw std::invalid_argument("RectangularBarrier: height must be > 0");
        if (!(width > 0.0))
            throw std::invalid_argument("RectangularBarrier: width must be > 0");
    }
};

using PotentialModel = std::variant<DeltaShellPotential, RectangularBarrier>;

/// Half line with one outgoing edge at r = a, or a segment with outgoing
/// edges at x = 0 and x = L.  Fixed by the model type.
enum class GeometryKind { half_line_with_cutoff, segment };

inline GeometryKind geometry(const PotentialModel& model) {
    return std::holds_alternative<DeltaShellPotential>(model)
               ? GeometryKind::half_line_with_cutoff
               : GeometryKind::segment;
}

/// End of the interaction region (a for the shell, L for the barrier).
inline double support_end(const PotentialModel& model) {
    if (const auto* d = std::get_if<DeltaShellPotential>(&model)) return d->radius;
    return std::get<RectangularBarrier>(model).width;
}

inline bool same_model(const PotentialModel& lhs, const PotentialModel& rhs) {
    if (lhs.index() != rhs.index()) return false;
    if (const auto* d = std::get_if<DeltaShellPotential>(&lhs)) {
        const auto& e = std::get<DeltaShellPotential>(rhs);
        return d->intensity == e.intensity && d->radius == e.radius;
    }
    const auto& b = std::get<RectangularBarrier>(lhs);
    const auto& c = std::get<RectangularBarrier>(rhs);
    return b.height == c.height && b.width == c.width;
}

/// Pointwise potential value.  The delta shell reports 0 everywhere off the
/// (symbolic) spike; x < 0 is outside the half-line domain.
inline double evaluate_potential(const PotentialModel& model, double x) {
    if (std::holds_alternative<DeltaShellPotential>(model)) {
        if (x < 0.0)
            throw std::domain_error("evaluate_potential: delta shell lives on r >= 0");
        return 0.0;
    }
    const auto& barrier = std::get<RectangularBarrier>(model);
    return (x >= 0.0 && x <= barrier.width) ? barrier.height : 0.0;
}

} // namespace siegert
