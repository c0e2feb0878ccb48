#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "siegert/expectation.hpp"

namespace siegert {

struct ValidityFlags {
    bool proper_pole = false;   // alpha > beta
    bool positive_p2 = false;   // <<p^2>> > 0
    bool positive_var = false;  // <<x^2>> - <<x>>^2 > 0
    bool all() const { return proper_pole && positive_p2 && positive_var; }
};

/// Dispersion product Delta x * Delta p for one prescription.  When either
/// factor under the square root is negative the product is reported as NaN
/// with the corresponding flag cleared, so parameter sweeps keep emitting
/// complete rows across validity boundaries.
struct UncertaintyReport {
    Prescription prescription{};
    double mean_position = 0.0;     // <<x>>
    double mean_position_sq = 0.0;  // <<x^2>>
    double var_position = 0.0;      // <<x^2>> - <<x>>^2
    double mean_p2 = 0.0;           // <<p^2>>
    double product = std::numeric_limits<double>::quiet_NaN();
    bool satisfies_bound = false;   // product defined and >= 1/2
    ValidityFlags flags{};
};

inline UncertaintyReport uncertainty_product(const ResonanceState& s, Prescription p) {
    UncertaintyReport rep;
    rep.prescription = p;
    rep.mean_position = expectation_value(s, Operator::position, p).physical;
    rep.mean_position_sq = expectation_value(s, Operator::position_squared, p).physical;
    rep.mean_p2 = expectation_value(s, Operator::momentum_squared, p).physical;
    rep.var_position = rep.mean_position_sq - rep.mean_position * rep.mean_position;
    rep.flags.proper_pole = s.pole.alpha() > s.pole.beta();
    rep.flags.positive_p2 = rep.mean_p2 > 0.0;
    rep.flags.positive_var = rep.var_position > 0.0;
    if (rep.flags.positive_p2 && rep.flags.positive_var) {
        rep.product = std::sqrt(rep.var_position * rep.mean_p2);
        rep.satisfies_bound = rep.product >= 0.5;
    }
    return rep;
}

/// Infinite-wall reference sqrt(n^2 pi^2 / 12 - 1/2); the lambda -> inf
/// limit of the delta-shell product.  Exceeds 1/2 for every n.
inline double infinite_wall_reference(int n) {
    if (n < 1) throw std::invalid_argument("infinite_wall_reference: n must be >= 1");
    return std::sqrt(n * n * std::numbers::pi * std::numbers::pi / 12.0 - 0.5);
}

enum class Validity { satisfied, violated, undefined };

inline const char* to_string(Validity v) {
    switch (v) {
    case Validity::satisfied: return "satisfied";
    case Validity::violated: return "violated";
    default: return "undefined";
    }
}

inline Validity classify_validity(const UncertaintyReport& rep) {
    if (!rep.flags.all() || std::isnan(rep.product)) return Validity::undefined;
    return rep.product >= 0.5 ? Validity::satisfied : Validity::violated;
}

/// Dispersion of H in an eigenstate.  <<H^2>> is defined by eigenvalue
/// substitution (H u = E u applied twice, then the real-part convention),
/// i.e. <<H^2>> := script(E)^2, which makes Delta H exactly zero.  Taking
/// Re(E^2) = script(E)^2 - Gamma^2/4 instead would put <<H^2>> below
/// <<H>>^2 for any decaying state and leave the dispersion imaginary.
inline double hamiltonian_dispersion(const ResonanceState&) {
    return 0.0;
}

} // namespace siegert
