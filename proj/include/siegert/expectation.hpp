#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "siegert/errors.hpp"
#include "siegert/states.hpp"

namespace siegert {

enum class Operator { position, position_squared, momentum, momentum_squared, hamiltonian };
enum class Prescription { surface_term, berggren };

inline const char* to_string(Operator op) {
    switch (op) {
    case Operator::position: return "position";
    case Operator::position_squared: return "position_squared";
    case Operator::momentum: return "momentum";
    case Operator::momentum_squared: return "momentum_squared";
    default: return "hamiltonian";
    }
}

inline const char* to_string(Prescription p) {
    return p == Prescription::surface_term ? "surface_term" : "berggren";
}

/// Complex matrix element plus its physical (real) part.  `improper_pole`
/// flags states with beta >= alpha, where the momentum-square expectation
/// can go negative; values are reported rather than refused there.
struct ExpectationValue {
    Operator op{};
    Prescription prescription{};
    Complex raw{};
    double physical = 0.0;
    bool improper_pole = false;
};

/// Zel'dovich tail in closed form:
/// (1/(2i)^m) d^m/dk^m [ (i/2k) e^{2ika} ], the regularized value of
/// lim int_a^inf e^{-eps r^2} r^m e^{2ikr} dr.  With a = 0 this reduces to
/// the derivative values used for the left endpoint of the segment geometry.
inline Complex regularization_tail(const ComplexPole& pole, double a, int m) {
    if (m < 0 || m > 2) throw UnsupportedOrder("regularization_tail: m must be 0, 1 or 2");
    const Complex i{0.0, 1.0};
    const Complex k = pole.k;
    const Complex g = (i / (2.0 * k)) * std::exp(2.0 * i * k * a);
    switch (m) {
    case 0: return g;
    case 1: return g * (a + i / (2.0 * k));
    default: return g * (a * a + i * a / k - 1.0 / (2.0 * k * k));
    }
}

/// int_0^end V u^2.  The barrier contributes height * int u^2 over the
/// interior.  The delta shell contributes nothing: its spike sits exactly on
/// the boundary, where the interaction is carried by the matching condition
/// and the surface term, so p^2 acting on the interior solution already
/// gives k^2 u pointwise on (0, a).
inline Complex potential_overlap(const ResonanceState& s) {
    if (std::holds_alternative<DeltaShellPotential>(s.model)) return 0.0;
    return std::get<RectangularBarrier>(s.model).height * interior_moment(s, 0);
}

namespace detail {

inline ExpectationValue finish(Operator op, Prescription p, Complex raw,
                               const ComplexPole& pole) {
    return {op, p, raw, raw.real(), !(pole.alpha() > pole.beta())};
}

inline Complex position_moment_raw(const ResonanceState& s, int m, Prescription p) {
    const Complex i{0.0, 1.0};
    const Complex k = s.pole.k;
    const double end = support_end(s.model);
    const Complex interior = interior_moment(s, m);
    const Complex uR = boundary_value(s, true);
    if (p == Prescription::surface_term) {
        // (i/2k) x^m u^2 at the outgoing edge(s); x = 0 contributes nothing
        // for m >= 1, and the half line has no left edge term at all.
        Complex raw = interior + (i / (2.0 * k)) * std::pow(end, m) * uR * uR;
        if (m == 0 && geometry(s.model) == GeometryKind::segment) {
            const Complex u0 = boundary_value(s, false);
            raw += (i / (2.0 * k)) * u0 * u0;
        }
        return raw;
    }
    // Berggren: the exterior integrals survive as closed-form tails.  The
    // right tail multiplies D^2 e^{2ik*end} = u^2(end); the left tail (segment
    // only) carries the (-1)^m sign from x -> -x.
    const Complex phase = std::exp(2.0 * i * k * end);
    Complex raw = interior + (uR * uR / phase) * regularization_tail(s.pole, end, m);
    if (geometry(s.model) == GeometryKind::segment) {
        const Complex u0 = boundary_value(s, false);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        raw += sign * u0 * u0 * regularization_tail(s.pole, 0.0, m);
    }
    return raw;
}

} // namespace detail

/// Expectation value of one of {x, x^2, p, p^2, H} in a resonance state.
///
/// H, p and p^2 coincide between the two prescriptions by construction:
/// <H> = E_n, <p> = 0, <p^2> = E_n - int V u^2.  The position moments differ
/// by the Zel'dovich correction terms A_n = i/(2ka) and
/// B_n = i/(ka) - 1/(2(ka)^2) (plus the left-endpoint tails on the segment).
inline ExpectationValue expectation_value(const ResonanceState& s, Operator op,
                                          Prescription p) {
    switch (op) {
    case Operator::hamiltonian:
        return detail::finish(op, p, s.pole.energy, s.pole);
    case Operator::momentum:
        // integration by parts against the outgoing boundary values cancels
        // the surface terms exactly; identical in both prescriptions
        return detail::finish(op, p, 0.0, s.pole);
    case Operator::momentum_squared:
        return detail::finish(op, p, s.pole.energy - potential_overlap(s), s.pole);
    case Operator::position:
        return detail::finish(op, p, detail::position_moment_raw(s, 1, p), s.pole);
    case Operator::position_squared:
        return detail::finish(op, p, detail::position_moment_raw(s, 2, p), s.pole);
    }
    throw UnsupportedOperator("expectation_value: unknown operator");
}

inline ExpectationValue expval_surface(const ResonanceState& s, Operator op) {
    return expectation_value(s, op, Prescription::surface_term);
}

inline ExpectationValue expval_berggren(const ResonanceState& s, Operator op) {
    return expectation_value(s, op, Prescription::berggren);
}

} // namespace siegert
