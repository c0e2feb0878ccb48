#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "siegert/complex_moments.hpp"
#include "siegert/errors.hpp"
#include "siegert/poles.hpp"
#include "siegert/potentials.hpp"

namespace siegert {

// ---------------------------------------------------------------------------
// Resonance eigenfunctions
// ---------------------------------------------------------------------------

/// u(r) = interior * sin(k r) on [0, a],  exterior * e^{ikr} beyond.
struct DeltaShellCoefficients {
    Complex interior; // A_n
    Complex exterior; // D_n
};

/// u(x) = left e^{-ikx} (x<=0),  out e^{iqx} + back e^{-iqx} inside,
/// right e^{ikx} (x>=L), with interior wavenumber q = sqrt(k^2 - V0).
struct BarrierCoefficients {
    Complex left;     // F_n
    Complex out;      // A_n
    Complex back;     // B_n
    Complex right;    // D_n
    Complex q;        // q_n
};

struct ResonanceState {
    PotentialModel model;
    ComplexPole pole;
    std::variant<DeltaShellCoefficients, BarrierCoefficients> coefficients;
};

namespace detail {

constexpr double kPoleResidualGate = 1e-10;

inline const DeltaShellCoefficients& shell_coeffs(const ResonanceState& s) {
    return std::get<DeltaShellCoefficients>(s.coefficients);
}
inline const BarrierCoefficients& barrier_coeffs(const ResonanceState& s) {
    return std::get<BarrierCoefficients>(s.coefficients);
}

// Flip the overall sign so Re(ref) > 0, tie-broken by Im(ref) > 0.
inline double sign_convention(Complex ref) {
    if (ref.real() > 0.0) return 1.0;
    if (ref.real() < 0.0) return -1.0;
    return ref.imag() >= 0.0 ? 1.0 : -1.0;
}

// int_0^X x^m u_n u_m dx for two interior barrier solutions.
inline Complex barrier_cross_moment(int m, const BarrierCoefficients& cn,
                                    const BarrierCoefficients& cm, double width) {
    const Complex i{0.0, 1.0};
    return cn.out * cm.out * exponential_moment(m, i * (cn.q + cm.q), width) +
           cn.out * cm.back * exponential_moment(m, i * (cn.q - cm.q), width) +
           cn.back * cm.out * exponential_moment(m, i * (cm.q - cn.q), width) +
           cn.back * cm.back * exponential_moment(m, -i * (cn.q + cm.q), width);
}

// conj(u) in the (e^{+i conj(q) x}, e^{-i conj(q) x}) basis: the interior
// amplitudes swap roles.
inline BarrierCoefficients conjugate(const BarrierCoefficients& c) {
    return {std::conj(c.left), std::conj(c.back), std::conj(c.out), std::conj(c.right),
            std::conj(c.q)};
}

} // namespace detail

/// Interior moment int_0^end x^m u_n(x) u_m(x) dx in closed form.
inline Complex cross_moment(const ResonanceState& sn, const ResonanceState& sm, int m) {
    if (!same_model(sn.model, sm.model))
        throw ModelMismatch("cross_moment: states belong to different models");
    if (const auto* d = std::get_if<DeltaShellPotential>(&sn.model)) {
        const auto& cn = detail::shell_coeffs(sn);
        const auto& cm = detail::shell_coeffs(sm);
        return cn.interior * cm.interior *
               sine_product_moment(m, sn.pole.k, sm.pole.k, d->radius);
    }
    const auto& b = std::get<RectangularBarrier>(sn.model);
    return detail::barrier_cross_moment(m, detail::barrier_coeffs(sn),
                                        detail::barrier_coeffs(sm), b.width);
}

/// int_0^end x^m u^2 dx.
inline Complex interior_moment(const ResonanceState& s, int m) {
    return cross_moment(s, s, m);
}

/// int_0^end x^m |u|^2 dx (real up to roundoff).
inline Complex interior_abs2_moment(const ResonanceState& s, int m) {
    if (const auto* d = std::get_if<DeltaShellPotential>(&s.model)) {
        const auto& c = detail::shell_coeffs(s);
        return c.interior * std::conj(c.interior) *
               sine_product_moment(m, s.pole.k, std::conj(s.pole.k), d->radius);
    }
    const auto& b = std::get<RectangularBarrier>(s.model);
    const auto& c = detail::barrier_coeffs(s);
    return detail::barrier_cross_moment(m, c, detail::conjugate(c), b.width);
}

/// Boundary values of u at the outgoing edge(s), via the interior form.
inline Complex boundary_value(const ResonanceState& s, bool right_edge = true) {
    if (std::holds_alternative<DeltaShellPotential>(s.model)) {
        const auto& d = std::get<DeltaShellPotential>(s.model);
        return detail::shell_coeffs(s).interior * std::sin(s.pole.k * d.radius);
    }
    const auto& b = std::get<RectangularBarrier>(s.model);
    const auto& c = detail::barrier_coeffs(s);
    const Complex i{0.0, 1.0};
    if (!right_edge) return c.out + c.back;
    return c.out * std::exp(i * c.q * b.width) + c.back * std::exp(-i * c.q * b.width);
}

/// Normalized eigenfunction for a verified pole.
///
/// Delta shell: A_n = [2 lambda / (lambda a + e^{-2ika})]^{1/2} normalizes
/// the state exactly at an exact root; D_n follows from continuity.
/// Barrier: the three-region matching fixes (F, A, B, D) up to scale; the
/// scale comes from the closed-form normalization sum, principal square
/// root, with the sign convention Re A > 0 (tie: Im A > 0).
inline ResonanceState build_state(const ComplexPole& pole, const PotentialModel& model) {
    const CharFnValue jv = characteristic_value(model, pole.k);
    if (std::abs(jv.value) / jv.scale > detail::kPoleResidualGate)
        throw InvalidPole("build_state: characteristic residual " +
                          std::to_string(std::abs(jv.value) / jv.scale) +
                          " exceeds 1e-10; refine the pole first");

    const Complex i{0.0, 1.0};
    const Complex k = pole.k;
    if (const auto* d = std::get_if<DeltaShellPotential>(&model)) {
        const double lam = d->intensity, a = d->radius;
        Complex A = std::sqrt(2.0 * lam / (lam * a + std::exp(-2.0 * i * k * a)));
        Complex D = -A * (k / lam) * std::exp(-2.0 * i * k * a);
        const double sgn = detail::sign_convention(A);
        return {model, pole, DeltaShellCoefficients{sgn * A, sgn * D}};
    }

    const auto& b = std::get<RectangularBarrier>(model);
    const double L = b.width;
    const Complex q = barrier_interior_wavenumber(k, b);
    Complex A = 1.0;
    Complex B = A * (k + q) / (q - k);          // outgoing matching at x = 0
    Complex F = A + B;
    Complex D = (A * std::exp(i * q * L) + B * std::exp(-i * q * L)) * std::exp(-i * k * L);

    BarrierCoefficients raw{F, A, B, D, q};
    ResonanceState unscaled{model, pole, raw};
    const Complex u0 = boundary_value(unscaled, false);
    const Complex uL = boundary_value(unscaled, true);
    const Complex norm_sum =
        interior_moment(unscaled, 0) + (i / (2.0 * k)) * (u0 * u0 + uL * uL);
    const Complex scale = 1.0 / std::sqrt(norm_sum);
    A *= scale; B *= scale; F *= scale; D *= scale;
    const double sgn = detail::sign_convention(A);
    return {model, pole, BarrierCoefficients{sgn * F, sgn * A, sgn * B, sgn * D, q}};
}

/// Piecewise evaluation; |u| grows like e^{beta x} outside the interaction.
inline Complex eval_state(const ResonanceState& s, double x) {
    const Complex i{0.0, 1.0};
    const Complex k = s.pole.k;
    if (std::holds_alternative<DeltaShellPotential>(s.model)) {
        if (x < 0.0) throw std::domain_error("eval_state: delta-shell states live on r >= 0");
        const auto& d = std::get<DeltaShellPotential>(s.model);
        const auto& c = detail::shell_coeffs(s);
        if (x <= d.radius) return c.interior * std::sin(k * x);
        return c.exterior * std::exp(i * k * x);
    }
    const auto& b = std::get<RectangularBarrier>(s.model);
    const auto& c = detail::barrier_coeffs(s);
    if (x <= 0.0) return c.left * std::exp(-i * k * x);
    if (x >= b.width) return c.right * std::exp(i * k * x);
    return c.out * std::exp(i * c.q * x) + c.back * std::exp(-i * c.q * x);
}

/// One-sided spatial derivative (interior form on region boundaries).
inline Complex eval_state_derivative(const ResonanceState& s, double x) {
    const Complex i{0.0, 1.0};
    const Complex k = s.pole.k;
    if (std::holds_alternative<DeltaShellPotential>(s.model)) {
        const auto& d = std::get<DeltaShellPotential>(s.model);
        const auto& c = detail::shell_coeffs(s);
        if (x <= d.radius) return c.interior * k * std::cos(k * x);
        return i * k * c.exterior * std::exp(i * k * x);
    }
    const auto& b = std::get<RectangularBarrier>(s.model);
    const auto& c = detail::barrier_coeffs(s);
    if (x < 0.0) return -i * k * c.left * std::exp(-i * k * x);
    if (x > b.width) return i * k * c.right * std::exp(i * k * x);
    return i * c.q * (c.out * std::exp(i * c.q * x) - c.back * std::exp(-i * c.q * x));
}

/// LHS minus one of the normalization identity:
/// half line: int_0^a u^2 + (i/2k) u^2(a) = 1;
/// segment:   int_0^L u^2 + (i/2k)[u^2(0) + u^2(L)] = 1.
inline Complex normalization_residual(const ResonanceState& s) {
    const Complex i{0.0, 1.0};
    const Complex k = s.pole.k;
    Complex surface;
    if (geometry(s.model) == GeometryKind::half_line_with_cutoff) {
        const Complex ua = boundary_value(s);
        surface = (i / (2.0 * k)) * ua * ua;
    } else {
        const Complex u0 = boundary_value(s, false);
        const Complex uL = boundary_value(s, true);
        surface = (i / (2.0 * k)) * (u0 * u0 + uL * uL);
    }
    return interior_moment(s, 0) + surface - 1.0;
}

/// Orthonormality form: interior cross integral plus the i/(k_n + k_m)
/// surface term(s); equals the Kronecker delta for exact poles.
inline Complex overlap(const ResonanceState& sn, const ResonanceState& sm) {
    if (!same_model(sn.model, sm.model))
        throw ModelMismatch("overlap: states belong to different models");
    const Complex i{0.0, 1.0};
    const Complex ksum = sn.pole.k + sm.pole.k;
    Complex surface;
    if (geometry(sn.model) == GeometryKind::half_line_with_cutoff) {
        surface = (i / ksum) * boundary_value(sn) * boundary_value(sm);
    } else {
        surface = (i / ksum) * (boundary_value(sn, false) * boundary_value(sm, false) +
                                boundary_value(sn, true) * boundary_value(sm, true));
    }
    return cross_moment(sn, sm, 0) + surface;
}

// ---------------------------------------------------------------------------
// Closure and expansions
// ---------------------------------------------------------------------------

enum class Summation { direct, cesaro };

/// Truncated closure sum (1/2) sum_{n=-N..N, n != 0} u_n(x) u_n(x').
/// States are the positive-index half; the -n members enter as conjugates,
/// so the imaginary part cancels to roundoff.  The raw partial sums
/// oscillate without pointwise decay (they build a delta function); the
/// cesaro option returns the arithmetic mean of the partial sums, which does
/// tend to zero for x != x' away from x + x' = a.
inline Complex closure_residual(std::span<const ResonanceState> states, double x, double xp,
                                Summation mode = Summation::direct) {
    Complex partial = 0.0, mean_acc = 0.0;
    std::size_t count = 0;
    for (const ResonanceState& s : states) {
        const Complex term = eval_state(s, x) * eval_state(s, xp);
        partial += 0.5 * (term + std::conj(term));
        mean_acc += partial;
        ++count;
    }
    if (mode == Summation::direct || count == 0) return partial;
    return mean_acc / static_cast<double>(count);
}

struct ExpansionCoefficients {
    int n_pairs = 0;
    std::vector<Complex> positive; // C_{+n},  n = 1..n_pairs
    std::vector<Complex> negative; // C_{-n}
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

inline Complex composite_gauss(const std::function<Complex(double)>& f, double lo, double hi,
                               int points) {
    constexpr int kOrder = 16;
    static std::vector<double> nodes, weights;
    if (nodes.empty()) legendre_rule(kOrder, nodes, weights);
    const int panels = std::max(1, (points + kOrder - 1) / kOrder);
    const double h = (hi - lo) / panels;
    Complex total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        for (int j = 0; j < kOrder; ++j)
            total += 0.5 * h * weights[j] * f(mid + 0.5 * h * nodes[j]);
    }
    return total;
}

} // namespace detail

/// Interior half-oscillation count of a state (used to gate expansion grids).
inline double interior_oscillations(const ResonanceState& s) {
    return std::max(1.0, s.pole.k.real() * support_end(s.model) / std::numbers::pi);
}

/// Expansion coefficients C_{+/-n} = int_0^end Psi u_{+/-n} dx by composite
/// Gauss-Legendre over `quadrature_points` interior nodes.  This is the one
/// numerical quadrature in the library; every identity check stays closed
/// form.  Requires at least 8 points per interior oscillation of the most
/// oscillatory state.
inline ExpansionCoefficients expand(const std::function<Complex(double)>& psi,
                                    std::span<const ResonanceState> states,
                                    int quadrature_points) {
    if (states.empty()) return {};
    double oscillations = 1.0;
    for (const ResonanceState& s : states)
        oscillations = std::max(oscillations, interior_oscillations(s));
    if (quadrature_points < 8.0 * oscillations)
        throw GridTooCoarse("expand: need at least " +
                            std::to_string(static_cast<int>(std::ceil(8.0 * oscillations))) +
                            " interior points for the requested states");
    const double end = support_end(states.front().model);
    ExpansionCoefficients out;
    out.n_pairs = static_cast<int>(states.size());
    for (const ResonanceState& s : states) {
        out.positive.push_back(detail::composite_gauss(
            [&](double r) { return psi(r) * eval_state(s, r); }, 0.0, end, quadrature_points));
        out.negative.push_back(detail::composite_gauss(
            [&](double r) { return psi(r) * std::conj(eval_state(s, r)); }, 0.0, end,
            quadrature_points));
    }
    return out;
}

/// Psi(x) ~ (1/2) sum_n C_n u_n(x) over the conjugate pairs.
inline Complex reconstruct(const ExpansionCoefficients& coeffs,
                           std::span<const ResonanceState> states, double x) {
    Complex sum = 0.0;
    for (int n = 0; n < coeffs.n_pairs; ++n) {
        const Complex un = eval_state(states[n], x);
        sum += coeffs.positive[n] * un + coeffs.negative[n] * std::conj(un);
    }
    return 0.5 * sum;
}

// ---------------------------------------------------------------------------
// Width identity and time dependence
// ---------------------------------------------------------------------------

/// Relative residual of Gamma = 2 alpha |u(edge)|^2 / int |u|^2 (both
/// outgoing edges for the segment geometry).  Defined for resonances only.
inline double decay_width_residual(const ResonanceState& s) {
    const ComplexPole& p = s.pole;
    if (!(p.alpha() > 0.0) || !(p.beta() > 0.0))
        throw std::domain_error("decay_width_residual: state is not a resonance");
    double surface = std::norm(boundary_value(s, true));
    if (geometry(s.model) == GeometryKind::segment)
        surface += std::norm(boundary_value(s, false));
    const double interior = interior_abs2_moment(s, 0).real();
    const double gamma = p.gamma_width();
    return std::abs(gamma - 2.0 * p.alpha() * surface / interior) / gamma;
}

/// e^{-i E_n t} = e^{-i script(E) t} e^{-Gamma t / 2}.
inline Complex time_factor(const ComplexPole& pole, double t) {
    if (t < 0.0) throw std::domain_error("time_factor: t must be >= 0");
    const Complex i{0.0, 1.0};
    return std::exp(-i * pole.energy * t);
}

} // namespace siegert
