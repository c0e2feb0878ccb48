#pragma once

// Test-only numerical oracles, deliberately independent of the closed-form
// implementation paths they check: generic adaptive quadrature, the
// Gaussian-damped (eps-regularized) exterior integral evaluated on a rotated
// ray, and small helpers.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

namespace detail {

inline Complex simpson(const std::function<Complex(double)>& f, double a, double b, Complex fa,
                       Complex fm, Complex fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const Complex flm = f(lm), frm = f(rm);
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Complex delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of a complex integrand on [a, b].
inline Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                         double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    return detail::simpson(f, a, b, f(a), f(m), f(b), tol, 48);
}

/// int_a^inf e^{-eps r^2} r^m e^{2ikr} dr for a proper pole (alpha > beta),
/// evaluated along the ray r = a + s e^{i theta}.  The rotation makes the
/// plane-wave factor decay while staying inside the sector where the
/// Gaussian closes the contour.
inline Complex eps_regularized_tail(Complex k, double a, int m, double eps) {
    const Complex z = 2.0 * Complex{0.0, 1.0} * k;
    const double theta = 0.225 * std::numbers::pi;
    const Complex w = std::polar(1.0, theta);
    const Complex zw = z * w;
    // decay requires Re(z w) < 0, i.e. alpha/beta > cot(theta)
    const double rate = -zw.real();
    const double s_max = 60.0 / rate;
    const double cycles = s_max * std::abs(zw.imag()) / (2.0 * std::numbers::pi);
    const int panels = std::max(64, static_cast<int>(8.0 * cycles));
    Complex total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = s_max * p / panels, hi = s_max * (p + 1) / panels;
        total += integrate(
            [&](double s) {
                const Complex r = a + s * w;
                return std::exp(-eps * r * r) * std::pow(r, m) * std::exp(z * r) * w;
            },
            lo, hi, 1e-15);
    }
    return total;
}

/// Quadratic Richardson extrapolation of I(eps) = I0 + c1 eps + c2 eps^2
/// through three samples.
inline Complex extrapolate_eps_to_zero(const std::vector<Complex>& values,
                                       const std::vector<double>& eps) {
    // solve the 3x3 Vandermonde system directly for I0
    const double e0 = eps[0], e1 = eps[1], e2 = eps[2];
    const Complex f0 = values[0], f1 = values[1], f2 = values[2];
    // Lagrange interpolation evaluated at eps = 0
    const double l0 = (0.0 - e1) * (0.0 - e2) / ((e0 - e1) * (e0 - e2));
    const double l1 = (0.0 - e0) * (0.0 - e2) / ((e1 - e0) * (e1 - e2));
    const double l2 = (0.0 - e0) * (0.0 - e1) / ((e2 - e0) * (e2 - e1));
    return f0 * l0 + f1 * l1 + f2 * l2;
}

inline double rel_diff(Complex lhs, Complex rhs) {
    const double scale = std::max({1e-300, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) / scale;
}

} // namespace oracle
