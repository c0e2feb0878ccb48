#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace siegert {

using Complex = std::complex<double>;

// Closed-form antiderivatives of x^m cos(w x) and x^m e^{z x} for complex
// frequency/rate.  These carry all identity checks (normalization,
// orthogonality, moments); no numerical quadrature happens behind them.
// Near w = 0 / z = 0 the closed forms cancel catastrophically, so a short
// power series takes over below |w|*upper <= 1.

namespace detail {

inline Complex cosine_moment_series(int m, Complex w, double upper) {
    // int_0^X x^m cos(w x) dx = sum_j (-1)^j (wX)^{2j} X^{m+1} / ((2j)! (2j+m+1))
    const Complex wx2 = -(w * upper) * (w * upper);
    Complex term = 1.0; // (wX)^{2j} (-1)^j / (2j)!
    Complex sum = term / double(m + 1);
    for (int j = 1; j <= 28; ++j) {
        term *= wx2 / double((2 * j - 1) * (2 * j));
        const Complex add = term / double(2 * j + m + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return std::pow(upper, m + 1) * sum;
}

inline Complex exponential_moment_series(int m, Complex z, double upper) {
    // int_0^X x^m e^{z x} dx = sum_j (zX)^j X^{m+1} / (j! (j+m+1))
    const Complex zx = z * upper;
    Complex term = 1.0; // (zX)^j / j!
    Complex sum = term / double(m + 1);
    for (int j = 1; j <= 30; ++j) {
        term *= zx / double(j);
        const Complex add = term / double(j + m + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return std::pow(upper, m + 1) * sum;
}

} // namespace detail

/// int_0^upper x^m cos(w x) dx for m in {0,1,2}, complex w.
inline Complex cosine_moment(int m, Complex w, double upper) {
    if (m < 0 || m > 2) throw std::invalid_argument("cosine_moment: m must be 0, 1 or 2");
    const double X = upper;
    if (std::abs(w) * X <= 1.0) return detail::cosine_moment_series(m, w, X);
    const Complex s = std::sin(w * X), c = std::cos(w * X);
    switch (m) {
    case 0: return s / w;
    case 1: return (c - 1.0) / (w * w) + X * s / w;
    default: return X * X * s / w + 2.0 * X * c / (w * w) - 2.0 * s / (w * w * w);
    }
}

/// int_0^upper x^m e^{z x} dx for m in {0,1,2}, complex z.
inline Complex exponential_moment(int m, Complex z, double upper) {
    if (m < 0 || m > 2) throw std::invalid_argument("exponential_moment: m must be 0, 1 or 2");
    const double X = upper;
    if (std::abs(z) * X <= 1.0) return detail::exponential_moment_series(m, z, X);
    const Complex e = std::exp(z * X);
    const Complex iz = 1.0 / z;
    switch (m) {
    case 0: return (e - 1.0) * iz;
    case 1: return e * (X * iz - iz * iz) + iz * iz;
    default: return e * (X * X * iz - 2.0 * X * iz * iz + 2.0 * iz * iz * iz) - 2.0 * iz * iz * iz;
    }
}

/// int_0^upper x^m sin(p x) sin(q x) dx via the product-to-sum identity.
inline Complex sine_product_moment(int m, Complex p, Complex q, double upper) {
    return 0.5 * (cosine_moment(m, p - q, upper) - cosine_moment(m, p + q, upper));
}

} // namespace siegert
