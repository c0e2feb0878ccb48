#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siegert/errors.hpp"
#include "siegert/potentials.hpp"

namespace siegert {

// ---------------------------------------------------------------------------
// Pole bookkeeping
// ---------------------------------------------------------------------------

enum class PoleClass { bound, antibound, resonance_proper, resonance_improper };

inline const char* to_string(PoleClass c) {
    switch (c) {
    case PoleClass::bound: return "bound";
    case PoleClass::antibound: return "antibound";
    case PoleClass::resonance_proper: return "resonance_proper";
    default: return "resonance_improper";
    }
}

/// One S-matrix pole k = alpha - i*beta with energy E = k^2.
/// index n > 0 labels fourth-quadrant poles; -n is the mirror -conj(k).
struct ComplexPole {
    int index = 0;
    Complex k{};
    Complex energy{};       // k^2 = E - i*Gamma/2
    PoleClass classification = PoleClass::resonance_proper;
    double residual = 0.0;  // |J(k)| relative to the term scale of J

    double alpha() const { return k.real(); }
    double beta() const { return -k.imag(); }
    double gamma_width() const { return -2.0 * energy.imag(); } // 4*alpha*beta
};

inline PoleClass classify_pole(Complex k) {
    const double scale = std::max(1.0, std::abs(k));
    if (std::abs(k.real()) <= 1e-12 * scale)
        return k.imag() > 0.0 ? PoleClass::bound : PoleClass::antibound;
    return k.real() > std::abs(k.imag()) ? PoleClass::resonance_proper
                                         : PoleClass::resonance_improper;
}

inline ComplexPole make_pole(int index, Complex k, double residual) {
    return ComplexPole{index, k, k * k, classify_pole(k), residual};
}

/// Time-reversal partner k_{-n} = -conj(k_n); generated, never solved for.
inline ComplexPole conjugate_partner(const ComplexPole& pole) {
    ComplexPole mirror = pole;
    mirror.index = -pole.index;
    mirror.k = -std::conj(pole.k);
    mirror.energy = mirror.k * mirror.k;
    return mirror;
}

// ---------------------------------------------------------------------------
// Characteristic functions
// ---------------------------------------------------------------------------

/// Value and analytic derivative of a characteristic function, plus the
/// magnitude scale of its constituent terms.  `scale` turns the raw residual
/// into a cancellation measure that stays meaningful when the terms are huge
/// (large intensity) or tiny.
struct CharFnValue {
    Complex value{};
    Complex derivative{};
    double scale = 1.0;
};

/// Delta shell: J(k) = 2ik + lambda (e^{2ika} - 1).  J(0) = 0 is an artifact
/// of this form, not a pole; pole searches drop it.
inline CharFnValue char_fn_delta(Complex k, const DeltaShellPotential& model) {
    const Complex i{0.0, 1.0};
    const double lam = model.intensity, a = model.radius;
    const Complex phase = std::exp(2.0 * i * k * a);
    CharFnValue out;
    out.value = 2.0 * i * k + lam * (phase - 1.0);
    out.derivative = 2.0 * i + 2.0 * i * a * lam * phase;
    out.scale = 2.0 * std::abs(k) + lam * (std::abs(phase) + 1.0);
    if (out.scale <= 0.0) out.scale = 1.0;
    return out;
}

/// Interior wavenumber q = sqrt(k^2 - V0), principal branch.  The zero set
/// below is invariant under q -> -q, so the branch choice is immaterial.
inline Complex barrier_interior_wavenumber(Complex k, const RectangularBarrier& model) {
    return std::sqrt(k * k - model.height);
}

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

namespace detail {

// J(k; q) = e^{-iqL/2}(k+q) +/- e^{iqL/2}(k-q) with explicit q, for the
// branch-symmetry checks.  '+' vanishes on states even about x = L/2,
// '-' on odd ones (verified against u(L/2 + d) = +/- u(L/2 - d)).
inline Complex rect_char_fn_given_q(Complex k, Complex q, double width, Parity parity) {
    const Complex i{0.0, 1.0};
    const Complex em = std::exp(-i * q * width / 2.0) * (k + q);
    const Complex ep = std::exp(i * q * width / 2.0) * (k - q);
    return parity == Parity::even ? em + ep : em - ep;
}

} // namespace detail

/// Rectangular barrier characteristic function for one parity sector.
inline CharFnValue char_fn_rect(Complex k, const RectangularBarrier& model, Parity parity) {
    const Complex i{0.0, 1.0};
    const double L = model.width;
    const Complex q = barrier_interior_wavenumber(k, model);
    const Complex em = std::exp(-i * q * L / 2.0);
    const Complex ep = std::exp(i * q * L / 2.0);
    const Complex ta = em * (k + q);
    const Complex tb = ep * (k - q);
    const double sign = parity == Parity::even ? 1.0 : -1.0;
    // dq/dk = k/q
    const Complex dq = k / q;
    const Complex da = em * (-i * (L / 2.0) * dq * (k + q) + (1.0 + dq));
    const Complex db = ep * (i * (L / 2.0) * dq * (k - q) + (1.0 - dq));
    CharFnValue out;
    out.value = ta + sign * tb;
    out.derivative = da + sign * db;
    out.scale = std::abs(ta) + std::abs(tb);
    if (out.scale <= 0.0) out.scale = 1.0;
    return out;
}

/// Which parity sector a (near-)pole of the barrier belongs to.
inline Parity barrier_parity(Complex k, const RectangularBarrier& model) {
    const double fe = std::abs(char_fn_rect(k, model, Parity::even).value);
    const double fo = std::abs(char_fn_rect(k, model, Parity::odd).value);
    return fe <= fo ? Parity::even : Parity::odd;
}

// ---------------------------------------------------------------------------
// Seeds and Newton refinement
// ---------------------------------------------------------------------------

/// Large-intensity pole estimate for the delta shell:
/// k_n ~ (n pi / a)(1 - 1/(lambda a)) - i (1/a)(n pi/(lambda a))^2.
/// Throws SeedOutOfQuadrant when the estimate leaves the fourth quadrant
/// (lambda a <= 1); callers fall back to a grid scan there.
inline Complex asymptotic_seed_delta(int n, const DeltaShellPotential& model) {
    if (n < 1) throw std::invalid_argument("asymptotic_seed_delta: n must be >= 1");
    const double la = model.intensity * model.radius;
    const double re = (n * std::numbers::pi / model.radius) * (1.0 - 1.0 / la);
    const double im = -(1.0 / model.radius) *
                      std::pow(n * std::numbers::pi / la, 2);
    if (!(re > 0.0) || !(im < 0.0))
        throw SeedOutOfQuadrant("asymptotic_seed_delta: seed not in fourth quadrant at lambda*a = " +
                                std::to_string(la));
    return {re, im};
}

struct NewtonOptions {
    double tol = 1e-12;             // on |J| / scale
    int max_iter = 60;
    double derivative_floor = 1e-30;
};

struct RefinedRoot {
    Complex k{};
    double residual = 0.0;
    int iterations = 0;
};

/// Newton-Raphson k <- k - J(k)/J'(k) on a characteristic function.
inline RefinedRoot newton_refine(const std::function<CharFnValue(Complex)>& fn,
                                 Complex seed, const NewtonOptions& opt = {}) {
    Complex k = seed;
    for (int it = 0; it <= opt.max_iter; ++it) {
        const CharFnValue f = fn(k);
        const double res = std::abs(f.value) / f.scale;
        if (res < opt.tol) return {k, res, it};
        if (it == opt.max_iter) break;
        if (std::abs(f.derivative) < opt.derivative_floor)
            throw DerivativeVanished("newton_refine: |dJ/dk| below floor (near-degenerate root?)");
        k -= f.value / f.derivative;
        if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
            throw NoConvergence("newton_refine: iterate left the finite plane");
    }
    throw NoConvergence("newton_refine: no convergence after " +
                        std::to_string(opt.max_iter) + " iterations");
}

// ---------------------------------------------------------------------------
// Pole search
// ---------------------------------------------------------------------------

struct PoleSearchOptions {
    NewtonOptions newton{};
    double beta_max = 6.0;   // scan depth (units of 1/support); doubled on shortage
};

struct PoleFailure {
    int index = 0;
    std::string reason;
};

struct PoleSearchResult {
    std::vector<ComplexPole> poles;     // sorted by Re k ascending, n = 1..
    std::vector<PoleFailure> failures;  // indices that could not be resolved
    bool complete() const { return failures.empty(); }
};

namespace detail {

inline std::function<CharFnValue(Complex)> bind_char_fn(const DeltaShellPotential& m) {
    return [m](Complex k) { return char_fn_delta(k, m); };
}

// Local minima of |f| over a rectangular grid, Newton-refined and filtered to
// the fourth quadrant.  Generic driver for both models' scans.
template <typename Eval, typename Refine>
std::vector<Complex> scan_rectangle(Eval&& magnitude, Refine&& refine,
                                    double re_lo, double re_hi, double re_step,
                                    double im_lo, double im_hi, double im_step,
                                    double dedupe_dist) {
    std::vector<double> res, ims;
    for (double x = re_lo; x <= re_hi + 1e-15; x += re_step) res.push_back(x);
    for (double y = im_lo; y <= im_hi + 1e-15; y += im_step) ims.push_back(y);
    if (res.size() < 3 || ims.size() < 3) return {};

    const auto cols = res.size(), rows = ims.size();
    std::vector<double> mag(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            mag[i * cols + j] = magnitude(Complex{res[j], ims[i]});

    std::vector<Complex> roots;
    auto push_unique = [&](Complex k) {
        for (const Complex& other : roots)
            if (std::abs(k - other) <= dedupe_dist) return;
        roots.push_back(k);
    };
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        for (std::size_t j = 1; j + 1 < cols; ++j) {
            const double v = mag[i * cols + j];
            if (!std::isfinite(v)) continue;
            if (v <= mag[(i - 1) * cols + j] && v <= mag[(i + 1) * cols + j] &&
                v <= mag[i * cols + j - 1] && v <= mag[i * cols + j + 1]) {
                if (auto k = refine(Complex{res[j], ims[i]})) push_unique(*k);
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](Complex l, Complex r) { return l.real() < r.real(); });
    return roots;
}

inline PoleSearchResult find_poles_delta(const DeltaShellPotential& model, int n_max,
                                         const PoleSearchOptions& opt) {
    const double a = model.radius;
    const double pi = std::numbers::pi;
    const auto fn = bind_char_fn(model);
    const double k_floor = 1e-6 / a; // rejects the spurious J(0) = 0 root
    const double dedupe = std::max(10.0 * opt.newton.tol, 1e-11 / a);

    // Re k_n always falls in ((n - 1/2) pi/a, n pi/a); that window both
    // validates seeded results and assigns indices to scanned ones.
    auto window_index = [&](Complex k) {
        return static_cast<int>(std::ceil(k.real() * a / pi - 1e-9));
    };

    // Seeded path: asymptotic estimates refined by Newton, each result
    // required to land in its own window.
    auto try_seeds = [&]() -> std::optional<std::vector<ComplexPole>> {
        std::vector<ComplexPole> poles;
        for (int n = 1; n <= n_max; ++n) {
            Complex seed;
            try {
                seed = asymptotic_seed_delta(n, model);
            } catch (const SeedOutOfQuadrant&) {
                return std::nullopt;
            }
            RefinedRoot root;
            try {
                root = newton_refine(fn, seed, opt.newton);
            } catch (const SolverError&) {
                return std::nullopt;
            }
            const Complex k = root.k;
            if (!(k.real() > k_floor) || !(k.imag() < 0.0)) return std::nullopt;
            if (window_index(k) != n) return std::nullopt;
            poles.push_back(make_pole(n, k, root.residual));
        }
        for (std::size_t i = 1; i < poles.size(); ++i)
            if (std::abs(poles[i].k - poles[i - 1].k) <= dedupe) return std::nullopt;
        return poles;
    };

    if (model.intensity * a > 1.05) {
        if (auto poles = try_seeds()) return {std::move(*poles), {}};
    }

    // Grid-scan fallback, authoritative for shallow shells and stray seeds.
    PoleSearchResult result;
    double beta_max = opt.beta_max / a;
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto refine = [&](Complex seed) -> std::optional<Complex> {
            try {
                const RefinedRoot root = newton_refine(fn, seed, opt.newton);
                if (root.k.real() > k_floor && root.k.imag() < 0.0) return root.k;
            } catch (const SolverError&) {
            }
            return std::nullopt;
        };
        const double step = pi / (14.0 * a);
        auto roots = scan_rectangle([&](Complex k) { return std::abs(fn(k).value) / fn(k).scale; },
                                    refine,
                                    0.05 / a, (n_max + 0.45) * pi / a, step,
                                    -beta_max, -1e-4 / a, step, dedupe);
        std::vector<ComplexPole> poles;
        for (Complex k : roots) {
            const int n = window_index(k);
            if (n >= 1 && n <= n_max &&
                std::none_of(poles.begin(), poles.end(),
                             [&](const ComplexPole& p) { return p.index == n; })) {
                poles.push_back(make_pole(n, k, std::abs(fn(k).value) / fn(k).scale));
            }
        }
        if (static_cast<int>(poles.size()) == n_max || attempt == 3) {
            result.poles = std::move(poles);
            break;
        }
        beta_max *= 2.0; // poles sit deeper than the scan; widen and retry
    }
    for (int n = 1; n <= n_max; ++n)
        if (std::none_of(result.poles.begin(), result.poles.end(),
                         [&](const ComplexPole& p) { return p.index == n; }))
            result.failures.push_back({n, "no converged root in the index window"});
    return result;
}

inline PoleSearchResult find_poles_rect(const RectangularBarrier& model, int n_max,
                                        const PoleSearchOptions& opt) {
    const double L = model.width;
    const double pi = std::numbers::pi;
    const double dedupe = std::max(10.0 * opt.newton.tol, 1e-11 / L);

    // Poles cluster uniformly (spacing ~ pi/L) in the interior wavenumber q,
    // while their k-plane spacing collapses like 1/L^2 just above sqrt(V0).
    // Scan |J_even * J_odd| over a q rectangle, then refine in k on the
    // smaller factor.
    auto product_mag = [&](Complex q) {
        Complex k = std::sqrt(q * q + model.height);
        if (k.imag() > 0.0) k = -std::conj(k);
        const CharFnValue fe = char_fn_rect(k, model, Parity::even);
        const CharFnValue fo = char_fn_rect(k, model, Parity::odd);
        return (std::abs(fe.value) / fe.scale) * (std::abs(fo.value) / fo.scale);
    };
    auto refine = [&](Complex q0) -> std::optional<Complex> {
        Complex k0 = std::sqrt(q0 * q0 + model.height);
        if (k0.imag() > 0.0) k0 = -std::conj(k0);
        const Parity parity = barrier_parity(k0, model);
        try {
            const RefinedRoot root = newton_refine(
                [&](Complex k) { return char_fn_rect(k, model, parity); }, k0, opt.newton);
            if (root.k.real() > 0.0 && root.k.imag() < 0.0) return root.k;
        } catch (const SolverError&) {
        }
        return std::nullopt;
    };

    const double q_step = std::min(0.25, pi / (5.0 * L));
    const double q_max = ((n_max + 1.5) * pi + 3.0) / L;
    const double bq_max = std::min(std::max(4.0, 10.0 / L), 600.0 / L);
    auto roots = scan_rectangle(product_mag, refine,
                                q_step / 2.0, q_max, q_step,
                                -bq_max, -q_step / 50.0, q_step, dedupe);

    PoleSearchResult result;
    int n = 0;
    for (Complex k : roots) {
        if (n >= n_max) break;
        const Parity parity = barrier_parity(k, model);
        const CharFnValue f = char_fn_rect(k, model, parity);
        result.poles.push_back(make_pole(++n, k, std::abs(f.value) / f.scale));
    }
    for (int miss = n + 1; miss <= n_max; ++miss)
        result.failures.push_back({miss, "q-plane scan found fewer poles than requested"});
    return result;
}

} // namespace detail

/// Fourth-quadrant poles n = 1..n_max, ordered by Re k ascending.
/// Partial results carry per-index failures instead of throwing.
inline PoleSearchResult find_poles(const PotentialModel& model, int n_max,
                                   const PoleSearchOptions& opt = {}) {
    if (n_max < 1) throw std::invalid_argument("find_poles: n_max must be >= 1");
    if (const auto* d = std::get_if<DeltaShellPotential>(&model))
        return detail::find_poles_delta(*d, n_max, opt);
    return detail::find_poles_rect(std::get<RectangularBarrier>(model), n_max, opt);
}

/// Characteristic function of whichever sector the pole belongs to.
inline CharFnValue characteristic_value(const PotentialModel& model, Complex k) {
    if (const auto* d = std::get_if<DeltaShellPotential>(&model))
        return char_fn_delta(k, *d);
    const auto& b = std::get<RectangularBarrier>(model);
    return char_fn_rect(k, b, barrier_parity(k, b));
}

// ---------------------------------------------------------------------------
// Parameter continuation
// ---------------------------------------------------------------------------

enum class SweepParameter { intensity, height, width };

inline const char* to_string(SweepParameter p) {
    switch (p) {
    case SweepParameter::intensity: return "lambda";
    case SweepParameter::height: return "v0";
    default: return "length";
    }
}

inline PotentialModel with_parameter(const PotentialModel& base, SweepParameter param,
                                     double value) {
    if (const auto* d = std::get_if<DeltaShellPotential>(&base)) {
        if (param != SweepParameter::intensity)
            throw std::invalid_argument("with_parameter: delta shell sweeps only lambda");
        return DeltaShellPotential(value, d->radius);
    }
    const auto& b = std::get<RectangularBarrier>(base);
    if (param == SweepParameter::height) return RectangularBarrier(value, b.width);
    if (param == SweepParameter::width) return RectangularBarrier(b.height, value);
    throw std::invalid_argument("with_parameter: barrier sweeps v0 or length");
}

enum class TrackStatus { ok, diverged_to_infinity, continuity_break, no_convergence };

inline const char* to_string(TrackStatus s) {
    switch (s) {
    case TrackStatus::ok: return "ok";
    case TrackStatus::diverged_to_infinity: return "diverged_to_infinity";
    case TrackStatus::continuity_break: return "continuity_break";
    default: return "no_convergence";
    }
}

struct TrajectoryPoint {
    double parameter = 0.0;
    ComplexPole pole{};
    TrackStatus status = TrackStatus::ok;
};

struct PoleTrack {
    int index = 0;
    std::vector<TrajectoryPoint> points;
    TrackStatus termination = TrackStatus::ok;
};

struct Trajectory {
    SweepParameter parameter{};
    std::vector<PoleTrack> tracks;
    bool clean() const {
        return std::all_of(tracks.begin(), tracks.end(), [](const PoleTrack& t) {
            return t.termination == TrackStatus::ok ||
                   t.termination == TrackStatus::diverged_to_infinity;
        });
    }
};

struct TrackOptions {
    NewtonOptions newton{};
    PoleSearchOptions search{};
    double beta_ceiling = 8.0;   // stop a track once -Im k exceeds this
    int max_step_halvings = 24;  // per grid interval
};

/// Continuation of selected poles along a monotone parameter grid.  Each
/// solution seeds the next point; a jump larger than half the minimum pole
/// spacing triggers parameter-step halving before it is accepted.
inline Trajectory track_poles(const PotentialModel& base, SweepParameter param,
                              std::span<const double> grid, std::span<const int> indices,
                              const TrackOptions& opt = {}) {
    if (grid.empty()) throw std::invalid_argument("track_poles: empty parameter grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if ((grid[i] - grid[i - 1]) * (grid[1] - grid[0]) <= 0.0 && grid.size() > 1)
            throw std::invalid_argument("track_poles: grid must be strictly monotone");
    if (indices.empty()) throw std::invalid_argument("track_poles: no indices requested");

    const int n_top = *std::max_element(indices.begin(), indices.end());
    if (n_top < 1) throw std::invalid_argument("track_poles: indices must be >= 1");

    Trajectory out;
    out.parameter = param;

    // Resolve every requested index at the first grid point.
    const PotentialModel first = with_parameter(base, param, grid[0]);
    const PoleSearchResult start = find_poles(first, n_top, opt.search);
    const double support = support_end(base);
    const double beta_cap = opt.beta_ceiling;

    struct Live {
        int index;
        Complex k;
        bool alive;
        std::size_t track; // position in out.tracks
    };
    std::vector<Live> live;
    for (int idx : indices) {
        out.tracks.push_back(PoleTrack{idx, {}, TrackStatus::ok});
        PoleTrack& track = out.tracks.back();
        const auto it = std::find_if(start.poles.begin(), start.poles.end(),
                                     [&](const ComplexPole& p) { return p.index == idx; });
        if (it == start.poles.end()) {
            track.termination = TrackStatus::no_convergence;
            live.push_back({idx, {}, false, out.tracks.size() - 1});
            continue;
        }
        track.points.push_back({grid[0], *it, TrackStatus::ok});
        live.push_back({idx, it->k, true, out.tracks.size() - 1});
    }

    auto min_spacing = [&]() {
        double sep = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < live.size(); ++i)
            for (std::size_t j = i + 1; j < live.size(); ++j)
                if (live[i].alive && live[j].alive)
                    sep = std::min(sep, std::abs(live[i].k - live[j].k));
        if (!std::isfinite(sep)) {
            // lone track: fall back to half the generic pole spacing
            sep = std::numbers::pi / (2.0 * support);
        }
        return sep;
    };

    // Advance all live tracks from the current parameter to `target`,
    // bisecting the interval whenever continuity would be violated.  At the
    // halving limit only the offending tracks terminate; the rest continue.
    std::function<void(double, double, int)> advance =
        [&](double from, double target, int depth) {
        const double bound = 0.5 * min_spacing();
        const PotentialModel m = with_parameter(base, param, target);
        struct Outcome {
            Live* state;
            ComplexPole pole;
            TrackStatus status;
        };
        std::vector<Outcome> outcomes;
        bool need_split = false;
        for (Live& state : live) {
            if (!state.alive) continue;
            try {
                const RefinedRoot root = newton_refine(
                    [&](Complex k) { return characteristic_value(m, k); }, state.k, opt.newton);
                const TrackStatus st = std::abs(root.k - state.k) > bound
                                           ? TrackStatus::continuity_break
                                           : TrackStatus::ok;
                if (st != TrackStatus::ok) need_split = true;
                outcomes.push_back({&state, make_pole(state.index, root.k, root.residual), st});
            } catch (const SolverError&) {
                need_split = true;
                outcomes.push_back({&state, {}, TrackStatus::no_convergence});
            }
        }
        if (need_split && depth < opt.max_step_halvings) {
            const double mid = 0.5 * (from + target);
            if (mid != from && mid != target) {
                advance(from, mid, depth + 1);
                advance(mid, target, depth + 1);
                return;
            }
        }
        for (Outcome& o : outcomes) {
            PoleTrack& track = out.tracks[o.state->track];
            if (o.status != TrackStatus::ok) {
                track.termination = o.status;
                if (!track.points.empty()) track.points.back().status = o.status;
                o.state->alive = false;
                continue;
            }
            o.state->k = o.pole.k;
            track.points.push_back({target, o.pole, TrackStatus::ok});
            if (o.pole.beta() > beta_cap) {
                track.points.back().status = TrackStatus::diverged_to_infinity;
                track.termination = TrackStatus::diverged_to_infinity;
                o.state->alive = false;
            }
        }
    };

    for (std::size_t g = 1; g < grid.size(); ++g) {
        if (std::none_of(live.begin(), live.end(), [](const Live& s) { return s.alive; })) break;
        advance(grid[g - 1], grid[g], 0);
    }
    return out;
}

} // namespace siegert
