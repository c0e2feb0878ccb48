// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Run via ctest or directly:  ./acceptance

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "siegert/siegert.hpp"

using namespace siegert;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %-38s %s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

ResonanceState solve_state(const PotentialModel& m, int n) {
    const PoleSearchResult res = find_poles(m, n);
    if (!res.complete() || static_cast<int>(res.poles.size()) < n)
        throw SolverError("pole search incomplete");
    return build_state(res.poles[n - 1], m);
}

std::vector<ResonanceState> suite_states() {
    std::vector<ResonanceState> states;
    for (int n = 1; n <= 3; ++n) states.push_back(solve_state(DeltaShellPotential(6.0, 1.0), n));
    states.push_back(solve_state(DeltaShellPotential(100.0, 1.0), 1));
    for (int n = 1; n <= 2; ++n) states.push_back(solve_state(RectangularBarrier(10.0, 1.0), n));
    return states;
}

// 1. Infinite-wall limit of the uncertainty product.
void criterion_1() {
    const auto t0 = Clock::now();
    const ResonanceState s = solve_state(DeltaShellPotential(1e6, 1.0), 1);
    const double product = uncertainty_product(s, Prescription::surface_term).product;
    const double gap = std::abs(product - 0.5678622);
    const double elapsed = seconds_since(t0);
    report(1, "infinite-wall limit", gap < 1e-3 && elapsed < 1.0,
           fmt("|product - 0.5678622| = %.3g, %.2fs", gap, elapsed));
}

// 2. Uncertainty bound crossings on the 0.1-step intensity grid.
void criterion_2() {
    const auto t0 = Clock::now();
    double cross_s = 0.0, cross_b = 0.0;
    auto below = [](double v) { return std::isnan(v) || v < 0.5; };
    double prev_s = 0.0, prev_b = 0.0;
    for (int i = 0; i <= 80; ++i) {
        const double lam = 2.0 + 0.1 * i;
        const ResonanceState s = solve_state(DeltaShellPotential(lam, 1.0), 1);
        const double ps = uncertainty_product(s, Prescription::surface_term).product;
        const double pb = uncertainty_product(s, Prescription::berggren).product;
        if (i > 0 && below(prev_s) && !below(ps) && cross_s == 0.0) cross_s = lam;
        if (i > 0 && below(prev_b) && !below(pb) && cross_b == 0.0) cross_b = lam;
        prev_s = ps;
        prev_b = pb;
    }
    const double elapsed = seconds_since(t0);
    const bool ok = cross_s >= 4.5 && cross_s <= 5.5 && cross_b >= 6.5 && cross_b <= 7.5 &&
                    elapsed < 10.0;
    report(2, "validity thresholds", ok,
           fmt("surface at %.1f, berggren at %.1f, %.2fs", cross_s, cross_b, elapsed));
}

// 3. H, p, p^2 agree between prescriptions.
void criterion_3() {
    double worst = 0.0;
    for (const ResonanceState& s : suite_states())
        for (Operator op : {Operator::hamiltonian, Operator::momentum, Operator::momentum_squared})
            worst = std::max(worst, oracle::rel_diff(expval_surface(s, op).raw,
                                                     expval_berggren(s, op).raw));
    report(3, "prescription equivalence", worst < 1e-12, fmt("max rel diff = %.3g", worst));
}

// 4. Order-zero regularization tail equals the normalization surface term.
void criterion_4() {
    double worst = 0.0;
    for (const ResonanceState& s : suite_states()) {
        const Complex i{0.0, 1.0};
        const Complex k = s.pole.k;
        const double end = support_end(s.model);
        const Complex uR = boundary_value(s, true);
        const Complex tail =
            uR * uR * std::exp(-2.0 * i * k * end) * regularization_tail(s.pole, end, 0);
        const Complex surface = (i / (2.0 * k)) * uR * uR;
        worst = std::max(worst, oracle::rel_diff(tail, surface));
    }
    report(4, "normalization equivalence", worst < 1e-12, fmt("max rel diff = %.3g", worst));
}

// 5. Orthonormality matrices for both models.
void criterion_5() {
    double offdiag = 0.0, diag = 0.0;
    for (const PotentialModel m : {PotentialModel(DeltaShellPotential(6.0, 1.0)),
                                   PotentialModel(RectangularBarrier(10.0, 1.0))}) {
        std::vector<ResonanceState> states;
        for (int n = 1; n <= 5; ++n) states.push_back(solve_state(m, n));
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const Complex o = overlap(states[i], states[j]);
                if (i == j) diag = std::max(diag, std::abs(o - 1.0));
                else offdiag = std::max(offdiag, std::abs(o));
            }
    }
    report(5, "orthonormality", offdiag < 1e-8 && diag < 1e-10,
           fmt("max offdiag = %.3g, max |diag-1| = %.3g", offdiag, diag));
}

// 6. Decay width identity.
void criterion_6() {
    double worst = 0.0;
    for (double lam : {6.0, 100.0})
        for (int n = 1; n <= 3; ++n)
            worst = std::max(worst, decay_width_residual(solve_state(DeltaShellPotential(lam, 1.0), n)));
    report(6, "decay-width identity", worst < 1e-8, fmt("max rel residual = %.3g", worst));
}

// 7. Quadratic shrinkage of the seed error.
void criterion_7() {
    std::vector<double> errs;
    for (double lam : {1e2, 1e3, 1e4}) {
        const DeltaShellPotential shell(lam, 1.0);
        const PoleSearchResult res = find_poles(shell, 1);
        errs.push_back(std::abs(res.poles.at(0).k - asymptotic_seed_delta(1, shell)));
    }
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    const bool ok = r1 > 50.0 && r1 < 200.0 && r2 > 50.0 && r2 < 200.0;
    report(7, "pole asymptotics", ok, fmt("error ratios %.1f, %.1f", r1, r2));
}

// 8. Wide-barrier pole clustering just above sqrt(V0).
void criterion_8() {
    const auto t0 = Clock::now();
    const PoleSearchResult res = find_poles(RectangularBarrier(10.0, 100.0), 4);
    bool ok = res.complete() && res.poles.size() == 4;
    double worst_im = 0.0;
    for (const ComplexPole& p : res.poles) {
        ok = ok && p.k.real() > 3.16 && p.k.real() < 3.5 && std::abs(p.k.imag()) < 0.1;
        worst_im = std::max(worst_im, std::abs(p.k.imag()));
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 5.0;
    report(8, "wide-barrier clustering", ok,
           fmt("Re k in (3.16, 3.5), max |Im k| = %.2g, %.2fs", worst_im, elapsed));
}

// 9. Closed-form tails against eps-regularized integrals.
void criterion_9() {
    const std::vector<double> eps{1e-3, 1e-4, 1e-5};
    const ResonanceState states[] = {solve_state(DeltaShellPotential(6.0, 1.0), 1),
                                     solve_state(DeltaShellPotential(6.0, 1.0), 2),
                                     solve_state(DeltaShellPotential(100.0, 1.0), 1)};
    double worst = 0.0;
    for (const ResonanceState& s : states)
        for (int m : {1, 2}) {
            std::vector<Complex> samples;
            for (double e : eps) samples.push_back(oracle::eps_regularized_tail(s.pole.k, 1.0, m, e));
            const Complex limit = oracle::extrapolate_eps_to_zero(samples, eps);
            worst = std::max(worst, oracle::rel_diff(limit, regularization_tail(s.pole, 1.0, m)));
        }
    report(9, "eps-oracle agreement", worst < 1e-6, fmt("max rel diff = %.3g", worst));
}

// 10. Exact zeros and eigenvalue identities for every suite state.
void criterion_10() {
    double worst_p = 0.0, worst_h = 0.0, worst_dh = 0.0;
    for (const ResonanceState& s : suite_states()) {
        for (Prescription p : {Prescription::surface_term, Prescription::berggren}) {
            worst_p = std::max(worst_p, std::abs(expectation_value(s, Operator::momentum, p).raw));
            worst_h = std::max(worst_h,
                               std::abs(expectation_value(s, Operator::hamiltonian, p).physical -
                                        s.pole.energy.real()));
        }
        worst_dh = std::max(worst_dh, hamiltonian_dispersion(s));
    }
    const bool ok = worst_p < 1e-12 && worst_h < 1e-12 && worst_dh == 0.0;
    report(10, "exact zeros and eigenvalues", ok,
           fmt("|<p>| = %.3g, |<H> - E| = %.3g, dH = %.3g", worst_p, worst_h, worst_dh));
}

// 11. Sign law E > 0 iff alpha > beta on tracked poles.
void criterion_11() {
    bool ok = true;
    int checked = 0;
    // tracked across a grid that crosses the proper/improper boundary
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(2.0 * std::exp(std::log(0.05 / 2.0) * i / 40.0));
    const int indices[] = {1, 2};
    TrackOptions opt;
    opt.beta_ceiling = 12.0;
    const Trajectory traj =
        track_poles(DeltaShellPotential(2.0, 1.0), SweepParameter::intensity, grid, indices, opt);
    for (const PoleTrack& track : traj.tracks)
        for (const TrajectoryPoint& pt : track.points) {
            ok = ok && ((pt.pole.energy.real() > 0.0) == (pt.pole.alpha() > pt.pole.beta()));
            ++checked;
        }
    report(11, "proper-pole sign law", ok && checked > 40,
           fmt("%.0f tracked poles checked", double(checked)));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
