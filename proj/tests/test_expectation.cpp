#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "siegert/expectation.hpp"

using namespace siegert;
using std::numbers::pi;

namespace {

ResonanceState state_of(const PotentialModel& m, int n) {
    const PoleSearchResult res = find_poles(m, n);
    REQUIRE(res.complete());
    return build_state(res.poles[n - 1], m);
}

std::vector<ResonanceState> six_states() {
    std::vector<ResonanceState> states;
    for (int n = 1; n <= 3; ++n) states.push_back(state_of(DeltaShellPotential(6.0, 1.0), n));
    states.push_back(state_of(DeltaShellPotential(100.0, 1.0), 1));
    for (int n = 1; n <= 2; ++n) states.push_back(state_of(RectangularBarrier(10.0, 1.0), n));
    return states;
}

// Synthetic normalized bound-type state: interior A sin(k r) with k = i gamma,
// exterior fixed by continuity.  Not an eigenstate of any model here; used to
// compare the prescriptions against well-defined full-space integrals.
ResonanceState synthetic_bound_state(double gamma, double a) {
    const Complex k{0.0, gamma};
    const Complex i{0.0, 1.0};
    const Complex A{1.0, 0.0};
    const Complex D = A * std::sin(k * a) * std::exp(-i * k * a);
    return {PotentialModel(DeltaShellPotential(1.0, a)), make_pole(1, k, 0.0),
            DeltaShellCoefficients{A, D}};
}

} // namespace

TEST_CASE("hamiltonian and momentum expectations are exact") {
    for (const ResonanceState& s : six_states()) {
        for (Prescription p : {Prescription::surface_term, Prescription::berggren}) {
            const ExpectationValue h = expectation_value(s, Operator::hamiltonian, p);
            CHECK(h.raw == s.pole.energy);
            CHECK(h.physical == s.pole.energy.real());
            const ExpectationValue mom = expectation_value(s, Operator::momentum, p);
            CHECK(std::abs(mom.raw) == 0.0);
        }
    }
}

TEST_CASE("prescriptions agree on H, p and p^2") {
    for (const ResonanceState& s : six_states()) {
        for (Operator op : {Operator::hamiltonian, Operator::momentum, Operator::momentum_squared}) {
            const Complex lhs = expval_surface(s, op).raw;
            const Complex rhs = expval_berggren(s, op).raw;
            CHECK(oracle::rel_diff(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("momentum square uses the potential overlap") {
    SECTION("delta shell: the boundary spike contributes nothing") {
        const ResonanceState s = state_of(DeltaShellPotential(6.0, 1.0), 1);
        CHECK(std::abs(potential_overlap(s)) == 0.0);
        CHECK(expval_surface(s, Operator::momentum_squared).physical ==
              s.pole.energy.real());
    }

    SECTION("barrier: V0 times the interior norm integral") {
        const ResonanceState s = state_of(RectangularBarrier(10.0, 1.0), 1);
        const Complex quad = 10.0 * oracle::integrate([&](double x) {
            const Complex u = eval_state(s, x);
            return u * u;
        }, 0.0, 1.0);
        CHECK(oracle::rel_diff(potential_overlap(s), quad) < 1e-10);
        const ExpectationValue p2 = expval_surface(s, Operator::momentum_squared);
        CHECK(oracle::rel_diff(p2.raw, s.pole.energy - quad) < 1e-10);
    }
}

TEST_CASE("hermitian limit of position moments") {
    const ResonanceState s = state_of(DeltaShellPotential(1e6, 1.0), 1);
    const double r1 = expval_surface(s, Operator::position).physical;
    const double r2 = expval_surface(s, Operator::position_squared).physical;
    CHECK(std::abs(r1 - 0.5) < 1e-5);
    CHECK(std::abs(r2 - (1.0 / 3.0 - 1.0 / (2.0 * pi * pi))) < 1e-5);
}

TEST_CASE("interior moments") {
    SECTION("real box state reproduces the textbook integrals") {
        // A = sqrt(2), k = pi on [0, 1]
        const ResonanceState box{PotentialModel(DeltaShellPotential(1.0, 1.0)),
                                 make_pole(1, Complex{pi, 0.0}, 0.0),
                                 DeltaShellCoefficients{std::sqrt(2.0), 0.0}};
        CHECK(oracle::rel_diff(interior_moment(box, 1), Complex{0.5, 0.0}) < 1e-12);
        CHECK(oracle::rel_diff(interior_moment(box, 2),
                               Complex{1.0 / 3.0 - 1.0 / (2.0 * pi * pi), 0.0}) < 1e-12);
    }

    SECTION("norm moment is the normalization identity rearranged") {
        for (const ResonanceState& s : six_states()) {
            const Complex i{0.0, 1.0};
            Complex surface;
            if (geometry(s.model) == GeometryKind::half_line_with_cutoff) {
                const Complex ua = boundary_value(s);
                surface = (i / (2.0 * s.pole.k)) * ua * ua;
            } else {
                const Complex u0 = boundary_value(s, false), uL = boundary_value(s, true);
                surface = (i / (2.0 * s.pole.k)) * (u0 * u0 + uL * uL);
            }
            CHECK(std::abs(interior_moment(s, 0) - (1.0 - surface)) < 1e-10);
        }
    }

    SECTION("closed forms match adaptive quadrature") {
        for (const ResonanceState& s :
             {state_of(DeltaShellPotential(6.0, 1.0), 2), state_of(RectangularBarrier(10.0, 1.0), 1)}) {
            const double end = support_end(s.model);
            for (int m = 0; m <= 2; ++m) {
                const Complex quad = oracle::integrate([&](double x) {
                    const Complex u = eval_state(s, x);
                    return std::pow(x, m) * u * u;
                }, 0.0, end);
                CHECK(oracle::rel_diff(interior_moment(s, m), quad) < 1e-9);
            }
        }
    }
}

TEST_CASE("regularization tails") {
    const ResonanceState s = state_of(DeltaShellPotential(6.0, 1.0), 1);
    const Complex i{0.0, 1.0};
    const Complex k = s.pole.k;
    const double a = 1.0;

    SECTION("order zero reproduces the normalization surface term") {
        // algebraic identity with u(a)^2 carried through e^{2ika}
        const Complex ua = boundary_value(s);
        const Complex tail = ua * ua * std::exp(-2.0 * i * k * a) * regularization_tail(s.pole, a, 0);
        CHECK(oracle::rel_diff(tail, (i / (2.0 * k)) * ua * ua) < 1e-14);
        // via the exterior amplitude the same identity holds to the
        // continuity tolerance of the built state
        const auto& c = std::get<DeltaShellCoefficients>(s.coefficients);
        const Complex tail_d = c.exterior * c.exterior * regularization_tail(s.pole, a, 0);
        CHECK(oracle::rel_diff(tail_d, (i / (2.0 * k)) * ua * ua) < 1e-10);
    }

    SECTION("order one factors into the first correction term") {
        const Complex g = (i / (2.0 * k)) * std::exp(2.0 * i * k * a);
        const Complex correction = regularization_tail(s.pole, a, 1) / (g * a);
        CHECK(oracle::rel_diff(correction, 1.0 + i / (2.0 * k * a)) < 1e-13);
    }

    SECTION("purely imaginary wavenumber reduces to elementary integrals") {
        const double gamma = 0.9;
        const ComplexPole bound = make_pole(1, Complex{0.0, gamma}, 0.0);
        // int_a^inf r e^{-2 gamma r} dr
        const Complex exact = std::exp(-2.0 * gamma * a) * (a / (2.0 * gamma) + 1.0 / (4.0 * gamma * gamma));
        CHECK(oracle::rel_diff(regularization_tail(bound, a, 1), exact) < 1e-13);
        // m = 2 against quadrature on a truncated range
        const Complex quad = oracle::integrate(
            [&](double r) { return r * r * std::exp(-2.0 * gamma * r); }, a, a + 80.0 / gamma);
        CHECK(oracle::rel_diff(regularization_tail(bound, a, 2), quad) < 1e-11);
    }

    SECTION("unsupported order") {
        CHECK_THROWS_AS(regularization_tail(s.pole, a, 3), UnsupportedOrder);
    }
}

TEST_CASE("closed-form tails match the eps-regularized integrals") {
    // three proper resonances; eps = 1e-3, 1e-4, 1e-5 extrapolated to zero
    const std::vector<double> eps{1e-3, 1e-4, 1e-5};
    const ResonanceState states[] = {state_of(DeltaShellPotential(6.0, 1.0), 1),
                                     state_of(DeltaShellPotential(6.0, 1.0), 2),
                                     state_of(DeltaShellPotential(100.0, 1.0), 1)};
    for (const ResonanceState& s : states) {
        for (int m : {1, 2}) {
            std::vector<Complex> samples;
            for (double e : eps)
                samples.push_back(oracle::eps_regularized_tail(s.pole.k, 1.0, m, e));
            const Complex extrapolated = oracle::extrapolate_eps_to_zero(samples, eps);
            CHECK(oracle::rel_diff(extrapolated, regularization_tail(s.pole, 1.0, m)) < 1e-6);
        }
    }
}

TEST_CASE("prescription differences equal the closed-form corrections") {
    const Complex i{0.0, 1.0};
    for (double lam : {6.0, 100.0}) {
        const ResonanceState s = state_of(DeltaShellPotential(lam, 1.0), 1);
        const Complex k = s.pole.k;
        const double a = 1.0;
        const Complex ua2 = boundary_value(s) * boundary_value(s);
        const Complex curlA = i / (2.0 * k * a);
        const Complex curlB = i / (k * a) - 1.0 / (2.0 * k * k * a * a);

        const double dr = expval_berggren(s, Operator::position).physical -
                          expval_surface(s, Operator::position).physical;
        const double dr_expected = ((i / (2.0 * k)) * a * ua2 * curlA).real();
        CHECK(std::abs(dr - dr_expected) < 1e-12);

        const double dr2 = expval_berggren(s, Operator::position_squared).physical -
                           expval_surface(s, Operator::position_squared).physical;
        const double dr2_expected = ((i / (2.0 * k)) * a * a * ua2 * curlB).real();
        CHECK(std::abs(dr2 - dr2_expected) < 1e-12);
    }
}

TEST_CASE("berggren corrections are relatively small away from threshold") {
    const ResonanceState s = state_of(DeltaShellPotential(100.0, 1.0), 1);
    const double surface_term = std::abs(expval_surface(s, Operator::position).raw);
    const double diff = std::abs(expval_berggren(s, Operator::position).raw -
                                 expval_surface(s, Operator::position).raw);
    // relative order 1/(2|k|a)
    CHECK(diff / surface_term < 1.0 / (2.0 * std::abs(s.pole.k)) * 2.0);
}

TEST_CASE("segment geometry endpoint structure") {
    const ResonanceState s = state_of(RectangularBarrier(10.0, 1.0), 1);
    const ResonanceState s2 = state_of(RectangularBarrier(10.0, 1.0), 2);

    SECTION("parity states sit at the segment midpoint in both prescriptions") {
        // reflection x -> L - x maps each parity eigenstate onto itself, so
        // <x> -> L - <x> forces the raw value L/2
        for (const ResonanceState* st : {&s, &s2}) {
            CHECK(std::abs(expval_surface(*st, Operator::position).raw - 0.5) < 1e-12);
            CHECK(std::abs(expval_berggren(*st, Operator::position).raw - 0.5) < 1e-12);
        }
    }

    SECTION("momentum cancellation verified by quadrature") {
        const Complex i{0.0, 1.0};
        const Complex integral = oracle::integrate([&](double x) {
            return eval_state(s, x) * (-i) * eval_state_derivative(s, x);
        }, 0.0, 1.0);
        const Complex u0 = boundary_value(s, false), uL = boundary_value(s, true);
        const Complex surface = (i / 2.0) * (uL * uL - u0 * u0);
        CHECK(std::abs(integral + surface) < 1e-9);
    }

    SECTION("position-squared differs between prescriptions by the endpoint tails") {
        const Complex i{0.0, 1.0};
        const Complex k = s.pole.k;
        const double L = 1.0;
        const Complex uL2 = boundary_value(s, true) * boundary_value(s, true);
        const Complex u02 = boundary_value(s, false) * boundary_value(s, false);
        const Complex curlB = i / (k * L) - 1.0 / (2.0 * k * k * L * L);
        const Complex right = (i / (2.0 * k)) * L * L * uL2 * curlB;
        const Complex left = u02 * regularization_tail(s.pole, 0.0, 2); // (-1)^2 tail at x = 0
        const Complex diff = expval_berggren(s, Operator::position_squared).raw -
                             expval_surface(s, Operator::position_squared).raw;
        CHECK(oracle::rel_diff(diff, right + left) < 1e-12);
    }
}

TEST_CASE("bound states recover ordinary expectation values") {
    const double gamma = 0.8, a = 1.0;
    const ResonanceState s = synthetic_bound_state(gamma, a);
    const auto& c = std::get<DeltaShellCoefficients>(s.coefficients);
    for (int m : {1, 2}) {
        // direct full-space integral: closed interior moment plus the
        // elementary exterior tail of D^2 e^{-2 gamma r}
        const Complex interior = interior_moment(s, m);
        const Complex exterior = oracle::integrate(
            [&](double r) {
                const Complex u = c.exterior * std::exp(Complex{0.0, 1.0} * s.pole.k * r);
                return std::pow(r, m) * u * u;
            },
            a, a + 80.0 / gamma);
        const Complex full_space = interior + exterior;
        const Operator op = m == 1 ? Operator::position : Operator::position_squared;
        CHECK(oracle::rel_diff(expval_berggren(s, op).raw, full_space) < 1e-10);
        // the surface prescription misses exactly the correction terms
        const double correction = std::abs(expval_berggren(s, op).raw - expval_surface(s, op).raw);
        CHECK(correction > 1e-4);
    }
}

TEST_CASE("improper poles are reported, not refused") {
    const ResonanceState s = state_of(DeltaShellPotential(0.1, 1.0), 1);
    REQUIRE(s.pole.classification == PoleClass::resonance_improper);
    const ExpectationValue p2 = expval_surface(s, Operator::momentum_squared);
    CHECK(p2.improper_pole);
    CHECK(p2.physical < 0.0); // E < 0 for beta > alpha
}

TEST_CASE("momentum-square sign flips exactly with the proper-pole condition") {
    // For the delta shell <<p^2>> = Re E, so its sign change brackets the
    // alpha = beta crossing exactly.  The crossing sits near lambda = 0.107.
    auto p2_at = [](double lam) {
        const PoleSearchResult res = find_poles(DeltaShellPotential(lam, 1.0), 1);
        REQUIRE(res.complete());
        const ResonanceState s = build_state(res.poles[0], DeltaShellPotential(lam, 1.0));
        return std::pair{expval_surface(s, Operator::momentum_squared).physical,
                         s.pole.alpha() - s.pole.beta()};
    };
    const auto [p2_lo, ab_lo] = p2_at(0.10);
    const auto [p2_hi, ab_hi] = p2_at(0.12);
    CHECK(p2_lo < 0.0);
    CHECK(ab_lo < 0.0);
    CHECK(p2_hi > 0.0);
    CHECK(ab_hi > 0.0);
    CHECK((p2_lo < 0.0) == (ab_lo < 0.0));
    CHECK((p2_hi > 0.0) == (ab_hi > 0.0));
}
