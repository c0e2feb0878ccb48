#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "siegert/config.hpp"
#include "siegert/errors.hpp"
#include "siegert/uncertainty.hpp"

namespace siegert {

using ordered_json = nlohmann::ordered_json;

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitPartial = 2;

inline constexpr int kCsvSchemaVersion = 1;

/// 17 significant digits: doubles round-trip and output stays byte-stable.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Grids and shared run options
// ---------------------------------------------------------------------------

enum class GridScale { linear, log };

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    GridScale scale = GridScale::linear;
};

inline std::vector<double> build_grid(const GridSpec& g) {
    if (g.count < 1) throw ConfigError("grid_count must be >= 1");
    if (g.count == 1) return {g.min};
    if (g.min == g.max) throw ConfigError("grid_min and grid_max must differ when grid_count > 1");
    std::vector<double> out;
    out.reserve(g.count);
    if (g.scale == GridScale::log) {
        if (!(g.min > 0.0) || !(g.max > 0.0))
            throw ConfigError("log grids require positive grid_min and grid_max");
        const double ratio = std::log(g.max / g.min);
        for (int i = 0; i < g.count; ++i)
            out.push_back(g.min * std::exp(ratio * i / double(g.count - 1)));
    } else {
        const double step = (g.max - g.min) / double(g.count - 1);
        for (int i = 0; i < g.count; ++i) out.push_back(g.min + step * i);
    }
    return out;
}

struct RunOptions {
    PotentialModel model;
    NewtonOptions newton{};
    PoleSearchOptions search{};
    TrackOptions track{};
    int workers = 1;
};

namespace detail {

inline PotentialModel model_from_config(ConfigView& view) {
    const std::string kind = view.get_string("model");
    if (kind == "delta_shell")
        return DeltaShellPotential(view.get_double("lambda"), view.get_double("a"));
    if (kind == "rectangular_barrier")
        return RectangularBarrier(view.get_double("v0"), view.get_double("length"));
    throw ConfigError("model must be delta_shell or rectangular_barrier, got '" + kind + "'");
}

inline RunOptions run_options_from(ConfigView& view) {
    RunOptions opt{model_from_config(view)};
    opt.newton.tol = view.get_double("tol", 1e-12);
    opt.newton.max_iter = view.get_int("max_iter", 60);
    if (!(opt.newton.tol > 0.0)) throw ConfigError("tol must be > 0");
    opt.search.newton = opt.newton;
    opt.search.beta_max = view.get_double("beta_max", 6.0);
    opt.track.newton = opt.newton;
    opt.track.search = opt.search;
    opt.track.beta_ceiling = view.get_double("beta_ceiling", 8.0);
    opt.workers = view.get_int("workers", 1);
    if (opt.workers < 1) throw ConfigError("workers must be >= 1");
    return opt;
}

inline SweepParameter parameter_from(ConfigView& view, const PotentialModel& model) {
    const std::string name = view.get_string("parameter");
    SweepParameter param;
    if (name == "lambda") param = SweepParameter::intensity;
    else if (name == "v0") param = SweepParameter::height;
    else if (name == "length") param = SweepParameter::width;
    else throw ConfigError("parameter must be lambda, v0 or length, got '" + name + "'");
    const bool shell = std::holds_alternative<DeltaShellPotential>(model);
    if (shell != (param == SweepParameter::intensity))
        throw ConfigError(std::string("parameter '") + name + "' does not belong to this model");
    return param;
}

inline GridSpec grid_from(ConfigView& view) {
    GridSpec g;
    g.min = view.get_double("grid_min");
    g.max = view.get_double("grid_max");
    g.count = view.get_int("grid_count");
    const std::string scale = view.get_string("grid_scale", "linear");
    if (scale == "linear") g.scale = GridScale::linear;
    else if (scale == "log") g.scale = GridScale::log;
    else throw ConfigError("grid_scale must be linear or log, got '" + scale + "'");
    return g;
}

inline std::vector<int> indices_from(ConfigView& view) {
    auto indices = view.get_int_list("indices");
    for (int n : indices)
        if (n < 1) throw ConfigError("indices must be >= 1");
    return indices;
}

// Deterministic worker pool: rows are indexed, workers fill disjoint slots,
// output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&]() {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<std::size_t>(workers, count) - 1;
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
}

} // namespace detail

// ---------------------------------------------------------------------------
// poles command
// ---------------------------------------------------------------------------

struct PolesRun {
    RunOptions options;
    int n_max = 1;
};

inline PolesRun make_poles_run(const ConfigData& cfg) {
    ConfigView view(cfg.view("poles"));
    PolesRun run{detail::run_options_from(view)};
    run.n_max = view.get_int("n_max");
    if (run.n_max < 1) throw ConfigError("n_max must be >= 1");
    view.reject_unknown();
    return run;
}

struct CommandOutput {
    int exit_code = kExitOk;
    std::string csv;
    ordered_json json;
    std::string human;
};

inline CommandOutput run_poles(const PolesRun& run) {
    const PoleSearchResult found = find_poles(run.options.model, run.n_max, run.options.search);
    CommandOutput out;
    std::ostringstream csv;
    csv << "# schema=" << kCsvSchemaVersion << "\n";
    csv << "n,re_k,im_k,re_E,im_E,classification,residual\n";
    ordered_json rows = ordered_json::array();
    for (const ComplexPole& p : found.poles) {
        csv << p.index << ',' << format_double(p.k.real()) << ',' << format_double(p.k.imag())
            << ',' << format_double(p.energy.real()) << ',' << format_double(p.energy.imag())
            << ',' << to_string(p.classification) << ',' << format_double(p.residual) << "\n";
        rows.push_back({{"n", p.index},
                        {"re_k", p.k.real()},
                        {"im_k", p.k.imag()},
                        {"re_E", p.energy.real()},
                        {"im_E", p.energy.imag()},
                        {"classification", to_string(p.classification)},
                        {"residual", p.residual}});
    }
    out.csv = csv.str();
    out.json = {{"schema", kCsvSchemaVersion}, {"command", "poles"}, {"rows", rows}};
    if (!found.complete()) {
        out.exit_code = kExitPartial;
        ordered_json failures = ordered_json::array();
        for (const PoleFailure& f : found.failures)
            failures.push_back({{"n", f.index}, {"reason", f.reason}});
        out.json["failures"] = failures;
    }
    out.human = out.csv;
    return out;
}

// ---------------------------------------------------------------------------
// trajectory command
// ---------------------------------------------------------------------------

struct TrajectoryRun {
    RunOptions options;
    SweepParameter parameter{};
    GridSpec grid;
    std::vector<int> indices;
};

inline TrajectoryRun make_trajectory_run(const ConfigData& cfg) {
    ConfigView view(cfg.view("trajectory"));
    TrajectoryRun run{detail::run_options_from(view)};
    run.parameter = detail::parameter_from(view, run.options.model);
    run.grid = detail::grid_from(view);
    run.indices = detail::indices_from(view);
    view.reject_unknown();
    return run;
}

inline CommandOutput run_trajectory(const TrajectoryRun& run) {
    const std::vector<double> grid = build_grid(run.grid);
    const Trajectory traj = track_poles(run.options.model, run.parameter, grid, run.indices,
                                        run.options.track);
    CommandOutput out;
    std::ostringstream csv;
    csv << "# schema=" << kCsvSchemaVersion << "\n";
    csv << "parameter,n,re_k,im_k,re_E,im_E,classification,residual,status\n";
    ordered_json tracks = ordered_json::array();
    for (const PoleTrack& track : traj.tracks) {
        ordered_json points = ordered_json::array();
        for (const TrajectoryPoint& pt : track.points) {
            csv << format_double(pt.parameter) << ',' << track.index << ','
                << format_double(pt.pole.k.real()) << ',' << format_double(pt.pole.k.imag()) << ','
                << format_double(pt.pole.energy.real()) << ','
                << format_double(pt.pole.energy.imag()) << ','
                << to_string(pt.pole.classification) << ',' << format_double(pt.pole.residual)
                << ',' << to_string(pt.status) << "\n";
            points.push_back({{"parameter", pt.parameter},
                              {"re_k", pt.pole.k.real()},
                              {"im_k", pt.pole.k.imag()},
                              {"status", to_string(pt.status)}});
        }
        tracks.push_back({{"n", track.index},
                          {"termination", to_string(track.termination)},
                          {"points", points}});
    }
    out.csv = csv.str();
    out.json = {{"schema", kCsvSchemaVersion},
                {"command", "trajectory"},
                {"parameter", to_string(run.parameter)},
                {"tracks", tracks}};
    out.exit_code = traj.clean() ? kExitOk : kExitPartial;
    out.human = out.csv;
    return out;
}

// ---------------------------------------------------------------------------
// uncertainty-sweep command
// ---------------------------------------------------------------------------

struct UncertaintySweepRun {
    RunOptions options;
    SweepParameter parameter{};
    GridSpec grid;
    std::vector<int> indices;
    std::vector<Prescription> prescriptions;
};

inline UncertaintySweepRun make_uncertainty_sweep_run(const ConfigData& cfg) {
    ConfigView view(cfg.view("uncertainty-sweep"));
    UncertaintySweepRun run{detail::run_options_from(view)};
    run.parameter = detail::parameter_from(view, run.options.model);
    run.grid = detail::grid_from(view);
    run.indices = detail::indices_from(view);
    for (const std::string& p : view.get_list("prescriptions")) {
        if (p == "surface") run.prescriptions.push_back(Prescription::surface_term);
        else if (p == "berggren") run.prescriptions.push_back(Prescription::berggren);
        else throw ConfigError("prescriptions entries must be surface or berggren, got '" + p + "'");
    }
    view.reject_unknown();
    return run;
}

namespace detail {

struct SweepCell {
    bool solved = false;
    std::string error;
    ComplexPole pole{};
    std::vector<UncertaintyReport> reports; // one per prescription
};

} // namespace detail

inline CommandOutput run_uncertainty_sweep(const UncertaintySweepRun& run) {
    const std::vector<double> grid = build_grid(run.grid);
    const bool shell = std::holds_alternative<DeltaShellPotential>(run.options.model);
    const int n_top = *std::max_element(run.indices.begin(), run.indices.end());

    // cells[g][i]: grid point g, requested index slot i
    std::vector<std::vector<detail::SweepCell>> cells(
        grid.size(), std::vector<detail::SweepCell>(run.indices.size()));
    detail::parallel_for(grid.size(), run.options.workers, [&](std::size_t g) {
        PotentialModel m = run.options.model;
        try {
            m = with_parameter(run.options.model, run.parameter, grid[g]);
        } catch (const std::exception& e) {
            for (auto& cell : cells[g]) cell.error = e.what();
            return;
        }
        const PoleSearchResult found = find_poles(m, n_top, run.options.search);
        for (std::size_t i = 0; i < run.indices.size(); ++i) {
            detail::SweepCell& cell = cells[g][i];
            const int want = run.indices[i];
            const auto it = std::find_if(found.poles.begin(), found.poles.end(),
                                         [&](const ComplexPole& p) { return p.index == want; });
            if (it == found.poles.end()) {
                cell.error = "pole not found";
                continue;
            }
            try {
                const ResonanceState state = build_state(*it, m);
                cell.pole = *it;
                for (Prescription p : run.prescriptions)
                    cell.reports.push_back(uncertainty_product(state, p));
                cell.solved = true;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    });

    CommandOutput out;
    std::ostringstream csv;
    csv << "# schema=" << kCsvSchemaVersion << "\n";
    csv << "parameter,n,prescription,re_k,im_k,classification,residual,"
           "mean_x,mean_x2,mean_p2,var_x,product,satisfies_bound,"
           "proper_pole,positive_p2,positive_var";
    if (shell) csv << ",iw_reference";
    csv << ",status\n";
    ordered_json rows = ordered_json::array();
    bool partial = false;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t i = 0; i < run.indices.size(); ++i) {
            const detail::SweepCell& cell = cells[g][i];
            for (std::size_t p = 0; p < run.prescriptions.size(); ++p) {
                const bool ok = cell.solved;
                if (!ok) partial = true;
                const UncertaintyReport rep = ok ? cell.reports[p] : UncertaintyReport{};
                csv << format_double(grid[g]) << ',' << run.indices[i] << ','
                    << to_string(run.prescriptions[p]) << ','
                    << format_double(ok ? cell.pole.k.real() : nan) << ','
                    << format_double(ok ? cell.pole.k.imag() : nan) << ','
                    << (ok ? to_string(cell.pole.classification) : "unresolved") << ','
                    << format_double(ok ? cell.pole.residual : nan) << ','
                    << format_double(ok ? rep.mean_position : nan) << ','
                    << format_double(ok ? rep.mean_position_sq : nan) << ','
                    << format_double(ok ? rep.mean_p2 : nan) << ','
                    << format_double(ok ? rep.var_position : nan) << ','
                    << format_double(ok ? rep.product : nan) << ','
                    << (ok && rep.satisfies_bound ? 1 : 0) << ','
                    << (ok && rep.flags.proper_pole ? 1 : 0) << ','
                    << (ok && rep.flags.positive_p2 ? 1 : 0) << ','
                    << (ok && rep.flags.positive_var ? 1 : 0);
                if (shell) csv << ',' << format_double(infinite_wall_reference(run.indices[i]));
                csv << ',' << (ok ? "ok" : cell.error) << "\n";
                ordered_json row = {{"parameter", grid[g]},
                                    {"n", run.indices[i]},
                                    {"prescription", to_string(run.prescriptions[p])},
                                    {"status", ok ? "ok" : cell.error}};
                if (ok) {
                    row["re_k"] = cell.pole.k.real();
                    row["im_k"] = cell.pole.k.imag();
                    row["product"] = rep.product;
                    row["satisfies_bound"] = rep.satisfies_bound;
                    row["proper_pole"] = rep.flags.proper_pole;
                }
                if (shell) row["iw_reference"] = infinite_wall_reference(run.indices[i]);
                rows.push_back(row);
            }
        }
    }
    out.csv = csv.str();
    out.json = {{"schema", kCsvSchemaVersion},
                {"command", "uncertainty-sweep"},
                {"parameter", to_string(run.parameter)},
                {"rows", rows}};
    out.exit_code = partial ? kExitPartial : kExitOk;
    out.human = out.csv;
    return out;
}

// ---------------------------------------------------------------------------
// state-dump command
// ---------------------------------------------------------------------------

struct StateDumpRun {
    RunOptions options;
    int index = 1;
    int x_count = 400;
    double exterior_margin = 0.5; // fraction of the interior length
};

inline StateDumpRun make_state_dump_run(const ConfigData& cfg) {
    ConfigView view(cfg.view("state-dump"));
    StateDumpRun run{detail::run_options_from(view)};
    run.index = view.get_int("index", 1);
    run.x_count = view.get_int("x_count", 400);
    run.exterior_margin = view.get_double("exterior_margin", 0.5);
    if (run.index < 1) throw ConfigError("index must be >= 1");
    if (run.x_count < 2) throw ConfigError("x_count must be >= 2");
    if (run.exterior_margin < 0.0) throw ConfigError("exterior_margin must be >= 0");
    view.reject_unknown();
    return run;
}

inline CommandOutput run_state_dump(const StateDumpRun& run) {
    const PoleSearchResult found = find_poles(run.options.model, run.index, run.options.search);
    const auto it = std::find_if(found.poles.begin(), found.poles.end(),
                                 [&](const ComplexPole& p) { return p.index == run.index; });
    CommandOutput out;
    if (it == found.poles.end()) {
        out.exit_code = kExitPartial;
        out.human = "pole " + std::to_string(run.index) + " not found\n";
        out.json = {{"schema", kCsvSchemaVersion}, {"command", "state-dump"}, {"rows", ordered_json::array()}};
        return out;
    }
    const ResonanceState state = build_state(*it, run.options.model);
    const double end = support_end(run.options.model);
    const double margin = run.exterior_margin * end;
    const double lo = geometry(run.options.model) == GeometryKind::segment ? -margin : 0.0;
    const double hi = end + margin;
    std::ostringstream csv;
    csv << "# schema=" << kCsvSchemaVersion << "\n";
    csv << "x,re_u,im_u,abs2_u\n";
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < run.x_count; ++i) {
        const double x = lo + (hi - lo) * i / double(run.x_count - 1);
        const Complex u = eval_state(state, x);
        csv << format_double(x) << ',' << format_double(u.real()) << ','
            << format_double(u.imag()) << ',' << format_double(std::norm(u)) << "\n";
        rows.push_back({{"x", x}, {"re_u", u.real()}, {"im_u", u.imag()}, {"abs2_u", std::norm(u)}});
    }
    out.csv = csv.str();
    out.json = {{"schema", kCsvSchemaVersion}, {"command", "state-dump"}, {"rows", rows}};
    out.human = out.csv;
    return out;
}

// ---------------------------------------------------------------------------
// verify command
// ---------------------------------------------------------------------------

struct VerifyRun {
    RunOptions options;
    int n_states = 5;
    bool closure = true;
};

inline VerifyRun make_verify_run(const ConfigData& cfg) {
    ConfigView view(cfg.view("verify"));
    VerifyRun run{detail::run_options_from(view)};
    run.n_states = view.get_int("n_states", 5);
    run.closure = view.get_bool("closure", true);
    if (run.n_states < 1) throw ConfigError("n_states must be >= 1");
    view.reject_unknown();
    return run;
}

struct VerifyCheck {
    std::string name;
    std::string status; // pass | fail | xfail
    double value = 0.0;
    double threshold = 0.0;
    std::string note;
};

inline CommandOutput run_verify(const VerifyRun& run) {
    std::vector<VerifyCheck> checks;
    auto gate = [&](const std::string& name, double value, double threshold,
                    const std::string& note = "") {
        checks.push_back({name, value < threshold ? "pass" : "fail", value, threshold, note});
    };

    const PoleSearchResult found = find_poles(run.options.model, run.n_states, run.options.search);
    if (!found.complete()) {
        checks.push_back({"pole_search", "fail", double(found.poles.size()), double(run.n_states),
                          "not all requested poles converged"});
    } else {
        checks.push_back({"pole_search", "pass", double(found.poles.size()), double(run.n_states), ""});
    }

    std::vector<ResonanceState> states;
    for (const ComplexPole& p : found.poles) states.push_back(build_state(p, run.options.model));

    double worst = 0.0;
    for (const ComplexPole& p : found.poles) worst = std::max(worst, p.residual);
    gate("pole_residual", worst, 1e-10);

    worst = 0.0;
    for (const ResonanceState& s : states)
        worst = std::max(worst, std::abs(normalization_residual(s)));
    gate("normalization", worst, 1e-10);

    double offdiag = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j) {
            const Complex o = overlap(states[i], states[j]);
            if (i == j) diag = std::max(diag, std::abs(o - 1.0));
            else offdiag = std::max(offdiag, std::abs(o));
        }
    gate("orthonormality_diagonal", diag, 1e-10);
    gate("orthonormality_offdiagonal", offdiag, 1e-8);

    worst = 0.0;
    for (const ResonanceState& s : states) worst = std::max(worst, decay_width_residual(s));
    gate("decay_width_identity", worst, 1e-8);

    worst = 0.0;
    for (const ResonanceState& s : states) {
        for (Operator op : {Operator::hamiltonian, Operator::momentum, Operator::momentum_squared}) {
            const Complex lhs = expval_surface(s, op).raw;
            const Complex rhs = expval_berggren(s, op).raw;
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    }
    gate("prescription_equivalence", worst, 1e-12);

    worst = 0.0;
    for (const ResonanceState& s : states) {
        const Complex i{0.0, 1.0};
        const Complex uR = boundary_value(s, true);
        const double end = support_end(s.model);
        const Complex tail = uR * uR * std::exp(-2.0 * i * s.pole.k * end) *
                             regularization_tail(s.pole, end, 0);
        const Complex surface = (i / (2.0 * s.pole.k)) * uR * uR;
        worst = std::max(worst, std::abs(tail - surface) /
                                    std::max(1.0, std::abs(surface)));
    }
    gate("zeldovich_m0_equivalence", worst, 1e-12);

    if (run.closure) {
        // Averaged closure truncation at x != x'.  Early partial sums carry a
        // large transient while the delta function builds up, so the gate
        // compares the final averaged value against the peak over small N.
        const double end = support_end(run.options.model);
        const int n_wide = std::max(20, 4 * run.n_states);
        const PoleSearchResult wide = find_poles(run.options.model, n_wide, run.options.search);
        std::vector<ResonanceState> closure_states;
        for (const ComplexPole& p : wide.poles)
            closure_states.push_back(build_state(p, run.options.model));
        if (static_cast<int>(closure_states.size()) >= n_wide) {
            std::span<const ResonanceState> all(closure_states);
            const double x = 0.3 * end, xp = 0.6 * end;
            double peak = 0.0;
            for (int n = 4; n <= 12; ++n)
                peak = std::max(peak,
                                std::abs(closure_residual(all.subspan(0, n), x, xp, Summation::cesaro)));
            const double final_val = std::abs(closure_residual(all, x, xp, Summation::cesaro));
            checks.push_back({"closure_cesaro_decay", final_val * 2.0 < peak ? "pass" : "fail",
                              final_val, peak / 2.0,
                              "averaged truncation at N=" + std::to_string(n_wide) +
                                  " vs its small-N peak"});
        } else {
            checks.push_back({"closure_cesaro_decay", "fail", 0.0, 0.0,
                              "could not assemble the extended pole set"});
        }
    }

    // Exact sign law E > 0 <=> alpha > beta; properness itself is reported
    // as an expected failure for shallow potentials rather than an error.
    bool law_ok = true;
    for (const ComplexPole& p : found.poles)
        law_ok = law_ok && ((p.energy.real() > 0.0) == (p.alpha() > p.beta()));
    checks.push_back({"energy_sign_law", law_ok ? "pass" : "fail", law_ok ? 0.0 : 1.0, 0.5,
                      "E > 0 iff alpha > beta on every pole"});
    for (const ComplexPole& p : found.poles) {
        if (p.classification == PoleClass::resonance_improper) {
            checks.push_back({"proper_pole_n" + std::to_string(p.index), "xfail",
                              p.energy.real(), 0.0,
                              "improper pole: E = " + format_double(p.energy.real()) +
                                  " < 0, <<p^2>> may be negative"});
        } else {
            checks.push_back({"proper_pole_n" + std::to_string(p.index), "pass",
                              p.energy.real(), 0.0, ""});
        }
    }

    CommandOutput out;
    std::ostringstream human;
    ordered_json rows = ordered_json::array();
    bool any_fail = false;
    for (const VerifyCheck& c : checks) {
        any_fail = any_fail || c.status == "fail";
        human << '[' << (c.status == "pass" ? "PASS" : c.status == "xfail" ? "XFAIL" : "FAIL")
              << "] " << c.name << " value=" << format_double(c.value)
              << " threshold=" << format_double(c.threshold);
        if (!c.note.empty()) human << "  (" << c.note << ")";
        human << "\n";
        rows.push_back({{"name", c.name},
                        {"status", c.status},
                        {"value", c.value},
                        {"threshold", c.threshold},
                        {"note", c.note}});
    }
    out.human = human.str();
    out.csv = out.human;
    out.json = {{"schema", kCsvSchemaVersion},
                {"command", "verify"},
                {"ok", !any_fail},
                {"checks", rows}};
    out.exit_code = any_fail ? kExitPartial : kExitOk;
    return out;
}

} // namespace siegert
