#pragma once

// Parameter sweeps over (r, p): parallel evaluation, sudden death and rebirth
// detection, CSV emission and the numeric-versus-closed-form comparison.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tangle/analytic.hpp"
#include "tangle/channels.hpp"
#include "tangle/grid.hpp"
#include "tangle/measures.hpp"
#include "tangle/rindler.hpp"
#include "tangle/tolerances.hpp"

namespace tangle {

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path &path, const std::string &what)
        : std::runtime_error(path.string() + ": " + what), path_(path) {}

    const std::filesystem::path &path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// One slot of an explicit coupling: uncoupled, a fixed parameter, or the swept p.
struct ExplicitSlot {
    enum class Mode { Uncoupled, Fixed, Swept };
    Mode mode = Mode::Uncoupled;
    double value = 0.0;
};

struct CouplingMode {
    enum class Kind { Single, Collective, Explicit };
    Kind kind = Kind::Single;
    std::size_t qubit = 0;                 // Single
    std::array<ExplicitSlot, 3> slots{};   // Explicit

    static CouplingMode single(std::size_t q) { return {Kind::Single, q, {}}; }
    static CouplingMode collective() { return {Kind::Collective, 0, {}}; }
    static CouplingMode explicit_slots(std::array<ExplicitSlot, 3> s) { return {Kind::Explicit, 0, s}; }

    bool sweeps_p() const noexcept {
        if (kind != Kind::Explicit) return true;
        return std::any_of(slots.begin(), slots.end(),
                           [](const ExplicitSlot &s) { return s.mode == ExplicitSlot::Mode::Swept; });
    }

    std::string label() const {
        switch (kind) {
            case Kind::Single:
                return std::string(1, static_cast<char>('A' + qubit));
            case Kind::Collective:
                return "collective";
            case Kind::Explicit:
                return "explicit";
        }
        return "unknown";
    }

    /// Per-qubit parameters at sweep value p; nullopt marks an uncoupled qubit.
    std::array<std::optional<double>, 3> params_at(double p) const {
        std::array<std::optional<double>, 3> out{};
        switch (kind) {
            case Kind::Single:
                out[qubit] = p;
                break;
            case Kind::Collective:
                out = {p, p, p};
                break;
            case Kind::Explicit:
                for (std::size_t q = 0; q < 3; ++q) {
                    if (slots[q].mode == ExplicitSlot::Mode::Fixed) out[q] = slots[q].value;
                    if (slots[q].mode == ExplicitSlot::Mode::Swept) out[q] = p;
                }
                break;
        }
        return out;
    }
};

/// "a", "b", "c", "collective" or "explicit:x,y,z" where each of x, y, z is a
/// number, "p" (follows the p grid) or "-" (uncoupled).
inline CouplingMode parse_coupling(std::string_view text) {
    text = detail::trim(text);
    if (text == "a" || text == "A") return CouplingMode::single(0);
    if (text == "b" || text == "B") return CouplingMode::single(1);
    if (text == "c" || text == "C") return CouplingMode::single(2);
    if (text == "collective") return CouplingMode::collective();
    constexpr std::string_view prefix = "explicit:";
    if (text.starts_with(prefix)) {
        const auto parts = detail::split(text.substr(prefix.size()), ',');
        if (parts.size() != 3) {
            throw ConfigError("coupling", "explicit coupling needs exactly three entries");
        }
        std::array<ExplicitSlot, 3> slots{};
        for (std::size_t q = 0; q < 3; ++q) {
            if (parts[q] == "p") {
                slots[q].mode = ExplicitSlot::Mode::Swept;
            } else if (parts[q] == "-" || parts[q] == "none") {
                slots[q].mode = ExplicitSlot::Mode::Uncoupled;
            } else {
                slots[q].mode = ExplicitSlot::Mode::Fixed;
                slots[q].value = parse_number(parts[q], "coupling");
            }
        }
        return CouplingMode::explicit_slots(slots);
    }
    throw ConfigError("coupling", "unknown coupling '" + std::string(text) + "'");
}

struct SweepConfig {
    ChannelKind kind = ChannelKind::PhaseDamping;
    CouplingMode coupling = CouplingMode::single(0);
    std::vector<double> r_grid = default_r_grid();
    std::vector<double> p_grid = default_p_grid();
    std::filesystem::path output_path;
    bool check_analytic = false;
    double zero_threshold = tol::zero_threshold;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const {
        auto check_grid = [](const std::vector<double> &g, const char *field, double lo, double hi) {
            if (g.empty()) throw ConfigError(field, "grid is empty");
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!(g[i] >= lo && g[i] <= hi)) {
                    throw ConfigError(field, "value " + std::to_string(g[i]) + " out of range");
                }
                if (i > 0 && !(g[i] > g[i - 1])) {
                    throw ConfigError(field, "grid must be strictly ascending");
                }
            }
        };
        check_grid(r_grid, "r-grid", 0.0, AccelerationParam::max_value + 1e-15);
        check_grid(p_grid, "p-grid", 0.0, 1.0);
        if (coupling.kind == CouplingMode::Kind::Single && coupling.qubit > 2) {
            throw ConfigError("coupling", "qubit index out of range");
        }
        if (coupling.kind == CouplingMode::Kind::Explicit) {
            bool any = false;
            for (const auto &s : coupling.slots) {
                if (s.mode == ExplicitSlot::Mode::Fixed && !(s.value >= 0.0 && s.value <= 1.0)) {
                    throw ConfigError("coupling", "explicit parameter " + std::to_string(s.value) + " outside [0, 1]");
                }
                any = any || s.mode != ExplicitSlot::Mode::Uncoupled;
            }
            if (!any) throw ConfigError("coupling", "explicit coupling leaves every qubit uncoupled");
        }
        if (!(zero_threshold >= 0.0) || !std::isfinite(zero_threshold)) {
            throw ConfigError("zero-threshold", "must be a finite nonnegative number");
        }
    }

    /// The p values actually visited: the p grid, or a single dummy point for
    /// explicit couplings without a swept slot.
    std::vector<double> effective_p_grid() const { return coupling.sweeps_p() ? p_grid : std::vector<double>{0.0}; }
};

struct SweepRow {
    ChannelKind kind = ChannelKind::PhaseDamping;
    std::string coupling_label;
    double r = 0.0;
    double p = 0.0;                       // swept grid value
    std::array<double, 3> params{};       // p0, p1, p2 (0 when uncoupled)
    TangleReport tangles;                 // reporting view (clamped)
    std::optional<double> analytic_delta;
};

/// Closed-form values available at one point: N_A(BC), N_B(AC), N_C(AB), pi.
using AnalyticValues = std::array<std::optional<double>, 4>;

/// Closed forms for r_b = r_c = r, or nothing when no formula covers the point.
inline std::optional<AnalyticValues> analytic_values(ChannelKind kind, double r, const std::array<double, 3> &p) {
    const analytic::AnalyticPoint pt(kind, AccelerationParam(r), p[0], p[1], p[2]);
    switch (kind) {
        case ChannelKind::PhaseDamping: {
            const auto one = analytic::pd_one_tangles(pt);
            return AnalyticValues{one[0], one[1], one[2], analytic::pd_pi_tangle(pt)};
        }
        case ChannelKind::PhaseFlip: {
            const auto one = analytic::pf_one_tangles(pt);
            return AnalyticValues{one[0], one[1], one[2], analytic::pf_pi_tangle(pt)};
        }
        case ChannelKind::BitFlip: {
            if (!analytic::bf_has_coverage(pt)) return std::nullopt;
            const auto one = analytic::bf_special_cases(pt);
            return AnalyticValues{one[0], one[1], one[2], std::nullopt};
        }
    }
    return std::nullopt;
}

/// Per-quantity |numeric - analytic| at one point, nullopt where uncovered.
inline std::array<std::optional<double>, 4> analytic_deviations(const TangleReport &raw, const AnalyticValues &an) {
    const std::array<double, 4> numeric{raw.one_tangles[0], raw.one_tangles[1], raw.one_tangles[2], raw.pi_tangle};
    std::array<std::optional<double>, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) {
        if (an[k]) out[k] = std::abs(numeric[k] - *an[k]);
    }
    return out;
}

/// Full numeric pipeline at one point: accelerated GHZ state, channel, tangles.
inline TangleReport evaluate_raw(ChannelKind kind, const CouplingMode &mode, double r, double p) {
    const auto rho0 = rindler_ghz(AccelerationParam(r));
    const auto per_qubit = mode.params_at(p);
    const bool coupled = std::any_of(per_qubit.begin(), per_qubit.end(), [](const auto &v) { return v.has_value(); });
    if (!coupled) {
        return pi_tangle(rho0);
    }
    return pi_tangle(apply_channel(rho0, CouplingSpec(kind, per_qubit)));
}

namespace detail {

/// Evaluates fn(i) for i in [0, n) on `threads` workers; results are stored by
/// index so the output order never depends on scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, unsigned threads, Fn fn) {
    std::vector<T> out(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned id) {
        try {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                out[i] = fn(i);
            }
        } catch (...) {
            errors[id] = std::current_exception();
            next.store(n);
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }
    for (const auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace detail

/// One row per (r, p), ordered by r then p.
inline std::vector<SweepRow> run_sweep(const SweepConfig &cfg) {
    cfg.validate();
    const auto p_grid = cfg.effective_p_grid();
    const std::size_t np = p_grid.size();
    return detail::parallel_map<SweepRow>(cfg.r_grid.size() * np, cfg.threads, [&](std::size_t idx) {
        const double r = cfg.r_grid[idx / np];
        const double p = p_grid[idx % np];
        const auto raw = evaluate_raw(cfg.kind, cfg.coupling, r, p);
        SweepRow row;
        row.kind = cfg.kind;
        row.coupling_label = cfg.coupling.label();
        row.r = r;
        row.p = p;
        const auto per_qubit = cfg.coupling.params_at(p);
        for (std::size_t q = 0; q < 3; ++q) row.params[q] = per_qubit[q].value_or(0.0);
        row.tangles = reported(raw);
        if (cfg.check_analytic) {
            if (const auto an = analytic_values(cfg.kind, r, row.params)) {
                double worst = 0.0;
                for (const auto &d : analytic_deviations(raw, *an)) {
                    if (d) worst = std::max(worst, *d);
                }
                row.analytic_delta = worst;
            }
        }
        return row;
    });
}

struct SeriesPoint {
    double p;
    double value;
};

enum class Quantity { OneTangleA, OneTangleB, OneTangleC, PiTangle };

inline std::string_view to_string(Quantity q) {
    switch (q) {
        case Quantity::OneTangleA:
            return "N_A_BC";
        case Quantity::OneTangleB:
            return "N_B_AC";
        case Quantity::OneTangleC:
            return "N_C_AB";
        case Quantity::PiTangle:
            return "pi";
    }
    return "unknown";
}

inline double quantity_of(const TangleReport &rep, Quantity q) {
    switch (q) {
        case Quantity::OneTangleA:
            return rep.one_tangles[0];
        case Quantity::OneTangleB:
            return rep.one_tangles[1];
        case Quantity::OneTangleC:
            return rep.one_tangles[2];
        case Quantity::PiTangle:
            return rep.pi_tangle;
    }
    return 0.0;
}

/// The p-series of one quantity at one acceleration (rows with r == r exactly).
inline std::vector<SeriesPoint> extract_series(std::span<const SweepRow> rows, Quantity q, double r) {
    std::vector<SeriesPoint> out;
    for (const auto &row : rows) {
        if (row.r == r) out.push_back({row.p, quantity_of(row.tangles, q)});
    }
    return out;
}

namespace detail {

inline std::optional<std::size_t> death_index(std::span<const SeriesPoint> series, double threshold) {
    if (series.empty() || series.front().value <= threshold) return std::nullopt;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].value <= threshold) return i;
    }
    return std::nullopt;
}

}  // namespace detail

/// First p at which a series that starts above `threshold` falls to it, found
/// by linear interpolation between the bracketing grid points.
inline std::optional<double> detect_sudden_death(std::span<const SeriesPoint> series,
                                                 double threshold = tol::zero_threshold) {
    const auto idx = detail::death_index(series, threshold);
    if (!idx) return std::nullopt;
    const auto &lo = series[*idx - 1];
    const auto &hi = series[*idx];
    const double frac = (lo.value - threshold) / (lo.value - hi.value);
    return lo.p + frac * (hi.p - lo.p);
}

/// First grid p after a detected death where the series is above `threshold` again.
inline std::optional<double> detect_rebirth(std::span<const SeriesPoint> series,
                                            double threshold = tol::zero_threshold) {
    const auto idx = detail::death_index(series, threshold);
    if (!idx) return std::nullopt;
    for (std::size_t i = *idx + 1; i < series.size(); ++i) {
        if (series[i].value > threshold) return series[i].p;
    }
    return std::nullopt;
}

inline constexpr std::string_view csv_header =
    "channel,coupling,r,p0,p1,p2,N_A_BC,N_B_AC,N_C_AB,N_AB,N_AC,N_BC,pi,ckw_slack,analytic_delta";

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_csv(std::ostream &os, std::span<const SweepRow> rows) {
    os << csv_header << '\n';
    for (const auto &row : rows) {
        const auto &t = row.tangles;
        os << to_string(row.kind) << ',' << row.coupling_label << ',' << format_number(row.r);
        for (double v : row.params) os << ',' << format_number(v);
        for (double v : t.one_tangles) os << ',' << format_number(v);
        for (double v : t.two_tangles) os << ',' << format_number(v);
        os << ',' << format_number(t.pi_tangle) << ',' << format_number(t.ckw_slack) << ',';
        if (row.analytic_delta) os << format_number(*row.analytic_delta);
        os << '\n';
    }
}

inline void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path, "cannot open for writing");
    }
    write_csv(out, rows);
    out.flush();
    if (!out) {
        throw IoError(path, "write failed");
    }
}

struct GridPoint {
    double r = 0.0;
    std::array<double, 3> params{};
};

struct QuantityDeviation {
    Quantity quantity = Quantity::OneTangleA;
    double max_deviation = 0.0;
    std::optional<GridPoint> argmax;
    std::size_t compared = 0;
};

struct ComparisonReport {
    std::array<QuantityDeviation, 4> quantities = [] {
        std::array<QuantityDeviation, 4> q{};
        q[1].quantity = Quantity::OneTangleB;
        q[2].quantity = Quantity::OneTangleC;
        q[3].quantity = Quantity::PiTangle;
        return q;
    }();
    std::vector<GridPoint> uncovered;
    double tolerance = tol::oracle_agreement;

    double max_deviation() const {
        double m = 0.0;
        for (const auto &q : quantities) m = std::max(m, q.max_deviation);
        return m;
    }
    bool within_tolerance() const { return max_deviation() <= tolerance; }
};

/// Numeric pipeline against the closed forms over the config's grid. The
/// numeric side is authoritative; the report locates the worst disagreement.
inline ComparisonReport compare_numeric_analytic(const SweepConfig &cfg) {
    cfg.validate();
    const auto p_grid = cfg.effective_p_grid();
    const std::size_t np = p_grid.size();

    struct PointResult {
        GridPoint point;
        std::optional<std::array<std::optional<double>, 4>> deviations;
    };
    const auto results = detail::parallel_map<PointResult>(cfg.r_grid.size() * np, cfg.threads, [&](std::size_t idx) {
        const double r = cfg.r_grid[idx / np];
        const double p = p_grid[idx % np];
        PointResult res;
        res.point.r = r;
        const auto per_qubit = cfg.coupling.params_at(p);
        for (std::size_t q = 0; q < 3; ++q) res.point.params[q] = per_qubit[q].value_or(0.0);
        const auto an = analytic_values(cfg.kind, r, res.point.params);
        if (an) {
            res.deviations = analytic_deviations(evaluate_raw(cfg.kind, cfg.coupling, r, p), *an);
        }
        return res;
    });

    ComparisonReport report;
    for (const auto &res : results) {
        if (!res.deviations) {
            report.uncovered.push_back(res.point);
            continue;
        }
        for (std::size_t k = 0; k < 4; ++k) {
            const auto &d = (*res.deviations)[k];
            if (!d) continue;
            auto &qd = report.quantities[k];
            ++qd.compared;
            if (!qd.argmax || *d > qd.max_deviation) {
                qd.max_deviation = *d;
                qd.argmax = res.point;
            }
        }
    }
    return report;
}

inline void print_comparison(std::ostream &os, const ComparisonReport &report) {
    for (const auto &q : report.quantities) {
        os << to_string(q.quantity) << ": ";
        if (q.compared == 0) {
            os << "no oracle coverage\n";
            continue;
        }
        os << "max |numeric - analytic| = " << format_number(q.max_deviation) << " over " << q.compared
           << " points";
        if (q.argmax) {
            os << " (worst at r=" << format_number(q.argmax->r) << " p=(" << format_number(q.argmax->params[0])
               << "," << format_number(q.argmax->params[1]) << "," << format_number(q.argmax->params[2]) << "))";
        }
        os << (q.max_deviation <= report.tolerance ? " ok" : " EXCEEDS TOLERANCE") << '\n';
    }
    if (!report.uncovered.empty()) {
        os << report.uncovered.size() << " points with no oracle coverage";
        const std::size_t shown = std::min<std::size_t>(report.uncovered.size(), 5);
        for (std::size_t i = 0; i < shown; ++i) {
            const auto &pt = report.uncovered[i];
            os << (i == 0 ? ": " : "; ") << "r=" << format_number(pt.r) << " p=(" << format_number(pt.params[0]) << ","
               << format_number(pt.params[1]) << "," << format_number(pt.params[2]) << ")";
        }
        os << (report.uncovered.size() > shown ? "; ...\n" : "\n");
    }
}

/// The curves behind one figure file: every (coupling, r) pair at the given channel.
struct FigureSpec {
    std::string name;
    ChannelKind kind;
    std::vector<CouplingMode> couplings;
    std::vector<double> r_values;
};

inline std::vector<FigureSpec> figure_specs() {
    constexpr double pi6 = std::numbers::pi / 6.0;
    constexpr double pi4 = std::numbers::pi / 4.0;
    const auto alice = CouplingMode::single(0);
    const auto coll = CouplingMode::collective();
    using K = ChannelKind;
    return {
        {"fig1a", K::PhaseDamping, {alice}, {pi6}},
        {"fig1b", K::PhaseDamping, {coll}, {pi6}},
        {"fig2", K::PhaseDamping, {alice, coll}, {pi6, pi4}},
        {"fig3a", K::PhaseFlip, {alice}, {pi6}},
        {"fig3b", K::PhaseFlip, {coll}, {pi6, pi4}},
        {"fig4", K::PhaseFlip, {alice, coll}, {pi6, pi4}},
        {"fig5a", K::BitFlip, {alice}, {0.0, pi4}},
        {"fig5b", K::BitFlip, {coll}, {0.0, pi4}},
        {"fig6", K::BitFlip, {alice}, {pi6}},
        {"fig7", K::BitFlip, {alice, coll}, {pi6, pi4}},
    };
}

/// Writes fig1a.csv ... fig7.csv into `dir`; returns the paths written.
inline std::vector<std::filesystem::path> write_figures(const std::filesystem::path &dir,
                                                        const std::vector<double> &p_grid, unsigned threads = 0) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(dir, "cannot create directory: " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    for (const auto &fig : figure_specs()) {
        std::vector<SweepRow> rows;
        for (const auto &coupling : fig.couplings) {
            SweepConfig cfg;
            cfg.kind = fig.kind;
            cfg.coupling = coupling;
            cfg.r_grid = fig.r_values;
            cfg.p_grid = p_grid;
            cfg.threads = threads;
            auto part = run_sweep(cfg);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        const auto path = dir / (fig.name + ".csv");
        emit_csv(rows, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace tangle
