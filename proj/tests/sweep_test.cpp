#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tangle/sweep.hpp"

using namespace tangle;

namespace {

constexpr double kPi = std::numbers::pi;

SweepConfig config(ChannelKind kind, CouplingMode coupling, std::vector<double> r_grid) {
    SweepConfig cfg;
    cfg.kind = kind;
    cfg.coupling = coupling;
    cfg.r_grid = std::move(r_grid);
    return cfg;
}

std::string to_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("tangle_sweep_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(grid, parse_numbers_and_lists) {
    EXPECT_DOUBLE_EQ(parse_number("0.25", "x"), 0.25);
    EXPECT_DOUBLE_EQ(parse_number("pi", "x"), kPi);
    EXPECT_DOUBLE_EQ(parse_number("pi/6", "x"), kPi / 6);
    EXPECT_DOUBLE_EQ(parse_number("3*pi/12", "x"), 3 * kPi / 12);
    EXPECT_THROW(parse_number("abc", "x"), ConfigError);
    EXPECT_THROW(parse_number("pi/0", "x"), ConfigError);
    EXPECT_THROW(parse_number("2pi", "x"), ConfigError);
    EXPECT_EQ(parse_r_grid("0, pi/4"), (std::vector<double>{0.0, kPi / 4}));
    EXPECT_EQ(parse_r_grid("default"), default_r_grid());
}

TEST(grid, ranges) {
    const auto p = default_p_grid();
    ASSERT_EQ(p.size(), 101u);
    EXPECT_EQ(p.front(), 0.0);
    EXPECT_EQ(p[50], 0.5);
    EXPECT_EQ(p.back(), 1.0);
    EXPECT_EQ(parse_p_grid("0:1:0.25"), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(parse_p_grid("0.1,0.2"), (std::vector<double>{0.1, 0.2}));
    EXPECT_THROW(parse_p_grid("0:1"), ConfigError);
    EXPECT_THROW(parse_p_grid("1:0:0.1"), ConfigError);
    EXPECT_THROW(parse_p_grid("0:1:0"), ConfigError);
}

TEST(coupling, parse_labels) {
    EXPECT_EQ(parse_coupling("a").label(), "A");
    EXPECT_EQ(parse_coupling("b").label(), "B");
    EXPECT_EQ(parse_coupling("c").label(), "C");
    EXPECT_EQ(parse_coupling("collective").label(), "collective");
    const auto ex = parse_coupling("explicit:0.1,p,-");
    EXPECT_EQ(ex.label(), "explicit");
    EXPECT_TRUE(ex.sweeps_p());
    const auto at = ex.params_at(0.4);
    EXPECT_DOUBLE_EQ(*at[0], 0.1);
    EXPECT_DOUBLE_EQ(*at[1], 0.4);
    EXPECT_FALSE(at[2].has_value());
    EXPECT_FALSE(parse_coupling("explicit:0.1,0.2,0.3").sweeps_p());
    EXPECT_THROW(parse_coupling("d"), ConfigError);
    EXPECT_THROW(parse_coupling("explicit:0.1,0.2"), ConfigError);
}

TEST(sweep, config_errors_name_the_field) {
    auto field_of = [](const SweepConfig &cfg) {
        try {
            cfg.validate();
        } catch (const ConfigError &e) {
            return e.field();
        }
        return std::string("none");
    };
    auto cfg = config(ChannelKind::PhaseFlip, CouplingMode::single(0), {0.0});
    EXPECT_EQ(field_of(cfg), "none");
    cfg.r_grid = {1.0};
    EXPECT_EQ(field_of(cfg), "r-grid");
    cfg.r_grid = {0.2, 0.1};
    EXPECT_EQ(field_of(cfg), "r-grid");
    cfg.r_grid = {0.0};
    cfg.p_grid = {0.5, 1.5};
    EXPECT_EQ(field_of(cfg), "p-grid");
    cfg.p_grid = {};
    EXPECT_EQ(field_of(cfg), "p-grid");
    cfg.p_grid = {0.5};
    cfg.zero_threshold = -1.0;
    EXPECT_EQ(field_of(cfg), "zero-threshold");
    cfg.zero_threshold = 1e-9;
    cfg.coupling = parse_coupling("explicit:-,-,-");
    EXPECT_EQ(field_of(cfg), "coupling");
    cfg.coupling = parse_coupling("explicit:2,p,-");
    EXPECT_EQ(field_of(cfg), "coupling");
}

TEST(sweep, rows_ordered_by_r_then_p) {
    auto cfg = config(ChannelKind::PhaseDamping, CouplingMode::collective(), {0.0, kPi / 4});
    cfg.p_grid = {0.0, 0.5, 1.0};
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].r, cfg.r_grid[i / 3]);
        EXPECT_EQ(rows[i].p, cfg.p_grid[i % 3]);
        EXPECT_EQ(rows[i].params, (std::array<double, 3>{rows[i].p, rows[i].p, rows[i].p}));
        EXPECT_EQ(rows[i].coupling_label, "collective");
        EXPECT_FALSE(rows[i].analytic_delta.has_value());
    }
}

TEST(sweep, output_independent_of_thread_count) {
    auto cfg = config(ChannelKind::BitFlip, CouplingMode::single(1), default_r_grid());
    cfg.p_grid = parse_p_grid("0:1:0.05");
    cfg.check_analytic = true;
    cfg.threads = 1;
    const auto serial = to_csv(run_sweep(cfg));
    for (unsigned t : {2u, 3u, 8u}) {
        cfg.threads = t;
        EXPECT_EQ(to_csv(run_sweep(cfg)), serial) << t << " threads";
    }
}

TEST(sweep, explicit_without_swept_slot_visits_one_point) {
    auto cfg = config(ChannelKind::PhaseFlip, parse_coupling("explicit:0.1,0.2,0.3"), {0.0, kPi / 6});
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].params, (std::array<double, 3>{0.1, 0.2, 0.3}));
}

TEST(sweep, csv_header_and_format) {
    EXPECT_EQ(to_csv({}), std::string(csv_header) + "\n");
    auto cfg = config(ChannelKind::PhaseFlip, CouplingMode::single(0), {0.0});
    cfg.p_grid = {0.25};
    cfg.check_analytic = true;
    const auto csv = to_csv(run_sweep(cfg));
    const auto line = csv.substr(csv.find('\n') + 1);
    EXPECT_TRUE(line.starts_with("phase-flip,A,0,0.25,0,0,0.5,0.5,0.5,0,0,0,0.25,0.25,")) << line;
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(0.0), "0");
}

TEST(sweep, analytic_delta_column) {
    auto cfg = config(ChannelKind::BitFlip, CouplingMode::single(0), {0.0, kPi / 6});
    cfg.p_grid = {0.25};
    cfg.check_analytic = true;
    const auto rows = run_sweep(cfg);
    ASSERT_TRUE(rows[0].analytic_delta.has_value());
    EXPECT_FALSE(rows[1].analytic_delta.has_value());
    const auto csv = to_csv(rows);
    EXPECT_TRUE(csv.ends_with(",\n"));
}

TEST(sweep, emit_csv_io_errors) {
    const auto dir = scratch_dir("io");
    std::vector<SweepRow> rows;
    EXPECT_NO_THROW(emit_csv(rows, dir / "ok.csv"));
    std::ifstream in(dir / "ok.csv");
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, csv_header);
    EXPECT_THROW(emit_csv(rows, dir / "missing" / "x.csv"), IoError);
    EXPECT_THROW(emit_csv(rows, dir), IoError);
}

TEST(sudden_death, phase_flip_single_dies_at_half_and_revives) {
    for (double r : {0.0, kPi / 6, kPi / 4}) {
        auto cfg = config(ChannelKind::PhaseFlip, CouplingMode::single(0), {r});
        const auto rows = run_sweep(cfg);
        for (auto q : {Quantity::OneTangleA, Quantity::PiTangle}) {
            const auto series = extract_series(rows, q, r);
            const auto death = detect_sudden_death(series);
            ASSERT_TRUE(death.has_value());
            EXPECT_NEAR(*death, 0.5, 0.005);
            const auto rebirth = detect_rebirth(series);
            ASSERT_TRUE(rebirth.has_value());
            EXPECT_NEAR(*rebirth, 0.51, 1e-12);
        }
    }
}

TEST(sudden_death, phase_damping_single_only_at_full_strength) {
    auto cfg = config(ChannelKind::PhaseDamping, CouplingMode::single(0), {kPi / 6});
    const auto series = extract_series(run_sweep(cfg), Quantity::OneTangleA, kPi / 6);
    const auto death = detect_sudden_death(series);
    ASSERT_TRUE(death.has_value());
    EXPECT_GT(*death, 0.99);
    EXPECT_FALSE(detect_rebirth(series).has_value());
}

TEST(sudden_death, bit_flip_accelerated_alice_cut_dies_but_pi_does_not) {
    auto cfg = config(ChannelKind::BitFlip, CouplingMode::single(0), {kPi / 4});
    const auto rows = run_sweep(cfg);
    const auto na = extract_series(rows, Quantity::OneTangleA, kPi / 4);
    // N_A(BC) is exactly zero on roughly [0.469, 0.531] at this acceleration.
    const auto death = detect_sudden_death(na);
    ASSERT_TRUE(death.has_value());
    EXPECT_GT(*death, 0.46);
    EXPECT_LE(*death, 0.47);
    const auto rebirth = detect_rebirth(na);
    ASSERT_TRUE(rebirth.has_value());
    EXPECT_NEAR(*rebirth, 0.54, 1e-12);
    EXPECT_FALSE(detect_sudden_death(extract_series(rows, Quantity::PiTangle, kPi / 4)).has_value());
}

TEST(sudden_death, synthetic_series) {
    const std::vector<SeriesPoint> never{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.1}};
    EXPECT_FALSE(detect_sudden_death(never).has_value());
    const std::vector<SeriesPoint> starts_dead{{0.0, 0.0}, {0.5, 1.0}};
    EXPECT_FALSE(detect_sudden_death(starts_dead).has_value());
    const std::vector<SeriesPoint> linear{{0.0, 1.0}, {0.4, 0.2}, {0.6, -0.2}, {0.8, 0.0}, {1.0, 0.3}};
    EXPECT_NEAR(*detect_sudden_death(linear, 0.0), 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(*detect_rebirth(linear, 0.0), 1.0);
    EXPECT_FALSE(detect_sudden_death(std::vector<SeriesPoint>{}).has_value());
}

TEST(comparison, inertial_points_agree) {
    for (auto kind : {ChannelKind::PhaseDamping, ChannelKind::PhaseFlip, ChannelKind::BitFlip}) {
        for (auto coupling : {CouplingMode::single(0), CouplingMode::single(2), CouplingMode::collective()}) {
            const auto report = compare_numeric_analytic(config(kind, coupling, {0.0}));
            EXPECT_TRUE(report.uncovered.empty());
            // Bit-flip special cases disagree with the numeric pipeline even at r = 0.
            if (kind != ChannelKind::BitFlip) {
                EXPECT_TRUE(report.within_tolerance()) << to_string(kind) << " " << coupling.label();
                EXPECT_EQ(report.quantities[3].compared, 101u);
            } else {
                EXPECT_FALSE(report.within_tolerance());
                EXPECT_EQ(report.quantities[3].compared, 0u);
            }
        }
    }
}

// The accelerated closed forms drift from the numeric tangles by ~1e-2; the
// report has to surface that rather than hide it.
TEST(comparison, accelerated_points_are_flagged) {
    const auto report = compare_numeric_analytic(config(ChannelKind::PhaseDamping, CouplingMode::single(0), {kPi / 4}));
    EXPECT_FALSE(report.within_tolerance());
    EXPECT_GT(report.max_deviation(), 1e-3);
    ASSERT_TRUE(report.quantities[0].argmax.has_value());
    EXPECT_DOUBLE_EQ(report.quantities[0].argmax->r, kPi / 4);
    std::ostringstream os;
    print_comparison(os, report);
    EXPECT_NE(os.str().find("EXCEEDS TOLERANCE"), std::string::npos);
}

TEST(comparison, bit_flip_accelerated_has_no_coverage) {
    auto cfg = config(ChannelKind::BitFlip, CouplingMode::single(0), {kPi / 6});
    cfg.p_grid = {0.0, 0.5};
    const auto report = compare_numeric_analytic(cfg);
    EXPECT_EQ(report.uncovered.size(), 2u);
    EXPECT_TRUE(report.within_tolerance());
    std::ostringstream os;
    print_comparison(os, report);
    EXPECT_NE(os.str().find("no oracle coverage"), std::string::npos);
}

TEST(figures, writes_every_bundle_file) {
    const auto dir = scratch_dir("figs");
    const auto written = write_figures(dir, {0.0, 0.5, 1.0}, 2);
    const char *names[] = {"fig1a", "fig1b", "fig2", "fig3a", "fig3b", "fig4", "fig5a", "fig5b", "fig6", "fig7"};
    ASSERT_EQ(written.size(), std::size(names));
    for (const char *n : names) {
        const auto path = dir / (std::string(n) + ".csv");
        ASSERT_TRUE(std::filesystem::exists(path)) << n;
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        EXPECT_EQ(header, csv_header);
    }
    std::ifstream fig2(dir / "fig2.csv");
    std::size_t lines = 0;
    for (std::string line; std::getline(fig2, line);) ++lines;
    EXPECT_EQ(lines, 1u + 2 * 2 * 3);
}
