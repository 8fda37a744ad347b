// tangle: command-line sweeps of GHZ one-tangles, two-tangles and pi-tangle
// under accelerated frames and local noise.
//
// Exit codes: 0 success, 2 config error, 3 closed-form deviation above
// tolerance (with --check-analytic), 4 I/O error.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tangle/tangle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitOracle = 3;
constexpr int kExitIo = 4;

void print_summary(std::ostream &os, const tangle::SweepConfig &cfg, const std::vector<tangle::SweepRow> &rows) {
    using tangle::Quantity;
    double worst_two = 0.0;
    double worst_ckw = 0.0;
    for (const auto &row : rows) {
        for (double v : row.tangles.two_tangles) worst_two = std::max(worst_two, v);
        worst_ckw = std::min(worst_ckw, row.tangles.ckw_slack);
    }
    os << "channel=" << tangle::to_string(cfg.kind) << " coupling=" << cfg.coupling.label() << " rows=" << rows.size()
       << '\n';
    os << "max two-tangle = " << tangle::format_number(worst_two) << ", min ckw_slack = "
       << tangle::format_number(worst_ckw) << '\n';
    if (!cfg.coupling.sweeps_p()) return;
    for (double r : cfg.r_grid) {
        for (auto q : {Quantity::OneTangleA, Quantity::OneTangleB, Quantity::OneTangleC, Quantity::PiTangle}) {
            const auto series = tangle::extract_series(rows, q, r);
            const auto death = tangle::detect_sudden_death(series, cfg.zero_threshold);
            const auto rebirth = tangle::detect_rebirth(series, cfg.zero_threshold);
            os << "r=" << tangle::format_number(r) << ' ' << tangle::to_string(q) << ": death="
               << (death ? tangle::format_number(*death) : "none")
               << " rebirth=" << (rebirth ? tangle::format_number(*rebirth) : "none") << '\n';
        }
    }
}

int run(int argc, char **argv) {
    CLI::App app{"Entanglement of an accelerated GHZ state under local noise channels"};
    app.require_subcommand(1);

    auto *sweep = app.add_subcommand("sweep", "Sweep (r, p), write CSV and report sudden death / rebirth");
    std::string channel;
    std::string coupling = "a";
    std::string r_grid = "default";
    std::string p_grid = "default";
    std::string out;
    std::string figures;
    bool check_analytic = false;
    double zero_threshold = tangle::tol::zero_threshold;
    unsigned threads = 0;
    sweep->add_option("--channel", channel, "phase-damping | phase-flip | bit-flip")->required();
    sweep->add_option("--coupling", coupling, "a | b | c | collective | explicit:p0,p1,p2 (entries: number, p, -)");
    sweep->add_option("--r-grid", r_grid, "comma list (numbers or pi/N) or \"default\"");
    sweep->add_option("--p-grid", p_grid, "start:stop:step, comma list, or \"default\"");
    sweep->add_option("--out", out, "CSV output path")->required();
    sweep->add_flag("--check-analytic", check_analytic, "compare against the closed-form expressions");
    sweep->add_option("--figures", figures, "directory for the per-figure CSV bundle");
    sweep->add_option("--zero-threshold", zero_threshold, "sudden-death threshold");
    sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    tangle::SweepConfig cfg;
    try {
        const auto kind = tangle::parse_channel_kind(channel);
        if (!kind) throw tangle::ConfigError("channel", "unknown channel '" + channel + "'");
        cfg.kind = *kind;
        cfg.coupling = tangle::parse_coupling(coupling);
        cfg.r_grid = tangle::parse_r_grid(r_grid);
        cfg.p_grid = tangle::parse_p_grid(p_grid);
        cfg.output_path = out;
        cfg.check_analytic = check_analytic;
        cfg.zero_threshold = zero_threshold;
        cfg.threads = threads;
        cfg.validate();
    } catch (const tangle::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::vector<tangle::SweepRow> rows;
    try {
        rows = tangle::run_sweep(cfg);
        tangle::emit_csv(rows, cfg.output_path);
        if (!figures.empty()) {
            for (const auto &path : tangle::write_figures(figures, cfg.p_grid, cfg.threads)) {
                std::cout << "wrote " << path.string() << '\n';
            }
        }
    } catch (const tangle::IoError &e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    std::cout << "wrote " << cfg.output_path.string() << '\n';
    print_summary(std::cout, cfg, rows);

    if (cfg.check_analytic) {
        const auto report = tangle::compare_numeric_analytic(cfg);
        tangle::print_comparison(std::cout, report);
        if (!report.within_tolerance()) {
            std::cerr << "closed-form deviation " << tangle::format_number(report.max_deviation())
                      << " exceeds tolerance " << tangle::format_number(report.tolerance) << '\n';
            return kExitOracle;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
