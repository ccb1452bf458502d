#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rls/runner.hpp"

namespace {

struct Flags {
    std::string scenario;
    std::string config_file;
    int n = 0;
    std::string scheme;
    double cfl = 0.0;
    int rk = 0;
    std::string op;
    int reinit_every = -1;
    std::string band;
    long long seed = -1;
    std::string out;
    double t_end = 0.0;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("scenario", f.scenario, "scenario name")->required();
    cmd->add_option("--config", f.config_file, "key = value config file");
    cmd->add_option("--n", f.n, "cells per axis");
    cmd->add_option("--scheme", f.scheme, "upwind1|weno5|wenocu6|sl");
    cmd->add_option("--cfl", f.cfl, "CFL number in (0,1]");
    cmd->add_option("--rk", f.rk, "Runge-Kutta order (1 or 2)");
    cmd->add_option("--operator", f.op, "construction for geometric velocities: cr|crstar");
    cmd->add_option("--reinit-every", f.reinit_every, "steps between re-initializations, 0 = never");
    cmd->add_option("--band", f.band, "narrow band width in cells, or 'off'");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--t-end", f.t_end, "override end time");
}

int build_config(const Flags& f, rls::RunConfig& cfg) {
    try {
        cfg.scenario = f.scenario;
        if (!f.config_file.empty()) rls::apply_config_file(cfg, f.config_file);
        if (f.n > 0) cfg.n = f.n;
        if (!f.scheme.empty()) cfg.scheme = rls::parse_scheme(f.scheme);
        if (f.cfl > 0.0) cfg.cfl = f.cfl;
        if (f.rk > 0) rls::apply_config_entry(cfg, "rk", std::to_string(f.rk));
        if (!f.op.empty()) rls::apply_config_entry(cfg, "operator", f.op);
        if (f.reinit_every >= 0) cfg.reinit_every = f.reinit_every;
        if (!f.band.empty()) rls::apply_config_entry(cfg, "band", f.band);
        if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
        if (f.t_end > 0.0) cfg.t_end = f.t_end;
        if (!f.out.empty()) cfg.out_dir = f.out;
        if (cfg.out_dir.empty()) {
            if (const char* env = std::getenv("RLSNET_OUT")) cfg.out_dir = env;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rlsnet: multi-region interface-network simulator"};
    app.require_subcommand(1);

    Flags run_flags, study_flags;
    std::string resolutions_arg;

    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario");
    add_common_flags(run_cmd, run_flags);

    CLI::App* study_cmd = app.add_subcommand("study", "convergence study over resolutions");
    add_common_flags(study_cmd, study_flags);
    study_cmd->add_option("--resolutions", resolutions_arg, "comma list, e.g. 32,64,128,256")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (run_cmd->parsed()) {
        rls::RunConfig cfg;
        if (int rc = build_config(run_flags, cfg); rc != 0) return rc;
        const rls::RunResult res = rls::run(cfg);
        if (res.exit_code != 0) {
            std::fprintf(stderr, "error: %s\n", res.message.c_str());
        } else {
            std::printf("%s: %d steps to t=%.6g", cfg.scenario.c_str(), res.steps,
                        res.final_time);
            if (res.eps1 > 0.0)
                std::printf("  eps1=%.6g epsinf=%.6g epsd=%.6g", res.eps1, res.epsinf, res.epsd);
            std::printf("\n");
            if (!cfg.out_dir.empty()) std::printf("outputs in %s\n", cfg.out_dir.c_str());
        }
        return res.exit_code;
    }

    // study
    rls::RunConfig cfg;
    if (int rc = build_config(study_flags, cfg); rc != 0) return rc;
    std::vector<int> resolutions;
    try {
        for (const auto& tok : [&] {
                 std::vector<std::string> parts;
                 std::string cur;
                 for (char c : resolutions_arg) {
                     if (c == ',') {
                         parts.push_back(cur);
                         cur.clear();
                     } else {
                         cur += c;
                     }
                 }
                 parts.push_back(cur);
                 return parts;
             }())
            resolutions.push_back(std::stoi(tok));
    } catch (...) {
        std::fprintf(stderr, "error: bad --resolutions list '%s'\n", resolutions_arg.c_str());
        return 2;
    }

    try {
        const rls::StudyResult study = rls::convergence_study(cfg, resolutions);
        std::printf("%8s %16s %16s %16s\n", "n", "eps1", "epsinf", "epsd");
        for (const auto& r : study.rows)
            std::printf("%8d %16.8e %16.8e %16.8e\n", r.n, r.eps1, r.epsinf, r.epsd);
        std::printf("observed orders: eps1 %.2f  epsinf %.2f  epsd %.2f\n", study.order1,
                    study.orderinf, study.orderd);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
