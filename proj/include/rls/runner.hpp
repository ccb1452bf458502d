#pragma once

#include <cstdint>
#include <memory>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rls/scenarios.hpp"

namespace rls {

/// Run configuration: scenario preset plus overrides from a flat key=value
/// config file and CLI flags. Unknown keys are rejected.
struct RunConfig {
    std::string scenario;
    std::optional<int> n;
    std::optional<SchemeKind> scheme;
    std::optional<double> cfl;
    std::optional<int> rk;                // 1 or 2
    std::optional<ConstructOp> op;
    std::optional<int> reinit_every;
    std::optional<int> band;              // <=0 = off
    std::optional<double> t_end;
    std::optional<std::vector<double>> snapshots;
    std::uint64_t seed = 12345;
    std::string out_dir;                  // empty = no file output
    bool quiet = true;
};

/// Applies a key=value config file onto `cfg`. Throws std::invalid_argument
/// on unknown keys or malformed values.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

SchemeKind parse_scheme(const std::string& name);
std::string scheme_name(SchemeKind kind);

struct RunResult {
    int exit_code = 0;
    std::string message;
    double final_time = 0.0;
    int steps = 0;
    double eps1 = 0.0, epsinf = 0.0, epsd = 0.0;  // time-accumulated
    std::map<int, double> initial_areas;
    std::map<int, double> final_areas;
    std::vector<Vec2> final_junctions;
    AreaSeries series;
    std::vector<std::pair<double, int>> band_counts;  // (t, count)
    double wall_per_step_ms = 0.0;
    double step_wall_ms = 0.0;  // advance() only, excludes metrics
    std::shared_ptr<RegionalField> final_field;
    Grid grid;
};

/// Executes one scenario run; writes metrics.csv, interface/field snapshots,
/// timings.csv and summary.txt into cfg.out_dir when set.
RunResult run(const RunConfig& cfg);

struct StudyRow {
    int n = 0;
    double eps1 = 0.0, epsinf = 0.0, epsd = 0.0;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    // Least-squares observed orders of eps vs h over all resolutions.
    double order1 = 0.0, orderinf = 0.0, orderd = 0.0;
    std::vector<double> pair_orders1, pair_ordersinf, pair_ordersd;
};

/// Runs the scenario at each resolution and tabulates observed convergence
/// orders; requires at least 3 resolutions.
StudyResult convergence_study(const RunConfig& base, const std::vector<int>& resolutions);

}  // namespace rls
