#include "rls/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rls/io.hpp"
#include "rls/reinit.hpp"

namespace rls {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw std::invalid_argument("config: bad numeric value '" + v + "' for key '" + key + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int d = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        throw std::invalid_argument("config: bad integer value '" + v + "' for key '" + key + "'");
    }
}

}  // namespace

SchemeKind parse_scheme(const std::string& name) {
    if (name == "upwind1") return SchemeKind::Upwind1;
    if (name == "weno5") return SchemeKind::WENO5;
    if (name == "wenocu6") return SchemeKind::WENOCU6;
    if (name == "sl") return SchemeKind::SemiLagrangian;
    throw std::invalid_argument("unknown scheme '" + name +
                                "'; valid: upwind1 weno5 wenocu6 sl");
}

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Upwind1: return "upwind1";
        case SchemeKind::WENO5: return "weno5";
        case SchemeKind::WENOCU6: return "wenocu6";
        case SchemeKind::SemiLagrangian: return "sl";
    }
    return "?";
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "scenario") {
        cfg.scenario = value;
    } else if (key == "n") {
        cfg.n = parse_int(key, value);
    } else if (key == "scheme") {
        cfg.scheme = parse_scheme(value);
    } else if (key == "cfl") {
        cfg.cfl = parse_double(key, value);
    } else if (key == "rk") {
        const int rk = parse_int(key, value);
        if (rk < 1 || rk > 3) throw std::invalid_argument("config: rk must be 1, 2 or 3");
        cfg.rk = rk;
    } else if (key == "operator") {
        if (value == "cr") cfg.op = ConstructOp::Plain;
        else if (value == "crstar") cfg.op = ConstructOp::Clamped;
        else throw std::invalid_argument("config: operator must be cr or crstar");
    } else if (key == "reinit_every") {
        cfg.reinit_every = parse_int(key, value);
    } else if (key == "band") {
        cfg.band = value == "off" ? 0 : parse_int(key, value);
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "t_end") {
        cfg.t_end = parse_double(key, value);
    } else if (key == "snapshots") {
        std::vector<double> times;
        for (const auto& t : split(value, ',')) times.push_back(parse_double(key, t));
        cfg.snapshots = times;
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key = value");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

namespace {

struct MetricsTable {
    std::vector<int> region_ids;
    int junction_slots = 0;
    bool band_count = false;
    std::vector<std::string> rows;

    std::string header() const {
        std::string h = "time,eps1,epsinf,epsd";
        for (int r : region_ids) h += ",area_" + std::to_string(r);
        for (int s = 0; s < junction_slots; ++s)
            h += ",junction" + std::to_string(s + 1) + "_x,junction" + std::to_string(s + 1) +
                 "_y";
        if (band_count) h += ",band_count";
        return h;
    }
};

std::vector<Vec2> sorted_junctions(const InterfaceGraph& g) {
    std::vector<Vec2> j = g.junctions;
    std::sort(j.begin(), j.end(), [](const Vec2& a, const Vec2& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    return j;
}

double least_squares_order(const std::vector<double>& hs, const std::vector<double>& errs) {
    // slope of ln(err) against ln(h); skip non-positive errors
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        if (errs[k] <= 0.0) continue;
        const double x = std::log(hs[k]), y = std::log(errs[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    RunResult res;

    Scenario sc;
    try {
        sc = make_scenario(cfg.scenario, cfg.n.value_or(64));
    } catch (const std::invalid_argument& e) {
        res.exit_code = 2;
        res.message = e.what();
        return res;
    }

    try {
        const int n = cfg.n.value_or(sc.default_n);
        if (cfg.scheme) sc.plan.scheme = *cfg.scheme;
        if (cfg.cfl) sc.plan.cfl = *cfg.cfl;
        if (cfg.rk) {
            if (*cfg.rk == 1) sc.plan.alphas = {0.0};
            else if (*cfg.rk == 2) sc.plan.alphas = {0.0, 0.5};
            else sc.plan.alphas = {0.0, 0.75, 1.0 / 3.0};
        }
        if (cfg.op) sc.plan.geom_op = *cfg.op;
        if (cfg.reinit_every) sc.plan.reinit_every = *cfg.reinit_every;
        if (cfg.band) sc.band_k = std::max(0, *cfg.band);
        if (cfg.t_end) sc.t_end = *cfg.t_end;
        if (cfg.snapshots) sc.snapshot_times = *cfg.snapshots;
        if (sc.plan.dt_max > 1e29) sc.plan.dt_max = sc.t_end / 4.0;

        const Grid grid = build_grid(n, n, sc.x0, sc.y0, sc.lx, sc.ly, sc.bc, 3);
        res.grid = grid;
        RegionalField field = sc.init(grid, cfg.seed);
        fill_ghosts(field, grid, sc.bc);
        if (sc.initial_reinit) reinitialize(field, grid, sc.bc, sc.reinit);

        NarrowBand band;
        const bool banded = sc.band_k > 0;
        if (banded) band = rebuild_narrow_band(field, grid, sc.band_k);
        const NarrowBand* bandptr = banded ? &band : nullptr;

        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);

        // fixed CSV layout from the initial state
        res.initial_areas = region_areas(field, grid);
        MetricsTable table;
        for (const auto& [r, a] : res.initial_areas) table.region_ids.push_back(r);
        table.band_count = sc.track_band_count;
        InterfaceGraph graph0 = extract_interface(field, grid);
        if (!graph0.junctions.empty() && graph0.junctions.size() <= 4)
            table.junction_slots = static_cast<int>(graph0.junctions.size());

        const bool track_series = sc.area_sample_every > 0 || !sc.snapshot_times.empty();
        auto record_series = [&](double t) {
            if (!track_series) return;
            if (!res.series.times.empty() &&
                std::abs(res.series.times.back() - t) < 1e-14)
                return;
            res.series.times.push_back(t);
            const auto areas = region_areas(field, grid);
            InterfaceGraph g;
            if (sc.track_edges) g = extract_interface(field, grid);
            for (int r : table.region_ids) {
                const auto it = areas.find(r);
                res.series.areas[r].push_back(it == areas.end() ? 0.0 : it->second);
                if (sc.track_edges) {
                    res.series.edges[r].push_back(
                        static_cast<int>(g.neighbors_of(r, 2.0 * grid.h).size()));
                    res.series.edges_strict[r].push_back(
                        static_cast<int>(g.neighbors_of(r, 6.0 * grid.h).size()));
                }
            }
        };

        auto record_row = [&](double t) {
            std::string row = format_g17(t) + "," + format_g17(res.eps1) + "," +
                              format_g17(res.epsinf) + "," + format_g17(res.epsd);
            const auto areas = region_areas(field, grid);
            for (int r : table.region_ids) {
                const auto it = areas.find(r);
                row += "," + format_g17(it == areas.end() ? 0.0 : it->second);
            }
            if (table.junction_slots > 0) {
                const auto js = sorted_junctions(extract_interface(field, grid));
                for (int s = 0; s < table.junction_slots; ++s) {
                    if (s < static_cast<int>(js.size()))
                        row += "," + format_g17(js[s].x) + "," + format_g17(js[s].y);
                    else
                        row += ",nan,nan";
                }
            }
            if (table.band_count) {
                const int c = count_bands(field, grid, sc.band_ray_p0, sc.band_ray_p1);
                row += "," + std::to_string(c);
                res.band_counts.emplace_back(t, c);
            }
            table.rows.push_back(row);
        };

        auto snapshot_files = [&](double t) {
            if (cfg.out_dir.empty()) return;
            char suffix[32];
            std::snprintf(suffix, sizeof(suffix), "%.6f", t);
            save_field(cfg.out_dir + "/field_" + suffix + ".dat", field, grid, t);
            save_interface_csv(cfg.out_dir + "/interface_" + suffix + ".csv",
                               extract_interface(field, grid));
        };

        // event times: snapshots, vortex reversal, end time
        std::set<double> events(sc.snapshot_times.begin(), sc.snapshot_times.end());
        events.insert(sc.t_end);
        if (sc.velocity.kind == VelocitySpec::Kind::SingleVortex &&
            sc.velocity.reversal_time < sc.t_end)
            events.insert(sc.velocity.reversal_time);

        record_row(0.0);
        record_series(0.0);
        snapshot_files(0.0);

        Stepper stepper(grid, sc.bc, sc.plan, sc.velocity);
        double t = 0.0;
        std::vector<double> timings;
        double step_wall_total = 0.0;
        const auto wall_start = std::chrono::steady_clock::now();

        while (t < sc.t_end - 1e-13) {
            const auto t0 = std::chrono::steady_clock::now();
            const double vmax = stepper.prepare(field, t, bandptr);
            double dt = compute_dt(vmax, grid.h, sc.plan.cfl, sc.velocity, sc.plan.dt_max);
            const auto ev = events.upper_bound(t + 1e-13);
            if (ev != events.end()) dt = std::min(dt, *ev - t);

            stepper.step(field, t, dt, bandptr);
            const auto t1 = std::chrono::steady_clock::now();
            const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            timings.push_back(wall_ms);
            step_wall_total += wall_ms;

            t += dt;
            if (ev != events.end() && std::abs(t - *ev) < 1e-12) t = *ev;
            ++res.steps;

            for (int j = 0; j < grid.ny && res.exit_code == 0; ++j)
                for (int i = 0; i < grid.nx; ++i)
                    if (!std::isfinite(field.varphi[grid.idx(i, j)])) {
                        res.exit_code = 1;
                        res.message = "numerical failure: non-finite distance at cell (" +
                                      std::to_string(i) + "," + std::to_string(j) +
                                      ") t=" + format_g17(t);
                        break;
                    }
            if (res.exit_code != 0) break;

            if (sc.error_band && sc.exact_distance) {
                BandSpec b = *sc.error_band;
                if (b.near_radius > 0.0 && sc.exact_junctions)
                    b.near_points = sc.exact_junctions(t);
                const double tc = t;
                const ErrorNorms en = error_norms(
                    field, grid,
                    [&](double x, double y) { return sc.exact_distance(x, y, tc); }, b);
                res.eps1 += en.e1 * dt;
                res.epsinf += en.einf * dt;
                if (sc.exact_network) {
                    const InterfaceGraph g = extract_interface(field, grid);
                    const auto numeric = g.sample(grid.h / 2.0);
                    const auto exact = sc.exact_network(t, grid.h / 2.0);
                    res.epsd += hausdorff(numeric, exact) * dt;
                }
            }

            if (sc.plan.reinit_every > 0 && res.steps % sc.plan.reinit_every == 0) {
                reinitialize(field, grid, sc.bc, sc.reinit, bandptr);
                if (banded) {
                    band = rebuild_narrow_band(field, grid, sc.band_k);
                }
            }

            if (sc.area_sample_every > 0 && res.steps % sc.area_sample_every == 0)
                record_series(t);

            if (events.count(t) > 0) {
                record_row(t);
                record_series(t);
                snapshot_files(t);
            }
        }

        const auto wall_end = std::chrono::steady_clock::now();
        res.final_time = t;
        res.final_areas = region_areas(field, grid);
        res.final_junctions = sorted_junctions(extract_interface(field, grid));
        res.final_field = std::make_shared<RegionalField>(field);
        if (res.steps > 0) {
            res.wall_per_step_ms =
                std::chrono::duration<double, std::milli>(wall_end - wall_start).count() /
                res.steps;
            res.step_wall_ms = step_wall_total / res.steps;
        }

        if (!cfg.out_dir.empty()) {
            {
                std::ofstream m(cfg.out_dir + "/metrics.csv");
                m << table.header() << "\n";
                for (const auto& r : table.rows) m << r << "\n";
            }
            {
                std::ofstream tf(cfg.out_dir + "/timings.csv");
                tf << "step,wall_ms\n";
                for (std::size_t s = 0; s < timings.size(); ++s)
                    tf << s + 1 << "," << format_g17(timings[s]) << "\n";
            }
            {
                std::ofstream sm(cfg.out_dir + "/summary.txt");
                sm << "scenario: " << sc.name << "\n";
                sm << "n: " << n << "\n";
                sm << "scheme: " << scheme_name(sc.plan.scheme) << "\n";
                sm << "steps: " << res.steps << "\n";
                sm << "final_time: " << format_g17(res.final_time) << "\n";
                sm << "eps1: " << format_g17(res.eps1) << "\n";
                sm << "epsinf: " << format_g17(res.epsinf) << "\n";
                sm << "epsd: " << format_g17(res.epsd) << "\n";
                for (const auto& [r, a] : res.final_areas)
                    sm << "final_area_" << r << ": " << format_g17(a) << "\n";
                sm << "wall_ms_per_step: " << res.wall_per_step_ms << "\n";
                if (res.exit_code != 0) sm << "status: " << res.message << "\n";
            }
        }
    } catch (const std::invalid_argument& e) {
        res.exit_code = 2;
        res.message = e.what();
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.message = e.what();
    }
    return res;
}

StudyResult convergence_study(const RunConfig& base, const std::vector<int>& resolutions) {
    if (resolutions.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 resolutions");

    StudyResult study;
    std::vector<double> hs, e1s, einfs, eds;
    for (int n : resolutions) {
        RunConfig cfg = base;
        cfg.n = n;
        if (!base.out_dir.empty()) cfg.out_dir = base.out_dir + "/n" + std::to_string(n);
        const RunResult r = run(cfg);
        if (r.exit_code != 0)
            throw std::runtime_error("convergence_study: resolution " + std::to_string(n) +
                                     " failed: " + r.message);
        study.rows.push_back({n, r.eps1, r.epsinf, r.epsd});
        hs.push_back(1.0 / n);
        e1s.push_back(r.eps1);
        einfs.push_back(r.epsinf);
        eds.push_back(r.epsd);
    }

    study.order1 = least_squares_order(hs, e1s);
    study.orderinf = least_squares_order(hs, einfs);
    study.orderd = least_squares_order(hs, eds);
    for (std::size_t k = 0; k + 1 < resolutions.size(); ++k) {
        const double f = std::log2(static_cast<double>(resolutions[k + 1]) / resolutions[k]);
        auto pair_order = [&](double coarse, double fine) {
            return coarse > 0.0 && fine > 0.0 ? std::log2(coarse / fine) / f : 0.0;
        };
        study.pair_orders1.push_back(pair_order(e1s[k], e1s[k + 1]));
        study.pair_ordersinf.push_back(pair_order(einfs[k], einfs[k + 1]));
        study.pair_ordersd.push_back(pair_order(eds[k], eds[k + 1]));
    }

    if (!base.out_dir.empty()) {
        std::filesystem::create_directories(base.out_dir);
        std::ofstream f(base.out_dir + "/study.csv");
        f << "n,eps1,epsinf,epsd\n";
        for (const auto& r : study.rows)
            f << r.n << "," << format_g17(r.eps1) << "," << format_g17(r.epsinf) << ","
              << format_g17(r.epsd) << "\n";
        f << "# observed orders (least squares): eps1 " << study.order1 << ", epsinf "
          << study.orderinf << ", epsd " << study.orderd << "\n";
    }
    return study;
}

}  // namespace rls
