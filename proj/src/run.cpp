#include "burgers2d/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "burgers2d/compact_adi.hpp"
#include "burgers2d/dufort_frankel.hpp"
#include "burgers2d/parallel.hpp"
#include "burgers2d/problems.hpp"
#include "burgers2d/stability.hpp"

namespace burgers2d {

namespace {

using nlohmann::json;

[[noreturn]] void fail_key(const std::string& key, const std::string& why) {
    throw ConfigError("config key \"" + key + "\": " + why);
}

const json& require(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("missing required key \"" + key + "\"");
    return j.at(key);
}

double require_positive(const json& j, const std::string& key) {
    const json& v = require(j, key);
    if (!v.is_number()) fail_key(key, "must be a number");
    const double d = v.get<double>();
    if (!(d > 0.0)) fail_key(key, "must be positive");
    return d;
}

int require_positive_int(const json& j, const std::string& key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) fail_key(key, "must be an integer");
    const int i = v.get<int>();
    if (i <= 0) fail_key(key, "must be positive");
    return i;
}

double optional_positive(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail_key(key, "must be a number");
    const double d = j.at(key).get<double>();
    if (!(d > 0.0)) fail_key(key, "must be positive");
    return d;
}

std::string format_time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string snapshot_csv(const FieldPair& fields, const Grid2D& grid) {
    std::string out = "x,y,u,v\n";
    out.reserve(out.size() + static_cast<size_t>(grid.N + 1) * (grid.M + 1) * 100);
    char line[160];
    for (int j = 0; j <= grid.M; ++j)
        for (int i = 0; i <= grid.N; ++i) {
            std::snprintf(line, sizeof(line), "%.17e,%.17e,%.17e,%.17e\n",
                          grid.node_x(i), grid.node_y(j), fields.u(i, j), fields.v(i, j));
            out += line;
        }
    return out;
}

ProblemCase make_problem(const RunConfig& cfg) {
    switch (cfg.problem) {
        case ProblemSelector::kCase1a: return case1_problem(Case1Variant::k1a, cfg.N, cfg.M);
        case ProblemSelector::kCase1b: return case1_problem(Case1Variant::k1b, cfg.N, cfg.M);
        case ProblemSelector::kCase1c: return case1_problem(Case1Variant::k1c, cfg.N, cfg.M);
        case ProblemSelector::kCase2: return case2_problem(cfg.N, cfg.M, cfg.Re);
        case ProblemSelector::kCustom: {
            ProblemCase pc;
            pc.label = "custom";
            pc.grid = build_grid(cfg.x0, cfg.xN, cfg.N, cfg.y0, cfg.yM, cfg.M);
            pc.nu = 1.0 / cfg.Re;
            pc.bc = DirichletBoundary::zero(pc.grid);
            pc.initial = FieldPair(pc.grid);
            return pc;
        }
    }
    throw ConfigError("unknown problem selector");
}

struct MarchResult {
    RunSummary summary;
    FieldPair fields;
    std::vector<std::pair<double, FieldPair>> snapshots;  // labeled by requested time
};

MarchResult march(const RunConfig& cfg, Scheme scheme, double dt, const ProblemCase& pc) {
    RunParams params;
    params.nu = pc.nu;
    params.dt = dt;
    params.t_end = cfg.t_end;
    params.newton_tol = cfg.newton_tol;
    params.newton_max_iters = cfg.newton_max_iters;
    params.alpha_convention = cfg.alpha_convention;
    const int threads = cfg.parallel ? resolve_threads(1 << 16) : 1;

    MarchResult res;
    res.fields = pc.initial;
    std::vector<double> pending = cfg.snapshot_times;
    std::sort(pending.begin(), pending.end());

    auto emit_due = [&](const FieldPair& f) {
        while (!pending.empty() && f.t + 0.5 * dt > pending.front()) {
            res.snapshots.emplace_back(pending.front(), f);
            pending.erase(pending.begin());
        }
    };

    const auto t_start = std::chrono::steady_clock::now();
    long iter_count = 0;
    long iter_sum = 0;
    emit_due(res.fields);
    const long total_steps = std::lround(cfg.t_end / dt);
    FieldPair prev;  // explicit scheme history
    try {
        for (long step = 0; step < total_steps; ++step) {
            FieldPair next;
            if (scheme == Scheme::kCompactAdi) {
                StepStats stats;
                next = full_step(res.fields, params, pc.grid, pc.boundary(), &stats, threads);
                for (const SweepStats* s : {&stats.x, &stats.y})
                    for (const auto& l : s->lines) {
                        res.summary.newton_iters_min =
                            iter_count == 0 ? l.iterations
                                            : std::min(res.summary.newton_iters_min, l.iterations);
                        res.summary.newton_iters_max =
                            std::max(res.summary.newton_iters_max, l.iterations);
                        iter_sum += l.iterations;
                        ++iter_count;
                    }
            } else {
                if (step == 0) {
                    next = dff_bootstrap(res.fields, params, pc.grid, pc.boundary());
                } else {
                    next = dff_step(prev, res.fields, params, pc.grid, pc.boundary());
                }
                prev = res.fields;
            }
            const double du = [&] {
                double m = 0.0;
                for (size_t k = 0; k < next.u.data.size(); ++k)
                    m = std::max({m, std::abs(next.u.data[k] - res.fields.u.data[k]),
                                  std::abs(next.v.data[k] - res.fields.v.data[k])});
                return m;
            }();
            res.fields = std::move(next);
            ++res.summary.steps;
            emit_due(res.fields);
            if (cfg.steady_stop && du / dt < cfg.steady_tol) break;
        }
    } catch (const NonFinite&) {
        res.summary.status = "diverged";
        res.summary.failing_step = res.summary.steps + 1;
    } catch (const NewtonDiverged&) {
        res.summary.status = "diverged";
        res.summary.failing_step = res.summary.steps + 1;
    } catch (const SingularBlock&) {
        res.summary.status = "singular";
        res.summary.failing_step = res.summary.steps + 1;
    }
    res.summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    res.summary.newton_iters_mean =
        iter_count > 0 ? static_cast<double>(iter_sum) / iter_count : 0.0;

    if (res.summary.status == "completed" && pc.exact) {
        const ErrorNorms e = error_norms(res.fields, *pc.exact, pc.grid);
        res.summary.E_u = e.E_u;
        res.summary.E_v = e.E_v;
    }
    return res;
}

json summary_json(const RunSummary& s) {
    json j;
    j["status"] = s.status;
    j["steps"] = s.steps;
    j["E_u"] = s.E_u ? json(*s.E_u) : json(nullptr);
    j["E_v"] = s.E_v ? json(*s.E_v) : json(nullptr);
    j["newton_iters_min"] = s.newton_iters_min;
    j["newton_iters_max"] = s.newton_iters_max;
    j["newton_iters_mean"] = s.newton_iters_mean;
    j["wall_seconds"] = s.wall_seconds;
    j["failing_step"] = s.failing_step;
    j["timing_note"] = "wall-clock on this host; not comparable across machines";
    return j;
}

const std::vector<std::pair<double, double>>& probe_points() {
    static const std::vector<std::pair<double, double>> pts = {
        {0.1, 0.1}, {0.2, 0.8}, {0.4, 0.4}, {0.7, 0.1}, {0.9, 0.9}};
    return pts;
}

RunSummary run_solve(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const ProblemCase pc = make_problem(cfg);
    RunConfig cfg_eff = cfg;
    if (cfg_eff.snapshot_times.empty()) cfg_eff.snapshot_times = {cfg.t_end};
    MarchResult res = march(cfg_eff, cfg.scheme, cfg.dt, pc);
    for (const auto& [label, fields] : res.snapshots)
        write_file(out_dir / ("snapshot_t" + format_time_label(label) + ".csv"),
                   snapshot_csv(fields, pc.grid));
    write_file(out_dir / "summary.json", summary_json(res.summary).dump(2) + "\n");
    return res.summary;
}

RunSummary run_stability(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    auto linspace = [](double lo, double hi, int n) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        return v;
    };
    const auto& sc = cfg.stability;
    const int threads = cfg.parallel ? resolve_threads(1 << 16) : 1;
    const auto points = stability_map(linspace(sc.c_min, sc.c_max, sc.c_steps),
                                      linspace(sc.d_min, sc.d_max, sc.d_steps), sc.n_theta, threads);
    write_file(out_dir / "stability.csv", stability_csv(points));
    RunSummary s;
    write_file(out_dir / "summary.json", summary_json(s).dump(2) + "\n");
    return s;
}

RunSummary run_convergence(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    RunConfig ref_cfg = cfg;
    ref_cfg.N = cfg.convergence.ref_N;
    ref_cfg.M = cfg.problem == ProblemSelector::kCase2 ? ref_cfg.N : std::max(4, ref_cfg.N / 2);
    const ProblemCase ref_pc = make_problem(ref_cfg);
    MarchResult ref = march(ref_cfg, Scheme::kCompactAdi, cfg.convergence.ref_dt, ref_pc);
    if (ref.summary.status != "completed") {
        write_file(out_dir / "summary.json", summary_json(ref.summary).dump(2) + "\n");
        return ref.summary;
    }

    std::string csv = "N,M,dt,E_u,E_v,order_u,order_v\n";
    double prev_Eu = 0.0, prev_Ev = 0.0;
    int prev_N = 0;
    RunSummary overall;
    for (size_t level = 0; level < cfg.convergence.grids.size(); ++level) {
        RunConfig level_cfg = cfg;
        level_cfg.N = cfg.convergence.grids[level];
        level_cfg.M = cfg.problem == ProblemSelector::kCase2 ? level_cfg.N
                                                             : std::max(4, level_cfg.N / 2);
        if (ref_cfg.N % level_cfg.N != 0 || ref_cfg.M % level_cfg.M != 0)
            fail_key("grids", "each grid must divide ref_N for node-aligned comparison");
        const ProblemCase pc = make_problem(level_cfg);
        const double dt = cfg.dt > 0.0 ? cfg.dt : cfg.convergence.ref_dt;
        MarchResult res = march(level_cfg, cfg.scheme, dt, pc);
        if (res.summary.status != "completed") {
            write_file(out_dir / "summary.json", summary_json(res.summary).dump(2) + "\n");
            return res.summary;
        }
        const int rx = ref_cfg.N / level_cfg.N, ry = ref_cfg.M / level_cfg.M;
        double Eu = 0.0, Ev = 0.0;
        for (int j = 1; j <= level_cfg.M; ++j)
            for (int i = 1; i <= level_cfg.N; ++i) {
                Eu += std::abs(res.fields.u(i, j) - ref.fields.u(i * rx, j * ry));
                Ev += std::abs(res.fields.v(i, j) - ref.fields.v(i * rx, j * ry));
            }
        Eu /= static_cast<double>(level_cfg.N) * level_cfg.M;
        Ev /= static_cast<double>(level_cfg.N) * level_cfg.M;

        char line[256];
        if (level == 0) {
            std::snprintf(line, sizeof(line), "%d,%d,%.17e,%.17e,%.17e,,\n",
                          level_cfg.N, level_cfg.M, dt, Eu, Ev);
        } else {
            const double ratio = static_cast<double>(level_cfg.N) / prev_N;
            std::snprintf(line, sizeof(line), "%d,%d,%.17e,%.17e,%.17e,%.6f,%.6f\n",
                          level_cfg.N, level_cfg.M, dt, Eu, Ev,
                          observed_order(prev_Eu, Eu, ratio), observed_order(prev_Ev, Ev, ratio));
        }
        csv += line;
        prev_Eu = Eu;
        prev_Ev = Ev;
        prev_N = level_cfg.N;
        overall.steps += res.summary.steps;
        overall.wall_seconds += res.summary.wall_seconds;
    }
    overall.wall_seconds += ref.summary.wall_seconds;
    write_file(out_dir / "convergence.csv", csv);
    write_file(out_dir / "summary.json", summary_json(overall).dump(2) + "\n");
    return overall;
}

RunSummary run_compare(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const ProblemCase pc = make_problem(cfg);
    MarchResult adi = march(cfg, Scheme::kCompactAdi, cfg.dt, pc);
    const double dff_dt = cfg.dff_dt > 0.0 ? cfg.dff_dt : cfg.dt;
    MarchResult dff = march(cfg, Scheme::kDufortFrankel, dff_dt, pc);

    std::string csv = "x,y,u_compact_adi,v_compact_adi,u_dufort_frankel,v_dufort_frankel\n";
    char line[256];
    for (const auto& [px, py] : probe_points()) {
        if (px < pc.grid.x0 || px > pc.grid.xN || py < pc.grid.y0 || py > pc.grid.yM) continue;
        std::snprintf(line, sizeof(line), "%.17e,%.17e,%.17e,%.17e,%.17e,%.17e\n", px, py,
                      sample_field(adi.fields.u, pc.grid, px, py),
                      sample_field(adi.fields.v, pc.grid, px, py),
                      sample_field(dff.fields.u, pc.grid, px, py),
                      sample_field(dff.fields.v, pc.grid, px, py));
        csv += line;
    }
    write_file(out_dir / "compare.csv", csv);

    json j;
    j["compact_adi"] = summary_json(adi.summary);
    j["dufort_frankel"] = summary_json(dff.summary);
    j["wall_clock_ratio_dff_over_adi"] =
        adi.summary.wall_seconds > 0.0 ? dff.summary.wall_seconds / adi.summary.wall_seconds : 0.0;
    write_file(out_dir / "summary.json", j.dump(2) + "\n");

    RunSummary overall = adi.summary;
    if (dff.summary.status != "completed") overall.status = dff.summary.status;
    overall.steps += dff.summary.steps;
    overall.wall_seconds += dff.summary.wall_seconds;
    return overall;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig cfg;
    const std::string command = require(j, "command").get<std::string>();
    if (command == "solve") cfg.command = Command::kSolve;
    else if (command == "stability") cfg.command = Command::kStability;
    else if (command == "convergence") cfg.command = Command::kConvergence;
    else if (command == "compare") cfg.command = Command::kCompare;
    else fail_key("command", "must be one of solve|stability|convergence|compare");

    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("parallel")) {
        if (!j.at("parallel").is_boolean()) fail_key("parallel", "must be a boolean");
        cfg.parallel = j.at("parallel").get<bool>();
    }

    auto parse_problem = [&](bool required) {
        if (!required && !j.contains("problem")) return;
        const std::string p = require(j, "problem").get<std::string>();
        if (p == "case1a") cfg.problem = ProblemSelector::kCase1a;
        else if (p == "case1b") cfg.problem = ProblemSelector::kCase1b;
        else if (p == "case1c") cfg.problem = ProblemSelector::kCase1c;
        else if (p == "case2") cfg.problem = ProblemSelector::kCase2;
        else if (p == "custom") cfg.problem = ProblemSelector::kCustom;
        else fail_key("problem", "must be one of case1a|case1b|case1c|case2|custom");
    };
    auto parse_scheme = [&] {
        if (!j.contains("scheme")) return;
        const std::string s = j.at("scheme").get<std::string>();
        if (s == "compact_adi") cfg.scheme = Scheme::kCompactAdi;
        else if (s == "dufort_frankel") cfg.scheme = Scheme::kDufortFrankel;
        else fail_key("scheme", "must be compact_adi or dufort_frankel");
    };
    auto parse_re = [&] {
        switch (cfg.problem) {
            case ProblemSelector::kCase1a:
            case ProblemSelector::kCase1c:
                cfg.Re = 10.0;
                break;
            case ProblemSelector::kCase1b:
                cfg.Re = 50.0;
                break;
            default:
                cfg.Re = require_positive(j, "Re");
                return;
        }
        if (j.contains("Re") && std::abs(j.at("Re").get<double>() - cfg.Re) > 1e-12)
            fail_key("Re", "conflicts with the Reynolds number pinned by the selected problem");
    };
    auto parse_newton = [&] {
        cfg.newton_tol = optional_positive(j, "newton_tol", cfg.newton_tol);
        if (j.contains("newton_max_iters")) {
            if (!j.at("newton_max_iters").is_number_integer() ||
                j.at("newton_max_iters").get<int>() <= 0)
                fail_key("newton_max_iters", "must be a positive integer");
            cfg.newton_max_iters = j.at("newton_max_iters").get<int>();
        }
        if (j.contains("alpha_convention")) {
            const std::string a = j.at("alpha_convention").get<std::string>();
            if (a == "full_step") cfg.alpha_convention = AlphaConvention::kFullStep;
            else if (a == "half_step") cfg.alpha_convention = AlphaConvention::kHalfStep;
            else fail_key("alpha_convention", "must be full_step or half_step");
        }
    };
    auto parse_domain = [&] {
        if (cfg.problem != ProblemSelector::kCustom) return;
        cfg.x0 = require(j, "x0").get<double>();
        cfg.xN = require(j, "xN").get<double>();
        cfg.y0 = require(j, "y0").get<double>();
        cfg.yM = require(j, "yM").get<double>();
    };

    switch (cfg.command) {
        case Command::kSolve:
        case Command::kCompare:
            parse_problem(true);
            if (cfg.command == Command::kSolve) parse_scheme();
            cfg.N = require_positive_int(j, "N");
            cfg.M = require_positive_int(j, "M");
            cfg.dt = require_positive(j, "dt");
            cfg.t_end = require_positive(j, "t_end");
            parse_re();
            parse_newton();
            parse_domain();
            if (j.contains("snapshot_times")) {
                if (!j.at("snapshot_times").is_array()) fail_key("snapshot_times", "must be an array");
                for (const auto& t : j.at("snapshot_times")) {
                    if (!t.is_number() || t.get<double>() < 0.0)
                        fail_key("snapshot_times", "entries must be non-negative numbers");
                    cfg.snapshot_times.push_back(t.get<double>());
                }
            }
            if (j.contains("steady_stop")) {
                if (!j.at("steady_stop").is_boolean()) fail_key("steady_stop", "must be a boolean");
                cfg.steady_stop = j.at("steady_stop").get<bool>();
                cfg.steady_tol = optional_positive(j, "steady_tol", cfg.steady_tol);
            }
            if (cfg.command == Command::kCompare)
                cfg.dff_dt = optional_positive(j, "dff_dt", cfg.dt);
            break;
        case Command::kStability:
            cfg.stability.c_min = require(j, "c_min").get<double>();
            cfg.stability.c_max = require(j, "c_max").get<double>();
            cfg.stability.c_steps = require_positive_int(j, "c_steps");
            cfg.stability.d_min = require(j, "d_min").get<double>();
            cfg.stability.d_max = require(j, "d_max").get<double>();
            cfg.stability.d_steps = require_positive_int(j, "d_steps");
            if (j.contains("n_theta")) {
                cfg.stability.n_theta = require_positive_int(j, "n_theta");
                if (cfg.stability.n_theta < 2) fail_key("n_theta", "must be at least 2");
            }
            break;
        case Command::kConvergence:
            parse_problem(true);
            parse_scheme();
            parse_re();
            parse_newton();
            cfg.t_end = optional_positive(j, "t_end", 0.01);
            cfg.convergence.ref_N = j.contains("ref_N") ? require_positive_int(j, "ref_N") : 80;
            cfg.convergence.ref_dt = optional_positive(j, "ref_dt", 1e-4);
            cfg.dt = optional_positive(j, "dt", cfg.convergence.ref_dt);
            if (j.contains("grids")) {
                if (!j.at("grids").is_array() || j.at("grids").empty())
                    fail_key("grids", "must be a non-empty array of grid sizes");
                cfg.convergence.grids.clear();
                for (const auto& g : j.at("grids")) {
                    if (!g.is_number_integer() || g.get<int>() < 4)
                        fail_key("grids", "entries must be integers >= 4");
                    cfg.convergence.grids.push_back(g.get<int>());
                }
            }
            break;
    }
    return cfg;
}

double sample_field(const Field2D& f, const Grid2D& grid, double x, double y) {
    const double fi = (x - grid.x0) / grid.dx;
    const double fj = (y - grid.y0) / grid.dy;
    auto near_node = [](double t) { return std::abs(t - std::round(t)) < 1e-9; };
    if (near_node(fi) && near_node(fj))
        return f(static_cast<int>(std::lround(fi)), static_cast<int>(std::lround(fj)));
    const int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, grid.N - 1);
    const int j0 = std::clamp(static_cast<int>(std::floor(fj)), 0, grid.M - 1);
    const double sx = fi - i0, sy = fj - j0;
    return (1 - sx) * (1 - sy) * f(i0, j0) + sx * (1 - sy) * f(i0 + 1, j0) +
           (1 - sx) * sy * f(i0, j0 + 1) + sx * sy * f(i0 + 1, j0 + 1);
}

RunSummary run(const RunConfig& config) {
    const std::filesystem::path out_dir = config.out_dir.empty() ? "." : config.out_dir;
    std::filesystem::create_directories(out_dir);
    switch (config.command) {
        case Command::kSolve: return run_solve(config, out_dir);
        case Command::kStability: return run_stability(config, out_dir);
        case Command::kConvergence: return run_convergence(config, out_dir);
        case Command::kCompare: return run_compare(config, out_dir);
    }
    throw ConfigError("unknown command");
}

int exit_code_for(const RunSummary& summary) {
    return summary.status == "completed" ? 0 : 2;
}

}  // namespace burgers2d
