#pragma once

#include <optional>
#include <string>
#include <vector>

#include "burgers2d/grid.hpp"

namespace burgers2d {

enum class Command { kSolve, kStability, kConvergence, kCompare };
enum class Scheme { kCompactAdi, kDufortFrankel };
enum class ProblemSelector { kCase1a, kCase1b, kCase1c, kCase2, kCustom };

struct StabilitySweepConfig {
    double c_min = 0.0, c_max = 0.0;
    int c_steps = 1;
    double d_min = 0.0, d_max = 0.0;
    int d_steps = 1;
    int n_theta = 129;
};

struct ConvergenceConfig {
    std::vector<int> grids{10, 20};
    int ref_N = 80;
    double ref_dt = 1e-4;
};

struct RunConfig {
    Command command = Command::kSolve;
    ProblemSelector problem = ProblemSelector::kCase2;
    Scheme scheme = Scheme::kCompactAdi;
    int N = 0, M = 0;
    double dt = 0.0, t_end = 0.0;
    double Re = 0.0;  // 0 means "pinned by the selected problem"
    double newton_tol = 1e-10;
    int newton_max_iters = 25;
    AlphaConvention alpha_convention = AlphaConvention::kHalfStep;
    std::vector<double> snapshot_times;
    std::string out_dir = ".";
    bool parallel = false;
    bool steady_stop = false;
    double steady_tol = 1e-10;
    double dff_dt = 0.0;  // compare mode; defaults to dt
    StabilitySweepConfig stability;
    ConvergenceConfig convergence;
    double x0 = 0.0, xN = 1.0, y0 = 0.0, yM = 1.0;  // custom problem domain
};

/// Parse and validate a JSON configuration document. Throws ConfigError with
/// a message naming the offending key.
RunConfig parse_config(const std::string& json_text);

struct RunSummary {
    std::string status = "completed";  // completed | diverged | singular
    long steps = 0;
    std::optional<double> E_u, E_v;
    int newton_iters_min = 0, newton_iters_max = 0;
    double newton_iters_mean = 0.0;
    double wall_seconds = 0.0;
    long failing_step = -1;
};

/// Execute the configured command, writing its output files under
/// config.out_dir, and return the summary (also persisted as summary.json).
RunSummary run(const RunConfig& config);

int exit_code_for(const RunSummary& summary);

/// Bilinear sample of a nodal field; snaps to the node when (x, y) is one.
double sample_field(const Field2D& f, const Grid2D& grid, double x, double y);

}  // namespace burgers2d
