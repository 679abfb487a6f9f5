#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rescuefx/estimators.hpp"
#include "rescuefx/model.hpp"

namespace rescuefx {

// Mean / SD over Monte Carlo replicates. sd is absent (not zero) when
// fewer than two replicates contributed.
struct SummaryStat {
    double mean = 0.0;
    std::optional<double> sd;
    long n = 0;
};

struct McSummary {
    ScenarioParams scenario;
    EstimateMode mode = EstimateMode::plug_in;
    long replicates_requested = 0;
    long replicates_used = 0;  // = requested - failure_count
    long failure_count = 0;    // degenerate replicates, excluded everywhere

    SummaryStat itt;
    SummaryStat conditional;
    SummaryStat corrected;
    std::array<SummaryStat, 2> sigma12_hat;  // covariance scale, per arm
    std::array<SummaryStat, 2> gamma12_hat;  // slope scale, per arm
    std::array<SummaryStat, 2> mu2_hat;      // corrected E[Y2(z,0)], per arm
};

// Run one scenario for `replicates` trials. Replicate k always uses the
// data stream (master_seed, k, .), and accumulation is chunked in a fixed
// order, so the summary is bit-identical for every thread count.
McSummary run_scenario(const ScenarioParams& p, long replicates,
                       std::uint64_t master_seed, EstimateMode mode,
                       int threads = 1);

std::vector<McSummary> run_table(const std::vector<ScenarioParams>& grid,
                                 long replicates, std::uint64_t master_seed,
                                 EstimateMode mode, int threads = 1);

// The 11-row reference grid: one regression coefficient pattern per row,
// shared constants sigma11 = sigma22 = 1, sigma12 = 0.6, c = -0.5,
// n0 = n1 = 50. Table 2 runs it in oracle mode, Table 3 in plug-in mode.
std::vector<ScenarioParams> table2_grid();
std::vector<ScenarioParams> table3_grid();

} // namespace rescuefx
