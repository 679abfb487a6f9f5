#include "rescuefx/mc_harness.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "rescuefx/datagen.hpp"
#include "rescuefx/errors.hpp"

namespace rescuefx {

namespace {

// Welford accumulator with Chan's pairwise merge. Replicates are binned
// into fixed 64-replicate chunks and the chunk partials are merged in
// chunk-index order, so the result does not depend on which thread ran
// which chunk -- and the single-threaded path takes the identical route.
struct RunningStat {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const RunningStat& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        const double d = other.mean - mean;
        const long total = n + other.n;
        mean += d * other.n / total;
        m2 += other.m2 + d * d * (static_cast<double>(n) * other.n / total);
        n = total;
    }
};

constexpr long kChunk = 64;
constexpr int kStatCount = 9;  // itt, cond, corr, 2x sigma12, 2x gamma12, 2x mu2

struct ChunkAccum {
    RunningStat stats[kStatCount];
    long failures = 0;
};

SummaryStat finalize(const RunningStat& s) {
    SummaryStat out;
    out.n = s.n;
    out.mean = (s.n > 0) ? s.mean : 0.0;
    if (s.n >= 2) out.sd = std::sqrt(s.m2 / (s.n - 1));
    return out;
}

} // namespace

McSummary run_scenario(const ScenarioParams& p, long replicates,
                       std::uint64_t master_seed, EstimateMode mode,
                       int threads) {
    p.validate();
    if (replicates < 1)
        throw domain_error("run_scenario: replicates must be >= 1");
    if (threads < 1)
        throw domain_error("run_scenario: threads must be >= 1");

    const long n_chunks = (replicates + kChunk - 1) / kChunk;
    std::vector<ChunkAccum> chunks(static_cast<std::size_t>(n_chunks));

    std::atomic<long> next_chunk{0};
    auto worker = [&]() {
        for (;;) {
            const long ci = next_chunk.fetch_add(1);
            if (ci >= n_chunks) return;
            ChunkAccum& acc = chunks[static_cast<std::size_t>(ci)];
            const long lo = ci * kChunk;
            const long hi = std::min(replicates, lo + kChunk);
            for (long k = lo; k < hi; ++k) {
                TrialDataset data =
                    generate_trial(p, master_seed, static_cast<std::uint64_t>(k));
                try {
                    const EstimateSet est =
                        estimate_corrected(data, p.c, mode, &p);
                    const double values[kStatCount] = {
                        est.itt,
                        est.conditional,
                        est.corrected,
                        est.sigma12_hat_by_arm[0],
                        est.sigma12_hat_by_arm[1],
                        est.gamma12_hat_by_arm[0],
                        est.gamma12_hat_by_arm[1],
                        est.mu2_hat_by_arm[0],
                        est.mu2_hat_by_arm[1],
                    };
                    for (int j = 0; j < kStatCount; ++j)
                        acc.stats[j].add(values[j]);
                } catch (const degeneracy_error&) {
                    ++acc.failures;  // excluded from every aggregate
                }
            }
        }
    };

    const int n_workers =
        static_cast<int>(std::min<long>(threads, n_chunks));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ChunkAccum total;
    for (const auto& chunk : chunks) {
        for (int j = 0; j < kStatCount; ++j) total.stats[j].merge(chunk.stats[j]);
        total.failures += chunk.failures;
    }

    McSummary out;
    out.scenario = p;
    out.mode = mode;
    out.replicates_requested = replicates;
    out.failure_count = total.failures;
    out.replicates_used = replicates - total.failures;
    out.itt = finalize(total.stats[0]);
    out.conditional = finalize(total.stats[1]);
    out.corrected = finalize(total.stats[2]);
    out.sigma12_hat = {finalize(total.stats[3]), finalize(total.stats[4])};
    out.gamma12_hat = {finalize(total.stats[5]), finalize(total.stats[6])};
    out.mu2_hat = {finalize(total.stats[7]), finalize(total.stats[8])};
    return out;
}

std::vector<McSummary> run_table(const std::vector<ScenarioParams>& grid,
                                 long replicates, std::uint64_t master_seed,
                                 EstimateMode mode, int threads) {
    std::vector<McSummary> out;
    out.reserve(grid.size());
    // Same master seed per row: common random numbers across scenarios.
    for (const auto& p : grid)
        out.push_back(run_scenario(p, replicates, master_seed, mode, threads));
    return out;
}

namespace {

ScenarioParams grid_row(double alpha1, double beta1, double alpha2,
                        double beta2, double gamma, double delta) {
    ScenarioParams p;  // defaults carry the shared grid constants
    p.alpha1 = alpha1;
    p.beta1 = beta1;
    p.alpha2 = alpha2;
    p.beta2 = beta2;
    p.gamma = gamma;
    p.delta = delta;
    return p;
}

} // namespace

std::vector<ScenarioParams> table2_grid() {
    return {
        grid_row(1, 0, 0, 0, 0, 0),  //  1: visit-1 level only
        grid_row(0, 1, 0, 0, 0, 0),  //  2: visit-1 treatment effect
        grid_row(0, 0, 1, 0, 0, 0),  //  3: visit-2 level only
        grid_row(0, 0, 0, 1, 0, 0),  //  4: biological effect
        grid_row(0, 0, 0, 0, 1, 0),  //  5: rescue benefit
        grid_row(0, 0, 0, 0, 0, 1),  //  6: rescue-by-treatment interaction
        grid_row(0, 0, 0, 0, 1, 1),  //  7
        grid_row(0, 1, 0, 1, 0, 0),  //  8
        grid_row(0, 1, 0, 1, 1, 0),  //  9
        grid_row(0, 1, 0, 1, 1, 1),  // 10
        grid_row(0, 0, 0, 1, 1, 1),  // 11
    };
}

std::vector<ScenarioParams> table3_grid() {
    return table2_grid();  // same rows; the mode differs at the call site
}

} // namespace rescuefx
