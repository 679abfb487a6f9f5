#include "rescuefx/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "rescuefx/errors.hpp"
#include "rescuefx/estimators.hpp"
#include "rescuefx/rng.hpp"

namespace rescuefx {

namespace {

// type-7 (linear interpolation) sample quantile on sorted values
double quantile_sorted(const std::vector<double>& v, double q) {
    const std::size_t m = v.size();
    if (m == 1) return v[0];
    const double h = q * (static_cast<double>(m) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= m) return v[m - 1];
    const double frac = h - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

} // namespace

BootstrapResult bootstrap_corrected(const TrialDataset& data, double c,
                                    long resamples, std::uint64_t seed,
                                    double level, int threads) {
    if (resamples < 2)
        throw domain_error("bootstrap_corrected: resamples must be >= 2");
    if (!(level > 0.0) || !(level < 1.0))
        throw domain_error("bootstrap_corrected: level must be in (0,1)");
    if (threads < 1)
        throw domain_error("bootstrap_corrected: threads must be >= 1");

    BootstrapResult out;
    out.resamples = resamples;
    out.level = level;
    out.point_estimate =
        estimate_corrected(data, c, EstimateMode::plug_in).corrected;

    // index the two arms once; resampling is stratified within arm
    std::vector<const SubjectRecord*> arm[2];
    for (const auto& rec : data.records) arm[rec.z].push_back(&rec);

    // estimates stored by resample index, aggregated in index order below:
    // deterministic for any thread count
    std::vector<std::optional<double>> estimates(
        static_cast<std::size_t>(resamples));

    std::atomic<long> next{0};
    auto worker = [&]() {
        TrialDataset boot;
        boot.scenario_c = c;
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= resamples) return;
            SubjectRng rng(seed, static_cast<std::uint64_t>(b), 0);
            boot.records.clear();
            for (int z = 0; z < 2; ++z) {
                const std::size_t n = arm[z].size();
                for (std::size_t j = 0; j < n; ++j) {
                    std::size_t idx =
                        static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
                    if (idx >= n) idx = n - 1;  // uniform() < 1, but belt and braces
                    boot.records.push_back(*arm[z][idx]);
                }
            }
            try {
                estimates[static_cast<std::size_t>(b)] =
                    estimate_corrected(boot, c, EstimateMode::plug_in).corrected;
            } catch (const degeneracy_error&) {
                // leave the slot empty; counted below
            }
        }
    };

    const int n_workers = static_cast<int>(std::min<long>(threads, resamples));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<double> kept;
    kept.reserve(static_cast<std::size_t>(resamples));
    for (const auto& e : estimates)
        if (e.has_value()) kept.push_back(*e);
    out.failure_count = resamples - static_cast<long>(kept.size());

    if (out.failure_count * 2 > resamples)
        throw degeneracy_error(
            "bootstrap_corrected: more than half of the resamples were "
            "degenerate; interval would be unreliable");

    double mean = 0.0;
    for (double e : kept) mean += e;
    mean /= static_cast<double>(kept.size());
    double ss = 0.0;
    for (double e : kept) ss += (e - mean) * (e - mean);
    out.se = std::sqrt(ss / (static_cast<double>(kept.size()) - 1.0));

    std::sort(kept.begin(), kept.end());
    const double alpha = 1.0 - level;
    out.lo = quantile_sorted(kept, alpha / 2.0);
    out.hi = quantile_sorted(kept, 1.0 - alpha / 2.0);
    return out;
}

} // namespace rescuefx
