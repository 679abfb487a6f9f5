#pragma once

#include <cstdint>

#include "rescuefx/datagen.hpp"

namespace rescuefx {

struct BootstrapResult {
    double point_estimate = 0.0;  // plug-in corrected effect on the data
    double se = 0.0;              // sd of successful resample estimates
    long resamples = 0;           // requested
    long failure_count = 0;       // degenerate resamples, excluded
    double level = 0.95;
    double lo = 0.0;              // percentile interval bounds
    double hi = 0.0;
};

// Stratified (within-arm) nonparametric bootstrap of the plug-in corrected
// estimator. Resample b draws from the stream (seed, b, .), estimates are
// aggregated in resample order: deterministic for any thread count.
// degeneracy_error when more than half the resamples fail.
BootstrapResult bootstrap_corrected(const TrialDataset& data, double c,
                                    long resamples, std::uint64_t seed,
                                    double level = 0.95, int threads = 1);

} // namespace rescuefx
