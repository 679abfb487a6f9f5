#pragma once

#include <array>

#include "rescuefx/datagen.hpp"
#include "rescuefx/model.hpp"

namespace rescuefx {

// Sufficient statistics of one arm for the truncation correction.
struct ArmMoments {
    int n = 0;                       // arm size
    int n_norescue = 0;              // subjects with r == 0
    double mean_y1 = 0.0;            // over the whole arm
    double sd_y1 = 0.0;              // n-1 denominator
    double eta_hat = 0.0;            // (c - mean_y1) / sd_y1
    double lambda_hat = 0.0;         // hazard(eta_hat)
    double mean_y2_norescue = 0.0;   // over the non-rescued subset
    double mean_y1y2_norescue = 0.0; // ditto, cross moment
};

enum class EstimateMode { plug_in, oracle };

struct EstimateSet {
    double itt = 0.0;
    double conditional = 0.0;
    double corrected = 0.0;
    // Quantities the correction used, per arm. In plug-in mode these are
    // estimates; in oracle mode the true scenario values.
    std::array<double, 2> sigma12_hat_by_arm = {0.0, 0.0};
    std::array<double, 2> gamma12_hat_by_arm = {0.0, 0.0}; // sigma12 / sd_y1^2
    std::array<double, 2> mu2_hat_by_arm = {0.0, 0.0};     // corrected E[Y2(z,0)]
    EstimateMode mode = EstimateMode::plug_in;
};

// Plain difference of visit-2 arm means (all subjects).
double estimate_itt(const TrialDataset& data);

// Difference of visit-2 means among the non-rescued only -- biased for the
// biological effect because the truncation sets differ between arms.
double estimate_conditional(const TrialDataset& data);

// Per-arm sufficient statistics; index 0 = control, 1 = treatment.
// degeneracy_error when an arm has < 2 subjects, < 2 non-rescued subjects,
// or zero y1 variance.
std::array<ArmMoments, 2> compute_arm_moments(const TrialDataset& data,
                                              double c);

// Covariance-scale moment estimator of sigma12(z,0) from one arm:
//   [ mean(y1 y2 | kept) - mean(y2 | kept) (mean_y1 + sd_y1 lambda) ]
//   / [ 1 + lambda (eta - lambda) ]
// with eta, lambda recomputed from the supplied threshold. degeneracy_error
// when the denominator is <= 1e-8 (truncation has destroyed the signal).
double estimate_sigma12(const ArmMoments& m, double c);

// Truncation-corrected biological-effect estimator, plus the ITT and
// conditional estimates on the same data. Oracle mode replaces the
// estimated correction inputs with the true scenario values (oracle_params
// must then be non-null; domain_error otherwise).
EstimateSet estimate_corrected(const TrialDataset& data, double c,
                               EstimateMode mode,
                               const ScenarioParams* oracle_params = nullptr);

} // namespace rescuefx
