#include "rescuefx/estimators.hpp"

#include <cmath>
#include <string>

#include "rescuefx/errors.hpp"
#include "rescuefx/normal_math.hpp"

namespace rescuefx {

namespace {

constexpr double kDenominatorFloor = 1e-8;

void require_both_arms(const long n[2], const char* who, long min_count,
                       const char* what) {
    for (int z = 0; z < 2; ++z) {
        if (n[z] < min_count)
            throw degeneracy_error(std::string(who) + ": arm z=" +
                                   std::to_string(z) + " has fewer than " +
                                   std::to_string(min_count) + " " + what);
    }
}

void require_binary_codes(const TrialDataset& data, const char* who) {
    for (const auto& rec : data.records) {
        if (rec.z != 0 && rec.z != 1)
            throw domain_error(std::string(who) + ": z must be 0 or 1 (subject id " +
                               std::to_string(rec.id) + ")");
        if (rec.r != 0 && rec.r != 1)
            throw domain_error(std::string(who) + ": r must be 0 or 1 (subject id " +
                               std::to_string(rec.id) + ")");
    }
}

} // namespace

double estimate_itt(const TrialDataset& data) {
    require_binary_codes(data, "estimate_itt");
    double sum[2] = {0.0, 0.0};
    long n[2] = {0, 0};
    for (const auto& rec : data.records) {
        sum[rec.z] += rec.y2;
        ++n[rec.z];
    }
    require_both_arms(n, "estimate_itt", 1, "subjects");
    return sum[1] / n[1] - sum[0] / n[0];
}

double estimate_conditional(const TrialDataset& data) {
    require_binary_codes(data, "estimate_conditional");
    double sum[2] = {0.0, 0.0};
    long n[2] = {0, 0};
    for (const auto& rec : data.records) {
        if (rec.r != 0) continue;
        sum[rec.z] += rec.y2;
        ++n[rec.z];
    }
    require_both_arms(n, "estimate_conditional", 1, "non-rescued subjects");
    return sum[1] / n[1] - sum[0] / n[0];
}

std::array<ArmMoments, 2> compute_arm_moments(const TrialDataset& data,
                                              double c) {
    require_binary_codes(data, "compute_arm_moments");
    if (!std::isfinite(c))
        throw domain_error("compute_arm_moments: c must be finite");
    std::array<ArmMoments, 2> out;
    double sum_y1[2] = {0.0, 0.0};
    for (const auto& rec : data.records) {
        ArmMoments& m = out[rec.z];
        ++m.n;
        sum_y1[rec.z] += rec.y1;
        if (rec.r == 0) {
            ++m.n_norescue;
            m.mean_y2_norescue += rec.y2;
            m.mean_y1y2_norescue += rec.y1 * rec.y2;
        }
    }
    for (int z = 0; z < 2; ++z) {
        ArmMoments& m = out[z];
        if (m.n < 2)
            throw degeneracy_error("compute_arm_moments: arm z=" +
                                   std::to_string(z) + " has fewer than 2 subjects");
        if (m.n_norescue < 2)
            throw degeneracy_error("compute_arm_moments: arm z=" +
                                   std::to_string(z) +
                                   " has fewer than 2 non-rescued subjects");
        m.mean_y1 = sum_y1[z] / m.n;
        m.mean_y2_norescue /= m.n_norescue;
        m.mean_y1y2_norescue /= m.n_norescue;
    }
    // second pass for the variance: two-pass is more accurate than the
    // textbook sum-of-squares shortcut
    double ss[2] = {0.0, 0.0};
    for (const auto& rec : data.records) {
        const double d = rec.y1 - out[rec.z].mean_y1;
        ss[rec.z] += d * d;
    }
    for (int z = 0; z < 2; ++z) {
        ArmMoments& m = out[z];
        const double var = ss[z] / (m.n - 1);
        if (!(var > 0.0))
            throw degeneracy_error("compute_arm_moments: arm z=" +
                                   std::to_string(z) + " has zero y1 variance");
        m.sd_y1 = std::sqrt(var);
        m.eta_hat = (c - m.mean_y1) / m.sd_y1;
        m.lambda_hat = hazard(m.eta_hat);
    }
    return out;
}

double estimate_sigma12(const ArmMoments& m, double c) {
    if (m.n < 2 || m.n_norescue < 2 || !(m.sd_y1 > 0.0))
        throw degeneracy_error("estimate_sigma12: insufficient arm moments");
    const double eta = (c - m.mean_y1) / m.sd_y1;
    const double lam = hazard(eta);
    const double den = 1.0 + lam * (eta - lam);
    if (den <= kDenominatorFloor)
        throw degeneracy_error(
            "estimate_sigma12: degenerate truncation, denominator " +
            std::to_string(den) + " <= 1e-8");
    const double num = m.mean_y1y2_norescue -
                       m.mean_y2_norescue * (m.mean_y1 + m.sd_y1 * lam);
    return num / den;
}

EstimateSet estimate_corrected(const TrialDataset& data, double c,
                               EstimateMode mode,
                               const ScenarioParams* oracle_params) {
    if (mode == EstimateMode::oracle && oracle_params == nullptr)
        throw domain_error("estimate_corrected: oracle mode needs scenario params");

    const auto moments = compute_arm_moments(data, c);

    EstimateSet est;
    est.mode = mode;
    est.itt = estimate_itt(data);
    est.conditional = estimate_conditional(data);

    for (int z = 0; z < 2; ++z) {
        const ArmMoments& m = moments[z];
        double sigma12, slope, scale_times_lambda;
        if (mode == EstimateMode::plug_in) {
            sigma12 = estimate_sigma12(m, c);
            slope = sigma12 / (m.sd_y1 * m.sd_y1);
            scale_times_lambda = m.sd_y1 * m.lambda_hat;
        } else {
            const ScenarioParams& p = *oracle_params;
            const double s11 = p.sigma11_by_arm[z];
            sigma12 = p.sigma12_by_cell[z][0];
            slope = sigma12 / (s11 * s11);
            scale_times_lambda = s11 * hazard((c - mu1(p, z)) / s11);
        }
        est.sigma12_hat_by_arm[z] = sigma12;
        est.gamma12_hat_by_arm[z] = slope;
        est.mu2_hat_by_arm[z] = m.mean_y2_norescue - slope * scale_times_lambda;
    }
    est.corrected = est.mu2_hat_by_arm[1] - est.mu2_hat_by_arm[0];
    return est;
}

} // namespace rescuefx
