#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rescuefx {

// Two-visit trial with a deterministic rescue rule. Visit-1 outcome
//   Y1 | Z=z ~ N(mu1(z), sigma11(z)^2),        mu1(z) = alpha1 + beta1 z,
// rescue indicator R = [Y1 <= c], and visit-2 outcome with cell-specific
// mean and (co)variances
//   mu2(z,r) = alpha2 + beta2 z + gamma r + delta z r.
// beta2 is the biological effect: the visit-2 contrast with rescue held off.
struct ScenarioParams {
    double alpha1 = 0.0;
    double beta1 = 0.0;
    double alpha2 = 0.0;
    double beta2 = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    std::array<double, 2> sigma11_by_arm = {1.0, 1.0};              // [z]
    std::array<std::array<double, 2>, 2> sigma22_by_cell =          // [z][r]
        {{{1.0, 1.0}, {1.0, 1.0}}};
    std::array<std::array<double, 2>, 2> sigma12_by_cell =          // [z][r]
        {{{0.6, 0.6}, {0.6, 0.6}}};

    double c = -0.5;  // rescue threshold
    int n0 = 50;      // control arm size
    int n1 = 50;      // treatment arm size

    // Throws domain_error on the first violated constraint: arm sizes >= 2,
    // positive scales, every (z,r) cell strictly positive definite, finite c.
    void validate() const;
};

double mu1(const ScenarioParams& p, int z);
double mu2(const ScenarioParams& p, int z, int r);

// beta2; the estimand every corrected estimator targets.
double true_biological_effect(const ScenarioParams& p);

// Closed-form E[Y2 | Z=1] - E[Y2 | Z=0] under the generative model,
// including the within-cell conditional-slope term (it vanishes whenever
// sigma12(z,0) == sigma12(z,1)).
double true_itt_effect(const ScenarioParams& p);

// key = value serialization (suffixes _z0/_z1 and _z0r0/.../_z1r1).
ScenarioParams params_from_kv(std::istream& in);
void params_to_kv(const ScenarioParams& p, std::ostream& out);

// Population principal-strata summary: stratum labels are "ab" where a is
// rescue status under control and b under treatment.
struct StrataRow {
    std::string stratum;  // one of "00", "01", "10", "11"
    double proportion;
    double mean_control;
    double mean_treatment;
};

struct StrataTable {
    std::vector<StrataRow> rows;

    // domain_error on unknown labels, duplicates, proportions outside [0,1]
    // or not summing to 1 within 1e-12.
    void validate() const;
};

struct StrataEffects {
    std::vector<double> per_stratum;        // aligned with table rows
    double itt_effect;
    std::optional<double> stratum00_effect; // absent if "00" has no row
};

StrataEffects strata_effects(const StrataTable& table);

} // namespace rescuefx
