#include "rescuefx/datagen.hpp"

#include <cmath>
#include <set>
#include <string>

#include "rescuefx/normal_math.hpp"
#include "rescuefx/rng.hpp"

namespace rescuefx {

TrialDataset generate_trial(const ScenarioParams& p, std::uint64_t seed,
                            std::uint64_t replicate) {
    p.validate();

    TrialDataset data;
    data.scenario_c = p.c;
    data.records.reserve(static_cast<std::size_t>(p.n0) + p.n1);

    int subject = 0;  // global index keys the stream, id = subject + 1
    for (int z = 0; z < 2; ++z) {
        const int n = (z == 0) ? p.n0 : p.n1;
        const double m1 = mu1(p, z);
        const double s11 = p.sigma11_by_arm[z];
        for (int i = 0; i < n; ++i, ++subject) {
            SubjectRng rng(seed, replicate, static_cast<std::uint64_t>(subject));
            const double y1 = m1 + s11 * rng.normal();
            const int r = (y1 <= p.c) ? 1 : 0;
            const auto cond = conditional_slope_and_residual(
                s11, p.sigma12_by_cell[z][r], p.sigma22_by_cell[z][r]);
            const double y2 = mu2(p, z, r) + cond.slope * (y1 - m1) +
                              cond.residual_sd * rng.normal();
            data.records.push_back({subject + 1, z, y1, r, y2});
        }
    }
    return data;
}

ValidationReport validate_dataset(const TrialDataset& data) {
    ValidationReport report;
    auto note = [&report](const std::string& msg) {
        // cap the list so a systematically broken file stays readable
        if (report.issues.size() < 20) report.issues.push_back(msg);
    };

    if (data.records.empty()) {
        note("dataset is empty");
        return report;
    }
    if (!std::isfinite(data.scenario_c)) note("threshold c is not finite");

    std::set<int> ids;
    int arm_counts[2] = {0, 0};
    for (const auto& rec : data.records) {
        const std::string tag = "subject id " + std::to_string(rec.id);
        if (!ids.insert(rec.id).second) note("duplicate " + tag);
        if (rec.z != 0 && rec.z != 1) {
            note(tag + ": z must be 0 or 1");
            continue;
        }
        ++arm_counts[rec.z];
        if (rec.r != 0 && rec.r != 1) note(tag + ": r must be 0 or 1");
        if (!std::isfinite(rec.y1)) note(tag + ": y1 is not finite");
        if (!std::isfinite(rec.y2)) note(tag + ": y2 is not finite");
        if (std::isfinite(rec.y1) && (rec.r == 0 || rec.r == 1)) {
            const int expected = (rec.y1 <= data.scenario_c) ? 1 : 0;
            if (rec.r != expected)
                note(tag + ": rescue indicator contradicts rule [y1 <= c]");
        }
    }
    if (arm_counts[0] == 0) note("control arm (z=0) is empty");
    if (arm_counts[1] == 0) note("treatment arm (z=1) is empty");
    return report;
}

} // namespace rescuefx
