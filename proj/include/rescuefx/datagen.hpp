#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rescuefx/model.hpp"

namespace rescuefx {

struct SubjectRecord {
    int id;     // 1-based, unique within a dataset
    int z;      // arm
    double y1;  // visit-1 outcome
    int r;      // rescue indicator, must equal [y1 <= c]
    double y2;  // visit-2 outcome
};

struct TrialDataset {
    std::vector<SubjectRecord> records;
    double scenario_c;  // threshold the rescue rule was applied with
};

// Simulate one trial. Subject i of replicate k draws from the stream keyed
// by (seed, k, i): bit-identical output for fixed arguments, on any thread.
TrialDataset generate_trial(const ScenarioParams& p, std::uint64_t seed,
                            std::uint64_t replicate = 0);

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

// Structural checks: rescue rule consistency with scenario_c, unique ids,
// z/r in {0,1}, finite outcomes, both arms non-empty.
ValidationReport validate_dataset(const TrialDataset& data);

} // namespace rescuefx
