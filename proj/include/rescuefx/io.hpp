#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rescuefx/datagen.hpp"
#include "rescuefx/mc_harness.hpp"
#include "rescuefx/model.hpp"

namespace rescuefx {

enum class TableFormat { csv, md };

// Dataset CSV, fixed schema "id,z,y1,r,y2". Doubles are written with 17
// significant digits so write -> read round-trips bit-exactly.
void write_dataset_csv(const TrialDataset& data, std::ostream& out);

// Strict reader: exact header, integer/binary/finite field checks, errors
// carry the offending line number. Throws validation_error.
// The threshold c is external to the file; callers supply it.
TrialDataset read_dataset_csv(std::istream& in, double c);

// Strata CSV, schema "stratum,proportion,mean_control,mean_treatment".
StrataTable read_strata_csv(std::istream& in);

// Monte Carlo summary table, one row per scenario, identical column set in
// both formats. Missing SDs (single replicate) render as NA.
void write_summaries(const std::vector<McSummary>& rows, TableFormat format,
                     std::ostream& out);

// Human-readable estimate report with per-arm diagnostics (rescue rates,
// eta/lambda, correction inputs, denominators, small-cell warnings).
void write_estimate_report(const EstimateSet& est,
                           const std::array<ArmMoments, 2>& moments,
                           double c, std::ostream& out);

std::string format_double(double v);  // shared %.6f formatting for tables

} // namespace rescuefx
