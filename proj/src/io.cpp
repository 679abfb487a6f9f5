#include "rescuefx/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rescuefx/errors.hpp"

namespace rescuefx {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

[[noreturn]] void bad_line(const char* what, int line_no, const std::string& detail) {
    throw validation_error(std::string(what) + " line " +
                           std::to_string(line_no) + ": " + detail);
}

double parse_field_double(const char* what, int line_no, const std::string& text,
                          const char* field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != text.size() || text.empty())
        bad_line(what, line_no, std::string("bad ") + field + " value '" + text + "'");
    if (!std::isfinite(v))
        bad_line(what, line_no, std::string(field) + " is not finite");
    return v;
}

long parse_field_int(const char* what, int line_no, const std::string& text,
                     const char* field) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != text.size() || text.empty())
        bad_line(what, line_no, std::string("bad ") + field + " value '" + text + "'");
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_dataset_csv(const TrialDataset& data, std::ostream& out) {
    out << "id,z,y1,r,y2\n";
    for (const auto& rec : data.records)
        out << rec.id << ',' << rec.z << ',' << fmt17(rec.y1) << ',' << rec.r
            << ',' << fmt17(rec.y2) << '\n';
}

TrialDataset read_dataset_csv(std::istream& in, double c) {
    const char* what = "dataset";
    std::string line;
    if (!std::getline(in, line))
        throw validation_error("dataset: empty file");
    if (strip_cr(line) != "id,z,y1,r,y2")
        throw validation_error(
            "dataset line 1: expected header 'id,z,y1,r,y2', got '" +
            strip_cr(line) + "'");

    TrialDataset data;
    data.scenario_c = c;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5)
            bad_line(what, line_no,
                     "expected 5 fields, got " + std::to_string(fields.size()));
        SubjectRecord rec;
        rec.id = static_cast<int>(parse_field_int(what, line_no, fields[0], "id"));
        const long z = parse_field_int(what, line_no, fields[1], "z");
        if (z != 0 && z != 1) bad_line(what, line_no, "z must be 0 or 1");
        rec.z = static_cast<int>(z);
        rec.y1 = parse_field_double(what, line_no, fields[2], "y1");
        const long r = parse_field_int(what, line_no, fields[3], "r");
        if (r != 0 && r != 1) bad_line(what, line_no, "r must be 0 or 1");
        rec.r = static_cast<int>(r);
        rec.y2 = parse_field_double(what, line_no, fields[4], "y2");
        data.records.push_back(rec);
    }
    if (data.records.empty())
        throw validation_error("dataset: no data rows");
    return data;
}

StrataTable read_strata_csv(std::istream& in) {
    const char* what = "strata";
    std::string line;
    if (!std::getline(in, line))
        throw validation_error("strata: empty file");
    if (strip_cr(line) != "stratum,proportion,mean_control,mean_treatment")
        throw validation_error(
            "strata line 1: expected header "
            "'stratum,proportion,mean_control,mean_treatment'");

    StrataTable table;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            bad_line(what, line_no,
                     "expected 4 fields, got " + std::to_string(fields.size()));
        StrataRow row;
        row.stratum = fields[0];
        row.proportion = parse_field_double(what, line_no, fields[1], "proportion");
        row.mean_control =
            parse_field_double(what, line_no, fields[2], "mean_control");
        row.mean_treatment =
            parse_field_double(what, line_no, fields[3], "mean_treatment");
        table.rows.push_back(row);
    }
    try {
        table.validate();
    } catch (const domain_error& e) {
        throw validation_error(e.what());
    }
    return table;
}

namespace {

std::string stat_mean(const SummaryStat& s) { return format_double(s.mean); }

std::string stat_sd(const SummaryStat& s) {
    return s.sd.has_value() ? format_double(*s.sd) : std::string("NA");
}

const char* mode_name(EstimateMode mode) {
    return mode == EstimateMode::oracle ? "oracle" : "plug_in";
}

} // namespace

void write_summaries(const std::vector<McSummary>& rows, TableFormat format,
                     std::ostream& out) {
    static const char* kCols[] = {
        "row",       "mode",        "replicates", "used",       "failures",
        "itt_mean",  "itt_sd",      "cond_mean",  "cond_sd",    "corr_mean",
        "corr_sd",   "s12_z0_mean", "s12_z0_sd",  "s12_z1_mean", "s12_z1_sd",
        "g12_z0_mean", "g12_z0_sd", "g12_z1_mean", "g12_z1_sd",
        "mu2_z0_mean", "mu2_z0_sd", "mu2_z1_mean", "mu2_z1_sd",
    };
    constexpr int kNumCols = static_cast<int>(sizeof kCols / sizeof *kCols);

    const char* sep = (format == TableFormat::csv) ? "," : " | ";
    auto emit_row = [&](const std::vector<std::string>& cells) {
        if (format == TableFormat::md) out << "| ";
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << sep;
            out << cells[i];
        }
        if (format == TableFormat::md) out << " |";
        out << '\n';
    };

    emit_row(std::vector<std::string>(kCols, kCols + kNumCols));
    if (format == TableFormat::md) {
        std::vector<std::string> dashes(kNumCols, "---");
        emit_row(dashes);
    }

    int row_no = 0;
    for (const auto& s : rows) {
        ++row_no;
        std::vector<std::string> cells = {
            std::to_string(row_no),
            mode_name(s.mode),
            std::to_string(s.replicates_requested),
            std::to_string(s.replicates_used),
            std::to_string(s.failure_count),
            stat_mean(s.itt), stat_sd(s.itt),
            stat_mean(s.conditional), stat_sd(s.conditional),
            stat_mean(s.corrected), stat_sd(s.corrected),
            stat_mean(s.sigma12_hat[0]), stat_sd(s.sigma12_hat[0]),
            stat_mean(s.sigma12_hat[1]), stat_sd(s.sigma12_hat[1]),
            stat_mean(s.gamma12_hat[0]), stat_sd(s.gamma12_hat[0]),
            stat_mean(s.gamma12_hat[1]), stat_sd(s.gamma12_hat[1]),
            stat_mean(s.mu2_hat[0]), stat_sd(s.mu2_hat[0]),
            stat_mean(s.mu2_hat[1]), stat_sd(s.mu2_hat[1]),
        };
        emit_row(cells);
    }
}

void write_estimate_report(const EstimateSet& est,
                           const std::array<ArmMoments, 2>& moments,
                           double c, std::ostream& out) {
    out << "threshold c = " << format_double(c) << "\n";
    out << "mode: " << mode_name(est.mode) << "\n\n";
    for (int z = 0; z < 2; ++z) {
        const ArmMoments& m = moments[z];
        const double rescue_rate =
            static_cast<double>(m.n - m.n_norescue) / static_cast<double>(m.n);
        const double den =
            1.0 + m.lambda_hat * (m.eta_hat - m.lambda_hat);
        out << "arm z=" << z << ": n = " << m.n
            << ", non-rescued = " << m.n_norescue
            << ", rescue rate = " << format_double(rescue_rate) << "\n";
        out << "  mean_y1 = " << format_double(m.mean_y1)
            << ", sd_y1 = " << format_double(m.sd_y1)
            << ", eta_hat = " << format_double(m.eta_hat)
            << ", lambda_hat = " << format_double(m.lambda_hat) << "\n";
        out << "  sigma12 = " << format_double(est.sigma12_hat_by_arm[z])
            << ", gamma12 = " << format_double(est.gamma12_hat_by_arm[z])
            << ", denominator = " << format_double(den)
            << ", mu2_hat(z,0) = " << format_double(est.mu2_hat_by_arm[z])
            << "\n";
        if (m.n_norescue < 10)
            out << "  warning: fewer than 10 non-rescued subjects; the "
                   "correction is unstable\n";
        if (rescue_rate > 0.95)
            out << "  warning: non-rescued fraction below 5%; estimates in "
                   "this arm may be inaccurate\n";
    }
    out << "\nestimates:\n";
    out << "  itt         = " << format_double(est.itt) << "\n";
    out << "  conditional = " << format_double(est.conditional) << "\n";
    out << "  corrected   = " << format_double(est.corrected) << "\n";
}

} // namespace rescuefx
