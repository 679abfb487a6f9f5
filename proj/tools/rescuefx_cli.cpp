#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rescuefx/bootstrap.hpp"
#include "rescuefx/datagen.hpp"
#include "rescuefx/errors.hpp"
#include "rescuefx/estimators.hpp"
#include "rescuefx/io.hpp"
#include "rescuefx/mc_harness.hpp"
#include "rescuefx/model.hpp"

namespace {

using namespace rescuefx;

// exit codes: 0 ok, 1 usage, 2 validation, 3 degeneracy, 4 io
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDegeneracy = 3;
constexpr int kExitIo = 4;

struct GlobalOpts {
    std::uint64_t seed = 1;
    long replicates = 10000;
    int threads = 1;
    std::string out_path;  // empty = stdout
    TableFormat format = TableFormat::md;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    return in;
}

void deliver(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        if (!std::cout) throw io_error("write to stdout failed");
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) throw io_error("cannot open '" + g.out_path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw io_error("write to '" + g.out_path + "' failed");
}

TrialDataset load_validated_dataset(const std::string& path, double c) {
    auto in = open_input(path);
    TrialDataset data = read_dataset_csv(in, c);
    const ValidationReport report = validate_dataset(data);
    if (!report.ok()) {
        std::string msg = "dataset '" + path + "' failed validation:";
        for (const auto& issue : report.issues) msg += "\n  - " + issue;
        throw validation_error(msg);
    }
    return data;
}

int run(int argc, char** argv) {
    CLI::App app{"biological-effect estimation for two-visit trials with a "
                 "deterministic rescue rule"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
    app.add_option("--replicates", g.replicates, "Monte Carlo replicates")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")
        ->capture_default_str();
    app.add_option("--out", g.out_path, "write output to this file (default stdout)");
    std::map<std::string, TableFormat> format_names{
        {"csv", TableFormat::csv}, {"md", TableFormat::md}};
    app.add_option("--format", g.format, "table format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
        ->default_str("md");

    auto* cmd_reproduce =
        app.add_subcommand("reproduce", "rerun a built-in reference grid");
    std::string which_table;
    cmd_reproduce->add_option("table", which_table, "table2 (oracle) or table3 (plug-in)")
        ->required()
        ->check(CLI::IsMember({"table2", "table3"}));

    auto* cmd_simulate =
        app.add_subcommand("simulate", "Monte Carlo summary of a scenario file");
    std::string scenario_path, emit_dataset_path, mode_name = "plug_in";
    cmd_simulate->add_option("--scenario", scenario_path, "scenario key=value file")
        ->required();
    cmd_simulate->add_option("--mode", mode_name, "plug_in or oracle")
        ->check(CLI::IsMember({"plug_in", "oracle"}))
        ->capture_default_str();
    cmd_simulate->add_option("--emit-dataset", emit_dataset_path,
                             "also write the first replicate's dataset CSV here");

    auto* cmd_estimate =
        app.add_subcommand("estimate", "corrected estimate on a dataset CSV");
    std::string data_path;
    double threshold_c = 0.0;
    long resamples = 2000;
    double level = 0.95;
    cmd_estimate->add_option("--data", data_path, "dataset CSV")->required();
    cmd_estimate->add_option("--c", threshold_c, "rescue threshold")->required();

    auto* cmd_bootstrap =
        app.add_subcommand("bootstrap", "bootstrap SE and percentile interval");
    cmd_bootstrap->add_option("--data", data_path, "dataset CSV")->required();
    cmd_bootstrap->add_option("--c", threshold_c, "rescue threshold")->required();
    cmd_bootstrap->add_option("--resamples", resamples, "bootstrap resamples")
        ->capture_default_str();
    cmd_bootstrap->add_option("--level", level, "interval level")
        ->capture_default_str();

    auto* cmd_strata =
        app.add_subcommand("strata", "principal-strata effects from a table");
    std::string strata_path;
    cmd_strata->add_option("--table", strata_path, "strata CSV")->required();

    auto* cmd_validate =
        app.add_subcommand("validate", "structural checks on a dataset CSV");
    cmd_validate->add_option("--data", data_path, "dataset CSV")->required();
    cmd_validate->add_option("--c", threshold_c, "rescue threshold")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::cerr << "# seed = " << g.seed << "\n";

    if (g.threads < 1) {
        std::cerr << "error: --threads must be >= 1\n";
        return kExitUsage;
    }

    if (cmd_reproduce->parsed()) {
        if (g.replicates != 10000)
            std::cerr << "warning: the reference grids were run with "
                         "--replicates 10000; comparisons at other counts "
                         "carry different Monte Carlo error\n";
        const bool is_table2 = (which_table == "table2");
        const auto grid = is_table2 ? table2_grid() : table3_grid();
        const auto mode =
            is_table2 ? EstimateMode::oracle : EstimateMode::plug_in;
        const auto rows =
            run_table(grid, g.replicates, g.seed, mode, g.threads);
        std::ostringstream os;
        write_summaries(rows, g.format, os);
        deliver(g, os.str());
        return kExitOk;
    }

    if (cmd_simulate->parsed()) {
        auto in = open_input(scenario_path);
        const ScenarioParams p = params_from_kv(in);
        const auto mode = (mode_name == "oracle") ? EstimateMode::oracle
                                                  : EstimateMode::plug_in;
        const McSummary summary =
            run_scenario(p, g.replicates, g.seed, mode, g.threads);
        if (!emit_dataset_path.empty()) {
            std::ofstream out(emit_dataset_path);
            if (!out)
                throw io_error("cannot open '" + emit_dataset_path +
                               "' for writing");
            write_dataset_csv(generate_trial(p, g.seed, 0), out);
            if (!out) throw io_error("write to '" + emit_dataset_path + "' failed");
        }
        std::ostringstream os;
        write_summaries({summary}, g.format, os);
        deliver(g, os.str());
        return kExitOk;
    }

    if (cmd_estimate->parsed()) {
        const TrialDataset data = load_validated_dataset(data_path, threshold_c);
        const auto moments = compute_arm_moments(data, threshold_c);
        const EstimateSet est =
            estimate_corrected(data, threshold_c, EstimateMode::plug_in);
        std::ostringstream os;
        write_estimate_report(est, moments, threshold_c, os);
        deliver(g, os.str());
        return kExitOk;
    }

    if (cmd_bootstrap->parsed()) {
        const TrialDataset data = load_validated_dataset(data_path, threshold_c);
        const BootstrapResult res = bootstrap_corrected(
            data, threshold_c, resamples, g.seed, level, g.threads);
        std::ostringstream os;
        os << "point_estimate = " << format_double(res.point_estimate) << "\n"
           << "se = " << format_double(res.se) << "\n"
           << "resamples = " << res.resamples << "\n"
           << "failures = " << res.failure_count << "\n"
           << "interval_level = " << format_double(res.level) << "\n"
           << "interval = [" << format_double(res.lo) << ", "
           << format_double(res.hi) << "]\n";
        deliver(g, os.str());
        return kExitOk;
    }

    if (cmd_strata->parsed()) {
        auto in = open_input(strata_path);
        const StrataTable table = read_strata_csv(in);
        const StrataEffects eff = strata_effects(table);
        std::ostringstream os;
        for (std::size_t i = 0; i < table.rows.size(); ++i)
            os << "stratum " << table.rows[i].stratum
               << ": proportion = " << format_double(table.rows[i].proportion)
               << ", effect = " << format_double(eff.per_stratum[i]) << "\n";
        os << "itt_effect = " << format_double(eff.itt_effect) << "\n";
        os << "stratum00_effect = "
           << (eff.stratum00_effect.has_value()
                   ? format_double(*eff.stratum00_effect)
                   : std::string("absent"))
           << "\n";
        deliver(g, os.str());
        return kExitOk;
    }

    if (cmd_validate->parsed()) {
        auto in = open_input(data_path);
        const TrialDataset data = read_dataset_csv(in, threshold_c);
        const ValidationReport report = validate_dataset(data);
        std::ostringstream os;
        if (report.ok()) {
            os << "ok: " << data.records.size() << " records\n";
            deliver(g, os.str());
            return kExitOk;
        }
        for (const auto& issue : report.issues) os << "issue: " << issue << "\n";
        deliver(g, os.str());
        return kExitValidation;
    }

    return kExitUsage;  // unreachable: require_subcommand(1)
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const degeneracy_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegeneracy;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitUsage;
    }
}
