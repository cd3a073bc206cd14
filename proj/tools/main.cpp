// wmsim command line: scenario runner, parameter scans, acceptance suite.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wmsim/scenario.hpp"
#include "wmsim/validation.hpp"

namespace {

// Exit codes: 0 ok, 1 failed validation criteria, 2 scenario parse error,
// 3 file I/O error, 4 domain error (non-commuting pair, shift too large, ...).
enum ExitCode { kOk = 0, kValidationFailed = 1, kParse = 2, kIo = 3, kDomain = 4 };

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw wmsim::IoError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw wmsim::IoError("failed writing output file '" + path + "'");
}

int run_cmd(const std::string& scenario_path, const std::string& out_path,
            const std::string& format, const std::string& dump_path) {
    const wmsim::Scenario sc = wmsim::load_scenario(scenario_path);
    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        if (!dump) throw wmsim::IoError("cannot open dump file '" + dump_path + "'");
        wmsim::write_wavefunction(dump, wmsim::make_lg_mode(sc.pointer));
    }
    const wmsim::ResultRecord rec = wmsim::run_scenario(sc);
    write_output(format == "csv" ? wmsim::to_csv(rec) : wmsim::to_json(rec),
                 out_path);
    return kOk;
}

int scan_cmd(const std::string& scenario_path, const std::string& param,
             const std::vector<double>& values, const std::string& out_path,
             const std::string& format) {
    const wmsim::Scenario sc = wmsim::load_scenario(scenario_path);
    const wmsim::ScanResult scan = wmsim::scan_scenario(sc, param, values);
    std::string text;
    if (format == "csv") {
        text = wmsim::to_csv(scan);
        for (const auto& s : scan.slopes)
            text += "# loglog_slope," + s.meter + "," +
                    wmsim::method_name(s.method) + "," + std::to_string(s.loglog_slope) +
                    "\n";
    } else {
        text = wmsim::to_json(scan);
    }
    write_output(text, out_path);
    return kOk;
}

int validate_cmd(const std::string& filter) {
    const auto results = wmsim::run_acceptance(filter);
    if (results.empty()) {
        std::cerr << "no criterion matches filter '" << filter << "'\n";
        return kValidationFailed;
    }
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title
                  << ": " << r.detail << "\n";
        all = all && r.passed;
    }
    return all ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-measurement pointer simulator"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, dump_path, param, filter;
    std::string run_format = "json", scan_format = "csv";
    std::vector<double> values;

    auto* run = app.add_subcommand("run", "execute every readout of a scenario");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_path, "output file (default: stdout)");
    run->add_option("--format", run_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--dump", dump_path, "write the initial pointer mode as text");

    auto* scan = app.add_subcommand("scan", "sweep one parameter across values");
    scan->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    scan->add_option("--param", param, "g | l | sigma | g_a | g_b")->required();
    scan->add_option("--values", values, "comma-separated values")
        ->required()
        ->delimiter(',');
    scan->add_option("--out", out_path, "output file (default: stdout)");
    scan->add_option("--format", scan_format, "json|csv (default csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* validate = app.add_subcommand(
        "validate", "run the built-in acceptance suite (WMSIM_MAX_THREADS caps scans)");
    validate->add_option("--filter", filter, "criterion id prefix, e.g. A3");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_cmd(scenario_path, out_path, run_format, dump_path);
        if (scan->parsed()) return scan_cmd(scenario_path, param, values, out_path, scan_format);
        return validate_cmd(filter);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const wmsim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const wmsim::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const wmsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
}
