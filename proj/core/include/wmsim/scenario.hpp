#pragma once

// Scenario files and result records: strict JSON parsing with field-precise
// errors, readout execution, and parameter scans with cross-method deltas.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmsim/readout.hpp"

namespace wmsim {

struct Scenario {
    Observable a;
    Observable b;
    SelectionPair sel;
    PointerSpec pointer;
    CouplingSpec coupling;
    std::vector<ReadoutRequest> readouts;
    std::uint64_t seed = 0;  // from the scenario text; drives gamma draws

    Scenario(Observable a_, Observable b_, SelectionPair sel_)
        : a(std::move(a_)), b(std::move(b_)), sel(std::move(sel_)) {}
};

struct ReadingRow {
    std::string meter;
    Method method = Method::Exact;
    double value = 0.0;
    double w = 1.0;
    std::optional<double> abs_delta_vs_exact;  // same-meter exact partner
};

struct ResultRecord {
    int schema_version = 1;
    std::string scenario_echo;  // canonical scenario JSON
    WeakValueSet weak_values{};
    std::vector<ReadingRow> readings;
};

struct ScanSlope {
    std::string meter;
    Method method = Method::Exact;
    double loglog_slope = 0.0;
};

struct ScanResult {
    std::string param;
    std::vector<double> values;
    std::vector<ResultRecord> rows;
    std::vector<ScanSlope> slopes;  // |method - exact| vs g, g-scans only
};

std::uint64_t fnv1a64(const std::string& text);

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

ResultRecord run_scenario(const Scenario& sc);

/// One row per value; parallel across rows (WMSIM_MAX_THREADS caps workers),
/// output ordered by input order. Throws ParseError for an inapplicable
/// param or an empty values list.
ScanResult scan_scenario(const Scenario& sc, const std::string& param,
                         const std::vector<double>& values);

std::string to_json(const ResultRecord& rec);
std::string to_csv(const ResultRecord& rec);
std::string to_json(const ScanResult& scan);
std::string to_csv(const ScanResult& scan);

/// Re-read a serialized ResultRecord (round-trip checks and tooling).
ResultRecord result_from_json(const std::string& text);

}  // namespace wmsim
