#include "wmsim/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace wmsim {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
    throw ParseError(path + ": " + reason);
}

const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

Complex complex_entry(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vector parse_vector(const json& j, const std::string& path, int dim) {
    if (!j.is_array() || int(j.size()) != dim)
        fail(path, "expected " + std::to_string(dim) + " [re, im] pairs");
    Vector v(dim);
    for (int k = 0; k < dim; ++k)
        v[k] = complex_entry(j[k], path + "[" + std::to_string(k) + "]");
    return v;
}

Matrix parse_matrix(const json& j, const std::string& path, int dim) {
    if (!j.is_array() || int(j.size()) != dim)
        fail(path, "expected " + std::to_string(dim) + " rows");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || int(j[r].size()) != dim)
            fail(rp, "expected " + std::to_string(dim) + " [re, im] pairs");
        for (int c = 0; c < dim; ++c)
            m(r, c) = complex_entry(j[r][c], rp + "[" + std::to_string(c) + "]");
    }
    return m;
}

MeterObservable parse_meter(const json& j, const std::string& path) {
    if (j.is_array()) {
        if (j.size() != 4) fail(path, "custom meter needs 4 integer powers");
        int p[4];
        for (int k = 0; k < 4; ++k)
            p[k] = integer(j[k], path + "[" + std::to_string(k) + "]");
        return MeterObservable::custom(p[0], p[1], p[2], p[3]);
    }
    if (!j.is_string()) fail(path, "expected a meter name or 4-power array");
    const std::string s = j.get<std::string>();
    if (s == "X") return MeterObservable::x();
    if (s == "Y") return MeterObservable::y();
    if (s == "X2") return MeterObservable::x2();
    if (s == "Y2") return MeterObservable::y2();
    if (s == "XY") return MeterObservable::xy();
    if (s == "XPy") return MeterObservable::x_py();
    if (s == "YPx") return MeterObservable::y_px();
    if (s == "SymXPx") return MeterObservable::sym_x_px();
    if (s == "PX2") return MeterObservable::px2();
    if (s == "PY2") return MeterObservable::py2();
    fail(path, "unknown meter '" + s + "'");
}

Method parse_method(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a method name");
    const std::string s = j.get<std::string>();
    if (s == "closed_form") return Method::ClosedForm;
    if (s == "perturbative") return Method::Perturbative;
    if (s == "exact") return Method::Exact;
    if (s == "brute_force") return Method::BruteForce;
    fail(path, "unknown method '" + s + "'");
}

json meter_to_json(const MeterObservable& m) {
    if (m.kind == MeterObservable::Kind::Custom)
        return json::array({m.powers[0], m.powers[1], m.powers[2], m.powers[3]});
    return m.name();
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json scenario_to_json(const Scenario& sc) {
    json sys;
    sys["dim"] = sc.a.dim();
    auto mat = [](const Matrix& m) {
        json rows = json::array();
        for (int r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
            rows.push_back(row);
        }
        return rows;
    };
    auto vec = [](const Vector& v) {
        json out = json::array();
        for (int k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v[k]));
        return out;
    };
    sys["a"] = mat(sc.a.matrix());
    sys["b"] = mat(sc.b.matrix());
    sys["pre"] = vec(sc.sel.pre);
    sys["post"] = vec(sc.sel.post);

    json pointer;
    pointer["dims"] = sc.pointer.dims;
    pointer["l"] = sc.pointer.l;
    pointer["sigma"] = sc.pointer.sigma;
    pointer["grid_points"] = sc.pointer.grid_points;
    pointer["grid_extent"] = sc.pointer.grid_extent;

    json coupling;
    if (sc.coupling.kind == CouplingSpec::Kind::TranslationXY) {
        coupling["kind"] = "translation_xy";
        coupling["g"] = sc.coupling.g;
    } else {
        coupling["kind"] = "phase_space_1d";
        coupling["g_a"] = sc.coupling.g_a;
        coupling["g_b"] = sc.coupling.g_b;
    }

    json reads = json::array();
    for (const auto& r : sc.readouts) {
        json jr;
        jr["meter"] = meter_to_json(r.meter);
        jr["method"] = method_name(r.method);
        if (r.method == Method::ClosedForm)
            jr["normalize_closed_form"] = r.normalize_closed_form;
        reads.push_back(jr);
    }

    json root;
    root["system"] = sys;
    root["pointer"] = pointer;
    root["coupling"] = coupling;
    root["readouts"] = reads;
    return root;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
    }

    const json& sys = field(root, "scenario", "system");
    const int dim = integer(field(sys, "system", "dim"), "system.dim");
    if (dim < 2) fail("system.dim", "dim must be >= 2");

    Matrix ma = parse_matrix(field(sys, "system", "a"), "system.a", dim);
    Matrix mb = parse_matrix(field(sys, "system", "b"), "system.b", dim);
    Vector pre = parse_vector(field(sys, "system", "pre"), "system.pre", dim);
    Vector post = parse_vector(field(sys, "system", "post"), "system.post", dim);

    auto observable = [](Matrix m, const char* path) {
        try {
            return Observable(std::move(m));
        } catch (const Error& e) {
            fail(path, e.what());
        }
    };
    Observable a = observable(std::move(ma), "system.a");
    Observable b = observable(std::move(mb), "system.b");
    SelectionPair sel = [&] {
        try {
            return SelectionPair(std::move(pre), std::move(post));
        } catch (const Error& e) {
            fail("system.pre/post", e.what());
        }
    }();

    Scenario sc(std::move(a), std::move(b), std::move(sel));

    const json& jp = field(root, "scenario", "pointer");
    sc.pointer.dims = integer(field(jp, "pointer", "dims"), "pointer.dims");
    sc.pointer.l = integer(field(jp, "pointer", "l"), "pointer.l");
    sc.pointer.sigma = number(field(jp, "pointer", "sigma"), "pointer.sigma");
    sc.pointer.grid_points =
        integer(field(jp, "pointer", "grid_points"), "pointer.grid_points");
    sc.pointer.grid_extent =
        number(field(jp, "pointer", "grid_extent"), "pointer.grid_extent");
    try {
        sc.pointer.validate();
    } catch (const Error& e) {
        fail("pointer", e.what());
    }

    const json& jc = field(root, "scenario", "coupling");
    const json& jkind = field(jc, "coupling", "kind");
    if (!jkind.is_string()) fail("coupling.kind", "expected a string");
    const std::string kind = jkind.get<std::string>();
    if (kind == "translation_xy") {
        sc.coupling =
            CouplingSpec::translation_xy(number(field(jc, "coupling", "g"), "coupling.g"));
    } else if (kind == "phase_space_1d") {
        sc.coupling = CouplingSpec::phase_space_1d(
            number(field(jc, "coupling", "g_a"), "coupling.g_a"),
            number(field(jc, "coupling", "g_b"), "coupling.g_b"));
    } else {
        fail("coupling.kind", "unknown kind '" + kind + "'");
    }

    const json& jr = field(root, "scenario", "readouts");
    if (!jr.is_array() || jr.empty()) fail("readouts", "expected a non-empty array");
    for (size_t i = 0; i < jr.size(); ++i) {
        const std::string path = "readouts[" + std::to_string(i) + "]";
        ReadoutRequest req;
        req.meter = parse_meter(field(jr[i], path, "meter"), path + ".meter");
        req.method = parse_method(field(jr[i], path, "method"), path + ".method");
        if (jr[i].contains("normalize_closed_form")) {
            const json& nf = jr[i]["normalize_closed_form"];
            if (!nf.is_boolean()) fail(path + ".normalize_closed_form", "expected a bool");
            req.normalize_closed_form = nf.get<bool>();
        }
        sc.readouts.push_back(req);
    }

    sc.seed = fnv1a64(scenario_to_json(sc).dump());
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

ResultRecord run_scenario(const Scenario& sc) {
    ResultRecord rec;
    rec.scenario_echo = scenario_to_json(sc).dump();
    rec.weak_values = weak_value_set(sc.a, sc.b, sc.sel);

    for (const auto& req : sc.readouts) {
        const MeterReading r =
            readout(sc.a, sc.b, sc.sel, sc.pointer, sc.coupling, req, sc.seed);
        ReadingRow row;
        row.meter = meter_to_json(req.meter).is_string()
                        ? std::string(req.meter.name())
                        : meter_to_json(req.meter).dump();
        row.method = req.method;
        row.value = r.value;
        row.w = r.w;
        rec.readings.push_back(row);
    }

    // Same-meter |delta| against the exact reading, where one exists.
    for (auto& row : rec.readings) {
        if (row.method == Method::Exact) continue;
        for (const auto& ex : rec.readings)
            if (ex.method == Method::Exact && ex.meter == row.meter)
                row.abs_delta_vs_exact = std::abs(row.value - ex.value);
    }
    return rec;
}

namespace {

int max_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* cap = std::getenv("WMSIM_MAX_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1 && v < long(hw)) hw = unsigned(v);
    }
    return int(hw);
}

Scenario with_param(const Scenario& sc, const std::string& param, double v) {
    Scenario out = sc;
    if (param == "g") {
        if (out.coupling.kind != CouplingSpec::Kind::TranslationXY)
            throw ParseError("scan: param 'g' needs the translation coupling");
        out.coupling.g = v;
    } else if (param == "g_a" || param == "g_b") {
        if (out.coupling.kind != CouplingSpec::Kind::PhaseSpace1D)
            throw ParseError("scan: param '" + param + "' needs the phase-space coupling");
        (param == "g_a" ? out.coupling.g_a : out.coupling.g_b) = v;
    } else if (param == "l") {
        const double r = std::round(v);
        if (std::abs(v - r) > 0.0)
            throw ParseError("scan: param 'l' takes integer values");
        out.pointer.l = int(r);
        out.pointer.validate();
    } else if (param == "sigma") {
        out.pointer.sigma = v;
        out.pointer.validate();
    } else {
        throw ParseError("scan: unknown param '" + param + "'");
    }
    return out;
}

}  // namespace

ScanResult scan_scenario(const Scenario& sc, const std::string& param,
                         const std::vector<double>& values) {
    if (values.empty()) throw ParseError("scan: empty values list");
    with_param(sc, param, values.front());  // validate applicability up front

    ScanResult out;
    out.param = param;
    out.values = values;
    out.rows.resize(values.size());

    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(values.size());
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < values.size();
             i = next.fetch_add(1)) {
            try {
                out.rows[i] = run_scenario(with_param(sc, param, values[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int nw = std::min<int>(max_workers(), int(values.size()));
    std::vector<std::thread> threads;
    for (int t = 0; t < nw; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    // Fitted log-log slope of |method - exact| for strength scans.
    const bool strength = param == "g" || param == "g_a" || param == "g_b";
    if (strength && values.size() >= 2) {
        for (const auto& probe : out.rows.front().readings) {
            if (probe.method == Method::Exact || !probe.abs_delta_vs_exact)
                continue;
            std::vector<double> lx, ly;
            for (size_t i = 0; i < values.size(); ++i) {
                for (const auto& row : out.rows[i].readings)
                    if (row.meter == probe.meter && row.method == probe.method &&
                        row.abs_delta_vs_exact && *row.abs_delta_vs_exact > 0 &&
                        values[i] > 0) {
                        lx.push_back(std::log(values[i]));
                        ly.push_back(std::log(*row.abs_delta_vs_exact));
                    }
            }
            if (lx.size() < 2) continue;
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (size_t i = 0; i < lx.size(); ++i) {
                sx += lx[i];
                sy += ly[i];
                sxx += lx[i] * lx[i];
                sxy += lx[i] * ly[i];
            }
            const double n = double(lx.size());
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            out.slopes.push_back({probe.meter, probe.method, slope});
        }
    }
    return out;
}

namespace {

json reading_to_json(const ReadingRow& r) {
    json j;
    j["meter"] = r.meter;
    j["method"] = method_name(r.method);
    j["value"] = r.value;
    j["w"] = r.w;
    if (r.abs_delta_vs_exact) j["abs_delta_vs_exact"] = *r.abs_delta_vs_exact;
    return j;
}

json record_to_json(const ResultRecord& rec) {
    json j;
    j["schema_version"] = rec.schema_version;
    j["scenario"] = json::parse(rec.scenario_echo);
    json wv;
    wv["a_w"] = complex_to_json(rec.weak_values.a_w);
    wv["b_w"] = complex_to_json(rec.weak_values.b_w);
    wv["a2_w"] = complex_to_json(rec.weak_values.a2_w);
    wv["b2_w"] = complex_to_json(rec.weak_values.b2_w);
    wv["ab_w"] = complex_to_json(rec.weak_values.ab_w);
    wv["overlap"] = complex_to_json(rec.weak_values.overlap);
    j["weak_values"] = wv;
    json rows = json::array();
    for (const auto& r : rec.readings) rows.push_back(reading_to_json(r));
    j["readings"] = rows;
    return j;
}

void csv_row(std::ostream& os, const std::optional<double>& param,
             const ReadingRow& r) {
    os.precision(17);
    if (param) os << *param << ',';
    os << r.meter << ',' << method_name(r.method) << ',' << r.value << ','
       << r.w << ',';
    if (r.abs_delta_vs_exact) os << *r.abs_delta_vs_exact;
    os << '\n';
}

}  // namespace

std::string to_json(const ResultRecord& rec) { return record_to_json(rec).dump(2); }

std::string to_csv(const ResultRecord& rec) {
    std::ostringstream os;
    os << "meter,method,value,w,abs_delta_vs_exact\n";
    for (const auto& r : rec.readings) csv_row(os, std::nullopt, r);
    return os.str();
}

std::string to_json(const ScanResult& scan) {
    json j;
    j["schema_version"] = 1;
    j["param"] = scan.param;
    json rows = json::array();
    for (size_t i = 0; i < scan.rows.size(); ++i) {
        json row;
        row["value"] = scan.values[i];
        row["result"] = record_to_json(scan.rows[i]);
        rows.push_back(row);
    }
    j["rows"] = rows;
    json slopes = json::array();
    for (const auto& s : scan.slopes) {
        json e;
        e["meter"] = s.meter;
        e["method"] = method_name(s.method);
        e["loglog_slope"] = s.loglog_slope;
        slopes.push_back(e);
    }
    j["slopes"] = slopes;
    return j.dump(2);
}

std::string to_csv(const ScanResult& scan) {
    std::ostringstream os;
    os << "param_value,meter,method,value,w,abs_delta_vs_exact\n";
    for (size_t i = 0; i < scan.rows.size(); ++i)
        for (const auto& r : scan.rows[i].readings) csv_row(os, scan.values[i], r);
    return os.str();
}

ResultRecord result_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("result: invalid JSON: ") + e.what());
    }
    ResultRecord rec;
    rec.schema_version = j.at("schema_version").get<int>();
    rec.scenario_echo = j.at("scenario").dump();
    auto cx = [](const json& v) { return Complex(v[0].get<double>(), v[1].get<double>()); };
    const json& wv = j.at("weak_values");
    rec.weak_values.a_w = cx(wv.at("a_w"));
    rec.weak_values.b_w = cx(wv.at("b_w"));
    rec.weak_values.a2_w = cx(wv.at("a2_w"));
    rec.weak_values.b2_w = cx(wv.at("b2_w"));
    rec.weak_values.ab_w = cx(wv.at("ab_w"));
    rec.weak_values.overlap = cx(wv.at("overlap"));
    for (const json& r : j.at("readings")) {
        ReadingRow row;
        row.meter = r.at("meter").get<std::string>();
        const std::string m = r.at("method").get<std::string>();
        row.method = m == "closed_form"    ? Method::ClosedForm
                     : m == "perturbative" ? Method::Perturbative
                     : m == "brute_force"  ? Method::BruteForce
                                           : Method::Exact;
        row.value = r.at("value").get<double>();
        row.w = r.at("w").get<double>();
        if (r.contains("abs_delta_vs_exact"))
            row.abs_delta_vs_exact = r.at("abs_delta_vs_exact").get<double>();
        rec.readings.push_back(row);
    }
    return rec;
}

}  // namespace wmsim
