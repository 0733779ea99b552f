#include "discmodes/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "discmodes/errors.hpp"

namespace discmodes {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    if (name == "plot_columns") return OutputFormat::plot_columns;
    throw DomainError("unknown output format: " + name);
}

const char* to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
        case OutputFormat::plot_columns: return "plot_columns";
    }
    return "?";
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%#.17g", v);
    return buf;
}

namespace {

std::string join_modes(const std::vector<long>& modes) {
    std::string s;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(modes[i]);
    }
    return s;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    q += '"';
    return q;
}

constexpr const char* kCsvHeader =
    "f56,ft56,ft3,ftp,ftm,sign,branch,convention,window_lower,window_upper,"
    "modes,degenerate,ftp_zero,checked,agree,max_residual,note";

Sign parse_sign(const std::string& s) {
    if (s == "plus") return Sign::plus;
    if (s == "minus") return Sign::minus;
    throw IoError("bad sign value: " + s);
}

Branch parse_branch(const std::string& s) {
    if (s == "A") return Branch::A;
    if (s == "B") return Branch::B;
    throw IoError("bad branch value: " + s);
}

WindowConvention parse_convention(const std::string& s) {
    if (s == "paper_literal") return WindowConvention::paper_literal;
    if (s == "shifted_index") return WindowConvention::shifted_index;
    throw IoError("bad convention value: " + s);
}

}  // namespace

void write_records_csv(const std::vector<ScanRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const ScanRecord& r : records) {
        out << format_float(r.f56) << ',' << format_float(r.ft56) << ','
            << format_float(r.ft3) << ',' << format_float(r.ftp) << ','
            << format_float(r.ftm) << ',' << to_string(r.sign) << ',' << to_string(r.branch)
            << ',' << to_string(r.convention) << ',' << format_float(r.window_lower) << ','
            << format_float(r.window_upper) << ',' << join_modes(r.modes) << ','
            << (r.degenerate ? 1 : 0) << ',' << (r.ftp_zero ? 1 : 0) << ','
            << (r.checked ? 1 : 0) << ',' << (r.agree ? 1 : 0) << ','
            << format_float(r.max_residual) << ',' << csv_escape(r.note) << '\n';
    }
    if (!out) throw IoError("csv write failed");
}

namespace {

json record_to_json(const ScanRecord& r) {
    return json{{"f56", r.f56},
                {"ft56", r.ft56},
                {"ft3", r.ft3},
                {"ftp", r.ftp},
                {"ftm", r.ftm},
                {"sign", to_string(r.sign)},
                {"branch", to_string(r.branch)},
                {"convention", to_string(r.convention)},
                {"window_lower", r.window_lower},
                {"window_upper", r.window_upper},
                {"modes", r.modes},
                {"degenerate", r.degenerate},
                {"ftp_zero", r.ftp_zero},
                {"checked", r.checked},
                {"agree", r.agree},
                {"max_residual", r.max_residual},
                {"note", r.note}};
}

ScanRecord record_from_json(const json& j) {
    ScanRecord r;
    r.f56 = j.at("f56").get<double>();
    r.ft56 = j.at("ft56").get<double>();
    r.ft3 = j.at("ft3").get<double>();
    r.ftp = j.at("ftp").get<double>();
    r.ftm = j.at("ftm").get<double>();
    r.sign = parse_sign(j.at("sign").get<std::string>());
    r.branch = parse_branch(j.at("branch").get<std::string>());
    r.convention = parse_convention(j.at("convention").get<std::string>());
    r.window_lower = j.at("window_lower").get<double>();
    r.window_upper = j.at("window_upper").get<double>();
    r.modes = j.at("modes").get<std::vector<long>>();
    r.degenerate = j.at("degenerate").get<bool>();
    r.ftp_zero = j.at("ftp_zero").get<bool>();
    r.checked = j.at("checked").get<bool>();
    r.agree = j.at("agree").get<bool>();
    r.max_residual = j.at("max_residual").get<double>();
    r.note = j.at("note").get<std::string>();
    return r;
}

}  // namespace

void write_records_json(const std::vector<ScanRecord>& records, std::ostream& out) {
    json arr = json::array();
    for (const ScanRecord& r : records) arr.push_back(record_to_json(r));
    out << arr.dump(2) << '\n';
    if (!out) throw IoError("json write failed");
}

std::vector<ScanRecord> read_records_json(std::istream& in) {
    json arr;
    try {
        in >> arr;
    } catch (const json::exception& e) {
        throw IoError(std::string("json parse failed: ") + e.what());
    }
    if (!arr.is_array()) throw IoError("json records: expected an array");
    std::vector<ScanRecord> records;
    records.reserve(arr.size());
    try {
        for (const json& j : arr) records.push_back(record_from_json(j));
    } catch (const json::exception& e) {
        throw IoError(std::string("json records: ") + e.what());
    }
    return records;
}

void write_records(const std::vector<ScanRecord>& records, OutputFormat format,
                   std::ostream& out) {
    switch (format) {
        case OutputFormat::csv: write_records_csv(records, out); return;
        case OutputFormat::json: write_records_json(records, out); return;
        case OutputFormat::plot_columns:
            throw IoError("plot_columns applies to radial series, not scan records");
    }
}

void write_records(const std::vector<ScanRecord>& records, OutputFormat format,
                   const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_records(records, format, out);
}

void write_series(const RadialSeries& series, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::plot_columns:
            for (const auto& [rho, value] : series)
                out << format_float(rho) << ' ' << format_float(value) << '\n';
            break;
        case OutputFormat::csv:
            out << "rho,value\n";
            for (const auto& [rho, value] : series)
                out << format_float(rho) << ',' << format_float(value) << '\n';
            break;
        case OutputFormat::json: {
            json arr = json::array();
            for (const auto& [rho, value] : series)
                arr.push_back(json{{"rho", rho}, {"value", value}});
            out << arr.dump(2) << '\n';
            break;
        }
    }
    if (!out) throw IoError("series write failed");
}

}  // namespace discmodes
