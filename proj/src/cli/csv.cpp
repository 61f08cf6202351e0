#include "wfx/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace wfx::cli {

std::string fmt(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

namespace {

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

}  // namespace

std::string records_csv(const std::vector<ResultRecord>& rows) {
    std::string out = std::string(record_header) + "\n";
    for (const auto& r : rows) {
        out += quoted(r.scenario) + ',' + std::to_string(r.point) + ',' + fmt(r.g) + ',' + fmt(r.delta_phi) + ',' +
               fmt(r.strong_n) + ',' + fmt(r.source_n) + ',' + (r.order >= 0 ? std::to_string(r.order) : "") + ',' +
               quoted(r.method) + ',' + quoted(r.observable) + ',' + fmt(r.value_re) + ',' + fmt(r.value_im) + ',' +
               fmt(r.leakage) + ',' + fmt(r.error_vs_oracle) + '\n';
    }
    return out;
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + quoted(header[i]);
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::logic_error("csv row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + quoted(row[i]);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, p);
}

}  // namespace wfx::cli
