#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace wfx::cli {

// scientific, 12 significant digits; NaN becomes an empty field
std::string fmt(double x);

struct ResultRecord {
    std::string scenario;
    std::size_t point = 0;  // grid point index
    static constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    double g = nan, delta_phi = nan, strong_n = nan, source_n = nan;
    int order = -1;  // expansion order, chi_t power or l; -1 when unused
    std::string method, observable;
    double value_re = 0.0, value_im = 0.0;
    double leakage = 0.0;
    double error_vs_oracle = nan;
};

inline const char* record_header =
    "scenario,point,g,delta_phi,strong_n,source_n,order,method,observable,value_re,value_im,leakage,error_vs_oracle";

std::string records_csv(const std::vector<ResultRecord>& rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string str() const;
};

// writes next to the target and renames, so readers never see a partial file
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace wfx::cli
