#pragma once

#include <string>

#include "wfx/cli/csv.hpp"

namespace wfx::cli {

// built-in grids; see README for the column schemas
CsvTable figure_table(int id, int threads);
std::string figure_filename(int id);  // figure<id>.csv

// returns the written path
std::string write_figure(int id, const std::string& out_dir, int threads);

}  // namespace wfx::cli
