#ifndef HIDIM_CSV_HPP_
#define HIDIM_CSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "hidim/spectral_core.hpp"

namespace hidim {

struct CsvLayout {
  enum class Orientation { rows_are_observations, columns_are_observations };

  // Statistical convention: one observation per row.
  Orientation orientation = Orientation::rows_are_observations;
  bool has_header = false;
  char delimiter = ',';
};

// Parses delimited text into a p x n DataMatrix. Throws DataError on ragged
// rows, non-numeric or non-finite cells, and empty input; messages carry the
// offending line and column.
DataMatrix parse_csv(std::string_view text, const CsvLayout &layout = {});

// Throws DataError when the file cannot be opened.
DataMatrix read_csv(const std::filesystem::path &path, const CsvLayout &layout = {});
std::string read_text_file(const std::filesystem::path &path);

// Shortest round-trip formatting, so parse_csv(write_csv(m)) == m.
std::string write_csv(const DataMatrix &data, const CsvLayout &layout = {});

} // namespace hidim

#endif // HIDIM_CSV_HPP_
