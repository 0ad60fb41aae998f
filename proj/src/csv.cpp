#include "hidim/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "hidim/errors.hpp"

namespace hidim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  std::string_view text = trim(cell);
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    std::ostringstream msg;
    msg << "non-numeric cell '" << trim(cell) << "' at line " << line << ", column "
        << column;
    throw DataError(msg.str());
  }
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "non-finite cell '" << trim(cell) << "' at line " << line << ", column "
        << column;
    throw DataError(msg.str());
  }
  return value;
}

} // namespace

DataMatrix parse_csv(std::string_view text, const CsvLayout &layout) {
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool header_pending = layout.has_header;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    std::size_t column = 1;
    while (true) {
      const auto cut = line.find(layout.delimiter, start);
      row.push_back(parse_cell(line.substr(start, cut == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : cut - start),
                               line_no, column));
      if (cut == std::string_view::npos) {
        break;
      }
      start = cut + 1;
      ++column;
    }
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      std::ostringstream msg;
      msg << "ragged rows: line " << line_no << " has " << row.size()
          << " cells, expected " << width;
      throw DataError(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw DataError("no data rows found");
  }

  const auto count = static_cast<Eigen::Index>(rows.size());
  const auto cols = static_cast<Eigen::Index>(width);
  Eigen::MatrixXd table(count, cols);
  for (Eigen::Index r = 0; r < count; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      table(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  if (layout.orientation == CsvLayout::Orientation::rows_are_observations) {
    return DataMatrix(table.transpose());
  }
  return DataMatrix(std::move(table));
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

DataMatrix read_csv(const std::filesystem::path &path, const CsvLayout &layout) {
  return parse_csv(read_text_file(path), layout);
}

std::string write_csv(const DataMatrix &data, const CsvLayout &layout) {
  const Eigen::MatrixXd table =
      layout.orientation == CsvLayout::Orientation::rows_are_observations
          ? Eigen::MatrixXd(data.values().transpose())
          : data.values();
  std::string out;
  if (layout.has_header) {
    for (Eigen::Index c = 0; c < table.cols(); ++c) {
      if (c > 0) {
        out += layout.delimiter;
      }
      out += "v" + std::to_string(c + 1);
    }
    out += '\n';
  }
  char buffer[64];
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.cols(); ++c) {
      if (c > 0) {
        out += layout.delimiter;
      }
      const auto result = std::to_chars(buffer, buffer + sizeof(buffer), table(r, c));
      out.append(buffer, result.ptr);
    }
    out += '\n';
  }
  return out;
}

} // namespace hidim
