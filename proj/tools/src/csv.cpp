#include "rombox/harness/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "rombox/detail/binary_io.hpp"
#include "rombox/error.hpp"

namespace rombox::harness {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) {
    throw Error(ErrorCode::dimension, "CSV row has " + std::to_string(row.size()) +
                                          " cells, header has " + std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        out << *s;
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        out << format_real(*d);
      } else {
        out << std::get<long long>(row[i]);
      }
    }
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  const std::string text = str();
  detail::write_file(path, std::vector<char>(text.begin(), text.end()));
}

std::size_t CsvData::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::format, "CSV column '" + name + "' not found");
}

CsvData parse_csv(const std::string& text, const std::string& source) {
  CsvData data;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (data.header.empty()) {
      data.header = split(line);
      continue;
    }
    auto cells = split(line);
    if (cells.size() != data.header.size()) {
      throw Error(ErrorCode::format, source + ":" + std::to_string(number) + ": expected " +
                                         std::to_string(data.header.size()) + " cells");
    }
    data.rows.push_back(std::move(cells));
  }
  if (data.header.empty()) throw Error(ErrorCode::format, source + ": empty CSV file");
  return data;
}

CsvData read_csv(const std::string& path) {
  const auto bytes = detail::read_file(path);
  return parse_csv(std::string(bytes.begin(), bytes.end()), path);
}

}  // namespace rombox::harness
