#pragma once

#include <string>
#include <variant>
#include <vector>

namespace rombox::harness {

using CsvCell = std::variant<std::string, double, long long>;

/// Reals are written with 17 significant digits (exact binary64 round trip).
std::string format_real(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<CsvCell> row);
  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

/// Minimal reader for the files written above: header plus string cells.
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws ErrorCode::format when absent.
  std::size_t column(const std::string& name) const;
};

CsvData read_csv(const std::string& path);
CsvData parse_csv(const std::string& text, const std::string& source = "<csv>");

}  // namespace rombox::harness
