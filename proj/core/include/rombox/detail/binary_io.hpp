#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rombox::detail {

// Little-endian writer/reader used by the RSNP and RPOD formats. The reader
// reports the byte offset of the first failure.
class ByteWriter {
 public:
  void bytes(std::string_view raw);
  void u8(std::uint8_t value);
  void u32(std::uint32_t value);
  void f64(double value);
  void f64s(std::span<const double> values);

  const std::vector<char>& buffer() const noexcept { return buffer_; }

 private:
  std::vector<char> buffer_;
};

class ByteReader {
 public:
  /// `format` names the file kind in error messages (e.g. "RSNP").
  ByteReader(std::vector<char> data, std::string format);

  void expect_magic(std::string_view magic);
  std::uint8_t u8(std::string_view field);
  std::uint32_t u32(std::string_view field);
  double f64(std::string_view field);
  void f64s(std::span<double> out, std::string_view field);

  std::size_t offset() const noexcept { return offset_; }
  std::size_t remaining() const noexcept { return data_.size() - offset_; }
  void expect_end();

 private:
  void require(std::size_t count, std::string_view field);

  std::vector<char> data_;
  std::string format_;
  std::size_t offset_ = 0;
};

std::vector<char> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<char>& data);

}  // namespace rombox::detail
