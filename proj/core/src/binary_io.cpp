#include "rombox/detail/binary_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "rombox/error.hpp"

namespace rombox::detail {
namespace {

template <typename T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::little) {
    return value;
  } else {
    auto raw = std::bit_cast<std::array<char, sizeof(T)>>(value);
    std::reverse(raw.begin(), raw.end());
    return std::bit_cast<T>(raw);
  }
}

template <typename T>
void append(std::vector<char>& buffer, T value) {
  const T little = to_little(value);
  char raw[sizeof(T)];
  std::memcpy(raw, &little, sizeof(T));
  buffer.insert(buffer.end(), raw, raw + sizeof(T));
}

template <typename T>
T extract(const std::vector<char>& data, std::size_t offset) {
  T value;
  std::memcpy(&value, data.data() + offset, sizeof(T));
  return to_little(value);
}

}  // namespace

void ByteWriter::bytes(std::string_view raw) { buffer_.insert(buffer_.end(), raw.begin(), raw.end()); }
void ByteWriter::u8(std::uint8_t value) { buffer_.push_back(static_cast<char>(value)); }
void ByteWriter::u32(std::uint32_t value) { append(buffer_, value); }
void ByteWriter::f64(double value) { append(buffer_, value); }

void ByteWriter::f64s(std::span<const double> values) {
  buffer_.reserve(buffer_.size() + values.size() * sizeof(double));
  for (double v : values) append(buffer_, v);
}

ByteReader::ByteReader(std::vector<char> data, std::string format)
    : data_(std::move(data)), format_(std::move(format)) {}

void ByteReader::require(std::size_t count, std::string_view field) {
  if (remaining() < count) {
    throw Error(ErrorCode::format, format_ + ": truncated while reading " + std::string(field) +
                                       " at byte offset " + std::to_string(offset_) + " (need " +
                                       std::to_string(count) + " bytes, have " +
                                       std::to_string(remaining()) + ")");
  }
}

void ByteReader::expect_magic(std::string_view magic) {
  require(magic.size(), "magic");
  if (std::string_view(data_.data() + offset_, magic.size()) != magic) {
    throw Error(ErrorCode::format, format_ + ": bad magic at byte offset " + std::to_string(offset_) +
                                       ", expected \"" + std::string(magic) + "\"");
  }
  offset_ += magic.size();
}

std::uint8_t ByteReader::u8(std::string_view field) {
  require(1, field);
  return static_cast<std::uint8_t>(data_[offset_++]);
}

std::uint32_t ByteReader::u32(std::string_view field) {
  require(4, field);
  const auto value = extract<std::uint32_t>(data_, offset_);
  offset_ += 4;
  return value;
}

double ByteReader::f64(std::string_view field) {
  require(8, field);
  const auto value = extract<double>(data_, offset_);
  offset_ += 8;
  return value;
}

void ByteReader::f64s(std::span<double> out, std::string_view field) {
  require(out.size() * 8, field);
  for (auto& v : out) {
    v = extract<double>(data_, offset_);
    offset_ += 8;
  }
}

void ByteReader::expect_end() {
  if (remaining() != 0) {
    throw Error(ErrorCode::format, format_ + ": " + std::to_string(remaining()) +
                                       " trailing bytes at byte offset " + std::to_string(offset_));
  }
}

std::vector<char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path + " for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<char>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::io, "short write to " + path);
}

}  // namespace rombox::detail
