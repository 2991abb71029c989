#include "latdiff/output.hpp"

#include <cstdio>

#include "latdiff/error.hpp"

namespace latdiff {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw Error("cannot write " + path.string());
  for (const auto& name : header) cell(name);
  end_row();
}

void CsvWriter::separator() {
  if (in_row_ == columns_) throw Error(path_.string() + ": too many cells in row");
  if (in_row_ > 0) out_ << ',';
  ++in_row_;
}

CsvWriter& CsvWriter::cell(double value) {
  separator();
  out_ << format_number(value);
  return *this;
}

CsvWriter& CsvWriter::cell(long long value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  separator();
  out_ << text;
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw Error(path_.string() + ": row has too few cells");
  out_ << '\n';
  in_row_ = 0;
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw Error("failed writing " + path_.string());
}

void write_pgm(const std::filesystem::path& path, std::size_t width, std::size_t height,
               const std::vector<std::uint8_t>& pixels) {
  if (pixels.size() != width * height) throw Error("PGM pixel count does not match its size");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  out.close();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace latdiff
