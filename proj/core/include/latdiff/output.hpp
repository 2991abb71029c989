#pragma once

// Deterministic CSV and PGM writers.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace latdiff {

/// 12 significant digits, "%.12g"; negative zero prints as 0.
std::string format_number(double value);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(std::size_t value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(const char* text) { return cell(std::string_view(text)); }
  void end_row();

  /// Flushes and reports write failures.
  void close();

 private:
  void separator();

  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

/// Binary 8-bit graymap, row-major, `pixels.size() == width * height`.
void write_pgm(const std::filesystem::path& path, std::size_t width, std::size_t height,
               const std::vector<std::uint8_t>& pixels);

}  // namespace latdiff
