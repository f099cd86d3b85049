// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace leosim {

/// In-memory CSV table. Numbers are formatted with %.9g so files are
/// byte-stable across runs.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& add(const std::string& value);
  CsvTable& add(const char* value) { return add(std::string(value)); }
  CsvTable& add(double value);
  CsvTable& add(std::int64_t value);
  CsvTable& add(int value) { return add(static_cast<std::int64_t>(value)); }
  CsvTable& add(std::size_t value) { return add(static_cast<std::int64_t>(value)); }
  CsvTable& add(bool value) { return add(std::string(value ? "1" : "0")); }

  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  std::string str() const;
  /// Throws std::runtime_error if the file cannot be written.
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_number(double value);

}  // namespace leosim
