// SPDX-License-Identifier: Apache-2.0
#include "leosim/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace leosim {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  if (!rows_.empty() && rows_.back().size() != header_.size())
    throw std::logic_error("CsvTable: previous row has the wrong number of fields");
  rows_.emplace_back();
  rows_.back().reserve(header_.size());
  return *this;
}

CsvTable& CsvTable::add(const std::string& value) {
  if (rows_.empty()) throw std::logic_error("CsvTable: add() before row()");
  rows_.back().push_back(value);
  return *this;
}

CsvTable& CsvTable::add(double value) { return add(format_number(value)); }

CsvTable& CsvTable::add(std::int64_t value) { return add(std::to_string(value)); }

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) {
    if (r.size() != header_.size())
      throw std::logic_error("CsvTable: row has the wrong number of fields");
    line(r);
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  const std::string s = str();
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace leosim
