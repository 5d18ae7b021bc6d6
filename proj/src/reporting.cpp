#include "slimcalc/reporting.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace slimcalc::report {

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns)
    : path_(std::move(path)), columns_(std::move(columns)) {}

void CsvWriter::set_config(const std::map<std::string, std::string>& kv) {
  config_ = kv;
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  rows_.push_back(cells);
}

void CsvWriter::write() const {
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("cannot write report: " + path_);
  out << "# generated=" << timestamp_utc() << "\n";
  for (const auto& [k, v] : config_) out << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i)
    out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[40];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace slimcalc::report
