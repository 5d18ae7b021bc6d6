#ifndef SLIMCALC_REPORTING_HPP
#define SLIMCALC_REPORTING_HPP

#include <map>
#include <string>
#include <vector>

namespace slimcalc::report {

/// CSV with `# key=value` configuration comments and one `# generated=...`
/// timestamp line; everything below the timestamp is deterministic.
class CsvWriter {
public:
  CsvWriter(std::string path, std::vector<std::string> columns);
  void set_config(const std::map<std::string, std::string>& kv);
  void add_row(const std::vector<std::string>& cells);
  void write() const;

private:
  std::string path_;
  std::vector<std::string> columns_;
  std::map<std::string, std::string> config_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);
std::string timestamp_utc();

}  // namespace slimcalc::report

#endif
