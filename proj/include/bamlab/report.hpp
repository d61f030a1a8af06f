#pragma once

// Tables, CSV round-trips, summary text and static SVG histograms.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bam {

/// %.17g, with inf / -inf / nan spelled out.
std::string format_number(double x);

class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Starts a new row; cells are appended with push().
  Table& row();
  Table& push(const std::string& s);
  Table& push(double x);
  Table& push(long long x);
  Table& push(int x) { return push(static_cast<long long>(x)); }
  Table& push(std::size_t x) { return push(static_cast<long long>(x)); }
  Table& push(bool b) { return push(static_cast<long long>(b)); }
  Table& push(const char* s) { return push(std::string(s)); }

  std::size_t column(const std::string& name) const;  // throws if absent
  double number(std::size_t row, const std::string& name) const;

  /// Throws if any row length differs from the header.
  void write_csv(std::ostream& os) const;
  static Table read_csv(std::istream& is);

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

double parse_number(const std::string& s);

/// Histogram with `bins` equal bins over the finite values.
void write_svg_histogram(const std::vector<double>& values, int bins, const std::string& title, std::ostream& os);

struct ReportFile {
  std::string name;
  Table table;
};

struct Report {
  std::string summary;
  std::vector<ReportFile> tables;
  std::vector<std::pair<std::string, std::vector<double>>> histograms;
};

/// Writes <name>.csv for each table, summary.txt and <name>.svg for each
/// histogram into `dir` (created if needed).  Throws on I/O failure.
void emit_report(const Report& report, const std::filesystem::path& dir);

}  // namespace bam
