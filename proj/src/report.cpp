#include "bamlab/report.hpp"

#include <algorithm>
#include <boost/algorithm/string.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace bam {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("parse_number: trailing characters in '" + s + "'");
  return v;
}

Table& Table::row() {
  rows_.emplace_back();
  rows_.back().reserve(columns_.size());
  return *this;
}

Table& Table::push(const std::string& s) {
  if (rows_.empty()) throw std::logic_error("Table::push before row()");
  if (s.find_first_of(",\n\"") != std::string::npos) throw std::invalid_argument("Table: cell needs quoting");
  rows_.back().push_back(s);
  return *this;
}

Table& Table::push(double x) { return push(format_number(x)); }
Table& Table::push(long long x) { return push(std::to_string(x)); }

std::size_t Table::column(const std::string& name) const {
  auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("Table: no column " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

double Table::number(std::size_t row, const std::string& name) const { return parse_number(rows_.at(row)[column(name)]); }

void Table::write_csv(std::ostream& os) const {
  os << boost::join(columns_, ",") << '\n';
  for (const auto& r : rows_) {
    if (r.size() != columns_.size()) throw std::logic_error("Table: ragged row");
    os << boost::join(r, ",") << '\n';
  }
  if (!os) throw std::runtime_error("Table: write failed");
}

Table Table::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_csv: missing header");
  Table t;
  boost::split(t.columns_, line, boost::is_any_of(","));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    boost::split(cells, line, boost::is_any_of(","));
    if (cells.size() != t.columns_.size()) throw std::invalid_argument("read_csv: ragged row");
    t.rows_.push_back(std::move(cells));
  }
  return t;
}

void write_svg_histogram(const std::vector<double>& values, int bins, const std::string& title, std::ostream& os) {
  if (bins < 1) throw std::invalid_argument("write_svg_histogram: bins must be positive");
  std::vector<double> v;
  for (double x : values)
    if (std::isfinite(x)) v.push_back(x);
  double lo = 0, hi = 1;
  if (!v.empty()) {
    lo = *std::min_element(v.begin(), v.end());
    hi = *std::max_element(v.begin(), v.end());
    if (hi <= lo) hi = lo + 1;
  }
  std::vector<int> count(static_cast<std::size_t>(bins), 0);
  for (double x : v) {
    int b = static_cast<int>((x - lo) / (hi - lo) * bins);
    ++count[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))];
  }
  const int peak = std::max(1, *std::max_element(count.begin(), count.end()));
  const double W = 480, H = 300, pad = 40, bw = (W - 2 * pad) / bins;
  std::string safe = title;
  boost::replace_all(safe, "&", "&amp;");
  boost::replace_all(safe, "<", "&lt;");
  boost::replace_all(safe, ">", "&gt;");
  char buf[200];
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"300\" viewBox=\"0 0 480 300\">\n"
     << "<title>" << safe << "</title>\n"
     << "<text x=\"240\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << safe << "</text>\n";
  for (int b = 0; b < bins; ++b) {
    const double h = (H - 2 * pad) * count[static_cast<std::size_t>(b)] / peak;
    std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"steelblue\"/>\n",
                  pad + b * bw, H - pad - h, bw * 0.95, h);
    os << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%g\" y=\"%g\" font-size=\"11\">%s</text>\n<text x=\"%g\" y=\"%g\" font-size=\"11\" "
                "text-anchor=\"end\">%s</text>\n",
                pad, H - pad + 16, format_number(lo).c_str(), W - pad, H - pad + 16, format_number(hi).c_str());
  os << buf << "</svg>\n";
}

void emit_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("emit_report: cannot write " + (dir / name).string());
    return f;
  };
  for (const auto& t : report.tables) {
    auto f = open(t.name + ".csv");
    t.table.write_csv(f);
  }
  {
    auto f = open("summary.txt");
    f << report.summary;
    if (!f) throw std::runtime_error("emit_report: summary write failed");
  }
  for (const auto& [name, values] : report.histograms) {
    auto f = open(name + ".svg");
    write_svg_histogram(values, 30, name, f);
    if (!f) throw std::runtime_error("emit_report: svg write failed");
  }
}

}  // namespace bam
