#pragma once

// CSV writing and reading for vdwsim outputs.  Numbers use 17 significant
// digits; lines starting with '#' carry comments (the sweep fit line).

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdwsim {

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;

  // Numeric value of a cell; throws if it does not parse.
  double number(size_t row, size_t col) const {
    const std::string& s = rows.at(row).at(col);
    size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("not a number: " + s);
    return x;
  }
};

inline void write_csv(std::ostream& os, const CsvData& d) {
  for (size_t c = 0; c < d.columns.size(); ++c) os << (c ? "," : "") << quote(d.columns[c]);
  os << '\n';
  for (const auto& r : d.rows) {
    for (size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << quote(r[c]);
    os << '\n';
  }
  for (const auto& c : d.comments) os << "# " << c << '\n';
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quote in CSV line");
  out.push_back(cur);
  return out;
}

inline CsvData read_csv(std::istream& is) {
  CsvData d;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      d.comments.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    auto cells = split_csv_line(line);
    if (header) {
      d.columns = std::move(cells);
      header = false;
    } else {
      if (cells.size() != d.columns.size()) throw std::runtime_error("CSV row width differs from header");
      d.rows.push_back(std::move(cells));
    }
  }
  if (header) throw std::runtime_error("CSV has no header");
  return d;
}

}  // namespace vdwsim
