#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "inatt/errors.hpp"
#include "inatt/model.hpp"

namespace inatt::io {

/// Shortest-safe text for a double: 17 significant digits, '.' separator.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

/// RFC-4180 style writer with '#'-prefixed comment lines ahead of the header.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  CsvWriter& comment(std::string_view key, std::string_view value) {
    os_ << "# " << key << '=' << value << '\n';
    return *this;
  }
  CsvWriter& comment(std::string_view key, double value) { return comment(key, format_real(value)); }

  CsvWriter& row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) os_ << ',';
      os_ << quote_field(fields[i]);
    }
    os_ << '\n';
    return *this;
  }

  CsvWriter& values(const std::vector<double>& fields) {
    std::vector<std::string> text;
    text.reserve(fields.size());
    for (double v : fields) text.push_back(format_real(v));
    return row(text);
  }

private:
  std::ostream& os_;
};

namespace detail {
inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}
}  // namespace detail

/// Two-column cost table with header `q,c`.
inline CostSpec read_tabulated_cost(std::istream& in) {
  std::string line;
  bool header = false;
  std::vector<double> q;
  std::vector<double> c;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "q,c") throw DomainError("tabulated cost CSV must start with the header 'q,c'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("tabulated cost CSV line " + std::to_string(line_no) + ": expected two columns");
    try {
      std::size_t used = 0;
      const std::string qs = detail::trim(line.substr(0, comma));
      const std::string cs = detail::trim(line.substr(comma + 1));
      q.push_back(std::stod(qs, &used));
      if (used != qs.size()) throw std::invalid_argument(qs);
      c.push_back(std::stod(cs, &used));
      if (used != cs.size()) throw std::invalid_argument(cs);
    } catch (const std::logic_error&) {
      throw DomainError("tabulated cost CSV line " + std::to_string(line_no) + ": not a number");
    }
  }
  if (!header) throw DomainError("tabulated cost CSV is empty");
  return CostSpec::tabulated(std::move(q), std::move(c));
}

inline CostSpec read_tabulated_cost(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tabulated cost file " + path);
  return read_tabulated_cost(in);
}

}  // namespace inatt::io
