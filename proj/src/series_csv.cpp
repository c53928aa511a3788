#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "morphcomp/error.hpp"
#include "morphcomp/estimation.hpp"

namespace morph {
namespace {

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Column {
  const ColumnSpec& spec;
  const char* name;
  std::vector<std::size_t> symbols;
  std::size_t max_symbol = 0;

  void add(std::string_view field, std::size_t line) {
    std::size_t symbol = 0;
    if (spec.binner) {
      double v = 0.0;
      const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
      if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
        throw ParseError(line, std::string("column ") + name + ": not a number: '" +
                                   std::string(field) + "'");
      }
      if (std::isnan(v)) throw ParseError(line, std::string("column ") + name + ": NaN");
      symbol = (*spec.binner)(v);
    } else {
      const auto r = std::from_chars(field.data(), field.data() + field.size(), symbol);
      if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
        throw ParseError(line, std::string("column ") + name + ": '" + std::string(field) +
                                   "' is not a symbol index; real-valued columns need a binner");
      }
      if (spec.alphabet && symbol >= *spec.alphabet) {
        throw ParseError(line, std::string("column ") + name + ": symbol " +
                                   std::to_string(symbol) + " outside alphabet of size " +
                                   std::to_string(*spec.alphabet));
      }
    }
    max_symbol = std::max(max_symbol, symbol);
    symbols.push_back(symbol);
  }

  std::size_t alphabet() const {
    if (spec.binner) return spec.binner->bins;
    return spec.alphabet ? *spec.alphabet : max_symbol + 1;
  }
};

}  // namespace

SymbolSeries read_series_csv(std::istream& in, const ColumnSpec& sensor, const ColumnSpec& action) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (!header && std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 3 || fields[0] != "t" || fields[1] != "s" || fields[2] != "a") {
      throw ParseError(lineno, "expected header 't,s,a'");
    }
    header = true;
  }
  if (!header) throw ParseError(0, "empty input");

  Column s{sensor, "s", {}};
  Column a{action, "a", {}};
  bool closed = false;  // a row without action has been seen
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (closed) throw ParseError(lineno, "row after the final sensor-only row");
    const auto fields = split(line);
    if (fields.size() != 3 && fields.size() != 2) {
      throw ParseError(lineno, "expected 3 fields, got " + std::to_string(fields.size()));
    }
    double t = 0.0;
    const auto r = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), t);
    if (r.ec != std::errc() || r.ptr != fields[0].data() + fields[0].size()) {
      throw ParseError(lineno, "column t: not a number");
    }
    s.add(fields[1], lineno);
    if (fields.size() == 2 || fields[2].empty()) {
      closed = true;
    } else {
      a.add(fields[2], lineno);
    }
  }
  if (s.symbols.empty()) throw ParseError(lineno, "no data rows");
  if (a.symbols.size() == s.symbols.size()) a.symbols.pop_back();
  if (a.symbols.empty()) throw ParseError(lineno, "series needs at least one action");
  return SymbolSeries(std::move(s.symbols), std::move(a.symbols), s.alphabet(), a.alphabet());
}

}  // namespace morph
