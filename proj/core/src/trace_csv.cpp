#include "stlf/trace_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stlf/errors.hpp"

namespace stlf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
    throw ValueError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                     ": cannot parse '" + std::string(cell) + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw ValueError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                     ": non-finite value '" + std::string(cell) + "'");
  }
  return value;
}

struct Suffix {
  std::string prefix;
  std::size_t index = 0;
  bool axis = false;  // x/y/z family rather than digits
};

// Splits `ball_pos_x` into ("ball_pos", 0, axis) and `q_12` into ("q", 12, digits).
bool split_suffix(std::string_view name, Suffix& out) {
  const auto us = name.rfind('_');
  if (us == std::string_view::npos || us == 0 || us + 1 >= name.size()) return false;
  const std::string_view tail = name.substr(us + 1);
  out.prefix = std::string(name.substr(0, us));
  if (tail.size() == 1 && (tail[0] == 'x' || tail[0] == 'y' || tail[0] == 'z')) {
    out.axis = true;
    out.index = static_cast<std::size_t>(tail[0] - 'x');
    return true;
  }
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), idx);
  if (ec != std::errc() || ptr != tail.data() + tail.size()) return false;
  out.axis = false;
  out.index = idx;
  return true;
}

struct Group {
  std::string name;
  std::size_t first_column = 0;  // index into the data columns (after time)
  std::size_t dim = 1;
};

std::vector<Group> group_columns(const std::vector<std::string>& names) {
  std::vector<Group> groups;
  std::size_t i = 0;
  while (i < names.size()) {
    Suffix head;
    if (split_suffix(names[i], head) && head.index == 0) {
      std::size_t j = i + 1;
      Suffix next;
      while (j < names.size() && split_suffix(names[j], next) && next.prefix == head.prefix &&
             next.axis == head.axis) {
        if (next.index != j - i) {
          const std::string expected =
              head.axis ? head.prefix + "_" + std::string(1, static_cast<char>('x' + (j - i)))
                        : head.prefix + "_" + std::to_string(j - i);
          throw SchemaError("vector channel '" + head.prefix + "' is missing column '" + expected + "'");
        }
        ++j;
      }
      const std::size_t run = j - i;
      if (head.axis && run > 3) throw SchemaError("axis-suffixed channel '" + head.prefix + "' has more than 3 columns");
      if (run >= 2) {
        groups.push_back({head.prefix, i, run});
        i = j;
        continue;
      }
    } else if (split_suffix(names[i], head) && head.index > 0 && i > 0) {
      Suffix prev;
      if (split_suffix(names[i - 1], prev) && prev.prefix == head.prefix && prev.axis == head.axis) {
        throw SchemaError("vector channel '" + head.prefix + "' has out-of-order columns");
      }
    }
    groups.push_back({names[i], i, 1});
    ++i;
  }
  return groups;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Trace trace_from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    const auto line = text.substr(start, pos - start);
    if (!trim(line).empty()) lines.push_back(line);
    start = pos + 1;
  }
  if (lines.empty()) throw SchemaError("empty CSV input");
  // Tolerate a UTF-8 byte order mark.
  if (lines[0].substr(0, 3) == "\xEF\xBB\xBF") lines[0].remove_prefix(3);

  const auto header = split(lines[0], ',');
  if (header.empty() || header[0] != "time") throw SchemaError("first CSV column must be 'time'");
  std::vector<std::string> names;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (!is_identifier(header[c])) throw SchemaError("invalid column name '" + std::string(header[c]) + "'");
    names.emplace_back(header[c]);
  }
  const std::size_t rows = lines.size() - 1;
  if (rows == 0) throw SchemaError("CSV has a header but no samples");

  std::vector<double> times(rows);
  std::vector<std::vector<double>> columns(names.size(), std::vector<double>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto cells = split(lines[r + 1], ',');
    if (cells.size() != header.size()) {
      throw SchemaError("row " + std::to_string(r + 1) + " has " + std::to_string(cells.size()) +
                        " fields, expected " + std::to_string(header.size()));
    }
    times[r] = parse_cell(cells[0], r + 1, 1);
    for (std::size_t c = 0; c < names.size(); ++c) columns[c][r] = parse_cell(cells[c + 1], r + 1, c + 2);
  }

  double period = 1.0;
  if (rows >= 2) {
    const double first = times[1] - times[0];
    if (!(first > 0.0)) throw SamplingError("time column must be strictly increasing");
    for (std::size_t r = 1; r < rows; ++r) {
      const double step = times[r] - times[r - 1];
      if (!(step > 0.0)) throw SamplingError("time column must be strictly increasing");
      if (std::abs(step - first) > 1e-6 * first) {
        throw SamplingError("non-uniform sampling at row " + std::to_string(r + 1) + ": step " +
                            format_double(step) + " vs " + format_double(first));
      }
    }
    period = (times.back() - times.front()) / static_cast<double>(rows - 1);
  }

  std::vector<Signal> signals;
  for (const auto& g : group_columns(names)) {
    Signal s{g.name, g.dim, {}};
    s.data.reserve(rows * g.dim);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < g.dim; ++k) s.data.push_back(columns[g.first_column + k][r]);
    }
    signals.push_back(std::move(s));
  }
  return Trace(period, rows, std::move(signals));
}

std::string trace_to_csv(const Trace& trace) {
  std::string out = "time";
  for (const auto& s : trace.signals()) {
    if (s.dim == 1) {
      out += "," + s.name;
    } else if (s.dim <= 3) {
      for (std::size_t k = 0; k < s.dim; ++k) out += "," + s.name + "_" + static_cast<char>('x' + k);
    } else {
      for (std::size_t k = 0; k < s.dim; ++k) out += "," + s.name + "_" + std::to_string(k);
    }
  }
  out += '\n';
  for (std::size_t t = 0; t < trace.length(); ++t) {
    out += format_double(static_cast<double>(t) * trace.sample_period());
    for (const auto& s : trace.signals()) {
      for (std::size_t k = 0; k < s.dim; ++k) {
        out += ',';
        out += format_double(s.data[t * s.dim + k]);
      }
    }
    out += '\n';
  }
  return out;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open trace file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return trace_from_csv(buf.str());
}

}  // namespace stlf
