#include "stochave/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace stochave {

namespace {

constexpr Index kAbbreviateAbove = 4;

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw InvalidArgument("CSV: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InvalidArgument("CSV: bad number '" + s + "'");
  return v;
}

Vector parse_vector(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw InvalidArgument("CSV: bad vector '" + s + "'");
  std::vector<double> values;
  std::size_t start = 1;
  while (start < s.size() - 1) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos || comma > s.size() - 1) comma = s.size() - 1;
    values.push_back(parse_double(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return Eigen::Map<const Vector>(values.data(), Index(values.size()));
}

}  // namespace

std::string format_vector(const Vector& v, bool abbreviate) {
  std::string out = "(";
  if (abbreviate && v.size() > kAbbreviateAbove) {
    out += fixed4(v[0]) + "," + fixed4(v[1]) + ",...," + fixed4(v[v.size() - 1]);
  } else {
    for (Index i = 0; i < v.size(); ++i) {
      if (i > 0) out += ',';
      out += fixed4(v[i]);
    }
  }
  return out + ")";
}

std::string format_objective(double f) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4e", f);
  return buf;
}

std::string emit_table(std::span<const RunRecord> records, TableFormat format) {
  if (records.empty()) throw InvalidArgument("emit_table needs at least one record");
  const std::vector<std::string> header{"N", "x0", "x*", "f(x*)"};
  std::vector<std::vector<std::string>> cells;
  const bool text = format == TableFormat::AlignedText;
  for (const auto& r : records) {
    cells.push_back({std::to_string(r.N), format_vector(r.x0, text), format_vector(r.x_star, text),
                     format_objective(r.f_star)});
  }

  std::string out;
  if (!text) {
    auto line = [&](const std::vector<std::string>& row) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j > 0) out += ',';
        out += csv_field(row[j]);
      }
      out += '\n';
    };
    line(header);
    for (const auto& row : cells) line(row);
    return out;
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    width[j] = header[j].size();
    for (const auto& row : cells) width[j] = std::max(width[j], row[j].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += "  ";
      out += row[j];
      if (j + 1 < row.size()) out.append(width[j] - row[j].size(), ' ');
    }
    out += '\n';
  };
  line(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out.append(total + 2 * (width.size() - 1), '-');
  out += '\n';
  for (const auto& row : cells) line(row);
  return out;
}

std::vector<TableRow> parse_table_csv(std::string_view text) {
  const auto rows = split_csv(text);
  if (rows.empty()) throw InvalidArgument("CSV: empty table");
  const std::vector<std::string> header{"N", "x0", "x*", "f(x*)"};
  if (rows.front() != header) throw InvalidArgument("CSV: unexpected header");
  std::vector<TableRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 4) throw InvalidArgument("CSV: row " + std::to_string(i) + " needs 4 fields");
    out.push_back(TableRow{std::size_t(std::stoull(row[0])), parse_vector(row[1]), parse_vector(row[2]),
                           parse_double(row[3])});
  }
  return out;
}

std::string emit_trace(const SolveReport& report) {
  std::string out = "k,f,f_smoothed,grad_norm,mu,alpha\n";
  char buf[256];
  for (const auto& it : report.trace) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", it.k, it.objective_unsmoothed,
                  it.objective, it.grad_norm, it.mu, it.step);
    out += buf;
  }
  return out;
}

}  // namespace stochave
