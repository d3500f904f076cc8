#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stochave/erm_solver.hpp"
#include "stochave/experiment.hpp"

namespace stochave {

enum class TableFormat { AlignedText, Csv };

/// Columns N, x0, x*, f(x*). Vectors print with 4 decimals as "(a,b,...)",
/// objectives as %.4e. Aligned text abbreviates vectors longer than 4 entries
/// to "(a,b,...,z)"; CSV always prints them in full.
std::string emit_table(std::span<const RunRecord> records, TableFormat format);

/// Printed fields of one CSV table row.
struct TableRow {
  std::size_t N = 0;
  Vector x0;
  Vector x_star;
  double f_star = 0.0;
};

/// Inverse of emit_table(..., TableFormat::Csv).
std::vector<TableRow> parse_table_csv(std::string_view text);

/// Columns k, f, f_smoothed, grad_norm, mu, alpha; one row per iterate,
/// starting with x0.
std::string emit_trace(const SolveReport& report);

std::string format_vector(const Vector& v, bool abbreviate = false);
std::string format_objective(double f);

}  // namespace stochave
