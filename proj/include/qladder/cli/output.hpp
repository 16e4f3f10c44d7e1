#pragma once

// Deterministic tabular output: CSV with '#' metadata lines, JSON
// {"meta", "rows"}, and bare-bones SVG line plots.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qladder::cli {

inline constexpr const char* kToolVersion = "qladder 0.1.0";

/// A column is either numeric or text; numeric cells print with 17
/// significant digits.
struct Cell {
  double number = 0.0;
  std::string text;
  bool is_text = false;

  Cell(double x) : number(x) {}  // NOLINT(google-explicit-constructor)
  Cell(std::string s) : text(std::move(s)), is_text(true) {}  // NOLINT
};

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double x);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// 800x500 SVG 1.1 with one polyline per series, axes box, tick labels and
/// a legend.
std::string to_svg(const std::string& title, const std::string& x_label,
                   const std::vector<Series>& series);

/// Writes the whole string at once; throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace qladder::cli
