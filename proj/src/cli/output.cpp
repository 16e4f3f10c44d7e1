#include "qladder/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qladder::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) { return c.is_text ? c.text : format_number(c.number); }

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  out += "# ";
  out += kToolVersion;
  out += '\n';
  for (const auto& [key, value] : t.meta) out += "# " + key + "=" + value + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  meta["tool"] = kToolVersion;
  for (const auto& [key, value] : t.meta) meta[key] = value;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      const Cell& c = row[i];
      if (c.is_text) {
        r[t.columns[i]] = c.text;
      } else if (std::isfinite(c.number) && c.number == std::trunc(c.number) &&
                 std::abs(c.number) < 9007199254740992.0) {
        r[t.columns[i]] = static_cast<long long>(c.number);
      } else if (std::isfinite(c.number)) {
        r[t.columns[i]] = c.number;
      } else {
        r[t.columns[i]] = nullptr;
      }
    }
    rows.push_back(std::move(r));
  }
  nlohmann::ordered_json doc = {{"meta", meta}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

namespace {

std::string fixed(double x, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_svg(const std::string& title, const std::string& x_label,
                   const std::vector<Series>& series) {
  constexpr double kW = 800.0, kH = 500.0;
  constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 60.0;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const Series& s : series) {
    for (double x : s.x) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
    }
    for (double y : s.y) {
      if (!std::isfinite(y)) continue;
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x1 > x0)) {
    x0 = 0.0;
    x1 = 1.0;
  }
  // Probabilities: keep [0, 1] in view.
  y0 = std::min(y0, 0.0);
  y1 = std::max(y1, 1.0);

  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" "
       "viewBox=\"0 0 800 500\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n"
    << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">"
    << xml_escape(title) << "</text>\n"
    << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = x0 + (x1 - x0) * i / 5.0;
    const double fy = y0 + (y1 - y0) * i / 5.0;
    o << "<text x=\"" << fixed(sx(fx), 1) << "\" y=\"" << fixed(kTop + ph + 18, 1)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fixed(fx, 2)
      << "</text>\n";
    o << "<text x=\"" << fixed(kLeft - 8, 1) << "\" y=\"" << fixed(sy(fy) + 4, 1)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fixed(fy, 2)
      << "</text>\n";
  }
  o << "<text x=\"" << fixed(kLeft + pw / 2, 1) << "\" y=\"" << fixed(kH - 15, 1)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << xml_escape(x_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = colors[k % 6];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
      << (k ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.y[i])) continue;
      o << fixed(sx(s.x[i]), 2) << ',' << fixed(sy(s.y[i]), 2) << (i + 1 < n ? " " : "");
    }
    o << "\"/>\n";
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << fixed(kW - kRight - 170, 1) << "\" y1=\"" << fixed(ly - 4, 1)
      << "\" x2=\"" << fixed(kW - kRight - 140, 1) << "\" y2=\"" << fixed(ly - 4, 1)
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << fixed(kW - kRight - 134, 1) << "\" y=\"" << fixed(ly, 1)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace qladder::cli
