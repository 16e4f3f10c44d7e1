#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qladder/cli/app.hpp"
#include "qladder/cli/output.hpp"
#include "qladder/cli/presets.hpp"

using namespace qladder;
using namespace qladder::cli;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qladder");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::out_of_range(name);
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
  return f;
}

Csv parse(const std::string& text) {
  Csv c;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) c.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
    } else if (c.header.empty()) {
      c.header = split(line);
    } else {
      std::vector<double> row;
      for (const auto& f : split(line)) row.push_back(std::stod(f));
      c.rows.push_back(row);
    }
  }
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("presets carry the figure parameters") {
  CHECK(preset_names().size() == 6);
  const Preset b05 = resolve_preset("beta05");
  REQUIRE(b05.panels.size() == 4);
  for (const Panel& p : b05.panels) {
    CHECK(p.params.v == 0.16);
    CHECK(p.params.delta == 1.0);
  }
  CHECK(b05.panels[3].params.a == 20.0);
  CHECK(resolve_preset("beta3").panels[0].params.v == 0.39);

  const Preset over = resolve_preset("overdamped");
  for (const Panel& p : over.panels) {
    CHECK(p.params.gamma() == doctest::Approx(300.0));
    CHECK(p.params.big_gamma() == doctest::Approx(0.5));
  }
  CHECK(resolve_preset("underdamped").panels[0].params.w() == doctest::Approx(1.75));

  const Preset mid = resolve_preset("intermediate");
  const double a_list[] = {0.5, 0.71, 1.25, 5.0};
  const double v_list[] = {0.69, 0.57, 0.43, 0.21};
  for (int i = 0; i < 4; ++i) {
    CHECK(mid.panels[i].params.a == a_list[i]);
    CHECK(mid.panels[i].params.v == v_list[i]);
    CHECK(mid.panels[i].params.gamma() == doctest::Approx(0.5));
  }
  CHECK(mid.panels[3].params.big_gamma() == doctest::Approx(2.77).epsilon(1e-3));

  for (const Panel& p : resolve_preset("rabi-continuum").panels) CHECK(p.params.delta == 0.005);

  CHECK(resolve_panel("beta3-a5").second.params.a == 5.0);
  CHECK_THROWS_AS(resolve_preset("nope"), std::out_of_range);
  CHECK_THROWS_AS(resolve_panel("beta05-a7"), std::out_of_range);
}

TEST_CASE("output formats") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  Table t;
  t.meta = {{"command", "x"}};
  t.columns = {"t", "p"};
  t.rows = {{0.0, 1.0}, {0.5, std::string("n/a")}};
  CHECK(to_csv(t) == "# qladder 0.1.0\n# command=x\nt,p\n0,1\n0.5,n/a\n");
  const auto j = nlohmann::json::parse(to_json(t));
  CHECK(j["meta"]["command"] == "x");
  CHECK(j["rows"][0]["p"] == 1);
  CHECK(j["rows"][1]["p"] == "n/a");
  const std::string svg = to_svg("title", "t", {{"p", {0.0, 1.0, 2.0}, {1.0, 0.5, 0.25}}});
  CHECK(svg.find("viewBox=\"0 0 800 500\"") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find(">p<") != std::string::npos);
}

TEST_CASE("spectrum command") {
  const Result r = invoke({"spectrum", "--v", "0.16", "--delta", "1", "--a", "20", "--e-phi", "0"});
  REQUIRE(r.code == kOk);
  const Csv c = parse(r.out);
  CHECK(c.header == std::vector<std::string>{"index", "eps", "energy", "weight", "interval_index", "residual"});
  const std::size_t e = c.col("eps"), w = c.col("weight");
  const std::size_t n = c.rows.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(c.rows[i][e] == doctest::Approx(-c.rows[n - 1 - i][e]).epsilon(1e-9).scale(1.0));
    if (i) CHECK(c.rows[i][e] > c.rows[i - 1][e]);
    total += c.rows[i][w];
  }
  CHECK(total >= 0.999999);

  const Result zero = invoke({"spectrum", "--v", "0", "--a", "1"});
  CHECK(zero.code == kUsage);
  CHECK(zero.err.find("coupling must be nonzero") != std::string::npos);
  CHECK(invoke({"spectrum", "--v", "0.1", "--a", "-1"}).code == kUsage);
  CHECK(invoke({"spectrum", "--v", "0.1", "--a", "1", "--format", "xml"}).code == kUsage);
  CHECK(invoke({"bogus"}).code == kUsage);
  const Result json = invoke({"spectrum", "--v", "0.16", "--a", "1", "--window-min", "-2",
                              "--window-max", "2", "--format", "json"});
  REQUIRE(json.code == kOk);
  CHECK(nlohmann::json::parse(json.out)["rows"].size() == 4);
}

TEST_CASE("dynamics command") {
  const Result r = invoke({"dynamics", "--preset", "beta05-a20", "--engine", "both", "--t-steps", "400"});
  REQUIRE(r.code == kOk);
  const Csv c = parse(r.out);
  CHECK(c.header == std::vector<std::string>{"t", "p_semi", "p_oracle", "abs_diff"});
  CHECK(c.rows.size() == 401);
  const double deficit = std::stod(c.meta.at("norm_deficit"));
  CHECK(c.rows[0][1] == doctest::Approx((1 - deficit) * (1 - deficit)).epsilon(1e-14));
  CHECK(c.rows[0][2] == doctest::Approx(1.0).epsilon(1e-12));
  double worst = 0.0;
  for (const auto& row : c.rows) worst = std::max(worst, row[3]);
  CHECK(worst < 1e-3);

  CHECK(invoke({"dynamics", "--v", "0.16", "--a", "1"}).code == kUsage);
  CHECK(invoke({"dynamics", "--preset", "beta05-a20", "--engine", "magic"}).code == kUsage);
  const Result renorm = invoke({"dynamics", "--v", "0.16", "--a", "1", "--t-max", "5", "--t-steps",
                                "5", "--renormalize"});
  REQUIRE(renorm.code == kOk);
  CHECK(parse(renorm.out).rows[0][1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("limits command") {
  const Result ww = invoke({"limits", "--kind", "ww", "--big-gamma", "0.5", "--t-max", "4",
                            "--t-steps", "400"});
  REQUIRE(ww.code == kOk);
  const Csv c = parse(ww.out);
  CHECK(c.header == std::vector<std::string>{"t", "p"});
  CHECK(c.rows[200][0] == doctest::Approx(2.0));
  CHECK(c.rows[200][1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  const Result rabi = invoke({"limits", "--kind", "rabi", "--v", "0.16", "--e-phi", "0", "--t-max",
                              "20", "--t-steps", "20000"});
  REQUIRE(rabi.code == kOk);
  const Csv rc = parse(rabi.out);
  double t_zero = -1.0;
  for (std::size_t i = 1; i + 1 < rc.rows.size(); ++i) {
    if (rc.rows[i][1] <= rc.rows[i - 1][1] && rc.rows[i][1] <= rc.rows[i + 1][1]) {
      t_zero = rc.rows[i][0];
      break;
    }
  }
  CHECK(t_zero == doctest::Approx(std::numbers::pi / 0.32).epsilon(2e-4));
  CHECK(t_zero == doctest::Approx(9.817).epsilon(1e-4));

  const Result over = invoke({"limits", "--kind", "fano", "--preset", "overdamped", "--t-steps", "600"});
  REQUIRE(over.code == kOk);
  const Csv oc = parse(over.out);
  for (std::size_t i = 1; i < oc.rows.size(); ++i) CHECK(oc.rows[i][1] < oc.rows[i - 1][1]);

  const Result deg = invoke({"limits", "--kind", "fano", "--w", "1", "--gamma", "2", "--t-max", "1"});
  CHECK(deg.code == kDegenerate);
  CHECK(invoke({"limits", "--kind", "ww", "--big-gamma", "-1", "--t-max", "1"}).code == kUsage);
}

TEST_CASE("compare writes one deterministic file per panel") {
  const auto base = std::filesystem::temp_directory_path() / "qladder_cli_test";
  std::filesystem::remove_all(base);
  const Result a = invoke({"compare", "--preset", "intermediate", "--out", (base / "a").string(),
                           "--svg", "--t-steps", "200"});
  const Result b = invoke({"compare", "--preset", "intermediate", "--out", (base / "b").string(),
                           "--t-steps", "200"});
  REQUIRE(a.code == kOk);
  REQUIRE(b.code == kOk);
  for (const Panel& p : resolve_preset("intermediate").panels) {
    const std::string first = slurp(base / "a" / (p.id + ".csv"));
    CHECK(!first.empty());
    CHECK(first == slurp(base / "b" / (p.id + ".csv")));
    CHECK(std::filesystem::exists(base / "a" / (p.id + ".svg")));
    const Csv c = parse(first);
    CHECK(c.header == std::vector<std::string>{"t", "p_general", "p_overlay_1", "p_overlay_2"});
    CHECK(c.rows.size() == 201);
  }
  CHECK(invoke({"compare", "--preset", "nope", "--out", (base / "c").string()}).code == kUsage);
  std::filesystem::remove_all(base);
}
