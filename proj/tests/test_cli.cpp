#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "umbilic/cli.hpp"
#include "umbilic/table.hpp"

using namespace umbilic;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "umbilic");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

double num(const Cell& c) { return std::get<double>(c); }

std::string meta(const Table& t, const std::string& key) {
  for (const auto& [k, v] : t.meta)
    if (k == key) return v;
  return {};
}

std::string temp_path(const std::string& name) { return "/tmp/umbilic_test_" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("nec exit codes") {
    const Run ok = run({"nec", "--profile", "schwarzschild:m=1,n=3", "--fibre", "sphere", "--interval", "0.5:10"});
    CHECK(ok.code == 0);
    const Table t = parse_csv(ok.out);
    CHECK(std::abs(std::stod(meta(t, "min_residual"))) <= 1e-12);

    const Run bad = run({"nec", "--profile", "custom:terms=1@0;-1@2;0.5@1,n=3", "--fibre", "sphere"});
    CHECK(bad.code == 1);
    CHECK(std::stod(meta(parse_csv(bad.out), "witness_radius")) == 0.5);

    CHECK(run({"nec", "--profile", "schwarzschild:m=1,n=3"}).code == 2);
    CHECK(run({"nec", "--profile", "nonsense", "--fibre", "sphere"}).code == 2);
    CHECK(run({"nec", "--bogus-flag"}).code == 2);
    CHECK(run({}).code == 2);
  }

  TEST_CASE("graph rows") {
    const Run hyp = run({"graph", "--family", "hyperboloid:lambda=1", "--profile", "schwarzschild:m=1,n=3",
                         "--interval", "1.2:6", "--grid", "49"});
    REQUIRE(hyp.code == 0);
    const Table t = parse_csv(hyp.out);
    const std::size_t st = column(t, "stcmc"), s = column(t, "s");
    bool crossing = false;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      const double a = num(t.rows[i - 1][st]), b = num(t.rows[i][st]);
      if (a < 0 && b >= 0 && num(t.rows[i - 1][s]) < 2 && num(t.rows[i][s]) >= 2) crossing = true;
      if (std::abs(num(t.rows[i][s]) - 2.0) < 1e-12) CHECK(std::get<std::string>(t.rows[i][column(t, "classification")]) == "generalized-horizon");
    }
    CHECK(crossing);

    const Table cmc = parse_csv(run({"graph", "--family", "cmc:C=3,c1=0", "--profile", "minkowski"}).out);
    REQUIRE(!cmc.rows.empty());
    for (const auto& row : cmc.rows) CHECK(num(row[column(cmc, "trK")]) == doctest::Approx(3.0).epsilon(1e-13));

    const Table ts = parse_csv(run({"graph", "--family", "timesym", "--profile", "schwarzschild:m=1"}).out);
    for (const auto& row : ts.rows) CHECK(num(row[column(ts, "P")]) == 0.0);

    CHECK(run({"graph", "--family", "hyperboloid", "--profile", "schwarzschild:m=1"}).code == 2);
    CHECK(run({"graph", "--family", "cmc:C=x", "--profile", "schwarzschild:m=1"}).code == 2);
  }

  TEST_CASE("extend") {
    const std::string chart = temp_path("chart.csv");
    const Run r = run({"extend", "--profile", "schwarzschild:m=1,n=3", "--interval", "1.2:3", "--grid", "19",
                       "--chart-out", chart});
    REQUIRE(r.code == 0);
    const Table t = parse_csv(r.out);
    const std::size_t s = column(t, "s"), u = column(t, "u"), v = column(t, "v"), inv = column(t, "uv_minus_phi");
    for (const auto& row : t.rows) {
      CHECK(num(row[u]) > 0);
      CHECK(std::abs(num(row[inv])) <= 1e-9);
      if (num(row[s]) < 2) CHECK(num(row[v]) < 0);
      if (num(row[s]) > 2) CHECK(num(row[v]) > 0);
    }
    std::ifstream in(chart);
    std::stringstream buf;
    buf << in.rdbuf();
    const Table atlas = parse_csv(buf.str());
    CHECK(atlas.columns == std::vector<std::string>{"r", "phi", "conformal_factor", "potential"});
    CHECK(atlas.rows.size() == 19);
    std::remove(chart.c_str());

    // Outer RN horizon with a CMC graph: the regular-part integrand is steep near r_l.
    const Run rn = run({"extend", "--profile", "rn:m=1,q=0.5", "--family", "cmc:C=1,c1=-2", "--interval", "1.87:6",
                        "--grid", "9"});
    REQUIRE(rn.code == 0);
    for (const auto& row : parse_csv(rn.out).rows) CHECK(std::abs(num(row[column(parse_csv(rn.out), "uv_minus_phi")])) <= 1e-9);

    const Run degenerate = run({"extend", "--profile", "quadratic:C=0.1"});
    CHECK(degenerate.code == 1);
    CHECK(degenerate.err.find("DegenerateZero") != std::string::npos);
  }

  TEST_CASE("photon") {
    CHECK(run({"photon", "--profile", "schwarzschild:m=1"}).code == 1);
    const Run q = run({"photon", "--profile", "quadratic:C=0.1", "--interval", "0.5:20"});
    CHECK(q.code == 0);
    CHECK(meta(parse_csv(q.out), "dense_condition") == "true");
  }

  TEST_CASE("verify") {
    const Run all = run({"verify"});
    CHECK(all.code == 0);
    const Run mutated = run({"verify", "--inject-fault", "ric-ss-sign"});
    CHECK(mutated.code == 1);
    CHECK(mutated.err.find("curvature.oracle-slice") != std::string::npos);

    const Table only = parse_csv(run({"verify", "--only", "kruskal"}).out);
    REQUIRE(!only.rows.empty());
    for (const auto& row : only.rows) CHECK(std::get<std::string>(row[column(only, "group")]) == "kruskal");
    CHECK(run({"verify", "--only", "nothing"}).code == 2);
    CHECK(run({"verify", "--inject-fault", "nothing"}).code == 2);
  }

  TEST_CASE("csv and json round trip bit-identically") {
    const std::vector<std::string> base{"graph", "--family", "cmc:C=1,c1=-2", "--profile", "rn:m=1,q=0.5",
                                        "--interval", "2:9", "--grid", "23"};
    const Table csv = parse_csv(run(base).out);
    auto json_args = base;
    json_args.insert(json_args.end(), {"--format", "json"});
    const Table json = parse_json(run(json_args).out);
    REQUIRE(csv.rows.size() == json.rows.size());
    CHECK(csv.columns == json.columns);
    CHECK(csv.meta == json.meta);
    for (std::size_t i = 0; i < csv.rows.size(); ++i)
      for (std::size_t j = 0; j < csv.rows[i].size(); ++j) {
        if (std::holds_alternative<double>(csv.rows[i][j]) && std::isnan(num(csv.rows[i][j]))) {
          CHECK(std::isnan(num(json.rows[i][j])));
          continue;
        }
        CHECK(csv.rows[i][j] == json.rows[i][j]);
      }
    // Re-emitting the parsed table reproduces the text exactly.
    CHECK(to_csv(csv) == run(base).out);
  }

  TEST_CASE("formatting is shortest round-trip") {
    for (double x : {0.1, 1.0 / 3.0, 2e-308, 6.02214076e23, -0.0, 5e-324}) {
      const std::string text = format_double(x);
      CHECK(std::strtod(text.c_str(), nullptr) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    Table t;
    t.columns = {"x", "label"};
    t.add_row({std::nan(""), std::string("a")});
    t.add_row({INFINITY, std::string("b")});
    const Table back = parse_json(to_json(t));
    CHECK(std::isnan(num(back.rows[0][0])));
    CHECK(std::isnan(num(back.rows[1][0])));  // JSON has no infinity
    const Table csv_back = parse_csv(to_csv(t));
    CHECK(std::isinf(num(csv_back.rows[1][0])));
  }

  TEST_CASE("config file with flag precedence") {
    const std::string path = temp_path("config.txt");
    {
      std::ofstream f(path);
      f << "# nec run\nprofile = schwarzschild:m=1,n=3\nfibre = sphere\ngrid = 7\n";
    }
    const Run r = run({"nec", "--config", path});
    CHECK(r.code == 0);
    CHECK(parse_csv(r.out).rows.size() == 7);
    const Run flag = run({"nec", "--config", path, "--grid", "3"});
    CHECK(parse_csv(flag.out).rows.size() == 3);
    {
      std::ofstream f(path);
      f << "unknown = 1\n";
    }
    CHECK(run({"nec", "--config", path}).code == 2);
    std::remove(path.c_str());
    CHECK(run({"nec", "--config", "/nonexistent/file"}).code == 2);
  }
}
