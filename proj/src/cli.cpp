#include "umbilic/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "umbilic/config.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/graphs.hpp"
#include "umbilic/kruskal.hpp"
#include "umbilic/nec.hpp"
#include "umbilic/photon.hpp"
#include "umbilic/table.hpp"
#include "umbilic/verify.hpp"

namespace umbilic::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::string profile;
  std::string fibre;
  std::string interval;
  std::size_t grid = 0;
  std::string format = "csv";
  std::string output;
  std::string config;
};

// Flag values beat the config file: a file key is applied only when the
// corresponding option was not given on the command line.
struct Bindings {
  std::map<std::string, std::pair<CLI::Option*, std::function<void(const std::string&)>>> keys;

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, target, help);
    keys[name] = {opt, [&target](const std::string& value) {
                    if constexpr (std::is_same_v<T, std::string>) {
                      target = value;
                    } else if constexpr (std::is_integral_v<T>) {
                      target = static_cast<T>(std::stoll(value));
                    } else {
                      target = static_cast<T>(config::parse_number(value));
                    }
                  }};
    return opt;
  }

  void apply_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    for (const auto& [key, value] : config::parse_config_file(buffer.str())) {
      const auto it = keys.find(key);
      if (it == keys.end()) throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
      if (it->second.first->count() == 0) it->second.second(value);
    }
  }
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::DimensionTooSmall:
    case ErrorCode::InvalidFibre:
    case ErrorCode::InvalidProfile:
    case ErrorCode::NonPositiveRadius:
      return kExitUsage;
    default:
      return kExitCondition;
  }
}

void emit(const Table& table, const Common& c, const std::string& path, std::ostream& out) {
  if (c.format != "csv" && c.format != "json") throw Error(ErrorCode::InvalidConfig, "format must be csv or json");
  const std::string text = c.format == "json" ? to_json(table) : to_csv(table);
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path + "'");
  file << text;
}

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidConfig, "missing required option --" + flag);
}

std::vector<double> radii_for(const Common& c, Interval fallback, std::size_t fallback_grid) {
  const Interval iv = c.interval.empty() ? fallback : config::parse_interval(c.interval);
  const std::size_t grid = c.grid ? c.grid : fallback_grid;
  if (grid == 1 || iv.lo == iv.hi) return {iv.lo};
  return numerics::linear_grid(iv.lo, iv.hi, grid);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

int cmd_nec(const Common& c, std::ostream& out) {
  require(c.profile, "profile");
  require(c.fibre, "fibre");
  const Profile profile = config::parse_profile(c.profile);
  const Fibre fibre = config::parse_fibre(c.fibre, profile.dimension());
  const Interval iv = c.interval.empty() ? Interval{0.5, 10.0} : config::parse_interval(c.interval);
  const std::size_t grid = c.grid ? c.grid : 200;
  const NecReport report = nec_check(profile, fibre, iv, grid);

  Table table;
  table.add_meta("command", "nec");
  table.add_meta("profile", profile.describe());
  table.add_meta("fibre", fibre.describe());
  table.add_meta("min_residual", format_double(report.min_residual));
  table.add_meta("satisfied", yes_no(report.satisfied));
  table.add_meta("witness_radius", format_double(report.witness_radius));
  table.add_meta("witness_eigenvalue", format_double(report.witness_eigenvalue));
  try {
    table.add_meta("h4_boundary", yes_no(h4_boundary_check(profile, fibre)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoHorizon) throw;
    table.add_meta("h4_boundary", "no-horizon");
  }
  table.columns = {"r", "nec_min", "monotone_quantity"};
  for (double r : radii_for(c, iv, grid)) {
    const RadialJet h = profile.eval(r);
    double worst = std::numeric_limits<double>::infinity();
    for (double lambda : fibre.ricci_eigenvalues)
      worst = std::min(worst, nec_expression(h, r, profile.dimension(), lambda));
    table.add_row({r, worst, monotone_quantity(profile, fibre, r, 0)});
  }
  emit(table, c, c.output, out);
  return report.satisfied ? kExitOk : kExitCondition;
}

struct GraphOptions {
  std::string family = "hyperboloid:lambda=1";
  int sign = 1;
};

int cmd_graph(const Common& c, const GraphOptions& g, std::ostream& out) {
  require(c.profile, "profile");
  const Profile profile = config::parse_profile(c.profile);
  const Fibre fibre = config::parse_fibre(c.fibre.empty() ? "sphere" : c.fibre, profile.dimension());
  const GraphSlice graph = config::parse_graph(g.family, profile, fibre, g.sign);

  Table table;
  table.add_meta("command", "graph");
  table.add_meta("profile", profile.describe());
  table.add_meta("fibre", fibre.describe());
  table.add_meta("graph", graph.describe());
  table.add_meta("inner_boundary", format_double(graph.inner_boundary()));
  table.columns = {"s",     "h", "h_T",         "b_T",         "a_T",    "T_prime", "trK",
                   "H",     "P", "theta_plus", "theta_minus", "stcmc",  "classification"};
  for (double s : radii_for(c, {0.5, 10.0}, 50)) {
    if (!graph.in_domain(s)) continue;
    const GraphData d = graph_data(graph, s);
    const ExtrinsicInvariants k = extrinsic_invariants(graph, s);
    const LeafGeometry leaf = leaf_geometry(graph, s);
    table.add_row({s, profile.value(s), d.h_slice, d.b, d.a, d.height_slope.value_or(kNaN), k.trace, leaf.H, leaf.P,
                   leaf.theta_plus, leaf.theta_minus, leaf.stcmc, to_string(leaf.classification)});
  }
  emit(table, c, c.output, out);
  return kExitOk;
}

struct ExtendOptions {
  std::string chart_out;
  int horizon = -1;
};

int cmd_extend(const Common& c, const GraphOptions& g, const ExtendOptions& x, std::ostream& out) {
  require(c.profile, "profile");
  const Profile profile = config::parse_profile(c.profile);
  const Fibre fibre = config::parse_fibre(c.fibre.empty() ? "sphere" : c.fibre, profile.dimension());
  const ZeroStructure zeros = find_zeros(profile);
  if (zeros.empty()) throw Error(ErrorCode::NoHorizon, "profile has no horizon to extend across");
  const auto constants = surface_gravity_constants(zeros);  // DegenerateZero surfaces here
  (void)constants;
  const std::size_t l = x.horizon < 0 ? zeros.zeros.size() - 1 : static_cast<std::size_t>(x.horizon);
  const KruskalChart chart = KruskalChart::build(profile, zeros, l);
  const GraphSlice graph = config::parse_graph(g.family, profile, fibre, g.sign);

  const double rl = chart.horizon();
  const Interval d = chart.domain();
  const Interval fallback{std::max({0.5 * rl, d.lo + 0.02 * (rl - d.lo), graph.inner_boundary() * 1.02 + 1e-6}),
                          std::isfinite(d.hi) ? std::min(3 * rl, d.hi - 0.02 * (d.hi - rl)) : 3 * rl};

  Table curve;
  curve.add_meta("command", "extend");
  curve.add_meta("profile", profile.describe());
  curve.add_meta("graph", graph.describe());
  curve.add_meta("horizon", format_double(rl));
  curve.add_meta("surface_constant", format_double(chart.surface_constant()));
  curve.columns = {"s", "u", "v", "uv_minus_phi"};
  for (double s : radii_for(c, fallback, 60)) {
    if (!chart.contains(s) || !graph.in_domain(s)) continue;
    const KruskalPoint p = extend_graph(graph, chart, s);
    curve.add_row({s, p.u, p.v, p.u * p.v - chart.phi(s)});
  }
  emit(curve, c, c.output, out);

  if (!x.chart_out.empty()) {
    Table atlas;
    atlas.add_meta("command", "extend");
    atlas.add_meta("profile", profile.describe());
    atlas.add_meta("horizon", format_double(rl));
    atlas.columns = {"r", "phi", "conformal_factor", "potential"};
    for (const ChartSample& sample : sample_chart(chart, radii_for(c, fallback, 60)))
      atlas.add_row({sample.r, sample.phi, sample.conformal_factor, sample.potential});
    emit(atlas, c, x.chart_out, out);
  }
  return kExitOk;
}

struct PhotonOptions {
  double anchor = 0.0;
};

int cmd_photon(const Common& c, const PhotonOptions& p, std::ostream& out) {
  require(c.profile, "profile");
  const Profile profile = config::parse_profile(c.profile);
  const Fibre fibre = config::parse_fibre(c.fibre.empty() ? "sphere" : c.fibre, profile.dimension());
  const Interval iv = c.interval.empty() ? Interval{0.5, 10.0} : config::parse_interval(c.interval);
  const GapScan scan = gap_zero_scan(profile, fibre, iv, c.grid ? c.grid : 200);

  Table table;
  table.add_meta("command", "photon");
  table.add_meta("profile", profile.describe());
  table.add_meta("fibre", fibre.describe());
  table.add_meta("dense_condition", yes_no(scan.dense_condition));
  std::ostringstream zero_set;
  for (std::size_t i = 0; i < scan.zero_set.size(); ++i)
    zero_set << (i ? ";" : "") << format_double(scan.zero_set[i].lo) << ":" << format_double(scan.zero_set[i].hi);
  table.add_meta("zero_set", zero_set.str());
  table.columns = {"r"};
  for (std::size_t k = 0; k < fibre.ricci_eigenvalues.size(); ++k) table.columns.push_back("gap_" + std::to_string(k));
  if (p.anchor > 0) table.columns.insert(table.columns.end(), {"s", "psi", "lapse_sq"});
  for (std::size_t i = 0; i < scan.radii.size(); ++i) {
    std::vector<Cell> row{scan.radii[i]};
    for (double e : scan.gaps[i]) row.emplace_back(e);
    if (p.anchor > 0) {
      try {
        const IsotropicPoint q = isotropic_from_areal(profile, p.anchor, scan.radii[i]);
        row.insert(row.end(), {q.s, q.psi, q.lapse_sq});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::HorizonInInterval) throw;
        row.insert(row.end(), {kNaN, kNaN, kNaN});
      }
    }
    table.add_row(std::move(row));
  }
  emit(table, c, c.output, out);
  return scan.dense_condition ? kExitOk : kExitCondition;
}

struct VerifyCli {
  std::string only;
  std::string fault;
  std::size_t radii = 20;
};

int cmd_verify(const Common& c, const VerifyCli& v, std::ostream& out, std::ostream& err) {
  verify::Options options;
  options.only = v.only;
  options.inject_fault = v.fault;
  options.radii_per_region = v.radii;
  const auto results = verify::run(options);

  Table table;
  table.add_meta("command", "verify");
  table.add_meta("group", v.only.empty() ? "all" : v.only);
  if (!v.fault.empty()) table.add_meta("injected_fault", v.fault);
  table.columns = {"invariant", "group", "max_residual", "tolerance", "samples", "status", "detail"};
  std::vector<std::string> failed;
  for (const auto& r : results) {
    table.add_row({r.id, r.group, r.max_residual, r.tolerance, static_cast<double>(r.samples),
                   std::string(r.passed ? "pass" : "fail"), r.detail});
    if (!r.passed) failed.push_back(r.id);
  }
  table.add_meta("failed", std::to_string(failed.size()));
  emit(table, c, c.output, out);
  for (const auto& id : failed) err << "failed invariant: " << id << '\n';
  return failed.empty() ? kExitOk : kExitCondition;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, energy-condition and horizon-extension toolkit for static warped-product spacetimes"};
  app.require_subcommand(1);

  Common common;
  GraphOptions graph_opts;
  ExtendOptions extend_opts;
  PhotonOptions photon_opts;
  VerifyCli verify_opts;
  std::map<CLI::App*, Bindings> bindings;

  const auto add_common = [&](CLI::App* sub, bool with_scan) {
    Bindings& b = bindings[sub];
    b.add(sub, "profile", common.profile, "profile spec, e.g. schwarzschild:m=1,n=3");
    b.add(sub, "fibre", common.fibre, "fibre spec: sphere | einstein:kappa= | eigenvalues:values= | product:dims=,curv=");
    if (with_scan) {
      b.add(sub, "interval", common.interval, "radial interval lo:hi");
      b.add(sub, "grid", common.grid, "number of radial samples");
    }
    b.add(sub, "format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    b.add(sub, "output", common.output, "output path (default stdout)");
    sub->add_option("--config", common.config, "flat key=value file; flags take precedence");
  };

  CLI::App* nec = app.add_subcommand("nec", "null energy condition scan");
  add_common(nec, true);
  CLI::App* graph = app.add_subcommand("graph", "warped-product graph and leaf table");
  add_common(graph, true);
  CLI::App* extend = app.add_subcommand("extend", "continue a graph through a Kruskal chart");
  add_common(extend, true);
  CLI::App* photon = app.add_subcommand("photon", "Ricci eigenvalue gap scan");
  add_common(photon, true);
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, false);

  for (CLI::App* sub : {graph, extend}) {
    bindings[sub].add(sub, "family", graph_opts.family, "hyperboloid:lambda= | cmc:C=,c1= | timesym | custombt:terms=");
    bindings[sub].add(sub, "sign", graph_opts.sign, "orientation of T' (+1 or -1)")->check(CLI::IsMember({-1, 1}));
  }
  bindings[extend].add(extend, "chart-out", extend_opts.chart_out, "write the sampled (r, Phi, F, R) table here");
  bindings[extend].add(extend, "horizon", extend_opts.horizon, "zero index (default: outermost)");
  bindings[photon].add(photon, "anchor", photon_opts.anchor, "isotropic anchor radius r0; adds s, psi, lapse columns");
  bindings[verify].add(verify, "only", verify_opts.only, "restrict to one group");
  bindings[verify].add(verify, "inject-fault", verify_opts.fault, "mutation mode: ric-ss-sign");
  bindings[verify].add(verify, "radii", verify_opts.radii, "oracle radii per region");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!common.config.empty()) bindings[sub].apply_file(common.config);
    if (sub == nec) return cmd_nec(common, out);
    if (sub == graph) return cmd_graph(common, graph_opts, out);
    if (sub == extend) return cmd_extend(common, graph_opts, extend_opts, out);
    if (sub == photon) return cmd_photon(common, photon_opts, out);
    return cmd_verify(common, verify_opts, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace umbilic::cli
