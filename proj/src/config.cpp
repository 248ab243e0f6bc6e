#include "umbilic/config.hpp"

#include <charconv>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umbilic::config {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

double parse_decimal(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) bad("not a number: '" + text + "'");
  return value;
}

}  // namespace

double parse_number(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) bad("empty number");
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  const double den = parse_decimal(trim(text.substr(slash + 1)));
  if (den == 0.0) bad("zero denominator in '" + text + "'");
  return parse_decimal(trim(text.substr(0, slash))) / den;
}

double Spec::number(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) bad("'" + name + "' needs parameter '" + key + "'");
  return parse_number(it->second);
}

double Spec::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Spec::integer_or(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v != static_cast<int>(v)) bad("'" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::vector<double> Spec::numbers(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) bad("'" + name + "' needs parameter '" + key + "'");
  std::vector<double> out;
  for (const auto& item : split(it->second, ';')) out.push_back(parse_number(item));
  return out;
}

Spec parse_spec(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) bad("empty specification");
  Spec spec;
  const auto colon = text.find(':');
  spec.name = trim(text.substr(0, colon));
  if (colon == std::string::npos) return spec;
  for (const auto& item : split(text.substr(colon + 1), ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) bad("expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    if (spec.values.count(key)) bad("duplicate key '" + key + "'");
    spec.values[key] = trim(item.substr(eq + 1));
  }
  return spec;
}

std::vector<PowerTerm> parse_terms(const std::string& text) {
  std::vector<PowerTerm> terms;
  for (const auto& item : split(text, ';')) {
    const auto at = item.find('@');
    if (at == std::string::npos) bad("power term must be coefficient@exponent, got '" + item + "'");
    terms.push_back({parse_number(item.substr(0, at)), parse_number(item.substr(at + 1))});
  }
  if (terms.empty()) bad("empty power-term list");
  return terms;
}

Profile parse_profile(const std::string& text) {
  const Spec s = parse_spec(text);
  const int n = s.integer_or("n", 3);
  if (s.name == "schwarzschild") return Profile::schwarzschild(s.number("m"), n);
  if (s.name == "rn" || s.name == "reissner-nordstrom") return Profile::reissner_nordstrom(s.number("m"), s.number("q"), n);
  if (s.name == "sds") return Profile::schwarzschild_de_sitter(s.number("m"), s.number("lambda"), n);
  if (s.name == "sads") return Profile::schwarzschild_anti_de_sitter(s.number("m"), s.number("lambda"), n);
  if (s.name == "quadratic") return Profile::quadratic_conformal(s.number("C"), n);
  if (s.name == "minkowski") return Profile::minkowski_like(n);
  if (s.name == "custom") {
    const auto it = s.values.find("terms");
    if (it == s.values.end()) bad("custom profile needs terms=");
    return Profile::custom(parse_terms(it->second), n);
  }
  bad("unknown profile family '" + s.name + "'");
}

Fibre parse_fibre(const std::string& text, int n) {
  const Spec s = parse_spec(text);
  if (s.name == "sphere") return make_sphere(n);
  if (s.name == "einstein") return make_einstein(n, s.number("kappa"));
  if (s.name == "eigenvalues") {
    std::optional<double> scalar;
    if (s.has("scalar")) scalar = s.number("scalar");
    return make_eigenvalues(n, s.numbers("values"), scalar);
  }
  if (s.name == "product") {
    const auto dims = s.numbers("dims");
    const auto curv = s.numbers("curv");
    if (dims.size() != curv.size()) bad("product fibre needs as many curvatures as dimensions");
    std::vector<FibreFactor> factors;
    for (std::size_t i = 0; i < dims.size(); ++i) factors.push_back({static_cast<int>(dims[i]), curv[i]});
    return make_product(n, factors);
  }
  bad("unknown fibre kind '" + s.name + "'");
}

GraphSlice parse_graph(const std::string& text, const Profile& profile, const Fibre& fibre, int sign) {
  const Spec s = parse_spec(text);
  if (s.name == "hyperboloid") return GraphSlice::hyperboloid(profile, fibre, s.number("lambda"), sign);
  if (s.name == "cmc") return GraphSlice::cmc(profile, fibre, s.number("C"), s.number_or("c1", 0.0), sign);
  if (s.name == "timesym") return GraphSlice::time_symmetric(profile, fibre);
  if (s.name == "custombt") {
    const auto it = s.values.find("terms");
    if (it == s.values.end()) bad("custombt family needs terms=");
    return GraphSlice::custom_bt(profile, fibre, PowerSum(parse_terms(it->second)), sign);
  }
  bad("unknown graph family '" + s.name + "'");
}

Interval parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) bad("interval must be lo:hi");
  const Interval iv{parse_number(text.substr(0, colon)), parse_number(text.substr(colon + 1))};
  if (!(iv.lo > 0) || !(iv.hi >= iv.lo)) bad("interval must satisfy 0 < lo <= hi");
  return iv;
}

std::map<std::string, std::string> parse_config_file(const std::string& contents) {
  std::map<std::string, std::string> out;
  std::istringstream in(contents);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) bad("config line " + std::to_string(number) + " is not key=value");
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

}  // namespace umbilic::config
