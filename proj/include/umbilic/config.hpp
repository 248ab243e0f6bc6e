#pragma once

#include <map>
#include <string>
#include <vector>

#include "umbilic/fibre.hpp"
#include "umbilic/graphs.hpp"
#include "umbilic/numerics.hpp"
#include "umbilic/profile.hpp"

namespace umbilic::config {

// "name:key=value,key=value". Values keep their raw text; list-valued keys
// separate items with ';' so commas stay reserved for the outer list.
struct Spec {
  std::string name;
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer_or(const std::string& key, int fallback) const;
  std::vector<double> numbers(const std::string& key) const;
};

Spec parse_spec(const std::string& text);

/// Decimal or rational ("2/3") literal.
double parse_number(const std::string& text);

/// "c@p;c@p;..." with rational exponents allowed.
std::vector<PowerTerm> parse_terms(const std::string& text);

/// schwarzschild:m=,n= | rn:m=,q=,n= | sds:m=,lambda=,n= | sads:m=,lambda=,n= |
/// quadratic:C=,n= | minkowski:n= | custom:terms=,n=
Profile parse_profile(const std::string& text);

/// sphere | einstein:kappa= | eigenvalues:values=..;..,scalar= | product:dims=..;..,curv=..;..
Fibre parse_fibre(const std::string& text, int n);

/// hyperboloid:lambda= | cmc:C=,c1= | timesym | custombt:terms=
GraphSlice parse_graph(const std::string& text, const Profile& profile, const Fibre& fibre, int sign);

/// "lo:hi" with 0 < lo <= hi.
Interval parse_interval(const std::string& text);

/// Flat key=value document; blank lines and '#' comments ignored.
std::map<std::string, std::string> parse_config_file(const std::string& contents);

}  // namespace umbilic::config
