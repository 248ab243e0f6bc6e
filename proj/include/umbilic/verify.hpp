#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "umbilic/fibre.hpp"
#include "umbilic/profile.hpp"

namespace umbilic::verify {

struct ZooEntry {
  std::string name;
  Profile profile;
  Fibre fibre;
};

/// Schwarzschild (n = 3, 4), Reissner-Nordstrom, Schwarzschild-AdS, the
/// quadratic conformal profile and flat space, all with round sphere fibres.
std::vector<ZooEntry> default_zoo();

/// Seeded random radii, `per_region` in each component of
/// [r_lo, r_hi] \ {zeros of h}, keeping |h| >= 0.05 so the (t, r) chart stays
/// well conditioned. r_lo and r_hi bracket every zero with margin.
std::vector<double> oracle_radii(const Profile& profile, std::size_t per_region, unsigned seed);

struct InvariantResult {
  std::string id;
  std::string group;
  double max_residual = 0.0;  // in the invariant's own normalization
  double tolerance = 0.0;
  bool passed = true;
  std::size_t samples = 0;
  std::string detail;  // first failure, if any
};

struct Options {
  std::string only;          // group filter; empty runs everything
  std::string inject_fault;  // "ric-ss-sign" flips Ric^T_ss in the slice closed form
  std::size_t radii_per_region = 20;
};

std::vector<std::string> groups();
std::vector<std::string> faults();

/// Runs every invariant of the selected groups over the default zoo.
/// InvalidConfig for an unknown group or fault name.
std::vector<InvariantResult> run(const Options& options);

}  // namespace umbilic::verify
