#pragma once

// Quick invariant suite behind `bamlab selftest`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bamlab/environment.hpp"
#include "bamlab/rng.hpp"

namespace bam {

struct SelftestItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Environment on B_{r}(0) (d = 2, double-exponential potential, log-Weibull
/// traps) with xi(0) raised to max_{others} xi + gap.
Environment separated_environment(int r, double mu, double gap, std::uint64_t seed);

std::vector<SelftestItem> run_selftest(std::uint64_t seed, std::ostream& log);

}  // namespace bam
