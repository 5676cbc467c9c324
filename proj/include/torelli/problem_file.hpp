#pragma once

// Problem-file parsing and validation (JSON). One structured document drives
// every CLI subcommand; see README for the schema.

#include "torelli/bundle_ring.hpp"
#include "torelli/fibering.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torelli {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SecondFiberingSpec {
  int genus_base2 = 0;
  IMat p, q;
  Int d;
};

struct ProblemFile {
  std::string version;
  int genus_fiber = 0;
  int genus_base = 0;
  std::vector<MonodromyGenerator> monodromy;  // labels a1,b1,...,ah,bh in order
  bool johnson_kernel = false;
  std::optional<Int> e_param;
  std::optional<SecondFiberingSpec> second_fibering;
};

ProblemFile parse_problem_file(const std::string& path);
ProblemFile parse_problem_text(const std::string& text, const std::string& origin);

// Assembly helpers. build_ring_data requires a tau entry on every generator
// and Torelli matrices; monodromy_data carries everything through.
BundleData build_ring_data(const ProblemFile& pf);
MonodromyData monodromy_data(const ProblemFile& pf);
std::optional<SecondFiberingData> second_fibering_data(const ProblemFile& pf);

struct TorusFile {
  std::string version;
  int genus_fiber = 0;
  TriCovector tau;
  std::optional<TriCovector> tau_prime;
};

TorusFile parse_torus_file(const std::string& path);

}  // namespace torelli
