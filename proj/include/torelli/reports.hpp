#pragma once

// Report assembly for the CLI: human-readable tables plus lossless machine
// JSON, and the ring verification suite (duality unimodularity, graded
// commutativity, associativity, lift covariance, C-uniqueness, Gysin
// injectivity).

#include "torelli/bundle_ring.hpp"
#include "torelli/fibering.hpp"
#include "torelli/mapping_torus.hpp"
#include "torelli/problem_file.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace torelli {

struct Report {
  std::string text;
  nlohmann::json machine;
};

std::string format_class(const Ring& r, const HomologyClass& c);

Report ring_report(const Ring& r, const ProblemFile& pf);

struct VerifyOptions {
  std::uint64_t seed = 1;
  int max_genus = 3;          // exhaustive-suite cap
  int covariance_samples = 20;
  bool inject_tau_corruption = false;  // self-test hook: corrupt one tau sign
};

struct VerifyCase {
  std::string name;
  std::string status;  // "pass" | "fail" | "skip"
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyCase> cases;
  bool ok() const;  // no failing case
};

VerifyResult run_verify_suite(const Ring& r, const VerifyOptions& opts);
Report verify_report(const VerifyResult& res, const VerifyOptions& opts, const ProblemFile& pf);

Report fibering_report(const Verdict& v, const ProblemFile& pf);

Report torus_report(const TorusModel& m, const TorusFile& tf);

}  // namespace torelli
