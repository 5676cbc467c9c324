// torelli: exact intersection rings of Torelli-monodromy surface bundles,
// Johnson homomorphism utilities, and fibering-uniqueness verdicts.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 input error.

#include "torelli/exact_linalg.hpp"
#include "torelli/problem_file.hpp"
#include "torelli/reports.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace torelli;
using nlohmann::json;

void write_json_sink(const std::optional<std::string>& path, const json& machine) {
  if (!path) return;
  std::ofstream out(*path);
  if (!out) throw ParseError(*path + ": cannot open JSON sink for writing");
  out << machine.dump(2) << "\n";
}

IVec parse_coords(const std::string& text, Index expect, const std::string& what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
  if (!j.is_array() || static_cast<Index>(j.size()) != expect) {
    std::ostringstream os;
    os << what << ": expected an array of length " << expect;
    throw ParseError(os.str());
  }
  IVec v(expect);
  for (Index i = 0; i < expect; ++i) {
    const json& e = j[static_cast<size_t>(i)];
    if (e.is_number_integer()) v(i) = Int(e.get<long long>());
    else if (e.is_string()) v(i) = Int(e.get<std::string>());
    else throw ParseError(what + ": entries must be integers");
  }
  return v;
}

int cmd_ring(const std::string& file, const std::optional<std::string>& sink) {
  ProblemFile pf = parse_problem_file(file);
  Ring ring = Ring::build(build_ring_data(pf));
  Report rep = ring_report(ring, pf);
  std::cout << rep.text;
  write_json_sink(sink, rep.machine);
  return 0;
}

int cmd_verify(const std::string& file, const std::optional<std::string>& sink,
               const VerifyOptions& opts) {
  ProblemFile pf = parse_problem_file(file);
  Ring ring = Ring::build(build_ring_data(pf));
  VerifyResult res = run_verify_suite(ring, opts);
  Report rep = verify_report(res, opts, pf);
  std::cout << rep.text;
  write_json_sink(sink, rep.machine);
  return res.ok() ? 0 : 1;
}

int cmd_fibering(const std::string& file, const std::optional<std::string>& sink) {
  ProblemFile pf = parse_problem_file(file);
  SymplecticLattice fiber(pf.genus_fiber);
  Verdict v = uniqueness_verdict(fiber, monodromy_data(pf), second_fibering_data(pf));
  Report rep = fibering_report(v, pf);
  std::cout << rep.text;
  write_json_sink(sink, rep.machine);
  return 0;
}

int cmd_torus(const std::string& file, const std::optional<std::string>& sink) {
  TorusFile tf = parse_torus_file(file);
  TorusModel model(SymplecticLattice(tf.genus_fiber), tf.tau);
  Report rep = torus_report(model, tf);
  std::cout << rep.text;
  write_json_sink(sink, rep.machine);
  return 0;
}

struct JohnsonArgs {
  int genus = 0;
  std::string contract, cstar_arg, solve, reduce;
  bool quotient_rank = false;
};

int cmd_johnson(const JohnsonArgs& a, const std::optional<std::string>& sink) {
  SymplecticLattice l(a.genus);
  const Index n = l.rank();
  const Index tri = n * (n - 1) * (n - 2) / 6;
  json m;
  m["command"] = "johnson";
  m["genus"] = a.genus;
  int ops = int(!a.contract.empty()) + int(!a.cstar_arg.empty()) + int(!a.solve.empty()) +
            int(!a.reduce.empty()) + int(a.quotient_rank);
  if (ops != 1)
    throw ParseError("johnson: give exactly one of --contract/--cstar/--solve/--reduce/--quotient-rank");

  if (!a.contract.empty()) {
    TriVector t{parse_coords(a.contract, tri, "--contract")};
    IVec out = contraction(l, t);
    std::cout << "contraction C(t) in the basis a1,b1,...:";
    json arr = json::array();
    for (Index i = 0; i < n; ++i) {
      std::cout << " " << out(i);
      arr.push_back(out(i).str());
    }
    std::cout << "\n";
    m["contraction"] = arr;
  } else if (!a.cstar_arg.empty()) {
    TriCovector out = cstar(l, parse_coords(a.cstar_arg, n, "--cstar"));
    std::cout << "C*(k) in the dual triple basis:";
    json arr = json::array();
    for (Index i = 0; i < tri; ++i) {
      std::cout << " " << out.c(i);
      arr.push_back(out.c(i).str());
    }
    std::cout << "\n";
    m["cstar"] = arr;
  } else if (!a.solve.empty()) {
    auto alpha = solve_cstar(l, TriCovector{parse_coords(a.solve, tri, "--solve")});
    if (alpha) {
      std::cout << "solve_cstar alpha:";
      json arr = json::array();
      for (Index i = 0; i < n; ++i) {
        std::cout << " " << (*alpha)(i);
        arr.push_back((*alpha)(i).str());
      }
      std::cout << "\n";
      m["solve"] = {{"status", "ok"}, {"alpha", arr}};
    } else {
      std::cout << "solve_cstar: NotInImage\n";
      m["solve"] = {{"status", "NotInImage"}};
    }
  } else if (!a.reduce.empty()) {
    JohnsonClass c = johnson_reduce(l, TriCovector{parse_coords(a.reduce, tri, "--reduce")});
    std::cout << "canonical representative mod im C*:";
    json arr = json::array();
    for (Index i = 0; i < tri; ++i) {
      std::cout << " " << c.rep.c(i);
      arr.push_back(c.rep.c(i).str());
    }
    std::cout << "\n";
    m["reduce"] = arr;
  } else {
    QuotientInfo qi = quotient_info(l);
    std::cout << "wedge^3 H / H: ambient rank " << qi.ambient_rank << ", sublattice rank "
              << qi.sublattice_rank << ", quotient rank " << qi.quotient_rank << "\n";
    std::cout << "elementary divisors:";
    json div = json::array();
    for (const Int& d : qi.elementary_divisors) {
      std::cout << " " << d;
      div.push_back(d.str());
    }
    std::cout << "\n";
    std::cout << "primitive embedding: " << (qi.primitive_embedding ? "true" : "false") << "\n";
    m["quotient"] = {{"ambient_rank", qi.ambient_rank},
                     {"sublattice_rank", qi.sublattice_rank},
                     {"quotient_rank", qi.quotient_rank},
                     {"elementary_divisors", div},
                     {"primitive_embedding", qi.primitive_embedding}};
  }
  write_json_sink(sink, m);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact intersection rings of surface bundles with Torelli monodromy"};
  app.require_subcommand(1);

  std::string file;
  std::optional<std::string> sink;
  VerifyOptions vopts;
  JohnsonArgs jargs;

  auto add_common = [&](CLI::App* sub, bool needs_file) {
    if (needs_file) sub->add_option("file", file, "problem file (JSON)")->required();
    sub->add_option("--json", sink, "write the machine-readable report to this path");
  };

  CLI::App* ring = app.add_subcommand("ring", "basis, structure constants, indeterminacy list");
  add_common(ring, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "duality unimodularity, graded commutativity, associativity, lift covariance");
  add_common(verify, true);
  verify->add_option("--seed", vopts.seed, "seed for randomized property sampling");
  verify->add_option("--max-genus", vopts.max_genus, "cap for exhaustive suites (default 3)");
  verify->add_option("--covariance-samples", vopts.covariance_samples,
                     "random perturbations in the lift-covariance check");
  verify->add_flag("--inject-tau-corruption", vopts.inject_tau_corruption,
                   "self-test hook: corrupt one tau sign between build and re-derivation");

  CLI::App* johnson = app.add_subcommand("johnson", "contraction / quotient / solve utilities");
  johnson->add_option("--genus", jargs.genus, "fiber genus g >= 2")->required();
  johnson->add_option("--contract", jargs.contract, "TriVector coords (JSON array)");
  johnson->add_option("--cstar", jargs.cstar_arg, "covector on H (JSON array, length 2g)");
  johnson->add_option("--solve", jargs.solve, "TriCovector coords (JSON array)");
  johnson->add_option("--reduce", jargs.reduce, "TriCovector coords (JSON array)");
  johnson->add_flag("--quotient-rank", jargs.quotient_rank, "rank and divisors of wedge^3 H / H");
  johnson->add_option("--json", sink, "write the machine-readable report to this path");

  CLI::App* torus = app.add_subcommand("torus", "mapping-torus intersection tensor");
  add_common(torus, true);

  CLI::App* fibering = app.add_subcommand("fibering", "uniqueness verdict report");
  add_common(fibering, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ring->parsed()) return cmd_ring(file, sink);
    if (verify->parsed()) return cmd_verify(file, sink, vopts);
    if (johnson->parsed()) return cmd_johnson(jargs, sink);
    if (torus->parsed()) return cmd_torus(file, sink);
    if (fibering->parsed()) return cmd_fibering(file, sink);
  } catch (const PrimitivityViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InconsistentDeclaration& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
