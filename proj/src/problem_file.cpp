#include "torelli/problem_file.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace torelli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw ParseError(origin + ": " + msg);
}

Int to_int(const json& j, const std::string& origin, const std::string& field) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      fail(origin, "field '" + field + "' is not a decimal integer string");
    }
  }
  fail(origin, "field '" + field + "' must be an integer (number or decimal string)");
}

int to_small_int(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number_integer()) fail(origin, "field '" + field + "' must be an integer");
  return j.get<int>();
}

IVec to_vector(const json& j, Index len, const std::string& origin, const std::string& field) {
  if (!j.is_array()) fail(origin, "field '" + field + "' must be an array");
  if (static_cast<Index>(j.size()) != len) {
    std::ostringstream os;
    os << "field '" << field << "' has length " << j.size() << ", expected " << len;
    fail(origin, os.str());
  }
  IVec v(len);
  for (Index i = 0; i < len; ++i) v(i) = to_int(j[static_cast<size_t>(i)], origin, field);
  return v;
}

IMat to_matrix(const json& j, Index rows, Index cols, const std::string& origin,
               const std::string& field) {
  if (!j.is_array()) fail(origin, "field '" + field + "' must be an array of rows");
  if (static_cast<Index>(j.size()) != rows) {
    std::ostringstream os;
    os << "field '" << field << "' has " << j.size() << " rows, expected " << rows;
    fail(origin, os.str());
  }
  IMat m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    m.row(r) = to_vector(j[static_cast<size_t>(r)], cols, origin, field).transpose();
  return m;
}

const json& require(const json& j, const char* key, const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) fail(origin, std::string("missing required field '") + key + "'");
  return *it;
}

Index binom3(Index n) { return n * (n - 1) * (n - 2) / 6; }

}  // namespace

ProblemFile parse_problem_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be a JSON object");

  ProblemFile pf;
  const json& ver = require(doc, "version", origin);
  if (!ver.is_string()) fail(origin, "field 'version' must be a string");
  pf.version = ver.get<std::string>();
  pf.genus_fiber = to_small_int(require(doc, "genus_fiber", origin), origin, "genus_fiber");
  pf.genus_base = to_small_int(require(doc, "genus_base", origin), origin, "genus_base");
  if (pf.genus_fiber < 2) fail(origin, "genus_fiber must be >= 2 (standing assumption)");
  if (pf.genus_base < 2) fail(origin, "genus_base must be >= 2 (standing assumption)");
  const Index nf = 2 * pf.genus_fiber;
  const Index nb = 2 * pf.genus_base;
  const Index tri = binom3(nf);

  const json& mono = require(doc, "monodromy", origin);
  if (!mono.is_array()) fail(origin, "field 'monodromy' must be an array");
  if (static_cast<Index>(mono.size()) != nb) {
    std::ostringstream os;
    os << "monodromy must list exactly 2*genus_base = " << nb << " generators, got " << mono.size();
    fail(origin, os.str());
  }
  for (Index i = 0; i < nb; ++i) {
    const json& g = mono[static_cast<size_t>(i)];
    if (!g.is_object()) fail(origin, "monodromy entries must be objects");
    std::string expected = (i % 2 == 0 ? "a" : "b") + std::to_string(i / 2 + 1);
    const json& lab = require(g, "generator", origin);
    if (!lab.is_string() || lab.get<std::string>() != expected) {
      std::ostringstream os;
      os << "monodromy generator " << i << " must be labeled '" << expected << "' (labels are "
         << "exactly a1,b1,...,ah,bh in order)";
      fail(origin, os.str());
    }
    MonodromyGenerator mg;
    mg.label = expected;
    mg.matrix = to_matrix(require(g, "matrix", origin), nf, nf, origin, expected + ".matrix");
    if (g.contains("tau")) mg.tau = TriCovector{to_vector(g["tau"], tri, origin, expected + ".tau")};
    pf.monodromy.push_back(std::move(mg));
  }

  if (doc.contains("johnson_kernel")) {
    if (!doc["johnson_kernel"].is_boolean()) fail(origin, "field 'johnson_kernel' must be a boolean");
    pf.johnson_kernel = doc["johnson_kernel"].get<bool>();
  }
  if (doc.contains("e_param")) pf.e_param = to_int(doc["e_param"], origin, "e_param");

  if (doc.contains("second_fibering")) {
    const json& sf = doc["second_fibering"];
    if (!sf.is_object()) fail(origin, "field 'second_fibering' must be an object");
    SecondFiberingSpec spec;
    spec.genus_base2 = to_small_int(require(sf, "genus_base2", origin), origin, "genus_base2");
    if (spec.genus_base2 < 2) fail(origin, "genus_base2 must be >= 2");
    const Index n2 = 2 * spec.genus_base2;
    spec.p = to_matrix(require(sf, "P", origin), nb, n2, origin, "second_fibering.P");
    spec.q = to_matrix(require(sf, "Q", origin), nf, n2, origin, "second_fibering.Q");
    spec.d = to_int(require(sf, "d", origin), origin, "second_fibering.d");
    if (spec.d < 0) fail(origin, "second_fibering.d must be >= 0");
    pf.second_fibering = std::move(spec);
  }
  return pf;
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str(), path);
}

BundleData build_ring_data(const ProblemFile& pf) {
  SymplecticLattice fiber(pf.genus_fiber);
  SymplecticLattice base(pf.genus_base);
  std::vector<TriCovector> tau;
  for (const auto& g : pf.monodromy) {
    if (auto w = symplectic_violation(fiber, g.matrix)) {
      std::ostringstream os;
      os << "generator " << g.label << ": matrix is not symplectic: (M^T J M)(" << w->row << ","
         << w->col << ") = " << w->lhs << " but J(" << w->row << "," << w->col << ") = " << w->rhs;
      throw ParseError(os.str());
    }
    if (g.matrix != IMat(IMat::Identity(fiber.rank(), fiber.rank()))) {
      throw ParseError("generator " + g.label +
                       ": ring construction requires Torelli monodromy (identity action on H1)");
    }
    if (!g.tau)
      throw ParseError("generator " + g.label + ": missing tau lift (the tau table must be complete)");
    tau.push_back(*g.tau);
  }
  return BundleData{std::move(base), std::move(fiber), std::move(tau), pf.e_param, pf.johnson_kernel};
}

MonodromyData monodromy_data(const ProblemFile& pf) {
  MonodromyData md;
  md.generators = pf.monodromy;
  md.declared_johnson_kernel = pf.johnson_kernel;
  md.e_param = pf.e_param;
  return md;
}

std::optional<SecondFiberingData> second_fibering_data(const ProblemFile& pf) {
  if (!pf.second_fibering) return std::nullopt;
  const SecondFiberingSpec& s = *pf.second_fibering;
  return SecondFiberingData(SymplecticLattice(s.genus_base2), s.p, s.q, s.d,
                            SymplecticLattice(pf.genus_base), SymplecticLattice(pf.genus_fiber));
}

TorusFile parse_torus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    fail(path, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) fail(path, "top level must be a JSON object");
  TorusFile tf;
  const json& ver = require(doc, "version", path);
  if (!ver.is_string()) fail(path, "field 'version' must be a string");
  tf.version = ver.get<std::string>();
  tf.genus_fiber = to_small_int(require(doc, "genus_fiber", path), path, "genus_fiber");
  if (tf.genus_fiber < 2) fail(path, "genus_fiber must be >= 2");
  const Index tri = binom3(2 * tf.genus_fiber);
  tf.tau = TriCovector{to_vector(require(doc, "tau", path), tri, path, "tau")};
  if (doc.contains("tau_prime"))
    tf.tau_prime = TriCovector{to_vector(doc["tau_prime"], tri, path, "tau_prime")};
  return tf;
}

}  // namespace torelli
