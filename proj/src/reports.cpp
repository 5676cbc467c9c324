#include "torelli/reports.hpp"

#include "torelli/exact_linalg.hpp"

#include <random>
#include <sstream>

namespace torelli {

namespace {

using nlohmann::json;

json class_json(const Ring& r, const HomologyClass& c) {
  json terms = json::array();
  for (Index i = 0; i < c.coeffs.size(); ++i)
    if (c.coeffs(i) != 0)
      terms.push_back({{"basis", r.label(c.degree, i)}, {"coeff", c.coeffs(i).str()}});
  json indet = json::array();
  for (Index p : c.indeterminate) indet.push_back(r.label(c.degree, p));
  return json{{"degree", c.degree}, {"terms", terms}, {"indeterminate", indet}};
}

}  // namespace

std::string format_class(const Ring& r, const HomologyClass& c) {
  std::ostringstream os;
  bool first = true;
  for (Index i = 0; i < c.coeffs.size(); ++i) {
    const Int& v = c.coeffs(i);
    if (v == 0) continue;
    if (first) {
      if (v == -1) os << "-";
      else if (v != 1) os << v << "*";
    } else {
      os << (v > 0 ? " + " : " - ");
      Int a = abs(v);
      if (a != 1) os << a << "*";
    }
    os << r.label(c.degree, i);
    first = false;
  }
  if (first) os << "0";
  if (!c.indeterminate.empty()) {
    os << " indet{";
    for (size_t k = 0; k < c.indeterminate.size(); ++k) {
      if (k) os << ",";
      os << r.label(c.degree, c.indeterminate[k]);
    }
    os << "}";
  }
  return os.str();
}

Report ring_report(const Ring& r, const ProblemFile& pf) {
  std::ostringstream os;
  json m;
  m["command"] = "ring";
  m["version"] = pf.version;
  m["genus_fiber"] = r.genus_fiber();
  m["genus_base"] = r.genus_base();
  m["johnson_kernel"] = r.data().johnson_kernel;
  m["e"] = r.e_value() ? json(r.e_value()->str()) : json(nullptr);

  os << "ring report\n";
  os << "  fiber genus g = " << r.genus_fiber() << ", base genus h = " << r.genus_base() << "\n";
  os << "  johnson_kernel = " << (r.data().johnson_kernel ? "true" : "false");
  os << ", e = C.C = " << (r.e_value() ? r.e_value()->str() : std::string("symbolic")) << "\n";
  os << "basis\n";
  json basis = json::object();
  json ranks = json::object();
  for (int d = 0; d <= 4; ++d) {
    os << "  deg " << d << " (rank " << r.rank(d) << "):";
    json names = json::array();
    for (Index i = 0; i < r.rank(d); ++i) {
      os << " " << r.label(d, i);
      names.push_back(r.label(d, i));
    }
    os << "\n";
    basis[std::to_string(d)] = names;
    ranks[std::to_string(d)] = r.rank(d);
  }
  m["basis"] = basis;
  m["ranks"] = ranks;

  os << "structure constants ([E] is the unit; listing u.v for deg(u) >= deg(v);\n";
  os << "the rest follow by graded commutativity)\n";
  json constants = json::array();
  const int degree_pairs[4][2] = {{3, 3}, {3, 2}, {3, 1}, {2, 2}};
  for (auto [d1, d2] : degree_pairs) {
    for (Index i = 0; i < r.rank(d1); ++i)
      for (Index j = 0; j < r.rank(d2); ++j) {
        HomologyClass u = r.zero(d1);
        u.coeffs(i) = 1;
        HomologyClass v = r.zero(d2);
        v.coeffs(j) = 1;
        HomologyClass p = r.product(u, v);
        if (p.is_zero()) continue;
        os << "  " << r.label(d1, i) << "." << r.label(d2, j) << " = " << format_class(r, p) << "\n";
        json entry;
        entry["lhs"] = json::array({r.label(d1, i), r.label(d2, j)});
        entry["product"] = class_json(r, p);
        constants.push_back(entry);
      }
  }
  m["constants"] = constants;

  auto indets = r.indeterminacy_report();
  os << "indeterminate entries\n";
  json ij = json::array();
  if (indets.empty()) {
    os << "  none\n";
  } else {
    for (const auto& e : indets) {
      os << "  " << e.lhs << " @ " << e.position << " [" << e.kind << "]\n";
      ij.push_back({{"lhs", e.lhs}, {"position", e.position}, {"kind", e.kind}});
    }
  }
  m["indeterminate_entries"] = ij;
  return Report{os.str(), std::move(m)};
}

bool VerifyResult::ok() const {
  for (const auto& c : cases)
    if (c.status == "fail") return false;
  return true;
}

namespace {

int cup(int degree) { return 4 - degree; }

VerifyCase check_duality(const Ring& r) {
  std::ostringstream detail;
  for (int k = 0; k <= 4; ++k) {
    try {
      IMat m = r.pairing_matrix(k);
      Int d = det_exact(m);
      if (d != 1 && d != -1) {
        detail << "deg " << k << " pairing matrix has det " << d << " (not unimodular)";
        return {"duality-unimodularity", "fail", detail.str()};
      }
      if (k) detail << ", ";
      detail << "deg " << k << " det = " << d;
    } catch (const IndeterminatePairing& e) {
      return {"duality-unimodularity", "skip", e.what()};
    }
  }
  return {"duality-unimodularity", "pass", detail.str()};
}

VerifyCase check_graded_commutativity(const Ring& r) {
  long checked = 0;
  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2)
      for (Index i = 0; i < r.rank(d1); ++i)
        for (Index j = 0; j < r.rank(d2); ++j) {
          HomologyClass u = r.zero(d1);
          u.coeffs(i) = 1;
          HomologyClass v = r.zero(d2);
          v.coeffs(j) = 1;
          HomologyClass uv = r.product(u, v);
          HomologyClass vu = r.product(v, u);
          Int sign = (cup(d1) * cup(d2)) % 2 == 1 ? -1 : 1;
          if (uv.coeffs != IVec(sign * vu.coeffs) || uv.indeterminate != vu.indeterminate) {
            std::ostringstream os;
            os << r.label(d1, i) << "." << r.label(d2, j) << " != sign * reverse";
            return {"graded-commutativity", "fail", os.str()};
          }
          ++checked;
        }
  return {"graded-commutativity", "pass", std::to_string(checked) + " ordered basis pairs"};
}

bool associativity_triple_ok(const Ring& r, int d1, Index i, int d2, Index j, int d3, Index k,
                             std::string* why) {
  HomologyClass u = r.zero(d1);
  u.coeffs(i) = 1;
  HomologyClass v = r.zero(d2);
  v.coeffs(j) = 1;
  HomologyClass w = r.zero(d3);
  w.coeffs(k) = 1;
  HomologyClass lhs = r.product(r.product(u, v), w);
  HomologyClass rhs = r.product(u, r.product(v, w));
  if (lhs.degree != rhs.degree) return true;  // both collapsed to zero classes
  for (Index p = 0; p < lhs.coeffs.size(); ++p) {
    bool li = std::binary_search(lhs.indeterminate.begin(), lhs.indeterminate.end(), p);
    bool ri = std::binary_search(rhs.indeterminate.begin(), rhs.indeterminate.end(), p);
    if (li || ri) continue;  // compare only where both routes are determined
    if (lhs.coeffs(p) != rhs.coeffs(p)) {
      std::ostringstream os;
      os << "(" << r.label(d1, i) << "." << r.label(d2, j) << ")." << r.label(d3, k)
         << " != " << r.label(d1, i) << ".(" << r.label(d2, j) << "." << r.label(d3, k) << ")"
         << " at " << r.label(lhs.degree, p);
      *why = os.str();
      return false;
    }
  }
  return true;
}

VerifyCase check_associativity(const Ring& r, const VerifyOptions& opts, std::mt19937_64& rng) {
  bool exhaustive = std::max(r.genus_base(), r.genus_fiber()) <= opts.max_genus;
  long checked = 0;
  std::string why;
  if (exhaustive) {
    for (int d1 = 1; d1 <= 3; ++d1)
      for (int d2 = 1; d2 <= 3; ++d2)
        for (int d3 = 1; d3 <= 3; ++d3) {
          if (d1 + d2 + d3 < 8) continue;  // both association orders are zero by degree
          for (Index i = 0; i < r.rank(d1); ++i)
            for (Index j = 0; j < r.rank(d2); ++j)
              for (Index k = 0; k < r.rank(d3); ++k) {
                if (!associativity_triple_ok(r, d1, i, d2, j, d3, k, &why))
                  return {"associativity", "fail", why};
                ++checked;
              }
        }
    return {"associativity", "pass", std::to_string(checked) + " basis triples (exhaustive)"};
  }
  std::uniform_int_distribution<int> deg(1, 3);
  for (int t = 0; t < 2000; ++t) {
    int d1 = deg(rng), d2 = deg(rng), d3 = deg(rng);
    std::uniform_int_distribution<Index> pi(0, r.rank(d1) - 1), pj(0, r.rank(d2) - 1),
        pk(0, r.rank(d3) - 1);
    if (!associativity_triple_ok(r, d1, pi(rng), d2, pj(rng), d3, pk(rng), &why))
      return {"associativity", "fail", why};
    ++checked;
  }
  return {"associativity", "pass",
          std::to_string(checked) + " basis triples (sampled; genus above --max-genus)"};
}

VerifyCase check_lift_covariance(const Ring& r, const VerifyOptions& opts, std::mt19937_64& rng) {
  const SymplecticLattice& base = r.data().base;
  const SymplecticLattice& fib = r.data().fiber;
  const Index nb = base.rank();
  const Index nf = fib.rank();
  std::uniform_int_distribution<int> coeff(-2, 2);

  // classification-independent copies: quadruple products do not depend on
  // the kernel flag, and corrupted lifts must not trip declaration checks
  BundleData base_data{base, fib, r.data().tau, Int(0), false};
  Ring plain = Ring::build(base_data);

  for (int s = 0; s < opts.covariance_samples; ++s) {
    std::vector<IVec> k(static_cast<size_t>(nb));
    std::vector<TriCovector> shifted = r.data().tau;
    for (Index b = 0; b < nb; ++b) {
      IVec kb(nf);
      for (Index i = 0; i < nf; ++i) kb(i) = coeff(rng);
      k[static_cast<size_t>(b)] = kb;
      shifted[static_cast<size_t>(b)].c += cstar(fib, kb).c;
    }
    if (opts.inject_tau_corruption) {
      // self-test hook: tamper a sign in the first lift (or plant a stray
      // coordinate when it is zero) so the re-derivation must disagree
      TriCovector& t = shifted.front();
      bool done = false;
      for (Index i = 0; i < t.c.size() && !done; ++i)
        if (t.c(i) != 0) {
          t.c(i) = -t.c(i);
          done = true;
        }
      if (!done) t.c(0) = 1;
    }
    Ring perturbed = Ring::build(BundleData{base, fib, shifted, Int(0), false});
    for (Index b = 0; b < nb; ++b)
      for (Index x = 0; x < nf; ++x)
        for (Index y = x + 1; y < nf; ++y)
          for (Index z = y + 1; z < nf; ++z) {
            Int got = perturbed.quadruple_mmme(x, y, z, b) - plain.quadruple_mmme(x, y, z, b);
            Int want = evaluate(cstar(fib, k[static_cast<size_t>(b)]),
                                wedge3(fib, fib.basis_vector(x), fib.basis_vector(y),
                                       fib.basis_vector(z)));
            if (got != want) {
              std::ostringstream os;
              os << "quadruple M[" << fib.label(x) << "].M[" << fib.label(y) << "].M["
                 << fib.label(z) << "].E[" << base.label(b) << "] shifted by " << got
                 << ", expected C*(k_b) = " << want;
              return {"lift-covariance", "fail", os.str()};
            }
          }
  }
  return {"lift-covariance", "pass",
          std::to_string(opts.covariance_samples) + " random lift perturbations"};
}

VerifyCase check_c_uniqueness(const Ring& r) {
  // Solve for deg-2 classes X with X.Sigma = 0 for all (b,z), X.[F] = 1 and
  // X.M_x = 0 for all x (the conditions that pin C in the kernel case).
  const Index n2 = r.rank(2);
  const Index nb = r.data().base.rank();
  const Index nf = r.data().fiber.rank();
  std::vector<IVec> rows;
  std::vector<Int> rhs;
  auto basis2 = [&](Index i) {
    HomologyClass c = r.zero(2);
    c.coeffs(i) = 1;
    return c;
  };
  try {
    for (Index b = 0; b < nb; ++b)
      for (Index z = 0; z < nf; ++z) {
        IVec row(n2);
        for (Index i = 0; i < n2; ++i) {
          HomologyClass p = r.product(basis2(i), r.Sigma(b, z));
          if (!p.determined()) throw IndeterminatePairing("Sigma row");
          row(i) = p.coeffs(0);
        }
        rows.push_back(row);
        rhs.push_back(0);
      }
    {
      IVec row(n2);
      for (Index i = 0; i < n2; ++i) row(i) = r.product(basis2(i), r.fiber_class()).coeffs(0);
      rows.push_back(row);
      rhs.push_back(1);
    }
    for (Index x = 0; x < nf; ++x) {
      for (Index p = 0; p < r.rank(1); ++p) {
        IVec row(n2);
        for (Index i = 0; i < n2; ++i) {
          HomologyClass pr = r.product(basis2(i), r.M(x));
          if (!pr.determined()) throw IndeterminatePairing("M row");
          row(i) = pr.coeffs(p);
        }
        rows.push_back(row);
        rhs.push_back(0);
      }
    }
  } catch (const IndeterminatePairing&) {
    return {"c-uniqueness", "skip",
            "C.M products are indeterminate off the Johnson kernel; uniqueness not checkable"};
  }
  IMat a(static_cast<Index>(rows.size()), n2);
  IVec b(static_cast<Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    a.row(static_cast<Index>(i)) = rows[i].transpose();
    b(static_cast<Index>(i)) = rhs[i];
  }
  if (kernel_basis_over_q(a).cols() != 0)
    return {"c-uniqueness", "fail", "the defining conditions of C have a nontrivial homogeneous solution"};
  IVec c_coeffs = r.c_class().coeffs;
  if (a * c_coeffs != b)
    return {"c-uniqueness", "fail", "C does not satisfy its defining pairing conditions"};
  return {"c-uniqueness", "pass", "C is the unique solution of its defining linear system"};
}

VerifyCase check_gysin_injectivity(const Ring& r) {
  // b -> E_b into deg 3 and (base deg-2 generator) -> [F] into deg 2
  const Index nb = r.data().base.rank();
  IMat e_map = IMat::Zero(r.rank(3), nb);
  for (Index b = 0; b < nb; ++b) e_map.col(b) = r.E(b).coeffs;
  if (rank_over_q(e_map) != nb)
    return {"gysin-injectivity", "fail", "b -> E_b is not injective"};
  if (r.fiber_class().is_zero())
    return {"gysin-injectivity", "fail", "[F] vanished"};
  return {"gysin-injectivity", "pass", "b -> E_b has full rank; [F] is nonzero"};
}

}  // namespace

VerifyResult run_verify_suite(const Ring& r, const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  VerifyResult res;
  res.cases.push_back(check_duality(r));
  res.cases.push_back(check_graded_commutativity(r));
  res.cases.push_back(check_associativity(r, opts, rng));
  res.cases.push_back(check_lift_covariance(r, opts, rng));
  res.cases.push_back(check_c_uniqueness(r));
  res.cases.push_back(check_gysin_injectivity(r));
  return res;
}

Report verify_report(const VerifyResult& res, const VerifyOptions& opts, const ProblemFile& pf) {
  std::ostringstream os;
  json m;
  m["command"] = "verify";
  m["version"] = pf.version;
  m["seed"] = opts.seed;
  m["max_genus"] = opts.max_genus;
  os << "verify report (seed " << opts.seed << ", max exhaustive genus " << opts.max_genus << ")\n";
  json cases = json::array();
  int pass = 0, failn = 0, skip = 0;
  for (const auto& c : res.cases) {
    os << "  [" << c.status << "] " << c.name << ": " << c.detail << "\n";
    cases.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    if (c.status == "pass") ++pass;
    else if (c.status == "fail") ++failn;
    else ++skip;
  }
  m["cases"] = cases;
  m["ok"] = res.ok();
  os << "result: " << (res.ok() ? "pass" : "FAIL") << " (" << pass << " pass, " << failn
     << " fail, " << skip << " skip)\n";
  return Report{os.str(), std::move(m)};
}

Report fibering_report(const Verdict& v, const ProblemFile& pf) {
  std::ostringstream os;
  json m;
  m["command"] = "fibering";
  m["version"] = pf.version;
  m["verdict"] = to_string(v.tag);
  os << "fibering verdict: " << to_string(v.tag) << "\n";
  os << "constraints\n";
  json cons = json::array();
  for (const auto& c : v.report) {
    os << "  " << c.name << ": " << c.statement << "  [" << c.producer << "]\n";
    cons.push_back({{"name", c.name}, {"statement", c.statement}, {"producer", c.producer}});
  }
  m["constraints"] = cons;
  return Report{os.str(), std::move(m)};
}

Report torus_report(const TorusModel& model, const TorusFile& tf) {
  std::ostringstream os;
  json m;
  m["command"] = "torus";
  m["version"] = tf.version;
  m["genus_fiber"] = tf.genus_fiber;
  const Index n = model.lattice().rank() + 1;
  auto label = [&](Index i) {
    return i == 0 ? std::string("F") : "S[" + model.lattice().label(i - 1) + "]";
  };
  std::vector<Int> tensor = intersection_tensor(model);
  os << "mapping-torus intersection tensor (nonzero entries; alternating)\n";
  json entries = json::array();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        const Int& v = tensor[static_cast<size_t>(tensor_index(model, i, j, k))];
        if (v == 0) continue;
        os << "  " << label(i) << "." << label(j) << "." << label(k) << " = " << v << "\n";
        entries.push_back(
            {{"i", label(i)}, {"j", label(j)}, {"k", label(k)}, {"value", v.str()}});
      }
  if (entries.empty()) os << "  (all entries vanish)\n";
  m["tensor"] = entries;

  if (tf.tau_prime) {
    auto alpha = recalibrate(model, *tf.tau_prime, model.tau_lift());
    if (alpha) {
      os << "recalibration alpha (tau_prime -> tau): [";
      json av = json::array();
      for (Index i = 0; i < alpha->size(); ++i) {
        if (i) os << ", ";
        os << (*alpha)(i);
        av.push_back((*alpha)(i).str());
      }
      os << "]\n";
      m["recalibration"] = {{"status", "ok"}, {"alpha", av}};
    } else {
      os << "recalibration: NotEquivalent (tau_prime and tau differ outside im C*)\n";
      m["recalibration"] = {{"status", "NotEquivalent"}};
    }
  }
  return Report{os.str(), std::move(m)};
}

}  // namespace torelli
