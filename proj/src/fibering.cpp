#include "torelli/fibering.hpp"

#include "torelli/exact_linalg.hpp"

#include <sstream>

namespace torelli {

SecondFiberingData::SecondFiberingData(SymplecticLattice base2_in, IMat p_in, IMat q_in, Int d_in,
                                       const SymplecticLattice& base1,
                                       const SymplecticLattice& fiber)
    : base2(std::move(base2_in)), p(std::move(p_in)), q(std::move(q_in)), d(std::move(d_in)) {
  if (p.rows() != base1.rank() || p.cols() != base2.rank())
    throw std::invalid_argument("SecondFiberingData: P must be 2h x 2h2");
  if (q.rows() != fiber.rank() || q.cols() != base2.rank())
    throw std::invalid_argument("SecondFiberingData: Q must be 2g x 2h2");
  if (d < 0)
    throw std::invalid_argument("SecondFiberingData: d = [F1].[F2] is never negative");
}

bool check_q_scaled_symplectic(const SecondFiberingData& fd, const SymplecticLattice& fiber) {
  if (fd.q.rows() != fiber.rank())
    throw std::invalid_argument("check_q_scaled_symplectic: Q does not match the fiber rank");
  IMat lhs = fd.q.transpose() * fiber.gram() * fd.q;
  IMat rhs = fd.d * fd.base2.gram();
  return lhs == rhs;
}

std::pair<IVec, IVec> select_complement_pair(const SecondFiberingData& fd,
                                             const SymplecticLattice& fiber, const IVec& z) {
  if (fd.d == 0)
    throw std::invalid_argument("select_complement_pair: requires d != 0 (im Q symplectic)");
  if (z.size() != fiber.rank())
    throw std::invalid_argument("select_complement_pair: z does not match the fiber rank");
  const Index n = fd.base2.rank();
  IVec v = fd.q.transpose() * (fiber.gram() * z);  // u . v = i_F(Qu, z)
  bool zero = true;
  for (Index i = 0; i < n; ++i)
    if (v(i) != 0) zero = false;
  if (zero) return {fd.base2.basis_vector(0), fd.base2.basis_vector(1)};

  IMat kb = integer_kernel_basis(IMat(v.transpose()));
  IMat gram = kb.transpose() * fd.base2.gram() * kb;
  SkewNormalForm nf = skew_normal_form(gram);
  if (nf.blocks.empty() || nf.blocks.front() != 1)
    throw std::logic_error("select_complement_pair: no unimodular hyperbolic pair in z-perp");
  IVec x = kb * nf.u.col(0);
  IVec y = kb * nf.u.col(1);
  return {x, y};
}

namespace {

void check_pair_shapes(const SecondFiberingData& fd, const Ring& ring, const IVec& b,
                       const IVec& z) {
  if (fd.p.rows() != ring.data().base.rank() || fd.q.rows() != ring.data().fiber.rank())
    throw std::invalid_argument("fiber_sigma_pairing: fd does not match the ring's lattices");
  if (b.size() != ring.data().base.rank())
    throw std::invalid_argument("fiber_sigma_pairing: b does not match the base rank");
  if (z.size() != ring.data().fiber.rank())
    throw std::invalid_argument("fiber_sigma_pairing: z does not match the fiber rank");
}

}  // namespace

Int fiber_sigma_pairing(const SecondFiberingData& fd, const Ring& ring, const IVec& b,
                        const IVec& z, const IVec& x, const IVec& y) {
  check_pair_shapes(fd, ring, b, z);
  if (fd.base2.pairing(x, y) != 1)
    throw std::invalid_argument("fiber_sigma_pairing: pair must satisfy i_B2(x,y) = 1");
  const SymplecticLattice& base1 = ring.data().base;
  const SymplecticLattice& fib = ring.data().fiber;
  IVec px = fd.p * x, py = fd.p * y, qx = fd.q * x, qy = fd.q * y;
  return base1.pairing(px, b) * fib.pairing(qy, z) - base1.pairing(py, b) * fib.pairing(qx, z) +
         ring.tau_eval(b, wedge3(fib, qx, qy, z));
}

Int fiber_sigma_pairing(const SecondFiberingData& fd, const Ring& ring, const IVec& b,
                        const IVec& z) {
  auto [x, y] = select_complement_pair(fd, ring.data().fiber, z);
  return fiber_sigma_pairing(fd, ring, b, z, x, y);
}

DeltaValue delta_invariant(const SecondFiberingData& fd, const Ring& ring, const IVec& x,
                           const IVec& y) {
  if (fd.base2.pairing(x, y) != 1)
    throw std::invalid_argument("delta_invariant: pair must satisfy i_B2(x,y) = 1");
  IVec px = fd.p * x, py = fd.p * y, qx = fd.q * x, qy = fd.q * y;
  Int base_term = ring.data().base.pairing(px, py);
  HomologyClass qq = ring.product(ring.product(ring.M(qx), ring.M(qy)), ring.c_class());
  if (!qq.determined()) return {Int(0), false};
  return {base_term + qq.coeffs(0), true};
}

DeltaValue delta_invariant(const SecondFiberingData& fd, const Ring& ring) {
  return delta_invariant(fd, ring, fd.base2.basis_vector(0), fd.base2.basis_vector(1));
}

HomologyClass second_fiber_class(const SecondFiberingData& fd, const Ring& ring) {
  if (!check_q_scaled_symplectic(fd, ring.data().fiber)) {
    std::ostringstream os;
    os << "second_fiber_class: Q^T J_F Q != d J_B2 (d = " << fd.d
       << "); d mismatch is an error, not a warning";
    throw std::invalid_argument(os.str());
  }
  if (fd.d == 0)
    throw std::invalid_argument(
        "second_fiber_class: degenerate data with d = 0 has no transverse second fiber");
  const SymplecticLattice& base = ring.data().base;
  const SymplecticLattice& fib = ring.data().fiber;
  const Index nb = base.rank();
  const Index nf = fib.rank();

  HomologyClass out = ring.zero(2);
  out.coeffs(ring.c_pos()) = fd.d;

  // Σ-coefficients: c(b,z) = -t(b^, z^) where t are the [F2]·Σ pairings
  IMat t(nb, nf);
  for (Index b = 0; b < nb; ++b)
    for (Index z = 0; z < nf; ++z)
      t(b, z) = fiber_sigma_pairing(fd, ring, base.basis_vector(b), fib.basis_vector(z));
  for (Index b = 0; b < nb; ++b)
    for (Index z = 0; z < nf; ++z)
      out.coeffs(ring.sigma_pos(b, z)) =
          -base.dual_sign(b) * fib.dual_sign(z) * t(base.dual_partner(b), fib.dual_partner(z));

  // [F1]-coefficient: delta - d e
  DeltaValue delta = delta_invariant(fd, ring);
  std::optional<Int> e = ring.e_value();
  if (!delta.determined || !e) {
    out.indeterminate.push_back(ring.f_pos());
  } else {
    out.coeffs(ring.f_pos()) = delta.value - fd.d * *e;
  }

  if (out.determined()) {
    // cross-check the expansion against the ring's own pairings
    for (Index b = 0; b < nb; ++b)
      for (Index z = 0; z < nf; ++z) {
        HomologyClass pr = ring.product(out, ring.Sigma(b, z));
        if (!pr.determined() || pr.coeffs(0) != t(b, z))
          throw std::logic_error("second_fiber_class: pairing cross-check failed on Sigma");
      }
    HomologyClass pf = ring.product(out, ring.fiber_class());
    if (pf.coeffs(0) != fd.d)
      throw std::logic_error("second_fiber_class: pairing cross-check failed on [F1]");
    Int g = 0;
    for (Index i = 0; i < out.coeffs.size(); ++i) g = boost::multiprecision::gcd(g, out.coeffs(i));
    if (g > 1) {
      std::ostringstream os;
      os << "PrimitivityViolation: the computed [F2] is divisible by " << g
         << " but p2^!(pt) is a primitive class (d = " << fd.d << ")";
      throw PrimitivityViolation(os.str());
    }
  }
  return out;
}

bool MonodromyData::all_symplectic(const SymplecticLattice& fiber) const {
  for (const auto& g : generators)
    if (!is_symplectic(fiber, g.matrix)) return false;
  return true;
}

bool MonodromyData::is_torelli(const SymplecticLattice& fiber) const {
  IMat id = IMat::Identity(fiber.rank(), fiber.rank());
  for (const auto& g : generators)
    if (g.matrix != id) return false;
  return true;
}

std::string to_string(Verdict::Tag t) {
  switch (t) {
    case Verdict::Tag::UniqueByCoinvariants: return "UniqueByCoinvariants";
    case Verdict::Tag::KernelRigidity: return "KernelRigidity";
    case Verdict::Tag::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict uniqueness_verdict(const SymplecticLattice& fiber, const MonodromyData& mono,
                           const std::optional<SecondFiberingData>& fd) {
  std::vector<IMat> mats;
  for (const auto& g : mono.generators) {
    require_symplectic(fiber, g.matrix, "uniqueness_verdict (generator " + g.label + ")");
    mats.push_back(g.matrix);
  }
  std::vector<Constraint> report;
  int coinv = coinvariants_rank(fiber, mats);
  report.push_back({"coinvariants_rank", std::to_string(coinv), "symplectic.coinvariants_rank"});
  {
    std::ostringstream os;
    auto div = coinvariant_divisors(fiber, mats);
    if (div.empty()) {
      os << "(none: empty image)";
    } else {
      for (size_t i = 0; i < div.size(); ++i) os << (i ? " " : "") << div[i];
    }
    report.push_back({"coinvariant elementary divisors", os.str(),
                      "symplectic.coinvariant_divisors"});
  }

  if (coinv == 0) {
    report.push_back({"conclusion", "(H1 F, Q)_rho = 0: E admits a unique fibering",
                      "fibering.uniqueness_verdict"});
    return Verdict{Verdict::Tag::UniqueByCoinvariants, std::move(report)};
  }

  bool torelli = mono.is_torelli(fiber);
  report.push_back({"torelli", torelli ? "true (all matrices act as the identity)" : "false",
                    "symplectic.is_symplectic"});

  if (mono.declared_johnson_kernel) {
    if (!torelli)
      throw InconsistentDeclaration(
          "uniqueness_verdict: johnson_kernel declared but the symplectic action is nontrivial");
    if (mono.generators.size() < 4 || mono.generators.size() % 2 != 0)
      throw std::invalid_argument(
          "uniqueness_verdict: kernel analysis needs generators a1,b1,...,ah,bh with h >= 2");
    const int h = static_cast<int>(mono.generators.size()) / 2;
    SymplecticLattice base(h);
    std::vector<TriCovector> tau;
    for (const auto& g : mono.generators)
      tau.push_back(g.tau ? *g.tau : zero_tricovector(fiber));
    for (size_t i = 0; i < tau.size(); ++i)
      if (!johnson_trivial(fiber, tau[i]))
        throw InconsistentDeclaration("uniqueness_verdict: johnson_kernel declared but tau(" +
                                      mono.generators[i].label +
                                      ") has nonzero class in wedge^3 H / H");
    report.push_back({"johnson_kernel", "verified: all tau lifts reduce to 0",
                      "exterior.johnson_reduce"});

    Ring ring = Ring::build(BundleData{base, fiber, tau, mono.e_param, true});
    report.push_back({"e = C.C", "0 (Johnson kernel)", "bundle_ring.build_ring"});

    if (fd) {
      bool degenerate = (fd->d == 0);
      bool qok = check_q_scaled_symplectic(*fd, fiber);
      report.push_back({"Q scaled-symplectic",
                        std::string(qok ? "true" : "false") + (degenerate ? " (degenerate: d = 0)" : ""),
                        "fibering.check_Q_scaled_symplectic"});
      if (!degenerate && qok) {
        HomologyClass f2 = second_fiber_class(*fd, ring);  // PrimitivityViolation propagates
        std::ostringstream cls;
        cls << fd->d << "*C";
        report.push_back({"[F2]", cls.str() + " (second fiber class)", "fibering.second_fiber_class"});
        report.push_back({"deg(p1 x p2)", fd->d.str(), "fibering.second_fiber_class"});
        report.push_back({"restricted degrees",
                          "deg(p2|F1) = deg(p1|F2) = [F1].[F2] = " + fd->d.str() +
                              " (the five degree quantities coincide)",
                          "fibering.uniqueness_verdict"});
        bool sigma_zero = true;
        for (Index b = 0; b < base.rank() && sigma_zero; ++b)
          for (Index z = 0; z < fiber.rank(); ++z)
            if (fiber_sigma_pairing(*fd, ring, base.basis_vector(b), fiber.basis_vector(z)) != 0) {
              sigma_zero = false;
              break;
            }
        report.push_back({"[F2].Sigma(b,z)", sigma_zero ? "0 for all (b,z)" : "nonzero (unexpected)",
                          "fibering.fiber_sigma_pairing"});
        report.push_back({"genus relation",
                          "genus(B2) = " + std::to_string(fd->base2.genus()) +
                              (fd->base2.genus() == fiber.genus()
                                   ? " = genus(F1)"
                                   : " != genus(F1) = " + std::to_string(fiber.genus()) +
                                         ": hypothesized second fibering is impossible"),
                          "fibering.uniqueness_verdict"});
        (void)f2;
      }
    } else {
      report.push_back({"deg(p1 x p2)", "= 1 for any second fibering ([F2] = dC is primitive)",
                        "fibering.second_fiber_class"});
      report.push_back({"P", "== 0 (all [F2].Sigma pairings vanish on the kernel)",
                        "fibering.fiber_sigma_pairing"});
      report.push_back({"[F2]", "= C", "fibering.second_fiber_class"});
      report.push_back({"genus relation", "genus(F1) = genus(B2) for any second fibering",
                        "fibering.uniqueness_verdict"});
    }
    report.push_back({"conclusion",
                      "E ~ B1 x B2 if a second fibering exists; a nontrivial Johnson-kernel "
                      "bundle fibers uniquely",
                      "fibering.uniqueness_verdict"});
    return Verdict{Verdict::Tag::KernelRigidity, std::move(report)};
  }

  if (torelli) {
    std::vector<std::string> nonzero;
    for (const auto& g : mono.generators)
      if (g.tau && !johnson_trivial(fiber, *g.tau)) nonzero.push_back(g.label);
    if (!nonzero.empty()) {
      std::string s = "nonzero Johnson class at";
      for (const auto& l : nonzero) s += " " + l;
      report.push_back({"johnson_class", s, "exterior.johnson_reduce"});
    }
  }
  if (fd) {
    report.push_back({"Q scaled-symplectic",
                      check_q_scaled_symplectic(*fd, fiber) ? "true" : "false",
                      "fibering.check_Q_scaled_symplectic"});
    report.push_back({"d", fd->d.str(), "fibering.uniqueness_verdict"});
  }
  report.push_back({"conclusion",
                    "no unique-fibering criterion applies (coinvariants nonzero, no verified "
                    "Johnson-kernel declaration)",
                    "fibering.uniqueness_verdict"});
  return Verdict{Verdict::Tag::Inconclusive, std::move(report)};
}

}  // namespace torelli
