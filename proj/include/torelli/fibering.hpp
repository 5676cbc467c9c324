#pragma once

// Fibering analysis: degree bookkeeping of bi-projections, the second-fiber
// class in the coordinates of a Torelli fibering, Johnson-kernel rigidity,
// and uniqueness verdicts.

#include "torelli/bundle_ring.hpp"
#include "torelli/common.hpp"
#include "torelli/exterior.hpp"
#include "torelli/symplectic.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torelli {

// Data of a hypothesized second fibering p2: E -> B2, in the splitting
// coming from the first (Torelli) fibering: P, Q are the projections of
// p2^! H_1 B2 to the base and fiber summands of H_3 E, d = [F1]·[F2].
struct SecondFiberingData {
  SecondFiberingData(SymplecticLattice base2_in, IMat p_in, IMat q_in, Int d_in,
                     const SymplecticLattice& base1, const SymplecticLattice& fiber);
  SymplecticLattice base2;
  IMat p;  // 2h x 2h2
  IMat q;  // 2g x 2h2
  Int d;   // >= 0
};

// Q^T J_F Q == d · J_{B2} exactly.
bool check_q_scaled_symplectic(const SecondFiberingData& fd, const SymplecticLattice& fiber);

// A pair (x,y) in H_1 B2 with i_{B2}(x,y) = 1 and i_F(Qx, z) = i_F(Qy, z) = 0.
// Deterministic: kernel basis in Hermite order, first hyperbolic pair of its
// skew normal form. Requires genus(B2) >= 2 and d != 0.
std::pair<IVec, IVec> select_complement_pair(const SecondFiberingData& fd,
                                             const SymplecticLattice& fiber, const IVec& z);

// [F2]·Σ_{b,z} = i_B1(Px,b) i_F(Qy,z) - i_B1(Py,b) i_F(Qx,z) + tau(b)(Qx∧Qy∧z)
// for the supplied pair (x,y) with i_{B2}(x,y) = 1.
Int fiber_sigma_pairing(const SecondFiberingData& fd, const Ring& ring, const IVec& b,
                        const IVec& z, const IVec& x, const IVec& y);
// Same, with (x,y) = select_complement_pair(fd, z), so the P-terms drop.
Int fiber_sigma_pairing(const SecondFiberingData& fd, const Ring& ring, const IVec& b,
                        const IVec& z);

// delta = i_B1(Px,Py) + Qx·Qy·C for a pair with i_{B2}(x,y) = 1. The value
// of the C-product comes from the ring; off the kernel it can be unknown.
struct DeltaValue {
  Int value;
  bool determined;
};
DeltaValue delta_invariant(const SecondFiberingData& fd, const Ring& ring, const IVec& x,
                           const IVec& y);
DeltaValue delta_invariant(const SecondFiberingData& fd, const Ring& ring);  // pair (e1,e2)

// The class of the second fiber in the deg-2 basis, by Poincare-dual
// expansion of its pairings ([F1] -> d, C -> delta, Σ_{b,z} -> the
// fiber_sigma_pairing values). Throws PrimitivityViolation when the class is
// determined and imprimitive (e.g. dC with d >= 2 on a kernel ring).
HomologyClass second_fiber_class(const SecondFiberingData& fd, const Ring& ring);

struct MonodromyGenerator {
  std::string label;
  IMat matrix;                      // 2g x 2g
  std::optional<TriCovector> tau;   // lift, when the generator is Torelli
};

struct MonodromyData {
  std::vector<MonodromyGenerator> generators;   // a1, b1, ..., ah, bh
  bool declared_johnson_kernel = false;
  std::optional<Int> e_param;

  bool all_symplectic(const SymplecticLattice& fiber) const;
  bool is_torelli(const SymplecticLattice& fiber) const;  // all matrices identity
};

struct Constraint {
  std::string name;
  std::string statement;
  std::string producer;  // operation that produced it
};

struct Verdict {
  enum class Tag { UniqueByCoinvariants, KernelRigidity, Inconclusive };
  Tag tag;
  std::vector<Constraint> report;
};

std::string to_string(Verdict::Tag t);

// Verdict chain: coinvariants criterion first, then Johnson-kernel rigidity,
// else Inconclusive with whatever constraints were computable. When fd is
// supplied the rigidity consequences are computed, not just cited.
Verdict uniqueness_verdict(const SymplecticLattice& fiber, const MonodromyData& mono,
                           const std::optional<SecondFiberingData>& fd = std::nullopt);

}  // namespace torelli
