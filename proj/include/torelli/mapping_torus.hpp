#pragma once

// Intersection algebra of H_2 of a Torelli mapping torus: H_2 M = <[F]> ⊕ im i
// with triple products driven by a chosen lift tau of the Johnson image,
// plus the recalibration solve that moves between two lifts.

#include "torelli/common.hpp"
#include "torelli/exterior.hpp"
#include "torelli/symplectic.hpp"

#include <optional>
#include <vector>

namespace torelli {

// Sign of [F]·Σ_x·Σ_y = i(x,y). The underlying orientation audit fixed it
// positive; flip here if that audit is ever redone.
inline constexpr int kFiberTripleSign = +1;

class TorusModel {
 public:
  TorusModel(SymplecticLattice lattice, TriCovector tau_lift);
  const SymplecticLattice& lattice() const { return lattice_; }
  const TriCovector& tau_lift() const { return tau_; }

 private:
  SymplecticLattice lattice_;
  TriCovector tau_;
};

// Element of H_2 M = <[F]> ⊕ {Σ_z}: f_coeff·[F] + Σ_{sigma}.
struct H2Class {
  Int f_coeff;
  IVec sigma;
};

H2Class fiber_h2(const TorusModel& m);                     // [F]
H2Class sigma_h2(const TorusModel& m, const IVec& z);      // Σ_z

// Trilinear alternating extension of
//   Σ_x·Σ_y·Σ_z = tau(x∧y∧z),  [F]·Σ_x·Σ_y = i(x,y),  (two [F] factors) = 0.
Int triple_product(const TorusModel& m, const H2Class& u, const H2Class& v, const H2Class& w);

// Dense (2g+1)^3 tensor over the basis [F], Σ_{a1}, Σ_{b1}, ..., Σ_{bg};
// alternating under argument permutations.
std::vector<Int> intersection_tensor(const TorusModel& m);
Index tensor_index(const TorusModel& m, Index i, Index j, Index k);

// alpha with C*(alpha) = tau_prime - tau_tilde; nullopt (NotEquivalent) when
// the difference is not in im C*. On success the corrected family
// Σ_x = Σ'_x - alpha(x)[F] is re-verified to reproduce tau_tilde on every
// basis triple.
std::optional<IVec> recalibrate(const TorusModel& m, const TriCovector& tau_prime,
                                const TriCovector& tau_tilde);

}  // namespace torelli
