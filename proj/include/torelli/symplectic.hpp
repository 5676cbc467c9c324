#pragma once

// The symplectic lattice (H, i) with its fixed basis a1,b1,...,ag,bg,
// transvections (homological Dehn twists), and invariant/coinvariant
// computations for a set of symplectic matrices.

#include "torelli/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torelli {

class SymplecticLattice {
 public:
  // Genus >= 2 is a standing assumption of everything downstream; g = 1 is
  // rejected here so no caller has to re-check it.
  explicit SymplecticLattice(int genus);

  int genus() const { return genus_; }
  Index rank() const { return 2 * genus_; }
  const IMat& gram() const { return gram_; }

  Int pairing(const IVec& x, const IVec& y) const;

  std::string label(Index i) const;          // "a1", "b1", ...
  IVec basis_vector(Index i) const;

  // Symplectic dual: the vector v with pairing(e_i, v) = 1.
  // dual(a_j) = b_j, dual(b_j) = -a_j.
  Index dual_partner(Index i) const { return i ^ Index(1); }
  Int dual_sign(Index i) const { return (i % 2 == 0) ? Int(1) : Int(-1); }
  IVec dual_vector(Index i) const;

 private:
  int genus_;
  IMat gram_;
};

// Witness of a violated entry of M^T J M = J, for diagnostics.
struct SymplecticWitness {
  Index row, col;
  Int lhs, rhs;  // (M^T J M)(row,col) = lhs, J(row,col) = rhs
};

std::optional<SymplecticWitness> symplectic_violation(const SymplecticLattice& l, const IMat& m);
bool is_symplectic(const SymplecticLattice& l, const IMat& m);
void require_symplectic(const SymplecticLattice& l, const IMat& m, const std::string& context);

// Homological action of a Dehn twist about a curve in class c:
// x |-> x + pairing(x, c) c.
IMat transvection(const SymplecticLattice& l, const IVec& c);

// Basis of the rational invariant subspace  ∩ ker(M - I), as primitive
// integer columns (empty matrix when the space is zero). Inputs must be
// symplectic.
IMat invariant_basis(const SymplecticLattice& l, const std::vector<IMat>& mats);

// Rank of Q^{2g} / span{(M - I) v}. Computed from the horizontal stack of
// the (M - I) and cross-checked against the invariant rank (they agree for
// symplectic inputs).
int coinvariants_rank(const SymplecticLattice& l, const std::vector<IMat>& mats);

// Elementary divisors of [M_1 - I | M_2 - I | ...]: the integral structure
// of the coinvariant quotient, exposed for diagnostics.
std::vector<Int> coinvariant_divisors(const SymplecticLattice& l, const std::vector<IMat>& mats);

}  // namespace torelli
