#pragma once

// Third exterior power of the fiber lattice: wedge coordinates, the
// contraction C with the symplectic form and its adjoint C*, the quotient
// wedge^3 H / H, and the integer solve behind lift recalibration.
//
// Side conventions: TriVector lives in wedge^3 H, TriCovector in
// Hom(wedge^3 H, Z), both in coordinates of the lexicographic triple basis
// and its dual. The identification of Hom(...)/im C* with wedge^3 H / H is
// the coordinatewise transpose; with the basis conventions here the matrix
// of C* equals the matrix of x |-> x ∧ ω entrywise, so the two sublattices
// coincide in coordinates (asserted by tests, not assumed).

#include "torelli/common.hpp"
#include "torelli/symplectic.hpp"

#include <array>
#include <optional>
#include <vector>

namespace torelli {

// Lexicographically ordered strictly increasing triples over n indices.
class TripleBasis {
 public:
  explicit TripleBasis(Index n);
  Index ambient() const { return n_; }
  Index size() const { return static_cast<Index>(triples_.size()); }
  Index index(Index i, Index j, Index k) const;  // requires i < j < k
  const std::array<Index, 3>& triple(Index t) const { return triples_[static_cast<size_t>(t)]; }

 private:
  Index n_;
  std::vector<std::array<Index, 3>> triples_;
  std::vector<Index> flat_;  // index lookup
};

struct TriVector {
  IVec c;
};
struct TriCovector {
  IVec c;
};

inline bool operator==(const TriVector& a, const TriVector& b) { return a.c == b.c; }
inline bool operator==(const TriCovector& a, const TriCovector& b) { return a.c == b.c; }

TriVector zero_trivector(const SymplecticLattice& l);
TriCovector zero_tricovector(const SymplecticLattice& l);

// Coordinates of x ∧ y ∧ z (trilinear, alternating).
TriVector wedge3(const SymplecticLattice& l, const IVec& x, const IVec& y, const IVec& z);

// C(x∧y∧z) = i(y,z)x + i(z,x)y + i(x,y)z, extended linearly.
IVec contraction(const SymplecticLattice& l, const TriVector& t);

// C*(k)(x∧y∧z) = k(x)i(y,z) + k(y)i(z,x) + k(z)i(x,y).
TriCovector cstar(const SymplecticLattice& l, const IVec& k);

Int evaluate(const TriCovector& f, const TriVector& t);

// Dual-basis covector of a single triple (i<j<k).
TriCovector dual_of_triple(const SymplecticLattice& l, Index i, Index j, Index k);

// Position of the sorted triple (i<j<k) in the lexicographic basis.
Index triple_position(const SymplecticLattice& l, Index i, Index j, Index k);

IMat contraction_matrix(const SymplecticLattice& l);  // 2g x binom(2g,3)
IMat cstar_matrix(const SymplecticLattice& l);        // = contraction_matrix^T
IMat wedge_omega_matrix(const SymplecticLattice& l);  // columns e_i ∧ ω, via wedge3

// Unique alpha with C*(alpha) = f over Z (C* is injective for g >= 2);
// nullopt = NotInImage.
std::optional<IVec> solve_cstar(const SymplecticLattice& l, const TriCovector& f);

// Canonical representative modulo im C*.
struct JohnsonClass {
  TriCovector rep;
  friend bool operator==(const JohnsonClass& a, const JohnsonClass& b) { return a.rep == b.rep; }
};

JohnsonClass johnson_reduce(const SymplecticLattice& l, const TriCovector& f);
bool johnson_trivial(const SymplecticLattice& l, const TriCovector& f);

struct QuotientInfo {
  Index ambient_rank;              // binom(2g,3)
  Index sublattice_rank;           // rank of the wedge-with-omega embedding
  Index quotient_rank;             // ambient - sublattice rank
  std::vector<Int> elementary_divisors;
  bool primitive_embedding;        // all divisors 1
};

// Exact normal-form data of wedge^3 H / (H ∧ ω).
QuotientInfo quotient_info(const SymplecticLattice& l);

// Measured scalar by which C acts on the sublattice H ∧ ω, recorded per
// genus as a measurement rather than asserted as a formula.
Int contraction_omega_scalar(const SymplecticLattice& l);

}  // namespace torelli
