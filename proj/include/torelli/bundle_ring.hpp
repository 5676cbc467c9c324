#pragma once

// Graded intersection algebra H_*(E,Z) of a surface bundle over a surface
// with Torelli monodromy, assembled from the multiplication table driven by
// the tau lifts. Canonical homology basis per degree:
//   deg 4: [E]                                  (the unit)
//   deg 3: E_b (base basis), M_z (fiber basis)
//   deg 2: [F], Σ_{b,z} (b-major lex), C
//   deg 1: eps_b, mu_z  — dual basis to {E_b, M_z} under the 1/3 pairing
//   deg 0: pt
// Products the input data does not determine (off the Johnson kernel: the
// [F]-coefficient of M_z·M_w and the C·M_z·M_w values; C·C when e is not
// supplied) are returned with flagged coefficient positions, never silent
// zeros.

#include "torelli/common.hpp"
#include "torelli/exterior.hpp"
#include "torelli/symplectic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torelli {

struct BundleData {
  SymplecticLattice base;   // genus h >= 2
  SymplecticLattice fiber;  // genus g >= 2
  std::vector<TriCovector> tau;  // one lift per base basis vector, 2h entries
  std::optional<Int> e_param;    // e = C^2; forced to 0 by johnson_kernel
  bool johnson_kernel = false;   // declared; verified at build
};

struct HomologyClass {
  int degree = 0;
  IVec coeffs;
  std::vector<Index> indeterminate;  // sorted coefficient positions
  std::uint64_t ring_tag = 0;        // fingerprint of the owning ring's data

  bool determined() const { return indeterminate.empty(); }
  bool is_zero() const;  // all coefficients zero and none indeterminate
};

class Ring {
 public:
  static Ring build(BundleData data);

  const BundleData& data() const { return data_; }
  int genus_base() const { return data_.base.genus(); }
  int genus_fiber() const { return data_.fiber.genus(); }
  std::optional<Int> e_value() const { return e_; }

  Index rank(int degree) const;
  std::string label(int degree, Index i) const;

  // canonical classes
  HomologyClass fundamental() const;  // [E]
  HomologyClass point() const;        // pt
  HomologyClass fiber_class() const;  // [F]
  HomologyClass c_class() const;      // C
  HomologyClass E(Index b) const;
  HomologyClass E(const IVec& b) const;
  HomologyClass M(Index z) const;
  HomologyClass M(const IVec& z) const;
  HomologyClass Sigma(Index b, Index z) const;
  HomologyClass Sigma(const IVec& b, const IVec& z) const;
  HomologyClass eps(Index b) const;
  HomologyClass mu(Index z) const;
  HomologyClass zero(int degree) const;
  HomologyClass make(int degree, IVec coeffs) const;

  HomologyClass product(const HomologyClass& u, const HomologyClass& v) const;

  // Intersection pairing H_k ⊗ H_{4-k} -> Z over canonical bases.
  // Throws IndeterminatePairing when an entry is not determined.
  IMat pairing_matrix(int k) const;

  // Structure-constant comparison with the tensor product of the two
  // surface algebras (canonical zero lift). Requires johnson_kernel.
  bool product_ring_compare() const;

  // deg-2 position helpers
  Index sigma_pos(Index b, Index z) const { return 1 + b * data_.fiber.rank() + z; }
  Index f_pos() const { return 0; }
  Index c_pos() const { return rank(2) - 1; }

  struct IndeterminateEntry {
    std::string lhs;       // product whose expansion has unknown data
    std::string position;  // basis position of the unknown coefficient
    std::string kind;      // "higher-johnson" or "symbolic-e"
  };
  // Every indeterminate entry among products of basis classes.
  std::vector<IndeterminateEntry> indeterminacy_report() const;

  // Evaluation helpers used by fibering and the verify suite.
  Int quadruple_mmme(Index x, Index y, Index z, Index b) const;  // M_x·M_y·M_z·E_b
  Int tau_eval(const IVec& b, const TriVector& t) const;         // tau(b)(t), linear in b

 private:
  Ring() = default;
  void build_tables();
  void compute_tag();

  struct Cell {
    std::vector<std::pair<Index, Int>> terms;
    std::vector<Index> indet;
  };
  using Table = std::vector<Cell>;  // indexed i * rank(d2) + j

  const Cell& cell(int d1, int d2, Index i, Index j) const;

  BundleData data_{SymplecticLattice(2), SymplecticLattice(2), {}, {}, false};
  std::optional<Int> e_;                 // known value of C^2, if any
  std::optional<IMat> a_matrix_;         // [F]-coefficients of M_z·M_w (kernel only)
  std::uint64_t tag_ = 0;
  Table t33_, t32_, t22_, t31_, t13_;    // degree-pair tables
};

}  // namespace torelli
