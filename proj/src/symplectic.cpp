#include "torelli/symplectic.hpp"

#include "torelli/exact_linalg.hpp"

#include <sstream>

namespace torelli {

SymplecticLattice::SymplecticLattice(int genus) : genus_(genus) {
  if (genus < 2) {
    std::ostringstream os;
    os << "SymplecticLattice: genus must be >= 2 (got " << genus
       << "); genus 1 bases are outside the standing assumptions";
    throw std::invalid_argument(os.str());
  }
  gram_ = IMat::Zero(rank(), rank());
  for (int j = 0; j < genus_; ++j) {
    gram_(2 * j, 2 * j + 1) = 1;
    gram_(2 * j + 1, 2 * j) = -1;
  }
}

Int SymplecticLattice::pairing(const IVec& x, const IVec& y) const {
  if (x.size() != rank() || y.size() != rank())
    throw std::invalid_argument("pairing: vector length does not match lattice rank");
  return (x.transpose() * gram_ * y)(0, 0);
}

std::string SymplecticLattice::label(Index i) const {
  if (i < 0 || i >= rank()) throw std::invalid_argument("label: index out of range");
  std::ostringstream os;
  os << (i % 2 == 0 ? 'a' : 'b') << (i / 2 + 1);
  return os.str();
}

IVec SymplecticLattice::basis_vector(Index i) const {
  if (i < 0 || i >= rank()) throw std::invalid_argument("basis_vector: index out of range");
  IVec v = IVec::Zero(rank());
  v(i) = 1;
  return v;
}

IVec SymplecticLattice::dual_vector(Index i) const {
  IVec v = IVec::Zero(rank());
  v(dual_partner(i)) = dual_sign(i);
  return v;
}

std::optional<SymplecticWitness> symplectic_violation(const SymplecticLattice& l, const IMat& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank())
    throw std::invalid_argument("symplectic_violation: matrix shape does not match lattice rank");
  IMat p = m.transpose() * l.gram() * m;
  for (Index i = 0; i < l.rank(); ++i)
    for (Index j = 0; j < l.rank(); ++j)
      if (p(i, j) != l.gram()(i, j)) return SymplecticWitness{i, j, p(i, j), l.gram()(i, j)};
  return std::nullopt;
}

bool is_symplectic(const SymplecticLattice& l, const IMat& m) {
  return !symplectic_violation(l, m).has_value();
}

void require_symplectic(const SymplecticLattice& l, const IMat& m, const std::string& context) {
  if (auto w = symplectic_violation(l, m)) {
    std::ostringstream os;
    os << context << ": matrix is not symplectic: (M^T J M)(" << w->row << "," << w->col
       << ") = " << w->lhs << " but J(" << w->row << "," << w->col << ") = " << w->rhs;
    throw std::invalid_argument(os.str());
  }
}

IMat transvection(const SymplecticLattice& l, const IVec& c) {
  if (c.size() != l.rank())
    throw std::invalid_argument("transvection: vector length does not match lattice rank");
  // column j is e_j + pairing(e_j, c) c
  IMat m = IMat::Identity(l.rank(), l.rank());
  IVec jc = l.gram() * c;  // pairing(x, c) = x . jc
  for (Index j = 0; j < l.rank(); ++j) m.col(j) += jc(j) * c;
  return m;
}

namespace {

IMat stacked_differences(const SymplecticLattice& l, const std::vector<IMat>& mats, bool vertical) {
  const Index n = l.rank();
  const Index k = static_cast<Index>(mats.size());
  IMat s = vertical ? IMat(n * std::max<Index>(k, 1), n) : IMat(n, n * std::max<Index>(k, 1));
  s.setZero();
  for (Index t = 0; t < k; ++t) {
    IMat d = mats[static_cast<size_t>(t)] - IMat::Identity(n, n);
    if (vertical)
      s.block(t * n, 0, n, n) = d;
    else
      s.block(0, t * n, n, n) = d;
  }
  return s;
}

void validate_inputs(const SymplecticLattice& l, const std::vector<IMat>& mats, const char* ctx) {
  for (size_t i = 0; i < mats.size(); ++i) {
    std::ostringstream os;
    os << ctx << " (matrix " << i << ")";
    require_symplectic(l, mats[i], os.str());
  }
}

}  // namespace

IMat invariant_basis(const SymplecticLattice& l, const std::vector<IMat>& mats) {
  validate_inputs(l, mats, "invariant_basis");
  if (mats.empty()) return IMat::Identity(l.rank(), l.rank());
  return kernel_basis_over_q(stacked_differences(l, mats, /*vertical=*/true));
}

int coinvariants_rank(const SymplecticLattice& l, const std::vector<IMat>& mats) {
  validate_inputs(l, mats, "coinvariants_rank");
  const Index n = l.rank();
  Index image_rank = mats.empty() ? 0 : rank_over_q(stacked_differences(l, mats, /*vertical=*/false));
  int coinv = static_cast<int>(n - image_rank);
  // independent route: rank of the invariant subspace (symplectic duality)
  int inv = static_cast<int>(invariant_basis(l, mats).cols());
  if (inv != coinv)
    throw std::logic_error("coinvariants_rank: invariant/coinvariant rank cross-check failed");
  return coinv;
}

std::vector<Int> coinvariant_divisors(const SymplecticLattice& l, const std::vector<IMat>& mats) {
  validate_inputs(l, mats, "coinvariant_divisors");
  if (mats.empty()) return {};
  return smith_divisors(stacked_differences(l, mats, /*vertical=*/false));
}

}  // namespace torelli
