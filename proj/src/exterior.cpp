#include "torelli/exterior.hpp"

#include "torelli/exact_linalg.hpp"

#include <memory>
#include <sstream>

namespace torelli {

TripleBasis::TripleBasis(Index n) : n_(n) {
  if (n < 3) throw std::invalid_argument("TripleBasis: need at least 3 indices");
  flat_.assign(static_cast<size_t>(n * n * n), -1);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        flat_[static_cast<size_t>((i * n + j) * n + k)] = static_cast<Index>(triples_.size());
        triples_.push_back({i, j, k});
      }
}

Index TripleBasis::index(Index i, Index j, Index k) const {
  if (!(0 <= i && i < j && j < k && k < n_))
    throw std::invalid_argument("TripleBasis::index: not a strictly increasing triple");
  return flat_[static_cast<size_t>((i * n_ + j) * n_ + k)];
}

namespace {

const TripleBasis& triples_for(const SymplecticLattice& l) {
  // one immutable instance per genus; cheap enough to keep around
  static const TripleBasis t2(4), t3(6), t4(8);
  switch (l.genus()) {
    case 2: return t2;
    case 3: return t3;
    case 4: return t4;
    default: {
      thread_local std::vector<std::unique_ptr<TripleBasis>> cache;
      for (auto& p : cache)
        if (p->ambient() == l.rank()) return *p;
      cache.push_back(std::make_unique<TripleBasis>(l.rank()));
      return *cache.back();
    }
  }
}

void check_h_vector(const SymplecticLattice& l, const IVec& v, const char* ctx) {
  if (v.size() != l.rank()) {
    std::ostringstream os;
    os << ctx << ": vector length " << v.size() << " does not match lattice rank " << l.rank();
    throw std::invalid_argument(os.str());
  }
}

void check_tri(const SymplecticLattice& l, const IVec& v, const char* ctx) {
  if (v.size() != triples_for(l).size()) {
    std::ostringstream os;
    os << ctx << ": coordinate length " << v.size() << " does not match binom(2g,3) = "
       << triples_for(l).size();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

TriVector zero_trivector(const SymplecticLattice& l) {
  return TriVector{IVec::Zero(triples_for(l).size())};
}

TriCovector zero_tricovector(const SymplecticLattice& l) {
  return TriCovector{IVec::Zero(triples_for(l).size())};
}

TriVector wedge3(const SymplecticLattice& l, const IVec& x, const IVec& y, const IVec& z) {
  check_h_vector(l, x, "wedge3");
  check_h_vector(l, y, "wedge3");
  check_h_vector(l, z, "wedge3");
  const TripleBasis& tb = triples_for(l);
  TriVector out{IVec::Zero(tb.size())};
  for (Index t = 0; t < tb.size(); ++t) {
    auto [i, j, k] = tb.triple(t);
    // 3x3 determinant of the rows (i,j,k) of [x y z]
    out.c(t) = x(i) * (y(j) * z(k) - y(k) * z(j)) - y(i) * (x(j) * z(k) - x(k) * z(j)) +
               z(i) * (x(j) * y(k) - x(k) * y(j));
  }
  return out;
}

IVec contraction(const SymplecticLattice& l, const TriVector& t) {
  check_tri(l, t.c, "contraction");
  const TripleBasis& tb = triples_for(l);
  IVec out = IVec::Zero(l.rank());
  for (Index p = 0; p < tb.size(); ++p) {
    if (t.c(p) == 0) continue;
    auto [i, j, k] = tb.triple(p);
    const IMat& j_ = l.gram();
    out(i) += t.c(p) * j_(j, k);
    out(j) += t.c(p) * j_(k, i);
    out(k) += t.c(p) * j_(i, j);
  }
  return out;
}

TriCovector cstar(const SymplecticLattice& l, const IVec& k) {
  check_h_vector(l, k, "cstar");
  const TripleBasis& tb = triples_for(l);
  TriCovector out{IVec::Zero(tb.size())};
  const IMat& j_ = l.gram();
  for (Index p = 0; p < tb.size(); ++p) {
    auto [a, b, c] = tb.triple(p);
    out.c(p) = k(a) * j_(b, c) + k(b) * j_(c, a) + k(c) * j_(a, b);
  }
  return out;
}

Int evaluate(const TriCovector& f, const TriVector& t) {
  if (f.c.size() != t.c.size())
    throw std::invalid_argument("evaluate: TriCovector/TriVector length mismatch");
  return (f.c.transpose() * t.c)(0, 0);
}

TriCovector dual_of_triple(const SymplecticLattice& l, Index i, Index j, Index k) {
  TriCovector out = zero_tricovector(l);
  out.c(triples_for(l).index(i, j, k)) = 1;
  return out;
}

Index triple_position(const SymplecticLattice& l, Index i, Index j, Index k) {
  return triples_for(l).index(i, j, k);
}

IMat contraction_matrix(const SymplecticLattice& l) {
  const TripleBasis& tb = triples_for(l);
  IMat m = IMat::Zero(l.rank(), tb.size());
  for (Index t = 0; t < tb.size(); ++t) {
    TriVector e{IVec::Zero(tb.size())};
    e.c(t) = 1;
    m.col(t) = contraction(l, e);
  }
  return m;
}

IMat cstar_matrix(const SymplecticLattice& l) {
  return contraction_matrix(l).transpose();
}

IMat wedge_omega_matrix(const SymplecticLattice& l) {
  const TripleBasis& tb = triples_for(l);
  // omega = sum a_i ∧ b_i; column i is e_i ∧ omega, assembled from wedge3
  IMat m = IMat::Zero(tb.size(), l.rank());
  for (Index i = 0; i < l.rank(); ++i) {
    IVec ei = l.basis_vector(i);
    IVec acc = IVec::Zero(tb.size());
    for (int p = 0; p < l.genus(); ++p)
      acc += wedge3(l, ei, l.basis_vector(2 * p), l.basis_vector(2 * p + 1)).c;
    m.col(i) = acc;
  }
  return m;
}

std::optional<IVec> solve_cstar(const SymplecticLattice& l, const TriCovector& f) {
  check_tri(l, f.c, "solve_cstar");
  return solve_integer(cstar_matrix(l), f.c);
}

JohnsonClass johnson_reduce(const SymplecticLattice& l, const TriCovector& f) {
  check_tri(l, f.c, "johnson_reduce");
  ColHermite ch = col_hermite(cstar_matrix(l));
  return JohnsonClass{TriCovector{reduce_mod_column_lattice(ch, f.c)}};
}

bool johnson_trivial(const SymplecticLattice& l, const TriCovector& f) {
  IVec r = johnson_reduce(l, f).rep.c;
  for (Index i = 0; i < r.size(); ++i)
    if (r(i) != 0) return false;
  return true;
}

QuotientInfo quotient_info(const SymplecticLattice& l) {
  IMat w = wedge_omega_matrix(l);
  QuotientInfo info;
  info.ambient_rank = w.rows();
  info.elementary_divisors = smith_divisors(w);
  info.sublattice_rank = static_cast<Index>(info.elementary_divisors.size());
  info.quotient_rank = info.ambient_rank - info.sublattice_rank;
  info.primitive_embedding = true;
  for (const Int& d : info.elementary_divisors)
    if (d != 1) info.primitive_embedding = false;
  return info;
}

Int contraction_omega_scalar(const SymplecticLattice& l) {
  IMat w = wedge_omega_matrix(l);
  std::optional<Int> scalar;
  for (Index i = 0; i < l.rank(); ++i) {
    IVec img = contraction(l, TriVector{IVec(w.col(i))});
    for (Index r = 0; r < l.rank(); ++r) {
      if (r == i) continue;
      if (img(r) != 0)
        throw std::logic_error("contraction_omega_scalar: image not a scalar multiple");
    }
    if (!scalar)
      scalar = img(i);
    else if (*scalar != img(i))
      throw std::logic_error("contraction_omega_scalar: scalar differs across basis vectors");
  }
  return *scalar;
}

}  // namespace torelli
