#include "torelli/symplectic.hpp"

#include "torelli/exact_linalg.hpp"

#include <doctest.h>

#include <random>

using namespace torelli;

namespace {

IVec random_vec(std::mt19937_64& rng, Index n, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  IVec v(n);
  for (Index i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

}  // namespace

TEST_CASE("lattice construction") {
  SymplecticLattice l(2);
  CHECK(l.rank() == 4);
  CHECK(l.label(0) == "a1");
  CHECK(l.label(3) == "b2");
  CHECK(det_exact(l.gram()) == 1);
  CHECK(l.gram().transpose() == IMat(-l.gram()));
  CHECK_THROWS_AS(SymplecticLattice(1), std::invalid_argument);
  CHECK_THROWS_AS(SymplecticLattice(0), std::invalid_argument);
}

TEST_CASE("pairing on the genus-2 basis") {
  SymplecticLattice l(2);
  CHECK(l.pairing(l.basis_vector(0), l.basis_vector(1)) == 1);   // (a1, b1)
  CHECK(l.pairing(l.basis_vector(0), l.basis_vector(2)) == 0);   // (a1, a2)
  CHECK(l.pairing(l.basis_vector(1), l.basis_vector(0)) == -1);  // (b1, a1)
}

TEST_CASE("pairing is bilinear and antisymmetric") {
  SymplecticLattice l(3);
  std::mt19937_64 rng(17);
  for (Index i = 0; i < l.rank(); ++i)
    for (Index j = 0; j < l.rank(); ++j)
      CHECK(l.pairing(l.basis_vector(i), l.basis_vector(j)) ==
            -l.pairing(l.basis_vector(j), l.basis_vector(i)));
  for (int t = 0; t < 100; ++t) {
    IVec x = random_vec(rng, l.rank()), y = random_vec(rng, l.rank()), z = random_vec(rng, l.rank());
    CHECK(l.pairing(x, y) == -l.pairing(y, x));
    CHECK(l.pairing(x + z, y) == l.pairing(x, y) + l.pairing(z, y));
  }
  IVec bad(5);
  bad.setZero();
  CHECK_THROWS_AS(l.pairing(bad, l.basis_vector(0)), std::invalid_argument);
}

TEST_CASE("dual vectors satisfy pairing(e_i, dual_i) = 1") {
  SymplecticLattice l(3);
  for (Index i = 0; i < l.rank(); ++i)
    CHECK(l.pairing(l.basis_vector(i), l.dual_vector(i)) == 1);
}

TEST_CASE("transvection along a1 at genus 2") {
  SymplecticLattice l(2);
  IMat t = transvection(l, l.basis_vector(0));
  CHECK(IVec(t * l.basis_vector(0)) == l.basis_vector(0));
  CHECK(IVec(t * l.basis_vector(1)) == IVec(l.basis_vector(1) - l.basis_vector(0)));
  CHECK(IVec(t * l.basis_vector(2)) == l.basis_vector(2));
  CHECK(IVec(t * l.basis_vector(3)) == l.basis_vector(3));
}

TEST_CASE("transvection of zero is the identity") {
  SymplecticLattice l(2);
  CHECK(transvection(l, IVec(IVec::Zero(4))) == IMat(IMat::Identity(4, 4)));
}

TEST_CASE("transvections are symplectic and invertible by the opposite twist") {
  std::mt19937_64 rng(23);
  SymplecticLattice l(2);
  for (int t = 0; t < 100; ++t) {
    IVec c = random_vec(rng, l.rank());
    IMat m = transvection(l, c);
    CHECK(is_symplectic(l, m));
    // inverse is x -> x - i(x,c)c, i.e. 2I - m
    IMat inv = 2 * IMat::Identity(l.rank(), l.rank()) - m;
    CHECK(IMat(m * inv) == IMat(IMat::Identity(l.rank(), l.rank())));
    // fixes c and everything orthogonal to c
    CHECK(IVec(m * c) == c);
    for (Index i = 0; i < l.rank(); ++i) {
      IVec v = l.basis_vector(i);
      if (l.pairing(v, c) == 0) CHECK(IVec(m * v) == v);
    }
  }
}

TEST_CASE("invariants: identity fixes everything") {
  SymplecticLattice l(2);
  IMat basis = invariant_basis(l, {IMat::Identity(4, 4)});
  CHECK(basis.cols() == 4);
}

TEST_CASE("invariants of one transvection at genus 2") {
  SymplecticLattice l(2);
  IMat basis = invariant_basis(l, {transvection(l, l.basis_vector(0))});
  REQUIRE(basis.cols() == 3);
  // span{a1, a2, b2}
  CHECK(basis.col(0) == l.basis_vector(0));
  CHECK(basis.col(1) == l.basis_vector(2));
  CHECK(basis.col(2) == l.basis_vector(3));
}

TEST_CASE("four transvections kill the invariants") {
  SymplecticLattice l(2);
  std::vector<IMat> mats;
  for (Index i = 0; i < 4; ++i) mats.push_back(transvection(l, l.basis_vector(i)));
  CHECK(invariant_basis(l, mats).cols() == 0);
  CHECK(coinvariants_rank(l, mats) == 0);
}

TEST_CASE("non-symplectic input is rejected") {
  SymplecticLattice l(2);
  IMat bad = IMat::Identity(4, 4);
  bad(0, 0) = 2;
  CHECK_THROWS_AS(invariant_basis(l, {bad}), std::invalid_argument);
  CHECK_THROWS_AS(coinvariants_rank(l, {bad}), std::invalid_argument);
  auto w = symplectic_violation(l, bad);
  REQUIRE(w.has_value());
  CHECK(w->lhs != w->rhs);
}

TEST_CASE("coinvariants examples and rank-nullity") {
  SymplecticLattice l(2);
  CHECK(coinvariants_rank(l, {IMat::Identity(4, 4)}) == 4);
  CHECK(coinvariants_rank(l, {transvection(l, l.basis_vector(0))}) == 3);

  std::mt19937_64 rng(29);
  for (int t = 0; t < 25; ++t) {
    std::vector<IMat> mats;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) mats.push_back(transvection(l, random_vec(rng, l.rank())));
    int inv = static_cast<int>(invariant_basis(l, mats).cols());
    // image rank of the stacked differences
    IMat h(l.rank(), l.rank() * k);
    for (int i = 0; i < k; ++i)
      h.block(0, i * l.rank(), l.rank(), l.rank()) =
          mats[static_cast<size_t>(i)] - IMat::Identity(l.rank(), l.rank());
    CHECK(inv + rank_over_q(h) == l.rank());
    CHECK(coinvariants_rank(l, mats) == inv);
  }
}

TEST_CASE("coinvariant divisors of a single transvection") {
  SymplecticLattice l(2);
  auto d = coinvariant_divisors(l, {transvection(l, l.basis_vector(0))});
  REQUIRE(d.size() == 1);
  CHECK(d[0] == 1);
}
