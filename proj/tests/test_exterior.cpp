#include "torelli/exterior.hpp"

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

TriVector random_tri(std::mt19937_64& rng, const SymplecticLattice& l) {
  TriVector t = zero_trivector(l);
  std::uniform_int_distribution<int> d(-3, 3);
  for (Index i = 0; i < t.c.size(); ++i) t.c(i) = d(rng);
  return t;
}

}  // namespace

TEST_CASE("triple basis indexing round-trips") {
  TripleBasis tb(6);
  CHECK(tb.size() == 20);
  for (Index t = 0; t < tb.size(); ++t) {
    auto [i, j, k] = tb.triple(t);
    CHECK(tb.index(i, j, k) == t);
  }
  CHECK_THROWS_AS(tb.index(2, 1, 3), std::invalid_argument);
}

TEST_CASE("wedge3 basis examples at genus 2") {
  SymplecticLattice l(2);
  TriVector w = wedge3(l, l.basis_vector(0), l.basis_vector(1), l.basis_vector(2));
  // unit vector on the triple (a1,b1,a2)
  CHECK(w.c(triple_position(l, 0, 1, 2)) == 1);
  Int sum = 0;
  for (Index i = 0; i < w.c.size(); ++i) sum += abs(w.c(i));
  CHECK(sum == 1);

  CHECK(wedge3(l, l.basis_vector(0), l.basis_vector(0), l.basis_vector(3)).c ==
        IVec(zero_trivector(l).c));
  CHECK(wedge3(l, l.basis_vector(1), l.basis_vector(0), l.basis_vector(2)).c == IVec(-w.c));
}

TEST_CASE("contraction on decomposables") {
  SymplecticLattice l2(2);
  CHECK(contraction(l2, wedge3(l2, l2.basis_vector(0), l2.basis_vector(1), l2.basis_vector(2))) ==
        l2.basis_vector(2));  // C(a1∧b1∧a2) = a2
  CHECK(contraction(l2, wedge3(l2, l2.basis_vector(0), l2.basis_vector(2), l2.basis_vector(3))) ==
        l2.basis_vector(0));  // C(a1∧a2∧b2) = a1
  SymplecticLattice l3(3);
  CHECK(contraction(l3, wedge3(l3, l3.basis_vector(0), l3.basis_vector(2), l3.basis_vector(4))) ==
        IVec(IVec::Zero(6)));  // C(a1∧a2∧a3) = 0
}

TEST_CASE("cstar on the dual of a2 at genus 2") {
  SymplecticLattice l(2);
  IVec k = IVec::Zero(4);
  k(2) = 1;  // dual of a2
  TriCovector f = cstar(l, k);
  CHECK(f.c(triple_position(l, 0, 1, 2)) == 1);  // C*(k)(a1∧b1∧a2) = 1
  Int sum = 0;
  for (Index i = 0; i < f.c.size(); ++i) sum += abs(f.c(i));
  CHECK(sum == 1);
  CHECK(cstar(l, IVec(IVec::Zero(4))).c == IVec(zero_tricovector(l).c));
  // adjointness on the same pair
  TriVector t = wedge3(l, l.basis_vector(0), l.basis_vector(1), l.basis_vector(2));
  CHECK(evaluate(f, t) == 1);
  IVec ct = contraction(l, t);
  CHECK((k.transpose() * ct)(0, 0) == 1);
}

TEST_CASE("adjointness holds exactly for random inputs at g = 2,3,4") {
  std::mt19937_64 rng(41);
  for (int g = 2; g <= 4; ++g) {
    SymplecticLattice l(g);
    for (int trial = 0; trial < 100; ++trial) {
      IVec k = random_vec(rng, l.rank());
      TriVector t = random_tri(rng, l);
      Int lhs = (k.transpose() * contraction(l, t))(0, 0);
      Int rhs = evaluate(cstar(l, k), t);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("cstar matrix equals the wedge-with-omega matrix") {
  for (int g = 2; g <= 4; ++g) {
    SymplecticLattice l(g);
    CHECK(cstar_matrix(l) == wedge_omega_matrix(l));
  }
}

TEST_CASE("solve_cstar: round trip, zero, and infeasible input") {
  SymplecticLattice l2(2);
  IVec k = IVec::Zero(4);
  k(2) = 1;
  auto back = solve_cstar(l2, cstar(l2, k));
  REQUIRE(back.has_value());
  CHECK(*back == k);

  auto z = solve_cstar(l2, zero_tricovector(l2));
  REQUIRE(z.has_value());
  CHECK(*z == IVec(IVec::Zero(4)));

  SymplecticLattice l3(3);
  CHECK(!solve_cstar(l3, dual_of_triple(l3, 0, 2, 4)).has_value());  // dual of a1∧a2∧a3
}

TEST_CASE("solve_cstar round-trips 100 random covectors per genus") {
  std::mt19937_64 rng(43);
  for (int g = 2; g <= 4; ++g) {
    SymplecticLattice l(g);
    for (int trial = 0; trial < 100; ++trial) {
      IVec k = random_vec(rng, l.rank(), -5, 5);
      auto back = solve_cstar(l, cstar(l, k));
      REQUIRE(back.has_value());
      CHECK(*back == k);
    }
  }
}

TEST_CASE("quotient rank and torsion per genus") {
  {
    QuotientInfo q = quotient_info(SymplecticLattice(2));
    CHECK(q.ambient_rank == 4);
    CHECK(q.quotient_rank == 0);
    CHECK(q.primitive_embedding);
  }
  {
    QuotientInfo q = quotient_info(SymplecticLattice(3));
    CHECK(q.ambient_rank == 20);
    CHECK(q.quotient_rank == 14);
    CHECK(q.primitive_embedding);
  }
  {
    QuotientInfo q = quotient_info(SymplecticLattice(4));
    CHECK(q.ambient_rank == 56);
    CHECK(q.quotient_rank == 48);
    CHECK(q.primitive_embedding);
  }
}

TEST_CASE("johnson reduction: canonical, idempotent, additive mod the sublattice") {
  std::mt19937_64 rng(47);
  SymplecticLattice l(3);
  for (int trial = 0; trial < 50; ++trial) {
    IVec k = random_vec(rng, l.rank());
    // anything in im C* reduces to zero
    CHECK(johnson_trivial(l, cstar(l, k)));
    TriCovector f{random_tri(rng, l).c};
    JohnsonClass c = johnson_reduce(l, f);
    CHECK(johnson_reduce(l, c.rep) == c);  // idempotent
    TriCovector shifted{f.c + cstar(l, k).c};
    CHECK(johnson_reduce(l, shifted) == c);  // class depends only on the coset
    TriCovector g{random_tri(rng, l).c};
    TriCovector sum{f.c + g.c};
    TriCovector rep_sum{johnson_reduce(l, f).rep.c + johnson_reduce(l, g).rep.c};
    CHECK(johnson_reduce(l, sum) == johnson_reduce(l, rep_sum));  // additive mod sublattice
  }
  // generator of the sublattice reduces to zero (coordinate identification
  // makes a1∧ω and C*(dual basis) the same column)
  IMat w = wedge_omega_matrix(l);
  CHECK(johnson_trivial(l, TriCovector{IVec(w.col(0))}));
}

TEST_CASE("genus 2: every class reduces to zero") {
  SymplecticLattice l(2);
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(johnson_trivial(l, TriCovector{random_tri(rng, l).c}));
}

TEST_CASE("contraction restricted to the sublattice is injective; measured scalar") {
  CHECK(contraction_omega_scalar(SymplecticLattice(2)) == 1);
  CHECK(contraction_omega_scalar(SymplecticLattice(3)) == 2);
  CHECK(contraction_omega_scalar(SymplecticLattice(4)) == 3);
  for (int g = 2; g <= 4; ++g) {
    SymplecticLattice l(g);
    IMat composite = contraction_matrix(l) * wedge_omega_matrix(l);
    CHECK(rank_over_q(composite) == l.rank());
  }
}

TEST_CASE("dimension mismatches are rejected") {
  SymplecticLattice l(2);
  IVec bad(6);
  bad.setZero();
  CHECK_THROWS_AS(wedge3(l, bad, l.basis_vector(0), l.basis_vector(1)), std::invalid_argument);
  CHECK_THROWS_AS(contraction(l, TriVector{bad}), std::invalid_argument);
  CHECK_THROWS_AS(cstar(l, bad), std::invalid_argument);
}
