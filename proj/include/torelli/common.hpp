#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <utility>

namespace torelli {

// Exact scalars. All module arithmetic is over Z (or Q where a rational
// subspace is asked for); nothing in the library touches floating point.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IMat = Mat<Int>;
using IVec = Vec<Int>;
using Index = Eigen::Index;

// Raised when a duality pairing matrix has an entry the input data does not
// determine (only possible off the Johnson kernel with e = C^2 unspecified).
struct IndeterminatePairing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a computed fiber class fails primitivity (p^!(pt) is primitive,
// so e.g. [F2] = dC with d >= 2 is impossible).
struct PrimitivityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when declared classification flags contradict the supplied data
// (e.g. johnson_kernel with a tau lift that does not reduce to zero).
struct InconsistentDeclaration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

inline int sign_of_permutation3(int& i, int& j, int& k) {
  // Sorts (i,j,k) in place; returns the sign, or 0 on a repeated index.
  int s = 1;
  if (i > j) { std::swap(i, j); s = -s; }
  if (j > k) { std::swap(j, k); s = -s; }
  if (i > j) { std::swap(i, j); s = -s; }
  if (i == j || j == k) return 0;
  return s;
}

}  // namespace torelli
