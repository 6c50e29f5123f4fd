#pragma once

#include <array>
#include <cassert>
#include <functional>

#include "rat.hpp"

namespace plumbtop {

// Dense matrices over exact scalars. Sizes in this project stay tiny
// (framing matrices of plumbing trees, rank-r Gram matrices), so no
// attempt at sparsity is made.
template <typename T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using MatZ = Mat<Zint>;
using MatQ = Mat<Rat>;

MatZ matz_mul(const MatZ& x, const MatZ& y);
MatQ matq_mul(const MatQ& x, const MatQ& y);
MatQ matq_from_z(const MatZ& x);

std::vector<Zint> matz_apply(const MatZ& m, const std::vector<Zint>& v);

// Exact determinant by fraction-free (Bareiss) elimination.
Zint determinant(const MatZ& m);

// Exact inverse over Q; fails (returns false) iff singular.
bool invert(const MatQ& m, MatQ& out);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

// Signature data of a symmetric rational matrix via congruence
// diagonalization (no floating point).
Inertia inertia(const MatQ& sym);

struct SmithForm {
  MatZ u, d, v;      // u * a * v = d, u and v unimodular
  MatZ u_inv;        // inverse of u (also unimodular)
  std::vector<Zint> diag;  // nonnegative diagonal of d
};

SmithForm smith_normal_form(const MatZ& a);

// Integer solutions of a x = b:
//   x = particular + kernel_basis * (free integer vector).
// solvable == false means no integer solution exists.
struct IntSolveResult {
  bool solvable = false;
  std::vector<Zint> particular;
  std::vector<std::vector<Zint>> kernel_basis;  // columns
};

IntSolveResult solve_integer(const MatZ& a, const std::vector<Zint>& b);

// Factored form of an integer row system, for solving a x = b repeatedly
// against many right-hand sides with the same a.
class IntSolver {
 public:
  explicit IntSolver(const MatZ& a);
  bool solve(const std::vector<Zint>& b, std::vector<Zint>& particular) const;
  const std::vector<std::vector<Zint>>& kernel() const { return kernel_; }

 private:
  SmithForm sf_;
  int rows_, cols_;
  std::vector<std::vector<Zint>> kernel_;
};

// All integer t with a t^2 + b t + c <= 0, for exact rational a > 0.
// Returns nullopt when the solution set is empty.
std::optional<std::pair<Zint, Zint>> integer_range_of_quadratic(const Rat& a, const Rat& b,
                                                                const Rat& c);

// Complete enumeration of integer points y with
//   y^T A y + 2 b^T y + c <= 0,
// where A is symmetric positive definite over Q. Exact arithmetic
// throughout (recursive coordinate bounding on an LDL^T decomposition).
// The callback receives each point together with the quadratic's value.
class EllipsoidEnumerator {
 public:
  EllipsoidEnumerator(MatQ a, std::vector<Rat> b, Rat c);

  // Value of the quadratic at its real minimizer (lower bound for the
  // lattice minimum).
  Rat real_minimum() const { return min_value_; }

  void enumerate(const std::function<void(const std::vector<Int>&, const Rat&)>& cb) const;

 private:
  int n_;
  MatQ a_;
  std::vector<Rat> b_;
  Rat c_;
  std::vector<Rat> center_;     // real minimizer, solves A y = -b
  Rat min_value_;               // c - b^T A^{-1} b
  MatQ l_;                      // unit lower-triangular, A = L D L^T
  std::vector<Rat> d_;          // positive pivots
  void rec(int i, std::vector<Rat>& partial, std::vector<Int>& y, const Rat& slack,
           const std::function<void(const std::vector<Int>&, const Rat&)>& cb) const;
};

}  // namespace plumbtop
