#include "linalg.hpp"

namespace plumbtop {

MatZ matz_mul(const MatZ& x, const MatZ& y) {
  assert(x.cols == y.rows);
  MatZ r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

MatQ matq_mul(const MatQ& x, const MatQ& y) {
  assert(x.cols == y.rows);
  MatQ r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

MatQ matq_from_z(const MatZ& x) {
  MatQ r(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = Rat(x.a[i]);
  return r;
}

std::vector<Zint> matz_apply(const MatZ& m, const std::vector<Zint>& v) {
  assert(static_cast<int>(v.size()) == m.cols);
  std::vector<Zint> r(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
  return r;
}

Zint determinant(const MatZ& m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  if (n == 0) return 1;
  MatZ w = m;
  Zint prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Zint t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w(i, k) = 0;
    }
    prev = w(k, k);
  }
  return sign > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

bool invert(const MatQ& m, MatQ& out) {
  assert(m.rows == m.cols);
  int n = m.rows;
  MatQ w = m;
  out = MatQ::identity(n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (w(i, k) != 0) {
        p = i;
        break;
      }
    if (p < 0) return false;
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(w(k, j), w(p, j));
        std::swap(out(k, j), out(p, j));
      }
    Rat piv = w(k, k);
    for (int j = 0; j < n; ++j) {
      w(k, j) /= piv;
      out(k, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || w(i, k) == 0) continue;
      Rat f = w(i, k);
      for (int j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        out(i, j) -= f * out(k, j);
      }
    }
  }
  return true;
}

Inertia inertia(const MatQ& sym) {
  assert(sym.rows == sym.cols);
  int n = sym.rows;
  MatQ w = sym;
  Inertia res;
  auto swap_rc = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < n; ++c) std::swap(w(i, c), w(j, c));
    for (int r = 0; r < n; ++r) std::swap(w(r, i), w(r, j));
  };
  for (int i = 0; i < n; ++i) {
    int piv = -1;
    for (int k = i; k < n; ++k)
      if (w(k, k) != 0) {
        piv = k;
        break;
      }
    if (piv < 0) {
      // Diagonal all zero: pull a nonzero off-diagonal entry onto the
      // diagonal by the symmetric operation v_k <- v_k + v_l.
      int fk = -1, fl = -1;
      for (int k = i; k < n && fk < 0; ++k)
        for (int l = k + 1; l < n; ++l)
          if (w(k, l) != 0) {
            fk = k;
            fl = l;
            break;
          }
      if (fk < 0) {
        res.zero += n - i;
        return res;
      }
      for (int c = 0; c < n; ++c) w(fk, c) += w(fl, c);
      for (int r = 0; r < n; ++r) w(r, fk) += w(r, fl);
      piv = fk;
    }
    swap_rc(i, piv);
    if (w(i, i) > 0)
      ++res.positive;
    else
      ++res.negative;
    Rat d = w(i, i);
    for (int j = i + 1; j < n; ++j) {
      if (w(j, i) == 0) continue;
      Rat f = w(j, i) / d;
      for (int c = 0; c < n; ++c) w(j, c) -= f * w(i, c);
      for (int r = 0; r < n; ++r) w(r, j) -= f * w(r, i);
    }
  }
  return res;
}

namespace {

struct SnfWork {
  MatZ d, u, v, u_inv;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols; ++c) std::swap(d(i, c), d(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u(i, c), u(j, c));
    for (int r = 0; r < u_inv.rows; ++r) std::swap(u_inv(r, i), u_inv(r, j));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows; ++r) std::swap(d(r, i), d(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v(r, i), v(r, j));
  }
  // row i += t * row j
  void row_add(int i, int j, const Zint& t) {
    for (int c = 0; c < d.cols; ++c) d(i, c) += t * d(j, c);
    for (int c = 0; c < u.cols; ++c) u(i, c) += t * u(j, c);
    for (int r = 0; r < u_inv.rows; ++r) u_inv(r, j) -= t * u_inv(r, i);
  }
  // col i += t * col j
  void col_add(int i, int j, const Zint& t) {
    for (int r = 0; r < d.rows; ++r) d(r, i) += t * d(r, j);
    for (int r = 0; r < v.rows; ++r) v(r, i) += t * v(r, j);
  }
  void row_negate(int i) {
    for (int c = 0; c < d.cols; ++c) d(i, c) = -d(i, c);
    for (int c = 0; c < u.cols; ++c) u(i, c) = -u(i, c);
    for (int r = 0; r < u_inv.rows; ++r) u_inv(r, i) = -u_inv(r, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const MatZ& a) {
  int m = a.rows, n = a.cols;
  SnfWork w;
  w.d = a;
  w.u = MatZ::identity(m);
  w.u_inv = MatZ::identity(m);
  w.v = MatZ::identity(n);

  int t = 0;
  int limit = std::min(m, n);
  while (t < limit) {
    // Find a nonzero pivot in the trailing block.
    int pi = -1, pj = -1;
    for (int i = t; i < m && pi < 0; ++i)
      for (int j = t; j < n; ++j)
        if (w.d(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    // Reduce row/column t until the pivot divides everything it meets.
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (w.d(i, t) == 0) continue;
        Zint q;
        mpz_fdiv_q(q.get_mpz_t(), w.d(i, t).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.row_add(i, t, -q);
        if (w.d(i, t) != 0) {
          w.row_swap(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (w.d(t, j) == 0) continue;
        Zint q;
        mpz_fdiv_q(q.get_mpz_t(), w.d(t, j).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.col_add(j, t, -q);
        if (w.d(t, j) != 0) {
          w.col_swap(t, j);
          clean = false;
        }
      }
    }
    ++t;
  }
  int rank = t;
  for (int i = 0; i < rank; ++i)
    if (w.d(i, i) < 0) w.row_negate(i);
  // Enforce the divisibility chain d_i | d_{i+1}.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < rank; ++i) {
      if (w.d(i + 1, i + 1) % w.d(i, i) == 0) continue;
      changed = true;
      // Classic 2x2 trick: fold d_{i+1} into row i, then re-reduce.
      w.col_add(i, i + 1, 1);
      Zint x = w.d(i, i), y = w.d(i + 1, i);
      Zint g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      // row i <- p*row_i + q*row_{i+1}; keep unimodularity with the
      // complementary update of row i+1.
      Zint xg = x / g, yg = y / g;
      // Build the 2x2 unimodular transform [[p, q], [-yg, xg]].
      MatZ rows(2, w.d.cols);
      for (int c = 0; c < w.d.cols; ++c) {
        rows(0, c) = p * w.d(i, c) + q * w.d(i + 1, c);
        rows(1, c) = -yg * w.d(i, c) + xg * w.d(i + 1, c);
      }
      for (int c = 0; c < w.d.cols; ++c) {
        w.d(i, c) = rows(0, c);
        w.d(i + 1, c) = rows(1, c);
      }
      MatZ urows(2, w.u.cols);
      for (int c = 0; c < w.u.cols; ++c) {
        urows(0, c) = p * w.u(i, c) + q * w.u(i + 1, c);
        urows(1, c) = -yg * w.u(i, c) + xg * w.u(i + 1, c);
      }
      for (int c = 0; c < w.u.cols; ++c) {
        w.u(i, c) = urows(0, c);
        w.u(i + 1, c) = urows(1, c);
      }
      // u_inv gets the inverse transform on columns: [[xg, -q], [yg, p]].
      for (int r = 0; r < w.u_inv.rows; ++r) {
        Zint c0 = w.u_inv(r, i) * xg + w.u_inv(r, i + 1) * yg;
        Zint c1 = -w.u_inv(r, i) * q + w.u_inv(r, i + 1) * p;
        w.u_inv(r, i) = c0;
        w.u_inv(r, i + 1) = c1;
      }
      // Column i+1 may now be dirty in the 2x2 block only.
      Zint q2;
      if (w.d(i, i) != 0) {
        mpz_fdiv_q(q2.get_mpz_t(), w.d(i, i + 1).get_mpz_t(), w.d(i, i).get_mpz_t());
        w.col_add(i + 1, i, -q2);
      }
      if (w.d(i + 1, i + 1) < 0) w.row_negate(i + 1);
      if (w.d(i, i) < 0) w.row_negate(i);
    }
  }

  SmithForm res;
  res.u = w.u;
  res.v = w.v;
  res.d = w.d;
  res.u_inv = w.u_inv;
  res.diag.resize(std::min(m, n));
  for (int i = 0; i < std::min(m, n); ++i) res.diag[i] = w.d(i, i);
  return res;
}

IntSolveResult solve_integer(const MatZ& a, const std::vector<Zint>& b) {
  IntSolver solver(a);
  IntSolveResult res;
  res.kernel_basis = solver.kernel();
  res.solvable = solver.solve(b, res.particular);
  return res;
}

IntSolver::IntSolver(const MatZ& a) : sf_(smith_normal_form(a)), rows_(a.rows), cols_(a.cols) {
  int rank = 0;
  for (const Zint& d : sf_.diag)
    if (d != 0) ++rank;
  for (int j = rank; j < cols_; ++j) {
    std::vector<Zint> col(cols_);
    for (int i = 0; i < cols_; ++i) col[i] = sf_.v(i, j);
    kernel_.push_back(std::move(col));
  }
}

bool IntSolver::solve(const std::vector<Zint>& b, std::vector<Zint>& particular) const {
  assert(static_cast<int>(b.size()) == rows_);
  std::vector<Zint> ub = matz_apply(sf_.u, b);
  std::vector<Zint> y(cols_);
  int lim = std::min(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    Zint d = (i < lim) ? sf_.diag[i] : Zint(0);
    if (d == 0) {
      if (ub[i] != 0) return false;
    } else {
      if (ub[i] % d != 0) return false;
      y[i] = ub[i] / d;
    }
  }
  particular = matz_apply(sf_.v, y);
  return true;
}

std::optional<std::pair<Zint, Zint>> integer_range_of_quadratic(const Rat& a, const Rat& b,
                                                                const Rat& c) {
  assert(a > 0);
  // Scale to integer coefficients A t^2 + B t + C <= 0.
  Zint l = 1;
  mpz_lcm(l.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  Zint A = a.get_num() * (l / a.get_den());
  Zint B = b.get_num() * (l / b.get_den());
  Zint C = c.get_num() * (l / c.get_den());
  Zint disc = B * B - 4 * A * C;
  if (disc < 0) return std::nullopt;
  Zint s;
  mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
  auto eval = [&](const Zint& t) { return A * t * t + B * t + C; };
  Zint lo, hi, two_a = 2 * A;
  mpz_cdiv_q(lo.get_mpz_t(), Zint(-B - s).get_mpz_t(), two_a.get_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), Zint(-B + s).get_mpz_t(), two_a.get_mpz_t());
  while (eval(lo - 1) <= 0) --lo;
  while (lo <= hi && eval(lo) > 0) ++lo;
  while (eval(hi + 1) <= 0) ++hi;
  while (hi >= lo && eval(hi) > 0) --hi;
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

EllipsoidEnumerator::EllipsoidEnumerator(MatQ a, std::vector<Rat> b, Rat c)
    : n_(a.rows), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  assert(a_.rows == a_.cols && static_cast<int>(b_.size()) == n_);
  MatQ ainv;
  if (!invert(a_, ainv)) throw domain_error("ellipsoid form is singular");
  center_.assign(n_, Rat(0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) center_[i] -= ainv(i, j) * b_[j];
  min_value_ = c_;
  for (int i = 0; i < n_; ++i) min_value_ += b_[i] * center_[i];
  // LDL^T with L unit lower triangular.
  l_ = MatQ::identity(n_);
  d_.assign(n_, Rat(0));
  for (int i = 0; i < n_; ++i) {
    Rat di = a_(i, i);
    for (int k = 0; k < i; ++k) di -= l_(i, k) * l_(i, k) * d_[k];
    if (di <= 0) throw domain_error("quadratic form is not positive definite");
    d_[i] = di;
    for (int j = i + 1; j < n_; ++j) {
      Rat x = a_(j, i);
      for (int k = 0; k < i; ++k) x -= l_(j, k) * l_(i, k) * d_[k];
      l_(j, i) = x / di;
    }
  }
}

void EllipsoidEnumerator::enumerate(
    const std::function<void(const std::vector<Int>&, const Rat&)>& cb) const {
  if (min_value_ > 0) return;
  std::vector<Rat> partial(n_, Rat(0));
  std::vector<Int> y(n_, 0);
  Rat slack = -min_value_;
  rec(n_ - 1, partial, y, slack, cb);
}

void EllipsoidEnumerator::rec(
    int i, std::vector<Rat>& partial, std::vector<Int>& y, const Rat& slack,
    const std::function<void(const std::vector<Int>&, const Rat&)>& cb) const {
  if (i < 0) {
    // Quadratic value at y: the consumed part of the slack above the minimum.
    Rat value = min_value_ + ((-min_value_) - slack);
    cb(y, value);
    return;
  }
  // u_i = (y_i - center_i) + sum_{j>i} L(j,i) (y_j - center_j)
  Rat off = -center_[i];
  for (int j = i + 1; j < n_; ++j) off += l_(j, i) * (Rat(y[j]) - center_[j]);
  // d_i (t + off)^2 <= slack
  Rat qa = d_[i];
  Rat qb = 2 * d_[i] * off;
  Rat qc = d_[i] * off * off - slack;
  auto range = integer_range_of_quadratic(qa, qb, qc);
  if (!range) return;
  for (Zint t = range->first; t <= range->second; ++t) {
    y[i] = to_int_checked(t);
    Rat u = Rat(y[i]) + off;
    Rat used = d_[i] * u * u;
    rec(i - 1, partial, y, slack - used, cb);
  }
}

}  // namespace plumbtop
