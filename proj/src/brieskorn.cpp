#include "brieskorn.hpp"

#include <numeric>

namespace plumbtop {

namespace {

Int mod_inverse(Int a, Int m) {
  Zint g, p, q;
  Zint za = ((a % m) + m) % m, zm = m;
  mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), za.get_mpz_t(), zm.get_mpz_t());
  if (g != 1) throw domain_error("modular inverse does not exist");
  Zint r = ((p % zm) + zm) % zm;
  return to_int_checked(r);
}

std::vector<Int> negative_continued_fraction(Int p, Int q) {
  // p/q = k1 - 1/(k2 - 1/(...)), all k_j >= 2 for 0 < q < p.
  std::vector<Int> ks;
  while (true) {
    Int k = (p + q - 1) / q;  // ceil for positive q
    ks.push_back(k);
    Int r = k * q - p;
    if (r == 0) break;
    p = q;
    q = r;
  }
  return ks;
}

}  // namespace

std::pair<BrieskornData, PlumbingTree> brieskorn_plumbing(Int b1, Int b2, Int b3) {
  if (!(2 <= b1 && b1 < b2 && b2 < b3))
    throw domain_error("brieskorn: need 2 <= b1 < b2 < b3");
  if (std::gcd(b1, b2) != 1 || std::gcd(b1, b3) != 1 || std::gcd(b2, b3) != 1)
    throw domain_error("brieskorn: b1, b2, b3 must be pairwise coprime");

  BrieskornData data;
  data.b = {b1, b2, b3};
  Int d = b1 * b2 * b3;
  Rat sum = -Rat(1, d);
  for (int i = 0; i < 3; ++i) {
    Int bi = data.b[i];
    Int mi = d / bi;
    Int ai = ((-mod_inverse(mi, bi)) % bi + bi) % bi;
    assert(ai > 0 && ai < bi);
    data.a[i] = ai;
    data.legs[i] = negative_continued_fraction(bi, ai);
    sum -= Rat(ai, bi);
  }
  assert(sum.get_den() == 1);
  data.b0 = to_int_checked(Zint(sum.get_num()));
  if (data.b0 >= 0) throw domain_error("brieskorn: central label failed to be negative");

  PlumbingTree t;
  t.m.push_back(data.b0);
  std::array<int, 3> terminal{};
  for (int i = 0; i < 3; ++i) {
    int prev = 0;
    for (Int kj : data.legs[i]) {
      t.m.push_back(-kj);
      int cur = t.size() - 1;
      t.edges.push_back({prev, cur});
      prev = cur;
    }
    terminal[i] = prev;
  }
  FramingData f = framing(t);
  if (f.pi != 0 || f.sigma != -t.size())
    throw domain_error("brieskorn: constructed tree is not negative definite");
  Zint adet = f.det > 0 ? f.det : Zint(-f.det);
  if (adet != 1) throw domain_error("brieskorn: constructed tree is not a homology sphere");
  data.s = t.size();
  data.trace = f.trace;

  for (int i = 0; i < 3; ++i) {
    int del = terminal[i];
    MatZ sub(t.size() - 1, t.size() - 1);
    for (int r = 0, rr = 0; r < t.size(); ++r) {
      if (r == del) continue;
      for (int c = 0, cc = 0; c < t.size(); ++c) {
        if (c == del) continue;
        sub(rr, cc) = f.b(r, c);
        ++cc;
      }
      ++rr;
    }
    Zint hd = determinant(sub);
    data.h[i] = hd > 0 ? hd : Zint(-hd);
  }

  Rat inner = Rat(3 * data.s) + Rat(data.trace);
  for (int i = 0; i < 3; ++i) {
    inner += Rat(d, data.b[i] * data.b[i]);
    inner -= Rat(data.h[i]);
  }
  data.c_over_rho = -inner / 2;
  return {data, t};
}

QSeries psi_series(const AdmissibleSeries& p, Int d, const IntVec& eta, const Rat& cap) {
  const auto& lat = *p.lattice();
  QSeries out;
  out.truncation = cap;
  if (cap < 0) return out;
  int r = lat.rank;
  for (int wi = 0; wi < lat.weyl_order(); ++wi) {
    WeylRef w{wi, false};
    IntVec eta_w = lat.apply(w, eta);
    int sw = lat.sign_of(w);
    // alpha = -2rho + 2u; exponent (1/8d) |2d u + off|^2 with
    // off = eta_w - d * 2rho.
    IntVec off = eta_w - d * lat.two_rho;
    MatQ a(r, r);
    std::vector<Rat> bvec(r, Rat(0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        a(i, j) = Rat(lat.gram(i, j)) * d / 2;
        bvec[i] += Rat(lat.gram(i, j)) * off[j] / 4;
      }
    Rat c0 = Rat(lat.pairing_int(off, off)) / (8 * d) - cap;
    EllipsoidEnumerator en(a, bvec, c0);
    en.enumerate([&](const std::vector<Int>& u, const Rat& value) {
      IntVec alpha(r);
      for (int i = 0; i < r; ++i) alpha[i] = -lat.two_rho[i] + 2 * u[i];
      Rat coeff = p.coefficient(alpha);
      if (coeff == 0) return;
      out.add(value + cap, coeff * sw);
    });
  }
  return out;
}

QSeries brieskorn_y(const BrieskornData& data, const AdmissibleSeries& p, const Rat& cap) {
  const auto& lat = *p.lattice();
  Rat c = data.constant_c(lat);
  QSeries out;
  out.truncation = cap;
  Int b1 = data.b[0], b2 = data.b[1], b3 = data.b[2];
  Int d = b1 * b2 * b3;
  for (int i1 = 0; i1 < lat.weyl_order(); ++i1)
    for (int i2 = 0; i2 < lat.weyl_order(); ++i2) {
      WeylRef w1{i1, false}, w2{i2, false};
      int sign = lat.sign_of(w1) * lat.sign_of(w2);
      IntVec eta = b2 * b3 * lat.apply(w1, lat.two_rho) + b1 * b3 * lat.apply(w2, lat.two_rho) +
                   (b1 * b2) * lat.two_rho;
      QSeries psi = psi_series(p, d, eta, cap - c);
      for (const auto& [e, co] : psi.terms) out.add(e + c, co * sign);
    }
  return out;
}

}  // namespace plumbtop
