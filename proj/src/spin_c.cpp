#include "spin_c.hpp"

#include <algorithm>

namespace plumbtop {

SpincRep delta_rep(const PlumbingTree& t, const RootLatticeData& lat) {
  auto deg = t.degrees();
  SpincRep a;
  a.comp.resize(t.size());
  for (int v = 0; v < t.size(); ++v) a.comp[v] = (2 - static_cast<Int>(deg[v])) * lat.two_rho;
  return a;
}

SpincSpace::SpincSpace(PlumbingTree tree, LatticePtr lat)
    : tree_(std::move(tree)), lat_(std::move(lat)), f_(framing(tree_)),
      snf_(smith_normal_form(f_.b)) {}

SpincRep SpincSpace::delta() const { return delta_rep(tree_, *lat_); }

Zint SpincSpace::class_count() const {
  Zint d = f_.det > 0 ? f_.det : Zint(-f_.det);
  Zint r = 1;
  for (int i = 0; i < lat_->rank; ++i) r *= d;
  return r;
}

SpincRep SpincSpace::canonicalize(const SpincRep& a) const {
  int s = tree_.size(), r = lat_->rank;
  if (static_cast<int>(a.comp.size()) != s) throw domain_error("spin-c rep has wrong length");
  SpincRep d = delta();
  SpincRep out;
  out.comp.assign(s, IntVec(r, 0));
  for (int j = 0; j < r; ++j) {
    std::vector<Zint> x(s);
    for (int v = 0; v < s; ++v) {
      Int diff = a.comp[v][j] - d.comp[v][j];
      if (diff % 2 != 0) throw domain_error("spin-c rep is not in delta + 2L'(x)Q");
      x[v] = diff / 2;
    }
    std::vector<Zint> t = matz_apply(snf_.u, x);
    for (int v = 0; v < s; ++v) {
      Zint m = snf_.diag[v];
      if (m < 0) m = -m;
      if (m != 0) mpz_fdiv_r(t[v].get_mpz_t(), t[v].get_mpz_t(), m.get_mpz_t());
    }
    std::vector<Zint> xr = matz_apply(snf_.u_inv, t);
    for (int v = 0; v < s; ++v)
      out.comp[v][j] = d.comp[v][j] + 2 * to_int_checked(xr[v]);
  }
  return out;
}

bool SpincSpace::equivalent(const SpincRep& a, const SpincRep& b) const {
  return canonicalize(a) == canonicalize(b);
}

std::vector<SpincRep> SpincSpace::enumerate() const {
  int s = tree_.size(), r = lat_->rank;
  std::vector<Int> radix;
  for (int v = 0; v < s; ++v) {
    Zint m = snf_.diag[v];
    if (m < 0) m = -m;
    radix.push_back(to_int_checked(m));
  }
  SpincRep d = delta();
  std::vector<SpincRep> out;
  // Mixed-radix odometer over r independent copies of prod Z/d_i.
  std::vector<Int> digits(static_cast<std::size_t>(s) * r, 0);
  while (true) {
    SpincRep rep;
    rep.comp.assign(s, IntVec(r, 0));
    for (int j = 0; j < r; ++j) {
      std::vector<Zint> t(s);
      for (int v = 0; v < s; ++v) t[v] = digits[static_cast<std::size_t>(j) * s + v];
      std::vector<Zint> xr = matz_apply(snf_.u_inv, t);
      for (int v = 0; v < s; ++v) rep.comp[v][j] = d.comp[v][j] + 2 * to_int_checked(xr[v]);
    }
    out.push_back(std::move(rep));
    int pos = static_cast<int>(digits.size()) - 1;
    while (pos >= 0) {
      Int cap = radix[pos % s];
      if (++digits[pos] < cap) break;
      digits[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

bool SpincSpace::valid_rep(const SpincRep& a) const {
  if (static_cast<int>(a.comp.size()) != tree_.size()) return false;
  auto deg = tree_.degrees();
  for (int v = 0; v < tree_.size(); ++v) {
    IntVec want = (2 - static_cast<Int>(deg[v])) * lat_->two_rho;
    for (int j = 0; j < lat_->rank; ++j)
      if ((a.comp[v][j] - want[j]) % 2 != 0) return false;
  }
  return true;
}

SpincRep SpincSpace::weyl_act(WeylRef w, const SpincRep& a) const {
  SpincRep out;
  out.comp.reserve(a.comp.size());
  for (const auto& c : a.comp) out.comp.push_back(lat_->apply(w, c));
  return out;
}

Rat SpincSpace::pairing(const SpincRep& a, const SpincRep& b) const {
  Rat total = 0;
  int s = tree_.size();
  for (int v = 0; v < s; ++v)
    for (int w = 0; w < s; ++w) {
      if (f_.inverse(v, w) == 0) continue;
      total += f_.inverse(v, w) * Rat(lat_->pairing_int(a.comp[v], b.comp[w]));
    }
  return total;
}

namespace {

// Find l = a + 2 B x (per root coordinate, integer x) whose component at
// `vertex` equals `target`; returns l.
std::vector<IntVec> pin_component(const PlumbingTree& t, const RootLatticeData& lat,
                                  const std::vector<IntVec>& a, int vertex,
                                  const IntVec& target) {
  int s = t.size(), r = lat.rank;
  MatZ b(s, s);
  for (int i = 0; i < s; ++i) b(i, i) = t.m[i];
  for (auto [u, v] : t.edges) {
    b(u, v) = 1;
    b(v, u) = 1;
  }
  MatZ row(1, s);
  for (int c = 0; c < s; ++c) row(0, c) = b(vertex, c);
  IntSolver solver(row);
  std::vector<IntVec> l(s, IntVec(r, 0));
  for (int j = 0; j < r; ++j) {
    Int diff = target[j] - a[vertex][j];
    if (diff % 2 != 0) throw domain_error("transport: parity obstruction");
    std::vector<Zint> rhs{Zint(diff / 2)};
    std::vector<Zint> x;
    if (!solver.solve(rhs, x)) throw domain_error("transport: no integral solution");
    std::vector<Zint> bx = matz_apply(b, x);
    for (int v = 0; v < s; ++v) l[v][j] = a[v][j] + 2 * to_int_checked(bx[v]);
  }
  return l;
}

}  // namespace

SpincRep transport(const PlumbingTree& src, const LatticePtr& lat, const MoveSpec& mv,
                   const MoveResult& mr, const SpincRep& a) {
  if (static_cast<int>(a.comp.size()) != src.size())
    throw domain_error("transport: representative does not match the source tree");
  const IntVec two_rho = lat->two_rho;
  int r = lat->rank;
  SpincRep out;
  out.comp.assign(mr.tree.size(), IntVec(r, 0));
  auto copy_mapped = [&](const std::vector<IntVec>& comps) {
    for (int i = 0; i < src.size(); ++i)
      if (mr.vertex_map[i] >= 0) out.comp[mr.vertex_map[i]] = comps[i];
  };

  switch (mv.kind) {
    case MoveKind::AMinus:
    case MoveKind::APlus: {
      Int eps = mv.kind == MoveKind::APlus ? 1 : -1;
      std::vector<int> right = src.side_of_edge(mv.b, mv.a);
      copy_mapped(a.comp);
      for (int v : right) out.comp[mr.vertex_map[v]] = (-eps) * a.comp[v];
      out.comp[mr.new_vertices[0]] = IntVec(r, 0);
      break;
    }
    case MoveKind::BMinus:
    case MoveKind::BPlus: {
      Int eps = mv.kind == MoveKind::BPlus ? 1 : -1;
      copy_mapped(a.comp);
      out.comp[mr.vertex_map[mv.a]] = a.comp[mv.a] + two_rho;
      out.comp[mr.new_vertices[0]] = eps * two_rho;
      break;
    }
    case MoveKind::C: {
      int v1 = mr.new_vertices[0], mid = mr.new_vertices[1], v2 = mr.new_vertices[2];
      auto dst_deg = mr.tree.degrees();
      IntVec beta(r, 0);
      if ((dst_deg[v1] - dst_deg[v2]) % 2 == 0) beta = two_rho;
      // Right side: all old vertices whose new homes hang off v2.
      std::vector<int> right_new = mr.tree.side_of_edge(v2, mid);
      std::vector<char> is_right(mr.tree.size(), 0);
      for (int x : right_new) is_right[x] = 1;
      for (int i = 0; i < src.size(); ++i) {
        if (i == mv.a || mr.vertex_map[i] < 0) continue;
        int ni = mr.vertex_map[i];
        out.comp[ni] = is_right[ni] ? -a.comp[i] : a.comp[i];
      }
      out.comp[v1] = a.comp[mv.a] + beta;
      out.comp[mid] = IntVec(r, 0);
      out.comp[v2] = beta;
      break;
    }
    case MoveKind::AMinusInv:
    case MoveKind::APlusInv: {
      Int eps = mv.kind == MoveKind::APlusInv ? 1 : -1;
      auto adj = src.adjacency();
      int x = mv.b;
      int y = adj[mv.a][0] == x ? adj[mv.a][1] : adj[mv.a][0];
      auto l = pin_component(src, *lat, a.comp, mv.a, IntVec(r, 0));
      std::vector<int> right = src.side_of_edge(y, mv.a);
      copy_mapped(l);
      for (int v : right) out.comp[mr.vertex_map[v]] = (-eps) * l[v];
      break;
    }
    case MoveKind::BMinusInv:
    case MoveKind::BPlusInv: {
      Int eps = mv.kind == MoveKind::BPlusInv ? 1 : -1;
      int nb = src.adjacency()[mv.a][0];
      auto l = pin_component(src, *lat, a.comp, mv.a, eps * two_rho);
      copy_mapped(l);
      out.comp[mr.vertex_map[nb]] = l[nb] - two_rho;
      break;
    }
    case MoveKind::CInv: {
      auto adj = src.adjacency();
      int x = mv.b;
      int y = adj[mv.a][0] == x ? adj[mv.a][1] : adj[mv.a][0];
      auto l = pin_component(src, *lat, a.comp, mv.a, IntVec(r, 0));
      IntVec beta = l[y];
      std::vector<int> right = src.side_of_edge(y, mv.a);
      copy_mapped(l);
      for (int v : right)
        if (mr.vertex_map[v] >= 0) out.comp[mr.vertex_map[v]] = -l[v];
      out.comp[mr.vertex_map[x]] = l[x] - beta;
      break;
    }
  }
  return out;
}

}  // namespace plumbtop
