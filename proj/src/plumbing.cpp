#include "plumbing.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace plumbtop {

void PlumbingTree::validate() const {
  int n = size();
  if (n == 0) throw domain_error("plumbing tree must have at least one vertex");
  if (static_cast<int>(edges.size()) != n - 1)
    throw domain_error("plumbing tree must have exactly n-1 edges");
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw domain_error("plumbing tree has an invalid edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push_back(v);
      }
  }
  if (count != n) throw domain_error("plumbing tree is not connected");
}

std::vector<int> PlumbingTree::degrees() const {
  std::vector<int> d(size(), 0);
  for (auto [u, v] : edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

std::vector<std::vector<int>> PlumbingTree::adjacency() const {
  std::vector<std::vector<int>> adj(size());
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<int> PlumbingTree::side_of_edge(int u, int v) const {
  auto adj = adjacency();
  std::vector<int> out;
  std::vector<char> seen(size(), 0);
  seen[v] = 1;  // blocked
  std::deque<int> q{u};
  seen[u] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    out.push_back(x);
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        q.push_back(y);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string ahu_code(const PlumbingTree& t, const std::vector<std::vector<int>>& adj, int root,
                     int parent) {
  std::vector<std::string> kids;
  for (int c : adj[root])
    if (c != parent) kids.push_back(ahu_code(t, adj, c, root));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + std::to_string(t.m[root]);
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::vector<int> tree_centers(const PlumbingTree& t) {
  int n = t.size();
  if (n == 1) return {0};
  auto adj = t.adjacency();
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = static_cast<int>(adj[i].size());
  std::deque<int> layer;
  std::vector<char> removed(n, 0);
  for (int i = 0; i < n; ++i)
    if (deg[i] == 1) layer.push_back(i);
  int remaining = n;
  while (remaining > 2) {
    std::deque<int> next;
    remaining -= static_cast<int>(layer.size());
    for (int u : layer) {
      removed[u] = 1;
      for (int v : adj[u])
        if (!removed[v] && --deg[v] == 1) next.push_back(v);
    }
    layer = std::move(next);
  }
  std::vector<int> centers;
  for (int i = 0; i < n; ++i)
    if (!removed[i]) centers.push_back(i);
  return centers;
}

}  // namespace

std::string PlumbingTree::canonical_code() const {
  auto adj = adjacency();
  std::string best;
  for (int c : tree_centers(*this)) {
    std::string code = ahu_code(*this, adj, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

FramingData framing(const PlumbingTree& t) {
  t.validate();
  int n = t.size();
  FramingData f;
  f.b = MatZ(n, n);
  f.trace = 0;
  for (int i = 0; i < n; ++i) {
    f.b(i, i) = t.m[i];
    f.trace += t.m[i];
  }
  for (auto [u, v] : t.edges) {
    f.b(u, v) = 1;
    f.b(v, u) = 1;
  }
  f.det = determinant(f.b);
  if (f.det == 0) throw degenerate_framing("framing matrix is singular");
  MatQ bq = matq_from_z(f.b);
  invert(bq, f.inverse);
  Inertia in = inertia(bq);
  assert(in.zero == 0);
  f.pi = in.positive;
  f.sigma = in.positive - in.negative;
  return f;
}

bool is_weakly_negative_definite(const PlumbingTree& t) {
  FramingData f = framing(t);
  auto deg = t.degrees();
  std::vector<int> high;
  for (int i = 0; i < t.size(); ++i)
    if (deg[i] >= 3) high.push_back(i);
  if (high.empty()) return true;
  MatQ sub(static_cast<int>(high.size()), static_cast<int>(high.size()));
  for (std::size_t i = 0; i < high.size(); ++i)
    for (std::size_t j = 0; j < high.size(); ++j)
      sub(static_cast<int>(i), static_cast<int>(j)) = f.inverse(high[i], high[j]);
  Inertia in = inertia(sub);
  return in.positive == 0 && in.zero == 0;
}

const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::AMinus: return "Aminus";
    case MoveKind::APlus: return "Aplus";
    case MoveKind::BMinus: return "Bminus";
    case MoveKind::BPlus: return "Bplus";
    case MoveKind::C: return "C";
    case MoveKind::AMinusInv: return "Aminus_inv";
    case MoveKind::APlusInv: return "Aplus_inv";
    case MoveKind::BMinusInv: return "Bminus_inv";
    case MoveKind::BPlusInv: return "Bplus_inv";
    case MoveKind::CInv: return "C_inv";
  }
  return "?";
}

MoveKind move_kind_from_name(const std::string& s) {
  for (MoveKind k :
       {MoveKind::AMinus, MoveKind::APlus, MoveKind::BMinus, MoveKind::BPlus, MoveKind::C,
        MoveKind::AMinusInv, MoveKind::APlusInv, MoveKind::BMinusInv, MoveKind::BPlusInv,
        MoveKind::CInv})
    if (s == move_kind_name(k)) return k;
  throw parse_error("unknown move kind: " + s);
}

MoveKind inverse_kind(MoveKind k) {
  switch (k) {
    case MoveKind::AMinus: return MoveKind::AMinusInv;
    case MoveKind::APlus: return MoveKind::APlusInv;
    case MoveKind::BMinus: return MoveKind::BMinusInv;
    case MoveKind::BPlus: return MoveKind::BPlusInv;
    case MoveKind::C: return MoveKind::CInv;
    case MoveKind::AMinusInv: return MoveKind::AMinus;
    case MoveKind::APlusInv: return MoveKind::APlus;
    case MoveKind::BMinusInv: return MoveKind::BMinus;
    case MoveKind::BPlusInv: return MoveKind::BPlus;
    case MoveKind::CInv: return MoveKind::C;
  }
  return k;
}

namespace {

bool has_edge(const PlumbingTree& t, int u, int v) {
  for (auto [a, b] : t.edges)
    if ((a == u && b == v) || (a == v && b == u)) return true;
  return false;
}

// Insert a fresh vertex at position pos, shifting indices upward.
void splice_vertex(PlumbingTree& t, std::vector<int>& map, int pos, Int label) {
  for (auto& e : t.edges)
    for (int& x : e)
      if (x >= pos) ++x;
  for (int& x : map)
    if (x >= pos) ++x;
  t.m.insert(t.m.begin() + pos, label);
}

void erase_vertex(PlumbingTree& t, std::vector<int>& map, int pos) {
  t.m.erase(t.m.begin() + pos);
  for (auto& e : t.edges)
    for (int& x : e)
      if (x > pos) --x;
  for (int& x : map) {
    if (x == pos) x = -1;
    else if (x > pos) --x;
  }
}

void remove_edge(PlumbingTree& t, int u, int v) {
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    auto [a, b] = t.edges[i];
    if ((a == u && b == v) || (a == v && b == u)) {
      t.edges.erase(t.edges.begin() + i);
      return;
    }
  }
  throw inapplicable_move("edge not present");
}

}  // namespace

MoveResult apply_move(const PlumbingTree& t, const MoveSpec& mv) {
  t.validate();
  MoveResult res;
  res.tree = t;
  res.vertex_map.resize(t.size());
  for (int i = 0; i < t.size(); ++i) res.vertex_map[i] = i;
  auto& w = res.tree;
  auto& map = res.vertex_map;
  auto deg = t.degrees();
  auto in_range = [&](int v) { return v >= 0 && v < t.size(); };

  switch (mv.kind) {
    case MoveKind::AMinus:
    case MoveKind::APlus: {
      Int eps = mv.kind == MoveKind::APlus ? 1 : -1;
      if (!in_range(mv.a) || !in_range(mv.b) || !has_edge(t, mv.a, mv.b))
        throw inapplicable_move("A move needs an existing edge");
      int pos = std::min(mv.a, mv.b) + 1;
      splice_vertex(w, map, pos, eps);
      int na = map[mv.a], nb = map[mv.b];
      w.m[na] += eps;
      w.m[nb] += eps;
      remove_edge(w, na, nb);
      w.edges.push_back({na, pos});
      w.edges.push_back({pos, nb});
      res.new_vertices = {pos};
      break;
    }
    case MoveKind::AMinusInv:
    case MoveKind::APlusInv: {
      Int eps = mv.kind == MoveKind::APlusInv ? 1 : -1;
      if (!in_range(mv.a) || t.m[mv.a] != eps || deg[mv.a] != 2)
        throw inapplicable_move("A blow-down needs a degree-2 vertex labelled by the sign");
      auto adj = t.adjacency();
      int x = adj[mv.a][0], y = adj[mv.a][1];
      if (mv.b == y) std::swap(x, y);
      if (mv.b != x) throw inapplicable_move("A blow-down orientation vertex is not adjacent");
      remove_edge(w, mv.a, x);
      remove_edge(w, mv.a, y);
      w.edges.push_back({x, y});
      w.m[x] -= eps;
      w.m[y] -= eps;
      erase_vertex(w, map, mv.a);
      break;
    }
    case MoveKind::BMinus:
    case MoveKind::BPlus: {
      Int eps = mv.kind == MoveKind::BPlus ? 1 : -1;
      if (!in_range(mv.a)) throw inapplicable_move("B move anchor out of range");
      int pos = mv.a + 1;
      splice_vertex(w, map, pos, eps);
      w.m[map[mv.a]] += eps;
      w.edges.push_back({map[mv.a], pos});
      res.new_vertices = {pos};
      break;
    }
    case MoveKind::BMinusInv:
    case MoveKind::BPlusInv: {
      Int eps = mv.kind == MoveKind::BPlusInv ? 1 : -1;
      if (!in_range(mv.a) || t.m[mv.a] != eps || deg[mv.a] != 1)
        throw inapplicable_move("B blow-down needs a leaf labelled by the sign");
      int nb = t.adjacency()[mv.a][0];
      remove_edge(w, mv.a, nb);
      w.m[nb] -= eps;
      erase_vertex(w, map, mv.a);
      break;
    }
    case MoveKind::C: {
      if (!in_range(mv.a)) throw inapplicable_move("C move vertex out of range");
      auto adj = t.adjacency();
      std::vector<int> left = mv.left;
      std::sort(left.begin(), left.end());
      for (int x : left)
        if (!std::binary_search(adj[mv.a].begin(), adj[mv.a].end(), x))
          throw inapplicable_move("C move left set must consist of neighbours");
      Int m2 = t.m[mv.a] - mv.m1;
      // Replace vertex a by [v1, mid, v2]; v1 sits at a's index.
      int v1 = mv.a;
      w.m[v1] = mv.m1;
      splice_vertex(w, map, mv.a + 1, 0);
      splice_vertex(w, map, mv.a + 2, m2);
      int mid = mv.a + 1, v2 = mv.a + 2;
      // Edges of the old vertex: left stays on v1, the rest moves to v2.
      for (auto& e : w.edges) {
        for (int k = 0; k < 2; ++k) {
          if (e[k] != v1) continue;
          int other_old = -1;
          int other = e[1 - k];
          for (int i = 0; i < t.size(); ++i)
            if (map[i] == other) other_old = i;
          if (!std::binary_search(left.begin(), left.end(), other_old)) e[k] = v2;
        }
      }
      w.edges.push_back({v1, mid});
      w.edges.push_back({mid, v2});
      res.new_vertices = {v1, mid, v2};
      break;
    }
    case MoveKind::CInv: {
      if (!in_range(mv.a) || t.m[mv.a] != 0 || deg[mv.a] != 2)
        throw inapplicable_move("C blow-down needs a 0-labelled degree-2 vertex");
      auto adj = t.adjacency();
      int x = adj[mv.a][0], y = adj[mv.a][1];
      if (mv.b == y) std::swap(x, y);
      if (mv.b != x) throw inapplicable_move("C blow-down orientation vertex is not adjacent");
      // Merge x and y (keeping x); the middle vertex disappears.
      remove_edge(w, mv.a, x);
      remove_edge(w, mv.a, y);
      for (auto& e : w.edges)
        for (int& z : e)
          if (z == y) z = x;
      w.m[x] += w.m[y];
      int hi = std::max(mv.a, y), lo = std::min(mv.a, y);
      erase_vertex(w, map, hi);
      erase_vertex(w, map, lo);
      break;
    }
  }
  res.tree.validate();
  return res;
}

std::vector<Branch> find_branches(const PlumbingTree& t) {
  auto deg = t.degrees();
  auto adj = t.adjacency();
  std::vector<Branch> out;
  for (int v = 0; v < t.size(); ++v) {
    if (deg[v] < 3) continue;
    for (int n0 : adj[v]) {
      Branch br;
      br.anchor = v;
      int prev = v, cur = n0;
      while (deg[cur] == 2) {
        br.path.push_back(cur);
        int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
      }
      if (deg[cur] == 1) {
        br.path.push_back(cur);
        out.push_back(std::move(br));
      }
    }
  }
  return out;
}

namespace {

// Abstract contraction state: labels of [anchor, path...] for branches,
// or [v, interior..., w] for bridges.
using AbsState = std::vector<Int>;

std::string abs_key(const AbsState& s) {
  std::string k;
  for (Int x : s) {
    k += std::to_string(x);
    k += ',';
  }
  return k;
}

struct SearchNode {
  AbsState state;
  int parent;
  AbstractOp op;
};

std::vector<Int> split_candidates(Int m) {
  std::vector<Int> cands{0, m, 1, -1, m - 1, m + 1};
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

// Generic bounded BFS over the abstract contraction calculus.
// `bridge` selects the op set: branches use (A/B/C), bridges only (A/C).
ContractionSearch abstract_contraction(const AbsState& init, bool bridge,
                                       const SearchBounds& bounds) {
  ContractionSearch result;
  Int lab_lo = *std::min_element(init.begin(), init.end()) - bounds.label_slack;
  Int lab_hi = *std::max_element(init.begin(), init.end()) + bounds.label_slack;
  std::size_t len_cap = init.size() + bounds.length_slack;
  // For branches the first entry is the anchor; for bridges the first and
  // last entries are the endpoints.
  std::size_t fixed_tail = bridge ? 1 : 0;

  std::vector<SearchNode> nodes;
  std::unordered_map<std::string, int> seen;
  std::deque<std::pair<int, int>> queue;  // node index, depth
  nodes.push_back({init, -1, {}});
  seen.emplace(abs_key(init), 0);
  queue.emplace_back(0, 0);
  (void)fixed_tail;

  int goal_node = -1;
  while (!queue.empty() && goal_node < 0) {
    auto [ni, depth] = queue.front();
    queue.pop_front();
    if (depth >= bounds.max_moves) {
      result.bound_hit = true;
      continue;
    }
    AbsState s = nodes[ni].state;
    std::size_t len = s.size();
    auto push = [&](AbsState ns, AbstractOp op) {
      bool is_goal = ns.size() == 1;
      if (!is_goal) {
        for (Int x : ns)
          if (x < lab_lo || x > lab_hi) return;
        if (ns.size() > len_cap) return;
      }
      if (nodes.size() >= bounds.max_states) {
        result.bound_hit = true;
        return;
      }
      std::string key = abs_key(ns);
      if (!seen.emplace(key, static_cast<int>(nodes.size())).second) return;
      nodes.push_back({ns, ni, op});
      if (is_goal) {
        goal_node = static_cast<int>(nodes.size()) - 1;
        return;
      }
      queue.emplace_back(static_cast<int>(nodes.size()) - 1, depth + 1);
    };

    // Positions: s[0] is the left endpoint/anchor; for bridges s[len-1] is
    // the right endpoint. Interior positions are 1..len-2 (and len-1 is a
    // leaf for branches).
    std::size_t last = len - 1;
    // Blow-down of the leaf (branches only).
    if (!bridge && len >= 2 && (s[last] == 1 || s[last] == -1)) {
      AbsState ns(s.begin(), s.end() - 1);
      ns[last - 1] -= s[last];
      push(std::move(ns), {AbstractOp::BlowDownLeaf, static_cast<int>(last) - 1, s[last]});
    }
    // Blow-down of an interior +-1 vertex (degree 2).
    for (std::size_t i = 1; i + 1 < len; ++i) {
      if (s[i] != 1 && s[i] != -1) continue;
      AbsState ns;
      ns.reserve(len - 1);
      for (std::size_t k = 0; k < len; ++k)
        if (k != i) ns.push_back(s[k]);
      ns[i - 1] -= s[i];
      ns[i] -= s[i];
      push(std::move(ns), {AbstractOp::BlowDownInterior, static_cast<int>(i) - 1, s[i]});
    }
    // Merge across an interior 0 (the C-move inverse).
    for (std::size_t i = 1; i + 1 < len; ++i) {
      if (s[i] != 0) continue;
      AbsState ns;
      for (std::size_t k = 0; k < len; ++k) {
        if (k == i || k == i + 1) continue;
        ns.push_back(s[k]);
      }
      ns[i - 1] += s[i + 1];
      push(std::move(ns), {AbstractOp::Merge, static_cast<int>(i) - 1, 0});
    }
    // Blow-ups on edges (both signs).
    for (std::size_t i = 0; i + 1 < len; ++i) {
      for (Int eps : {Int(-1), Int(1)}) {
        AbsState ns;
        ns.reserve(len + 1);
        for (std::size_t k = 0; k <= i; ++k) ns.push_back(s[k]);
        ns.push_back(eps);
        for (std::size_t k = i + 1; k < len; ++k) ns.push_back(s[k]);
        ns[i] += eps;
        ns[i + 2] += eps;
        push(std::move(ns), {AbstractOp::BlowUpEdge, static_cast<int>(i), eps});
      }
    }
    // Blow-up appending to the leaf (branches only).
    if (!bridge && len >= 2) {
      for (Int eps : {Int(-1), Int(1)}) {
        AbsState ns = s;
        ns[last] += eps;
        ns.push_back(eps);
        push(std::move(ns), {AbstractOp::BlowUpLeaf, static_cast<int>(last) - 1, eps});
      }
    }
    // C-splits of interior/leaf vertices.
    std::size_t split_end = bridge ? len - 1 : len;
    for (std::size_t i = 1; i < split_end; ++i) {
      for (Int m1 : split_candidates(s[i])) {
        AbsState ns;
        ns.reserve(len + 2);
        for (std::size_t k = 0; k < i; ++k) ns.push_back(s[k]);
        ns.push_back(m1);
        ns.push_back(0);
        ns.push_back(s[i] - m1);
        for (std::size_t k = i + 1; k < len; ++k) ns.push_back(s[k]);
        push(std::move(ns), {AbstractOp::Split, static_cast<int>(i) - 1, m1});
      }
    }
  }
  if (goal_node >= 0) {
    result.found = true;
    std::vector<AbstractOp> ops;
    for (int cur = goal_node; nodes[cur].parent >= 0; cur = nodes[cur].parent)
      ops.push_back(nodes[cur].op);
    std::reverse(ops.begin(), ops.end());
    result.ops = std::move(ops);
  }
  return result;
}

}  // namespace

ContractionSearch branch_contraction(const PlumbingTree& t, const Branch& br,
                                     const SearchBounds& bounds) {
  AbsState init;
  init.push_back(t.m[br.anchor]);
  for (int v : br.path) init.push_back(t.m[v]);
  return abstract_contraction(init, false, bounds);
}

std::vector<Branch> find_contractible_branches(const PlumbingTree& t,
                                               const SearchBounds& bounds) {
  std::vector<Branch> out;
  for (const Branch& br : find_branches(t))
    if (branch_contraction(t, br, bounds).found) out.push_back(br);
  return out;
}

namespace {

// Replay abstract ops at a site given by live vertex indices.
// site = [anchor, path...] or [v, interior..., w].
ReplayResult replay_ops(const PlumbingTree& t, std::vector<int> site,
                        const std::vector<AbstractOp>& ops) {
  ReplayResult res;
  res.tree = t;
  res.vertex_map.resize(t.size());
  for (int i = 0; i < t.size(); ++i) res.vertex_map[i] = i;

  auto remap = [&](const std::vector<int>& mv_map) {
    for (int& x : site)
      if (x >= 0) x = mv_map[x];
    for (int& x : res.vertex_map)
      if (x >= 0) x = mv_map[x];
  };

  for (const AbstractOp& op : ops) {
    MoveSpec mv;
    // op.pos indexes the path (position 0 = first vertex after the left
    // anchor); site[0] is the anchor.
    int p = op.pos + 1;
    switch (op.kind) {
      case AbstractOp::BlowDownLeaf:
        mv.kind = op.val == 1 ? MoveKind::BPlusInv : MoveKind::BMinusInv;
        mv.a = site.back();
        break;
      case AbstractOp::BlowDownInterior:
        mv.kind = op.val == 1 ? MoveKind::APlusInv : MoveKind::AMinusInv;
        mv.a = site[p];
        mv.b = site[p - 1];
        break;
      case AbstractOp::Merge:
        mv.kind = MoveKind::CInv;
        mv.a = site[p];
        mv.b = site[p - 1];
        break;
      case AbstractOp::BlowUpEdge:
        mv.kind = op.val == 1 ? MoveKind::APlus : MoveKind::AMinus;
        mv.a = site[op.pos];
        mv.b = site[op.pos + 1];
        break;
      case AbstractOp::BlowUpLeaf:
        mv.kind = op.val == 1 ? MoveKind::BPlus : MoveKind::BMinus;
        mv.a = site.back();
        break;
      case AbstractOp::Split:
        mv.kind = MoveKind::C;
        mv.a = site[p];
        mv.m1 = op.val;
        mv.left = {site[p - 1]};
        break;
    }
    MoveResult step = apply_move(res.tree, mv);
    res.trace.push_back(mv);

    // Update the live site to mirror the abstract state transition.
    switch (op.kind) {
      case AbstractOp::BlowDownLeaf:
        remap(step.vertex_map);
        site.pop_back();
        break;
      case AbstractOp::BlowDownInterior:
        remap(step.vertex_map);
        site.erase(site.begin() + p);
        break;
      case AbstractOp::Merge: {
        remap(step.vertex_map);
        // site[p] and site[p+1] are gone; the absorber was site[p-1].
        site.erase(site.begin() + p, site.begin() + p + 2);
        break;
      }
      case AbstractOp::BlowUpEdge: {
        int fresh = step.new_vertices[0];
        remap(step.vertex_map);
        site.insert(site.begin() + op.pos + 1, fresh);
        break;
      }
      case AbstractOp::BlowUpLeaf: {
        int fresh = step.new_vertices[0];
        remap(step.vertex_map);
        site.push_back(fresh);
        break;
      }
      case AbstractOp::Split: {
        int v1 = step.new_vertices[0], mid = step.new_vertices[1], v2 = step.new_vertices[2];
        remap(step.vertex_map);
        site[p] = v1;
        site.insert(site.begin() + p + 1, {mid, v2});
        break;
      }
    }
    res.tree = step.tree;
  }
  return res;
}

}  // namespace

ReplayResult contract_branch(const PlumbingTree& t, const Branch& br,
                             const std::vector<AbstractOp>& ops) {
  std::vector<int> site;
  site.push_back(br.anchor);
  for (int v : br.path) site.push_back(v);
  return replay_ops(t, std::move(site), ops);
}

bool is_reduced(const PlumbingTree& t, const SearchBounds& bounds) {
  auto deg = t.degrees();
  auto branches = find_branches(t);
  for (int v = 0; v < t.size(); ++v) {
    if (deg[v] < 3) continue;
    int contractible = 0;
    for (const Branch& br : branches)
      if (br.anchor == v && branch_contraction(t, br, bounds).found) ++contractible;
    if (deg[v] - contractible <= 2) return false;
  }
  return true;
}

ReduceResult reduce(const PlumbingTree& t, const SearchBounds& bounds) {
  ReduceResult res;
  res.tree = t;
  res.bounds = bounds;
  bool progress = true;
  while (progress) {
    progress = false;
    auto deg = res.tree.degrees();
    auto branches = find_branches(res.tree);
    for (int v = 0; v < res.tree.size() && !progress; ++v) {
      if (deg[v] < 3) continue;
      std::vector<std::pair<Branch, std::vector<AbstractOp>>> contractible;
      for (const Branch& br : branches) {
        if (br.anchor != v) continue;
        ContractionSearch cs = branch_contraction(res.tree, br, bounds);
        res.bound_hit = res.bound_hit || cs.bound_hit;
        if (cs.found) contractible.emplace_back(br, cs.ops);
      }
      if (contractible.empty() ||
          deg[v] - static_cast<int>(contractible.size()) > 2)
        continue;
      // Reducible vertex: contract one branch and rescan.
      ReplayResult rr = contract_branch(res.tree, contractible.front().first,
                                        contractible.front().second);
      res.tree = rr.tree;
      for (const auto& mv : rr.trace) res.trace.push_back(mv);
      progress = true;
    }
  }
  return res;
}

std::vector<ForcingBridge> forcing_bridges(const PlumbingTree& t, const SearchBounds& bounds) {
  auto deg = t.degrees();
  auto adj = t.adjacency();
  std::vector<ForcingBridge> out;
  FramingData f = framing(t);
  for (int v = 0; v < t.size(); ++v) {
    if (deg[v] < 3) continue;
    for (int n0 : adj[v]) {
      std::vector<int> interior;
      int prev = v, cur = n0;
      while (deg[cur] == 2) {
        interior.push_back(cur);
        int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
      }
      if (deg[cur] < 3 || cur <= v) continue;  // not a bridge, or seen from the other side
      AbsState init;
      init.push_back(t.m[v]);
      for (int x : interior) init.push_back(t.m[x]);
      init.push_back(t.m[cur]);
      ContractionSearch cs = abstract_contraction(init, true, bounds);
      if (!cs.found) continue;
      std::vector<int> site;
      site.push_back(v);
      for (int x : interior) site.push_back(x);
      site.push_back(cur);
      ReplayResult rr = replay_ops(t, std::move(site), cs.ops);
      FramingData fbar = framing(rr.tree);
      ForcingBridge fb;
      fb.v = v;
      fb.w = cur;
      fb.interior = interior;
      fb.delta_pi = f.pi - fbar.pi;
      out.push_back(std::move(fb));
    }
  }
  return out;
}

WeylAssignmentStructure weyl_assignment_structure(const PlumbingTree& t,
                                                  const SearchBounds& bounds) {
  WeylAssignmentStructure ws;
  auto deg = t.degrees();
  for (int v = 0; v < t.size(); ++v)
    if (deg[v] >= 3) ws.high_vertices.push_back(v);
  ws.bridges = forcing_bridges(t, bounds);
  int n = static_cast<int>(ws.high_vertices.size());
  auto index_of = [&](int v) {
    for (int i = 0; i < n; ++i)
      if (ws.high_vertices[i] == v) return i;
    return -1;
  };
  ws.component.assign(n, -1);
  ws.parity.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (ws.component[i] >= 0) continue;
    int comp = ws.num_components++;
    std::deque<int> q{i};
    ws.component[i] = comp;
    ws.parity[i] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (const auto& br : ws.bridges) {
        int a = index_of(br.v), b = index_of(br.w);
        int other = -1;
        if (a == x) other = b;
        else if (b == x) other = a;
        if (other < 0) continue;
        int want = (ws.parity[x] + static_cast<int>(((br.delta_pi % 2) + 2) % 2)) % 2;
        if (ws.component[other] < 0) {
          ws.component[other] = comp;
          ws.parity[other] = want;
          q.push_back(other);
        } else if (ws.parity[other] != want) {
          // Bridges in a tree form a forest; a conflicting cycle cannot occur.
          throw domain_error("inconsistent forcing-bridge constraints");
        }
      }
    }
  }
  return ws;
}

}  // namespace plumbtop
