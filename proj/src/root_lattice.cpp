#include "root_lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace plumbtop {

std::string matz_key(const MatZ& m) {
  std::string s;
  for (const Zint& z : m.a) {
    s += z.get_str();
    s += ',';
  }
  return s;
}

namespace {

MatZ cartan_a(int rank) {
  MatZ g(rank, rank);
  for (int i = 0; i < rank; ++i) {
    g(i, i) = 2;
    if (i + 1 < rank) {
      g(i, i + 1) = -1;
      g(i + 1, i) = -1;
    }
  }
  return g;
}

// Reflection in the i-th simple root on simple-root coordinate columns:
// s_i(alpha_j) = alpha_j - (2 g_{ij} / g_{ii}) alpha_i, so only row i of
// the identity changes.
MatZ simple_reflection(const MatZ& gram, int i) {
  int r = gram.rows;
  Zint norm = gram(i, i);
  MatZ m = MatZ::identity(r);
  for (int j = 0; j < r; ++j) m(i, j) -= 2 * gram(i, j) / norm;
  return m;
}

bool lex_less(const MatZ& a, const MatZ& b) {
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    int c = cmp(a.a[i], b.a[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

std::shared_ptr<const RootLatticeData> RootLatticeData::build(const std::string& kind, int rank) {
  if (rank < 1) throw domain_error("unsupported lattice: rank must be >= 1");
  if (kind != "A") throw domain_error("unsupported lattice kind: " + kind);
  auto lat = std::shared_ptr<RootLatticeData>(new RootLatticeData());
  lat->kind = kind;
  lat->rank = rank;
  lat->label = kind + std::to_string(rank);
  lat->gram = cartan_a(rank);
  Inertia in = inertia(matq_from_z(lat->gram));
  if (in.positive != rank) throw domain_error("gram matrix is not positive definite");
  lat->enumerate_roots();
  lat->enumerate_weyl();
  lat->build_tables();
  return lat;
}

std::shared_ptr<const RootLatticeData> RootLatticeData::from_label(const std::string& label) {
  if (label.size() < 2) throw parse_error("malformed lattice label: " + label);
  std::string kind = label.substr(0, 1);
  int rank = 0;
  try {
    std::size_t pos = 0;
    rank = std::stoi(label.substr(1), &pos);
    if (pos + 1 != label.size()) throw parse_error("malformed lattice label: " + label);
  } catch (const std::exception&) {
    throw parse_error("malformed lattice label: " + label);
  }
  return build(kind, rank);
}

void RootLatticeData::enumerate_roots() {
  // Close the simple roots under the simple reflections.
  std::vector<MatZ> refl;
  for (int i = 0; i < rank; ++i) refl.push_back(simple_reflection(gram, i));
  std::set<IntVec> roots;
  std::vector<IntVec> frontier;
  for (int i = 0; i < rank; ++i) {
    IntVec e(rank, 0);
    e[i] = 1;
    roots.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const IntVec& v : frontier) {
      for (int i = 0; i < rank; ++i) {
        std::vector<Zint> zv(rank);
        for (int k = 0; k < rank; ++k) zv[k] = v[k];
        std::vector<Zint> w = matz_apply(refl[i], zv);
        IntVec iw(rank);
        for (int k = 0; k < rank; ++k) iw[k] = to_int_checked(w[k]);
        if (roots.insert(iw).second) next.push_back(iw);
      }
    }
    frontier = std::move(next);
  }
  two_rho.assign(rank, 0);
  for (const IntVec& v : roots) {
    bool nonneg = true;
    for (Int x : v) nonneg = nonneg && x >= 0;
    if (nonneg) {
      positive_roots.push_back(v);
      for (int k = 0; k < rank; ++k) two_rho[k] += v[k];
    }
  }
  std::sort(positive_roots.begin(), positive_roots.end());
  num_positive = static_cast<int>(positive_roots.size());

  MatQ gq = matq_from_z(gram), ginv;
  invert(gq, ginv);
  fundamental_weights = MatQ(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      fundamental_weights(i, j) = ginv(i, j) * Rat(gram(j, j)) / 2;
}

void RootLatticeData::enumerate_weyl() {
  std::vector<MatZ> refl;
  for (int i = 0; i < rank; ++i) refl.push_back(simple_reflection(gram, i));

  std::map<std::string, int> seen;
  std::vector<std::vector<MatZ>> levels;
  levels.push_back({MatZ::identity(rank)});
  seen[matz_key(levels[0][0])] = 0;
  while (true) {
    std::vector<MatZ> next;
    for (const MatZ& w : levels.back()) {
      for (int i = 0; i < rank; ++i) {
        MatZ p = matz_mul(w, refl[i]);
        std::string key = matz_key(p);
        if (seen.emplace(key, 0).second) next.push_back(p);
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end(), lex_less);
    levels.push_back(std::move(next));
  }
  int len = 0;
  for (const auto& level : levels) {
    for (const MatZ& m : level) {
      WeylElementData e;
      e.mat = m;
      MatQ inv_q;
      invert(matq_from_z(m), inv_q);
      e.inv = MatZ(rank, rank);
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
          assert(inv_q(i, j).get_den() == 1);
          e.inv(i, j) = inv_q(i, j).get_num();
        }
      e.length = len;
      e.sign = len % 2 == 0 ? 1 : -1;
      weyl_index_[matz_key(m)] = static_cast<int>(weyl_.size());
      weyl_.push_back(std::move(e));
    }
    ++len;
  }
  MatZ neg = MatZ::identity(rank);
  for (auto& z : neg.a) z = -z;
  iota_index_ = index_of_matrix(neg);
}

void RootLatticeData::build_tables() {
  for (int i = 0; i < weyl_order(); ++i) {
    std::vector<Zint> zv(rank);
    for (int k = 0; k < rank; ++k) zv[k] = two_rho[k];
    std::vector<Zint> w = matz_apply(weyl_[i].mat, zv);
    IntVec iv(rank);
    for (int k = 0; k < rank; ++k) iv[k] = to_int_checked(w[k]);
    orbit_.emplace_back(iv, weyl_[i].sign);
    bool fresh = orbit_sign_.emplace(iv, weyl_[i].sign).second;
    assert(fresh && "2*rho orbit must be free");
    (void)fresh;
  }
  for (const auto& [v1, s1] : orbit_)
    for (const auto& [v2, s2] : orbit_) f0_[v1 + v2] += s1 * s2;
  for (auto it = f0_.begin(); it != f0_.end();) {
    if (it->second == 0)
      it = f0_.erase(it);
    else
      ++it;
  }
}

WeylRef RootLatticeData::iota() const {
  if (iota_index_ >= 0) return WeylRef{iota_index_, false};
  return WeylRef{0, true};
}

WeylRef RootLatticeData::canonical(WeylRef w) const {
  if (!w.neg || iota_index_ < 0) return w;
  MatZ m = weyl_[w.idx].mat;
  for (auto& z : m.a) z = -z;
  int idx = index_of_matrix(m);
  assert(idx >= 0);
  return WeylRef{idx, false};
}

WeylRef RootLatticeData::compose(WeylRef a, WeylRef b) const {
  MatZ p = matz_mul(weyl_[a.idx].mat, weyl_[b.idx].mat);
  int idx = index_of_matrix(p);
  assert(idx >= 0);
  return canonical(WeylRef{idx, a.neg != b.neg});
}

WeylRef RootLatticeData::inverse(WeylRef a) const {
  int idx = index_of_matrix(weyl_[a.idx].inv);
  assert(idx >= 0);
  return canonical(WeylRef{idx, a.neg});
}

int RootLatticeData::sign_of(WeylRef w) const {
  int s = weyl_[w.idx].sign;
  return w.neg ? s * iota_sign() : s;
}

int RootLatticeData::length_of(WeylRef w) const {
  if (!w.neg) return weyl_[w.idx].length;
  return -1;
}

int RootLatticeData::index_of_matrix(const MatZ& m) const {
  auto it = weyl_index_.find(matz_key(m));
  return it == weyl_index_.end() ? -1 : it->second;
}

IntVec RootLatticeData::apply(WeylRef w, const IntVec& v) const {
  const MatZ& m = weyl_[w.idx].mat;
  IntVec r(rank, 0);
  for (int i = 0; i < rank; ++i) {
    Zint acc = 0;
    for (int j = 0; j < rank; ++j) acc += m(i, j) * v[j];
    r[i] = to_int_checked(w.neg ? Zint(-acc) : acc);
  }
  return r;
}

IntVec RootLatticeData::apply_inverse(WeylRef w, const IntVec& v) const {
  const MatZ& m = weyl_[w.idx].inv;
  IntVec r(rank, 0);
  for (int i = 0; i < rank; ++i) {
    Zint acc = 0;
    for (int j = 0; j < rank; ++j) acc += m(i, j) * v[j];
    r[i] = to_int_checked(w.neg ? Zint(-acc) : acc);
  }
  return r;
}

std::vector<Rat> RootLatticeData::apply(WeylRef w, const std::vector<Rat>& v) const {
  const MatZ& m = weyl_[w.idx].mat;
  std::vector<Rat> r(rank, Rat(0));
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < rank; ++j) r[i] += Rat(m(i, j)) * v[j];
    if (w.neg) r[i] = -r[i];
  }
  return r;
}

Int RootLatticeData::pairing_int(const IntVec& a, const IntVec& b) const {
  if (static_cast<int>(a.size()) != rank || static_cast<int>(b.size()) != rank)
    throw domain_error("pairing: dimension mismatch");
  Zint acc = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) acc += gram(i, j) * a[i] * b[j];
  return to_int_checked(acc);
}

Rat RootLatticeData::pairing(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
  if (static_cast<int>(a.size()) != rank || static_cast<int>(b.size()) != rank)
    throw domain_error("pairing: dimension mismatch");
  Rat acc = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) acc += Rat(gram(i, j)) * a[i] * b[j];
  return acc;
}

Rat RootLatticeData::rho_pairing() const {
  return Rat(pairing_int(two_rho, two_rho)) / 4;
}

bool RootLatticeData::in_two_q(const IntVec& v) const {
  for (Int x : v)
    if (x % 2 != 0) return false;
  return true;
}

bool RootLatticeData::in_two_rho_plus_two_q(const IntVec& v) const {
  for (int i = 0; i < rank; ++i)
    if ((v[i] - two_rho[i]) % 2 != 0) return false;
  return true;
}

Int RootLatticeData::kostant(const IntVec& a) const {
  if (static_cast<int>(a.size()) != rank) throw domain_error("kostant: dimension mismatch");
  std::lock_guard<std::mutex> lock(kostant_mutex_);
  return kostant_rec(a, 0);
}

Int RootLatticeData::kostant_rec(IntVec a, std::size_t i) const {
  bool zero = true;
  for (Int x : a) {
    if (x < 0) return 0;  // positive roots have nonnegative coordinates
    if (x != 0) zero = false;
  }
  if (zero) return 1;
  if (i == positive_roots.size()) return 0;
  IntVec key = a;
  key.push_back(static_cast<Int>(i));
  auto it = kostant_memo_.find(key);
  if (it != kostant_memo_.end()) return it->second;
  Int total = 0;
  IntVec cur = a;
  while (true) {
    total += kostant_rec(cur, i + 1);
    bool ok = true;
    for (int k = 0; k < rank; ++k) {
      cur[k] -= positive_roots[i][k];
      if (cur[k] < 0) ok = false;
    }
    if (!ok) break;
  }
  kostant_memo_.emplace(std::move(key), total);
  return total;
}

std::optional<int> RootLatticeData::f1_sign(const IntVec& mu) const {
  auto it = orbit_sign_.find(mu);
  if (it == orbit_sign_.end()) return std::nullopt;
  return it->second;
}

std::vector<IntVec> RootLatticeData::ball(const Rat& radius) const {
  MatQ a = matq_from_z(gram);
  std::vector<Rat> b(rank, Rat(0));
  EllipsoidEnumerator en(a, b, -radius);
  std::vector<IntVec> out;
  en.enumerate([&](const std::vector<Int>& u, const Rat&) { out.push_back(IntVec(u)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> RootLatticeData::coset_ball(const IntVec& offset, const Rat& radius) const {
  // v = offset + 2u: <v,v> <= radius is a positive definite quadratic in u.
  MatQ a(rank, rank);
  std::vector<Rat> b(rank, Rat(0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      a(i, j) = Rat(gram(i, j)) * 4;
      b[i] += Rat(gram(i, j)) * 2 * offset[j];
    }
  Rat c = Rat(pairing_int(offset, offset)) - radius;
  EllipsoidEnumerator en(a, b, c);
  std::vector<IntVec> out;
  en.enumerate([&](const std::vector<Int>& u, const Rat&) {
    IntVec v(rank);
    for (int k = 0; k < rank; ++k) v[k] = offset[k] + 2 * u[k];
    out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plumbtop
