#include "admissible_series.hpp"

#include <algorithm>
#include <sstream>

namespace plumbtop {

namespace {

std::string vec_str(const IntVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

// Coefficient p(nu) of z^nu in W(z): the Kostant count at -(nu + 2rho)/2.
Rat kostant_coefficient(const RootLatticeData& lat, const IntVec& nu) {
  if (!lat.in_two_rho_plus_two_q(nu)) return Rat(0);
  IntVec arg(lat.rank);
  for (int i = 0; i < lat.rank; ++i) arg[i] = (-nu[i] - lat.two_rho[i]) / 2;
  return Rat(lat.kostant(arg));
}

// Is mu an integer multiple of v (v != 0)? Returns the multiplier.
std::optional<Int> multiple_of(const IntVec& mu, const IntVec& v) {
  int pivot = -1;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) {
      pivot = static_cast<int>(i);
      break;
    }
  if (pivot < 0) return std::nullopt;
  if (mu[pivot] % v[pivot] != 0) return std::nullopt;
  Int k = mu[pivot] / v[pivot];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mu[i] != k * v[i]) return std::nullopt;
  return k;
}

bool term_order(const SeriesTerm& a, const SeriesTerm& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.x.idx != b.x.idx) return a.x.idx < b.x.idx;
  if (a.x.neg != b.x.neg) return a.x.neg < b.x.neg;
  return a.gamma < b.gamma;
}

}  // namespace

AdmissibleSeries::AdmissibleSeries(LatticePtr lat, std::vector<SeriesTerm> terms, bool admissible,
                                   std::string name)
    : lat_(std::move(lat)), terms_(std::move(terms)), admissible_(admissible),
      name_(std::move(name)) {
  for (auto& t : terms_) {
    if (static_cast<int>(t.gamma.size()) != lat_->rank)
      throw domain_error("series term shift has wrong dimension");
    t.x = lat_->canonical(t.x);
  }
  normalize();
}

void AdmissibleSeries::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_order);
  std::vector<SeriesTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().kind == t.kind && merged.back().x == t.x &&
        merged.back().gamma == t.gamma) {
      merged.back().scalar += t.scalar;
    } else {
      merged.push_back(t);
    }
  }
  terms_.clear();
  for (auto& t : merged)
    if (t.scalar != 0) terms_.push_back(std::move(t));
}

AdmissibleSeries AdmissibleSeries::kostant_series(LatticePtr lat) {
  SeriesTerm t;
  t.scalar = 1;
  t.gamma.assign(lat->rank, 0);
  t.kind = BasisKind::KostantTwist;
  t.x = lat->identity();
  return AdmissibleSeries(std::move(lat), {t}, true, "W");
}

AdmissibleSeries AdmissibleSeries::translate_family_member(LatticePtr lat, const IntVec& gamma,
                                                           int simple_root_index) {
  if (simple_root_index < 0 || simple_root_index >= lat->rank)
    throw domain_error("translate family: simple root index out of range");
  if (static_cast<int>(gamma.size()) != lat->rank)
    throw domain_error("translate family: shift has wrong dimension");
  IntVec cone_normal = lat->two_rho;
  cone_normal[simple_root_index] -= 1;  // 2 rho - alpha_i
  if (lat->pairing_int(gamma, cone_normal) < 0)
    throw domain_error("invalid translate: <gamma, 2rho - alpha_i> < 0");

  MatZ refl = MatZ::identity(lat->rank);
  for (int j = 0; j < lat->rank; ++j)
    refl(simple_root_index, j) -=
        2 * lat->gram(simple_root_index, j) / lat->gram(simple_root_index, simple_root_index);
  int sigma_idx = lat->index_of_matrix(refl);
  assert(sigma_idx >= 0);
  WeylRef sigma{sigma_idx, false};

  IntVec zero(lat->rank, 0);
  SeriesTerm w0{Rat(1), zero, BasisKind::KostantTwist, lat->identity()};
  SeriesTerm w1{Rat(1), gamma, BasisKind::KostantTwist, lat->identity()};
  SeriesTerm w2{Rat(-1), gamma, BasisKind::KostantTwist, sigma};
  std::string name = "W+z^{2" + vec_str(gamma) + "}(W-W^s" + std::to_string(simple_root_index) +
                     ")";
  return AdmissibleSeries(std::move(lat), {w0, w1, w2}, true, name);
}

AdmissibleSeries AdmissibleSeries::with_even_weyl_line(const Rat& c, const IntVec& gamma,
                                                       WeylRef x) const {
  if (lat_->label != "A2")
    throw domain_error("even Weyl line members are only certified for A2");
  if (is_zero(gamma)) throw domain_error("even Weyl line: gamma must be nonzero");
  std::vector<SeriesTerm> terms = terms_;
  terms.push_back(SeriesTerm{c, gamma, BasisKind::EvenWeylLine, lat_->canonical(x)});
  return AdmissibleSeries(lat_, std::move(terms), admissible_, name_ + "+line");
}

AdmissibleSeries AdmissibleSeries::twist(WeylRef w) const {
  w = lat_->canonical(w);
  std::vector<SeriesTerm> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    SeriesTerm nt;
    nt.gamma = lat_->apply(w, t.gamma);
    nt.kind = t.kind;
    nt.x = lat_->compose(w, t.x);
    nt.scalar = t.kind == BasisKind::KostantTwist ? t.scalar : t.scalar * lat_->sign_of(w);
    terms.push_back(std::move(nt));
  }
  return AdmissibleSeries(lat_, std::move(terms), admissible_, name_ + "^w");
}

Rat AdmissibleSeries::coefficient(const IntVec& mu) const {
  Rat total = 0;
  for (const auto& t : terms_) {
    IntVec shifted = mu;
    for (int i = 0; i < lat_->rank; ++i) shifted[i] -= 2 * t.gamma[i];
    if (t.kind == BasisKind::KostantTwist) {
      IntVec nu = lat_->apply_inverse(t.x, shifted);
      Rat p = kostant_coefficient(*lat_, nu);
      if (p != 0) total += t.scalar * lat_->sign_of(t.x) * p;
    } else {
      IntVec dir = lat_->apply(t.x, lat_->two_rho);
      if (multiple_of(shifted, dir)) total += t.scalar;
    }
  }
  return total;
}

Rat AdmissibleSeries::twisted_coefficient(WeylRef x, const IntVec& mu) const {
  return Rat(lat_->sign_of(x)) * coefficient(lat_->apply_inverse(x, mu));
}

GradedTwistOracle::GradedTwistOracle(AdmissibleSeries series) : series_(std::move(series)) {}

Rat GradedTwistOracle::coeff(WeylRef x, int n, const IntVec& mu) const {
  const auto& lat = *series_.lattice();
  if (n < 0) throw domain_error("graded twist degree must be nonnegative");
  switch (n) {
    case 2:
      return is_zero(mu) ? Rat(1) : Rat(0);
    case 1: {
      auto s = lat.f1_sign(mu);
      return s ? Rat(*s) : Rat(0);
    }
    case 0: {
      auto it = lat.f0_table().find(mu);
      return it == lat.f0_table().end() ? Rat(0) : Rat(it->second);
    }
    case 3:
      return series_.twisted_coefficient(x, mu);
    default: {
      const ConvPlan& plan = plan_for(x);
      return convolution(lat.canonical(x), plan, n - 2, mu);
    }
  }
}

const GradedTwistOracle::ConvPlan& GradedTwistOracle::plan_for(WeylRef x) const {
  const auto& lat = *series_.lattice();
  x = lat.canonical(x);
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_pair(x.idx, static_cast<int>(x.neg));
  auto it = plans_.find(key);
  if (it != plans_.end()) return it->second;

  ConvPlan plan;
  for (const auto& t : series_.terms()) {
    if (t.kind == BasisKind::EvenWeylLine)
      throw not_convolvable(
          "series has an even-Weyl-line term; its two-way line support admits no convolution "
          "certificate");
    SeriesTerm nt;
    nt.scalar = t.scalar;
    nt.gamma = lat.apply(x, t.gamma);
    nt.kind = BasisKind::KostantTwist;
    nt.x = lat.compose(x, t.x);
    plan.twisted.push_back(std::move(nt));
  }
  // A functional strictly positive on every cone direction y_t(alpha_i).
  plan.h.assign(lat.rank, 0);
  std::vector<std::pair<int, bool>> seen;
  for (const auto& t : plan.twisted) {
    auto yk = std::make_pair(t.x.idx, t.x.neg);
    if (std::find(seen.begin(), seen.end(), yk) != seen.end()) continue;
    seen.push_back(yk);
    IntVec dir = lat.apply(t.x, lat.two_rho);
    for (int i = 0; i < lat.rank; ++i) plan.h[i] += dir[i];
  }
  for (const auto& t : plan.twisted) {
    for (int i = 0; i < lat.rank; ++i) {
      IntVec alpha(lat.rank, 0);
      alpha[i] = 1;
      if (lat.pairing_int(plan.h, lat.apply(t.x, alpha)) <= 0)
        throw not_convolvable(
            "support cones of the series terms oppose each other; convolution powers are not "
            "certified finite");
    }
  }
  bool first = true;
  for (const auto& t : plan.twisted) {
    IntVec apex_pt = 2 * t.gamma - lat.apply(t.x, lat.two_rho);
    Rat u = Rat(lat.pairing_int(plan.h, apex_pt));
    plan.apex.push_back(u);
    if (first || u > plan.apex_max) plan.apex_max = u;
    first = false;
  }
  return plans_.emplace(key, std::move(plan)).first->second;
}

Rat GradedTwistOracle::convolution(WeylRef x, const ConvPlan& plan, int factors,
                                   const IntVec& mu) const {
  const auto& lat = *series_.lattice();
  if (factors == 1) {
    Rat total = 0;
    for (const auto& t : plan.twisted) {
      IntVec shifted = mu - 2 * t.gamma;
      IntVec nu = lat.apply_inverse(t.x, shifted);
      Rat p = kostant_coefficient(lat, nu);
      if (p != 0) total += t.scalar * lat.sign_of(t.x) * p;
    }
    return total;
  }
  IntVec key;
  key.push_back(x.idx);
  key.push_back(x.neg ? 1 : 0);
  key.push_back(factors);
  key.insert(key.end(), mu.begin(), mu.end());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = conv_memo_.find(key);
    if (it != conv_memo_.end()) return it->second;
  }
  Rat lo = Rat(lat.pairing_int(plan.h, mu)) - Rat(factors - 1) * plan.apex_max;
  Rat total = 0;
  for (std::size_t ti = 0; ti < plan.twisted.size(); ++ti) {
    const auto& t = plan.twisted[ti];
    Rat budget = plan.apex[ti] - lo;
    if (budget < 0) continue;
    // Support points: nu = 2 gamma + y(-2rho - 2 m), m >= 0 coordinatewise,
    // with h-value >= lo, i.e. sum_i m_i c_i <= budget/2 for
    // c_i = 2 <h, y(alpha_i)> > 0.
    std::vector<Rat> cost(lat.rank);
    for (int i = 0; i < lat.rank; ++i) {
      IntVec alpha(lat.rank, 0);
      alpha[i] = 1;
      cost[i] = Rat(2 * lat.pairing_int(plan.h, lat.apply(t.x, alpha)));
    }
    IntVec m(lat.rank, 0);
    std::function<void(int, Rat)> walk = [&](int i, Rat remaining) {
      if (i == lat.rank) {
        Int kk = lat.kostant(m);
        if (kk == 0) return;
        IntVec inner = lat.two_rho;
        for (int k2 = 0; k2 < lat.rank; ++k2) inner[k2] = -lat.two_rho[k2] - 2 * m[k2];
        IntVec nu = 2 * t.gamma + lat.apply(t.x, inner);
        Rat val = t.scalar * lat.sign_of(t.x) * Rat(kk);
        total += val * convolution(x, plan, factors - 1, mu - nu);
        return;
      }
      for (Int mi = 0;; ++mi) {
        Rat used = Rat(mi) * cost[i];
        if (used > remaining) break;
        m[i] = mi;
        walk(i + 1, remaining - used);
      }
      m[i] = 0;
    };
    walk(0, budget);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  conv_memo_.emplace(std::move(key), total);
  return total;
}

CoefficientWindow window_from_series(const AdmissibleSeries& p, const Rat& radius) {
  CoefficientWindow win;
  win.lat = p.lattice();
  win.radius = radius;
  for (const IntVec& v : p.lattice()->ball(radius)) {
    Rat c = p.coefficient(v);
    if (c != 0) win.table.emplace(v, c);
  }
  return win;
}

namespace {

// Shared (P2) window check: the alternating Weyl-orbit sum must be the
// delta function at the origin.
void check_p2(const RootLatticeData& lat, const std::function<Rat(const IntVec&)>& value,
              const Rat& radius, bool window_bounded, AdmissibilityReport& rep) {
  IntVec zero(lat.rank, 0);
  int skipped = 0;
  for (const IntVec& alpha : lat.coset_ball(zero, radius)) {
    if (window_bounded) {
      bool fits = true;
      for (const auto& [orb, s] : lat.two_rho_orbit()) {
        IntVec site = alpha + orb;
        if (Rat(lat.pairing_int(site, site)) > radius) fits = false;
      }
      if (!fits) {
        ++skipped;
        continue;
      }
    }
    Rat sum = 0;
    for (const auto& [orb, s] : lat.two_rho_orbit()) sum += Rat(s) * value(alpha + orb);
    sum *= lat.iota_sign();
    Rat expected = is_zero(alpha) ? Rat(1) : Rat(0);
    ++rep.sites_checked;
    if (sum != expected) {
      rep.p2_ok = false;
      if (rep.violations.size() < 64)
        rep.violations.push_back("p2 at " + vec_str(alpha) + ": got " + rat_to_string(sum) +
                                 ", expected " + rat_to_string(expected));
    }
  }
  if (skipped > 0)
    rep.caveats.push_back("p2: " + std::to_string(skipped) +
                          " sites near the window boundary were skipped (orbit leaves the "
                          "window)");
}

}  // namespace

AdmissibilityReport verify_admissible(const AdmissibleSeries& p, const Rat& radius) {
  AdmissibilityReport rep;
  const auto& lat = *p.lattice();
  check_p2(lat, [&](const IntVec& v) { return p.coefficient(v); }, radius, false, rep);

  // (P1) for closed-form series holds per term: a Kostant twist is
  // supported in a shifted simplicial cone, which meets every line
  // through the origin in at most a half-line. Line terms are certified
  // by the A2 annihilation lemma for (P2); their line support is noted.
  for (const auto& t : p.terms()) {
    if (t.kind == BasisKind::KostantTwist) {
      IntVec apex = 2 * t.gamma - lat.apply(t.x, lat.two_rho);
      rep.certificates.push_back("cone certificate: apex " + vec_str(apex) +
                                 ", simplicial directions -2*x(alpha_i)");
    } else {
      IntVec dir = lat.apply(t.x, lat.two_rho);
      rep.certificates.push_back("line term: support 2*gamma + Z*" + vec_str(dir));
      if (multiple_of(2 * t.gamma, dir))
        rep.caveats.push_back(
            "line term passes through the origin; the one-sided line criterion fails on its "
            "direction, admissibility rests on the (P2) annihilation lemma");
    }
  }
  bool mixed = false;
  for (const auto& t : p.terms())
    if (!(t.x == p.terms().front().x)) mixed = true;
  if (mixed)
    rep.caveats.push_back(
        "terms carry distinct Weyl twists; convolution powers (degree >= 4 vertices) may be "
        "rejected as not certified finite");
  return rep;
}

AdmissibilityReport verify_admissible(const CoefficientWindow& win) {
  AdmissibilityReport rep;
  const auto& lat = *win.lat;
  check_p2(lat, [&](const IntVec& v) { return win.value(v); }, win.radius, true, rep);

  // (P1) on a window: along each simple root and the Weyl-vector
  // direction, the restriction must vanish on at least one tail strictly
  // inside the window.
  std::vector<IntVec> dirs;
  for (int i = 0; i < lat.rank; ++i) {
    IntVec e(lat.rank, 0);
    e[i] = 1;
    dirs.push_back(e);
  }
  IntVec rho_dir = lat.two_rho;
  Int g = 0;
  for (Int x : rho_dir) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : rho_dir) x /= g;
  dirs.push_back(rho_dir);

  for (const IntVec& d : dirs) {
    Rat dd = Rat(lat.pairing_int(d, d));
    Int kmax = 0;
    while (Rat((kmax + 1) * (kmax + 1)) * dd <= win.radius) ++kmax;
    Int first_nz = kmax + 1, last_nz = -(kmax + 1);
    for (Int k = -kmax; k <= kmax; ++k) {
      if (win.value(k * d) != 0) {
        first_nz = std::min(first_nz, k);
        last_nz = std::max(last_nz, k);
      }
    }
    bool any = first_nz <= last_nz;
    bool pos_tail = !any || last_nz < kmax;
    bool neg_tail = !any || first_nz > -kmax;
    if (!(pos_tail || neg_tail)) {
      rep.p1_ok = false;
      rep.violations.push_back("p1 along " + vec_str(d) +
                               ": nonzero values reach both window boundaries");
    }
  }
  rep.caveats.push_back("p1 tails are checked within the window only");
  return rep;
}

PuzzleResult solve_puzzle_a1(const LatticePtr& a1, const Rat& radius, PuzzleSide side) {
  if (a1->label != "A1") throw domain_error("the puzzle solver is specific to A1");
  Int k = 0;
  while (Rat(2 * (k + 1) * (k + 1)) <= radius) ++k;
  std::map<Int, Rat> c;
  if (side == PuzzleSide::VanishPositive) {
    c[k] = 0;
    if (k >= 1) c[k - 1] = 0;
    for (Int j = k - 1; j >= -k + 1; --j) c[j - 1] = c[j + 1] + (j == 0 ? 1 : 0);
  } else {
    c[-k] = 0;
    if (k >= 1) c[-k + 1] = 0;
    for (Int j = -k + 1; j <= k - 1; ++j) c[j + 1] = c[j - 1] - (j == 0 ? 1 : 0);
  }
  PuzzleResult res;
  res.window.lat = a1;
  res.window.radius = radius;
  for (const auto& [n, v] : c)
    if (v != 0) res.window.table.emplace(IntVec{n}, v);
  res.unique = true;
  res.free_variables = 0;
  bool is_w = true, is_wi = true;
  for (Int n = -k; n <= k; ++n) {
    Rat expect_w = (n < 0 && (-n) % 2 == 1) ? Rat(1) : Rat(0);
    Rat expect_wi = (n > 0 && n % 2 == 1) ? Rat(-1) : Rat(0);
    Rat got = c.count(n) ? c[n] : Rat(0);
    if (got != expect_w) is_w = false;
    if (got != expect_wi) is_wi = false;
  }
  res.matches = is_w ? "W" : (is_wi ? "W_iota" : "");
  return res;
}

}  // namespace plumbtop
