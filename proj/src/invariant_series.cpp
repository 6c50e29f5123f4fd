#include "invariant_series.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <thread>

namespace plumbtop {

namespace {

struct VertexChoices {
  int vertex;
  std::vector<std::pair<IntVec, Rat>> options;  // (l_v, coefficient factor)
};

struct SliceData {
  std::vector<std::vector<Zint>> base;  // per root coordinate: l^(j) in Z^s
  Rat fixed_coeff;
  Rat s0;                               // <l_base, l_base>
  std::vector<Rat> lin;                 // ellipsoid linear part (dim entries)
  Rat min_exponent;                     // real bound for this slice
};

struct Engine {
  const PlumbingTree& tree;
  const GradedTwistOracle& oracle;
  const RootLatticeData& lat;
  FramingData f;
  std::vector<int> deg;
  std::vector<int> low;   // vertices of degree <= 2
  std::vector<int> high;  // vertices of degree >= 3
  WeylAssignmentStructure ws;
  Rat e0;
  int sign0 = 1;
  // Variation lattice: x in Z^s with (Bx)_v = 0 for low vertices.
  std::vector<std::vector<Zint>> kernel;  // columns, size s
  MatZ bv;                                // B * V (s x k)
  MatQ quad;                              // (1/2) G (x) (-V^T B V); positive definite
  int k = 0, dim = 0;
  std::unique_ptr<IntSolver> solver;
  std::vector<VertexChoices> choices;

  explicit Engine(const PlumbingTree& t, const GradedTwistOracle& orc, const SearchBounds& bounds)
      : tree(t), oracle(orc), lat(*orc.lattice()), f(framing(t)), deg(t.degrees()),
        ws(weyl_assignment_structure(t, bounds)) {
    for (int v = 0; v < t.size(); ++v) (deg[v] <= 2 ? low : high).push_back(v);
    e0 = Rat(3 * f.sigma) - Rat(f.trace);
    e0 = e0 / 2 * lat.rho_pairing();
    sign0 = (static_cast<long long>(lat.num_positive) * f.pi) % 2 == 0 ? 1 : -1;

    // Kernel of the low-vertex rows of B.
    if (!low.empty()) {
      MatZ rows(static_cast<int>(low.size()), t.size());
      for (std::size_t i = 0; i < low.size(); ++i)
        for (int j = 0; j < t.size(); ++j) rows(static_cast<int>(i), j) = f.b(low[i], j);
      solver = std::make_unique<IntSolver>(rows);
      kernel = solver->kernel();
    } else {
      for (int i = 0; i < t.size(); ++i) {
        std::vector<Zint> e(t.size());
        e[i] = 1;
        kernel.push_back(std::move(e));
      }
    }
    k = static_cast<int>(kernel.size());
    dim = k * lat.rank;
    bv = MatZ(t.size(), k);
    for (int c = 0; c < k; ++c) {
      std::vector<Zint> col = matz_apply(f.b, kernel[c]);
      for (int rix = 0; rix < t.size(); ++rix) bv(rix, c) = col[rix];
    }
    if (k > 0) {
      MatZ vtbv(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          Zint acc = 0;
          for (int rix = 0; rix < t.size(); ++rix) acc += kernel[i][rix] * bv(rix, j);
          vtbv(i, j) = acc;
        }
      quad = MatQ(dim, dim);
      for (int j1 = 0; j1 < lat.rank; ++j1)
        for (int j2 = 0; j2 < lat.rank; ++j2)
          for (int p1 = 0; p1 < k; ++p1)
            for (int p2 = 0; p2 < k; ++p2)
              quad(j1 * k + p1, j2 * k + p2) = Rat(lat.gram(j1, j2)) * Rat(-vtbv(p1, p2)) / 2;
    }

    // Finite options at the low vertices.
    for (int v : low) {
      VertexChoices vc;
      vc.vertex = v;
      if (deg[v] == 2) {
        vc.options.emplace_back(IntVec(lat.rank, 0), Rat(1));
      } else if (deg[v] == 1) {
        for (const auto& [mu, s] : lat.two_rho_orbit()) vc.options.emplace_back(mu, Rat(s));
      } else {
        for (const auto& [mu, c] : lat.f0_table()) vc.options.emplace_back(mu, Rat(c));
        std::sort(vc.options.begin(), vc.options.end());
      }
      choices.push_back(std::move(vc));
    }
  }

  // Fill base vectors for one combination of low-vertex values; returns
  // false on a congruence obstruction.
  bool build_slice(const SpincRep& a, const std::vector<std::size_t>& pick, SliceData& out) const {
    int s = tree.size(), r = lat.rank;
    out.fixed_coeff = 1;
    for (std::size_t i = 0; i < choices.size(); ++i)
      out.fixed_coeff *= choices[i].options[pick[i]].second;
    out.base.assign(r, std::vector<Zint>(s));
    for (int j = 0; j < r; ++j) {
      if (solver) {
        std::vector<Zint> rhs(low.size());
        for (std::size_t i = 0; i < low.size(); ++i) {
          Int target = choices[i].options[pick[i]].first[j];
          Int diff = target - a.comp[low[i]][j];
          if (diff % 2 != 0) return false;
          rhs[i] = diff / 2;
        }
        std::vector<Zint> x;
        if (!solver->solve(rhs, x)) return false;
        std::vector<Zint> bx = matz_apply(f.b, x);
        for (int v = 0; v < s; ++v) out.base[j][v] = Zint(a.comp[v][j]) + 2 * bx[v];
      } else {
        for (int v = 0; v < s; ++v) out.base[j][v] = a.comp[v][j];
      }
    }
    // s0 = <l_base, l_base> and the linear part of the quadratic.
    out.s0 = 0;
    int r2 = lat.rank;
    std::vector<std::vector<Rat>> binv_base(r2, std::vector<Rat>(s, Rat(0)));
    for (int j = 0; j < r2; ++j)
      for (int v = 0; v < s; ++v)
        for (int w2 = 0; w2 < s; ++w2)
          if (f.inverse(v, w2) != 0) binv_base[j][v] += f.inverse(v, w2) * Rat(out.base[j][w2]);
    for (int j1 = 0; j1 < r2; ++j1)
      for (int j2 = 0; j2 < r2; ++j2) {
        if (lat.gram(j1, j2) == 0) continue;
        Rat dot = 0;
        for (int v = 0; v < s; ++v) dot += Rat(out.base[j1][v]) * binv_base[j2][v];
        out.s0 += Rat(lat.gram(j1, j2)) * dot;
      }
    if (dim > 0) {
      // c_j = V^T base_j; linear coefficient of y[(j2,p)] is
      // -(1/4) sum_j1 G_{j1 j2} c_{j1}[p].
      std::vector<std::vector<Zint>> cj(r2, std::vector<Zint>(k));
      for (int j = 0; j < r2; ++j)
        for (int p = 0; p < k; ++p) {
          Zint acc = 0;
          for (int v = 0; v < s; ++v) acc += kernel[p][v] * out.base[j][v];
          cj[j][p] = acc;
        }
      out.lin.assign(dim, Rat(0));
      for (int j2 = 0; j2 < r2; ++j2)
        for (int p = 0; p < k; ++p) {
          Rat acc = 0;
          for (int j1 = 0; j1 < r2; ++j1)
            if (lat.gram(j1, j2) != 0) acc += Rat(lat.gram(j1, j2)) * Rat(cj[j1][p]);
          out.lin[j2 * k + p] = -acc / 4;
        }
      EllipsoidEnumerator en(quad, out.lin, -out.s0 / 8);
      out.min_exponent = e0 + en.real_minimum();
    } else {
      out.min_exponent = e0 - out.s0 / 8;
    }
    return true;
  }

  // Sum over Weyl assignments of the product over high vertices, times
  // the product of the fixed (degree <= 2) factors.
  Rat high_coefficient(const std::vector<IntVec>& lv) const {
    Rat total = 1;
    int order = lat.weyl_order();
    for (int comp = 0; comp < ws.num_components; ++comp) {
      Rat comp_sum = 0;
      for (int x = 0; x < order; ++x) {
        Rat prod = 1;
        for (std::size_t i = 0; i < ws.high_vertices.size() && prod != 0; ++i) {
          if (ws.component[i] != comp) continue;
          WeylRef xi{x, ws.parity[i] == 1};
          prod *= oracle.coeff(xi, deg[ws.high_vertices[i]], lv[i]);
        }
        comp_sum += prod;
      }
      total *= comp_sum / order;
      if (total == 0) break;
    }
    return total;
  }
};

}  // namespace

Rat c_gamma(const PlumbingTree& tree, const GradedTwistOracle& oracle, const SpincRep& l,
            const SearchBounds& bounds) {
  Engine eng(tree, oracle, bounds);
  Rat fixed = 1;
  for (int v : eng.low) {
    fixed *= oracle.coeff(eng.lat.identity(), eng.deg[v], l.comp[v]);
    if (fixed == 0) return fixed;
  }
  std::vector<IntVec> lv;
  for (int v : eng.high) lv.push_back(l.comp[v]);
  return fixed * eng.high_coefficient(lv);
}

YResult compute_y(const PlumbingTree& tree, const GradedTwistOracle& oracle, const SpincRep& a,
                  const YOptions& opt) {
  tree.validate();
  if (!is_weakly_negative_definite(tree))
    throw domain_error("tree is not weakly negative definite");
  if (!is_reduced(tree, opt.bounds)) throw domain_error("tree is not reduced");
  Engine eng(tree, oracle, opt.bounds);
  const auto& lat = eng.lat;
  int s = tree.size(), r = lat.rank;
  if (static_cast<int>(a.comp.size()) != s)
    throw domain_error("spin-c representative does not match the tree");

  Rat aa = 0;
  {
    std::vector<std::vector<Rat>> binv_a(r, std::vector<Rat>(s, Rat(0)));
    for (int j = 0; j < r; ++j)
      for (int v = 0; v < s; ++v)
        for (int w2 = 0; w2 < s; ++w2)
          if (eng.f.inverse(v, w2) != 0) binv_a[j][v] += eng.f.inverse(v, w2) * a.comp[w2][j];
    for (int j1 = 0; j1 < r; ++j1)
      for (int j2 = 0; j2 < r; ++j2) {
        if (lat.gram(j1, j2) == 0) continue;
        Rat dot = 0;
        for (int v = 0; v < s; ++v) dot += Rat(a.comp[v][j1]) * binv_a[j2][v];
        aa += Rat(lat.gram(j1, j2)) * dot;
      }
  }

  // Materialize the feasible slices.
  std::vector<SliceData> slices;
  std::vector<std::size_t> pick(eng.choices.size(), 0);
  while (true) {
    SliceData sd;
    if (eng.build_slice(a, pick, sd)) slices.push_back(std::move(sd));
    int pos = static_cast<int>(pick.size()) - 1;
    while (pos >= 0 && ++pick[pos] == eng.choices[pos].options.size()) {
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }

  YResult res;
  res.prefactor_sign = eng.sign0;
  res.prefactor_exponent = eng.e0;
  res.slices = static_cast<long long>(slices.size());
  if (slices.empty()) {
    res.series.truncation = eng.e0;
    res.warning = "no representative satisfies the congruence; empty series";
    res.min_exponent_bound = eng.e0;
    return res;
  }
  res.min_exponent_bound = slices.front().min_exponent;
  for (const auto& sd : slices) res.min_exponent_bound = std::min(res.min_exponent_bound, sd.min_exponent);

  Rat cap = opt.absolute_cap ? *opt.absolute_cap : res.min_exponent_bound + opt.trunc_units;

  auto run_pass = [&](const Rat& the_cap, QSeries& out, bool& ring_ok, long long& points) {
    out = QSeries{};
    out.truncation = the_cap;
    ring_ok = true;
    points = 0;
    std::mutex acc_mutex;
    std::atomic<std::size_t> next{0};
    int nthreads = std::max(1, opt.threads);
    auto worker = [&]() {
      QSeries local;
      local.truncation = the_cap;
      bool local_ring = true;
      long long local_points = 0;
      while (true) {
        std::size_t si = next.fetch_add(1);
        if (si >= slices.size()) break;
        const SliceData& sd = slices[si];
        if (sd.min_exponent > the_cap) continue;
        auto emit = [&](const std::vector<Int>& y, const Rat& value) {
          // value = -<l,l>/8 - (cap - e0); exponent = value + cap.
          Rat exponent = value + the_cap;
          Rat ll = (eng.e0 - exponent) * 8;
          Rat diff = (ll - aa) / 4;
          if (diff.get_den() != 1) local_ring = false;
          if (lat.label == "A1" && diff.get_den() == 1 && diff.get_num() % 2 != 0)
            local_ring = false;
          std::vector<IntVec> lv(eng.high.size(), IntVec(r, 0));
          for (std::size_t hi = 0; hi < eng.high.size(); ++hi)
            for (int j = 0; j < r; ++j) {
              Zint acc = sd.base[j][eng.high[hi]];
              for (int p = 0; p < eng.k; ++p)
                acc += 2 * eng.bv(eng.high[hi], p) * y[static_cast<std::size_t>(j) * eng.k + p];
              lv[hi][j] = to_int_checked(acc);
            }
          Rat coeff = sd.fixed_coeff * eng.high_coefficient(lv);
          ++local_points;
          if (coeff != 0) local.add(exponent, coeff * eng.sign0);
        };
        if (eng.dim > 0) {
          EllipsoidEnumerator en(eng.quad, sd.lin, -sd.s0 / 8 - (the_cap - eng.e0));
          en.enumerate(emit);
        } else {
          Rat exponent = eng.e0 - sd.s0 / 8;
          if (exponent <= the_cap) emit({}, exponent - the_cap);
        }
      }
      std::lock_guard<std::mutex> lock(acc_mutex);
      for (const auto& [e, c] : local.terms) out.add(e, c);
      ring_ok = ring_ok && local_ring;
      points += local_points;
    };
    if (nthreads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
  };

  run_pass(cap, res.series, res.ring_ok, res.points);
  if (!opt.absolute_cap) {
    auto mn = res.series.min_exponent();
    if (!mn) {
      res.warning = "series has no nonzero coefficient up to the computed cap";
    } else if (*mn + opt.trunc_units > cap) {
      Rat cap2 = *mn + opt.trunc_units;
      run_pass(cap2, res.series, res.ring_ok, res.points);
    }
  }
  return res;
}

InvarianceReport verify_move_invariance(const PlumbingTree& t, const MoveSpec& mv,
                                        const GradedTwistOracle& oracle, const SpincRep& a,
                                        const YOptions& opt) {
  InvarianceReport rep;
  MoveResult mr = apply_move(t, mv);
  if (!is_reduced(t, opt.bounds) || !is_reduced(mr.tree, opt.bounds)) {
    rep.applicable = false;
    rep.detail = "a tree on one side of the move is not reduced";
    return rep;
  }
  if (!is_weakly_negative_definite(t) || !is_weakly_negative_definite(mr.tree)) {
    rep.applicable = false;
    rep.detail = "a tree on one side of the move is not weakly negative definite";
    return rep;
  }
  SpincRep a2 = transport(t, oracle.lattice(), mv, mr, a);
  YResult y1 = compute_y(t, oracle, a, opt);
  YResult y2 = compute_y(mr.tree, oracle, a2, opt);
  rep.compared_up_to = std::min(y1.series.truncation, y2.series.truncation);
  std::string diff;
  rep.equal = y1.series.equal_up_to(y2.series, rep.compared_up_to, &diff);
  if (!rep.equal) rep.detail = diff;
  return rep;
}

InvarianceReport verify_weyl_invariance(const PlumbingTree& t, const GradedTwistOracle& oracle,
                                        const SpincRep& a, WeylRef w, const YOptions& opt) {
  InvarianceReport rep;
  SpincSpace space(t, oracle.lattice());
  SpincRep wa = space.weyl_act(w, a);
  YResult y1 = compute_y(t, oracle, a, opt);
  YResult y2 = compute_y(t, oracle, wa, opt);
  rep.compared_up_to = std::min(y1.series.truncation, y2.series.truncation);
  std::string diff;
  rep.equal = y1.series.equal_up_to(y2.series, rep.compared_up_to, &diff);
  if (!rep.equal) {
    rep.detail = diff;
    return rep;
  }
  // Coefficient-level identity c_Gamma(l) = c_Gamma(w(l)) at the
  // representative itself.
  Rat c1 = c_gamma(t, oracle, a, opt.bounds);
  Rat c2 = c_gamma(t, oracle, wa, opt.bounds);
  if (c1 != c2) {
    rep.equal = false;
    rep.detail = "coefficient-level identity c(l) = c(w(l)) failed at l = a";
  }
  return rep;
}

InvarianceReport verify_twist_independence(const PlumbingTree& t, const AdmissibleSeries& p,
                                           const SpincRep& a, WeylRef w, const YOptions& opt) {
  InvarianceReport rep;
  GradedTwistOracle o1(p);
  GradedTwistOracle o2(p.twist(w));
  YResult y1 = compute_y(t, o1, a, opt);
  YResult y2 = compute_y(t, o2, a, opt);
  rep.compared_up_to = std::min(y1.series.truncation, y2.series.truncation);
  std::string diff;
  rep.equal = y1.series.equal_up_to(y2.series, rep.compared_up_to, &diff);
  if (!rep.equal) rep.detail = diff;
  return rep;
}

}  // namespace plumbtop
