#include "plumbtop/plumbtop.h"

#include <cstdlib>
#include <cstring>

#include "brieskorn.hpp"
#include "invariant_series.hpp"
#include "json_io.hpp"

using namespace plumbtop;

struct plumbtop_lattice {
  LatticePtr lat;
};
struct plumbtop_tree {
  PlumbingTree t;
};
struct plumbtop_series {
  std::shared_ptr<const AdmissibleSeries> s;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_string(msg);
}

template <typename F>
int guarded(char** err, F&& f) {
  try {
    f();
    return PLUMBTOP_OK;
  } catch (const parse_error& e) {
    set_err(err, e.what());
    return PLUMBTOP_ERR_PARSE;
  } catch (const Json::exception& e) {
    set_err(err, e.what());
    return PLUMBTOP_ERR_PARSE;
  } catch (const domain_error& e) {
    set_err(err, e.what());
    return PLUMBTOP_ERR_DOMAIN;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return PLUMBTOP_ERR_INTERNAL;
  }
}

SearchBounds bounds_with_depth(int depth) {
  SearchBounds b;
  if (depth > 0) b.max_moves = depth;
  return b;
}

YOptions options(const char* trunc_rat, int threads) {
  YOptions opt;
  if (trunc_rat && *trunc_rat) opt.trunc_units = rat_from_string(trunc_rat);
  opt.threads = threads > 0 ? threads : 1;
  return opt;
}

SpincRep spinc_by_index(const PlumbingTree& t, const LatticePtr& lat, int index) {
  SpincSpace space(t, lat);
  auto reps = space.enumerate();
  if (index < 0 || static_cast<std::size_t>(index) >= reps.size())
    throw domain_error("spin-c index out of range (have " + std::to_string(reps.size()) +
                       " classes)");
  return reps[index];
}

}  // namespace

extern "C" {

const char* plumbtop_version(void) { return "plumbtop 1.0.0"; }

void plumbtop_string_free(char* s) { std::free(s); }

int plumbtop_lattice_new(const char* kind, plumbtop_lattice** out, char** err) {
  return guarded(err, [&] {
    auto lat = RootLatticeData::from_label(kind ? kind : "");
    *out = new plumbtop_lattice{lat};
  });
}

void plumbtop_lattice_free(plumbtop_lattice* lat) { delete lat; }

int plumbtop_lattice_rank(const plumbtop_lattice* lat) { return lat->lat->rank; }

int plumbtop_lattice_weyl_order(const plumbtop_lattice* lat) { return lat->lat->weyl_order(); }

int plumbtop_lattice_describe(const plumbtop_lattice* lat, char** json, char** err) {
  return guarded(err, [&] {
    const auto& l = *lat->lat;
    Json j;
    j["kind"] = l.label;
    j["rank"] = l.rank;
    Json gram = Json::array();
    for (int i = 0; i < l.rank; ++i) {
      Json row = Json::array();
      for (int c = 0; c < l.rank; ++c) row.push_back(l.gram(i, c).get_si());
      gram.push_back(row);
    }
    j["gram"] = gram;
    Json roots = Json::array();
    for (const auto& r : l.positive_roots) roots.push_back(int_vec_to_json(r));
    j["positive_roots"] = roots;
    j["two_rho"] = int_vec_to_json(l.two_rho);
    Json fw = Json::array();
    for (int i = 0; i < l.rank; ++i) {
      std::vector<Rat> col;
      for (int rix = 0; rix < l.rank; ++rix) col.push_back(l.fundamental_weights(rix, i));
      fw.push_back(rat_vec_to_json(col));
    }
    j["fundamental_weights"] = fw;
    Json weyl = Json::array();
    for (const auto& w : l.weyl()) {
      Json e;
      Json rows = Json::array();
      for (int i = 0; i < l.rank; ++i) {
        Json row = Json::array();
        for (int c = 0; c < l.rank; ++c) row.push_back(w.mat(i, c).get_si());
        rows.push_back(row);
      }
      e["matrix"] = rows;
      e["length"] = w.length;
      e["sign"] = w.sign;
      weyl.push_back(e);
    }
    j["weyl_group"] = weyl;
    j["iota_in_weyl"] = l.iota_in_weyl();
    *json = dup_string(j.dump(2));
  });
}

int plumbtop_tree_parse(const char* json, plumbtop_tree** out, char** err) {
  return guarded(err, [&] {
    Json j = Json::parse(json ? json : "");
    *out = new plumbtop_tree{tree_from_json(j)};
  });
}

void plumbtop_tree_free(plumbtop_tree* t) { delete t; }

int plumbtop_tree_to_json(const plumbtop_tree* t, char** json, char** err) {
  return guarded(err, [&] { *json = dup_string(tree_to_json(t->t).dump(2)); });
}

int plumbtop_tree_check(const plumbtop_tree* t, int search_depth, char** report_json, char** err) {
  return guarded(err, [&] {
    SearchBounds bounds = bounds_with_depth(search_depth);
    Json j;
    const PlumbingTree& tree = t->t;
    tree.validate();
    FramingData f = framing(tree);
    j["vertices"] = tree.size();
    j["determinant"] = f.det.get_str();
    j["sigma"] = f.sigma;
    j["pi"] = f.pi;
    j["trace"] = f.trace.get_str();
    j["weakly_negative_definite"] = is_weakly_negative_definite(tree);
    j["reduced"] = is_reduced(tree, bounds);
    j["search_depth"] = bounds.max_moves;
    auto bridges = forcing_bridges(tree, bounds);
    Json jb = Json::array();
    for (const auto& b : bridges)
      jb.push_back(Json{{"v", b.v}, {"w", b.w}, {"delta_pi", b.delta_pi}});
    j["forcing_bridges"] = jb;
    *report_json = dup_string(j.dump(2));
  });
}

int plumbtop_tree_move(const plumbtop_tree* t, const char* move_json, plumbtop_tree** out,
                       char** err) {
  return guarded(err, [&] {
    MoveSpec mv = move_from_json(Json::parse(move_json ? move_json : ""));
    MoveResult mr = apply_move(t->t, mv);
    *out = new plumbtop_tree{mr.tree};
  });
}

int plumbtop_tree_reduce(const plumbtop_tree* t, int search_depth, plumbtop_tree** out,
                         char** trace_json, char** err) {
  return guarded(err, [&] {
    ReduceResult rr = reduce(t->t, bounds_with_depth(search_depth));
    *out = new plumbtop_tree{rr.tree};
    if (trace_json) {
      Json j;
      Json trace = Json::array();
      for (const auto& mv : rr.trace) trace.push_back(move_to_json(mv));
      j["trace"] = trace;
      j["search_depth"] = rr.bounds.max_moves;
      j["bound_hit"] = rr.bound_hit;
      *trace_json = dup_string(j.dump(2));
    }
  });
}

int plumbtop_series_create(const plumbtop_lattice* lat, const char* spec, plumbtop_series** out,
                           char** err) {
  return guarded(err, [&] {
    auto s = std::make_shared<AdmissibleSeries>(series_from_spec(lat->lat, spec ? spec : "W"));
    *out = new plumbtop_series{s};
  });
}

void plumbtop_series_free(plumbtop_series* s) { delete s; }

int plumbtop_series_to_json(const plumbtop_series* s, char** json, char** err) {
  return guarded(err, [&] { *json = dup_string(series_to_json(*s->s).dump(2)); });
}

int plumbtop_series_add_line(const plumbtop_series* s, const char* c_rat, const char* gamma_json,
                             int weyl_index, plumbtop_series** out, char** err) {
  return guarded(err, [&] {
    Rat c = rat_from_string(c_rat ? c_rat : "1");
    IntVec gamma = int_vec_from_json(Json::parse(gamma_json ? gamma_json : "[]"));
    WeylRef x{weyl_index, false};
    if (weyl_index < 0 || weyl_index >= s->s->lattice()->weyl_order())
      throw domain_error("weyl index out of range");
    auto ns = std::make_shared<AdmissibleSeries>(s->s->with_even_weyl_line(c, gamma, x));
    *out = new plumbtop_series{ns};
  });
}

int plumbtop_series_twist(const plumbtop_series* s, int weyl_index, plumbtop_series** out,
                          char** err) {
  return guarded(err, [&] {
    if (weyl_index < 0 || weyl_index >= s->s->lattice()->weyl_order())
      throw domain_error("weyl index out of range");
    auto ns = std::make_shared<AdmissibleSeries>(s->s->twist(WeylRef{weyl_index, false}));
    *out = new plumbtop_series{ns};
  });
}

int plumbtop_puzzle_verify(const plumbtop_series* s, const char* radius_rat, char** report_json,
                           char** err) {
  return guarded(err, [&] {
    Rat radius = rat_from_string(radius_rat ? radius_rat : "60");
    AdmissibilityReport rep = verify_admissible(*s->s, radius);
    *report_json = dup_string(report_to_json(rep).dump(2));
  });
}

int plumbtop_puzzle_verify_window(const plumbtop_lattice* lat, const char* window_json,
                                  char** report_json, char** err) {
  return guarded(err, [&] {
    CoefficientWindow win = window_from_json(lat->lat, Json::parse(window_json ? window_json : ""));
    AdmissibilityReport rep = verify_admissible(win);
    *report_json = dup_string(report_to_json(rep).dump(2));
  });
}

int plumbtop_puzzle_solve_a1(const plumbtop_lattice* lat, const char* side,
                             const char* radius_rat, char** result_json, char** err) {
  return guarded(err, [&] {
    std::string sd = side ? side : "vanish_positive";
    PuzzleSide ps;
    if (sd == "vanish_positive") ps = PuzzleSide::VanishPositive;
    else if (sd == "vanish_negative") ps = PuzzleSide::VanishNegative;
    else throw parse_error("side must be vanish_positive or vanish_negative");
    Rat radius = rat_from_string(radius_rat ? radius_rat : "200");
    PuzzleResult pr = solve_puzzle_a1(lat->lat, radius, ps);
    Json j;
    j["window"] = window_to_json(pr.window);
    j["unique"] = pr.unique;
    j["free_variables"] = pr.free_variables;
    j["matches"] = pr.matches;
    *result_json = dup_string(j.dump(2));
  });
}

int plumbtop_spinc_list(const plumbtop_tree* t, const plumbtop_lattice* lat, char** json,
                        char** err) {
  return guarded(err, [&] {
    SpincSpace space(t->t, lat->lat);
    Json j;
    j["class_count"] = space.class_count().get_str();
    j["delta"] = spinc_to_json(space.delta());
    Json reps = Json::array();
    for (const auto& rep : space.enumerate()) reps.push_back(spinc_to_json(rep));
    j["representatives"] = reps;
    *json = dup_string(j.dump(2));
  });
}

int plumbtop_y_series(const plumbtop_tree* t, const plumbtop_lattice* lat,
                      const plumbtop_series* s, int spinc_index, const char* trunc_rat,
                      int threads, char** series_json, char** err) {
  return guarded(err, [&] {
    SpincRep a = spinc_by_index(t->t, lat->lat, spinc_index);
    GradedTwistOracle oracle(*s->s);
    YResult y = compute_y(t->t, oracle, a, options(trunc_rat, threads));
    Json j;
    j["series"] = qseries_to_json(y.series);
    j["prefactor_sign"] = y.prefactor_sign;
    j["prefactor_exponent"] = rat_to_string(y.prefactor_exponent);
    j["min_exponent_bound"] = rat_to_string(y.min_exponent_bound);
    j["ring_check_ok"] = y.ring_ok;
    j["points"] = y.points;
    j["slices"] = y.slices;
    if (!y.warning.empty()) j["warning"] = y.warning;
    *series_json = dup_string(j.dump(2));
  });
}

int plumbtop_verify_move(const plumbtop_tree* t, const plumbtop_lattice* lat,
                         const plumbtop_series* s, const char* move_json, int spinc_index,
                         const char* trunc_rat, int threads, char** report_json, char** err) {
  return guarded(err, [&] {
    MoveSpec mv = move_from_json(Json::parse(move_json ? move_json : ""));
    SpincRep a = spinc_by_index(t->t, lat->lat, spinc_index);
    GradedTwistOracle oracle(*s->s);
    InvarianceReport rep = verify_move_invariance(t->t, mv, oracle, a, options(trunc_rat, threads));
    *report_json = dup_string(report_to_json(rep).dump(2));
  });
}

int plumbtop_verify_weyl(const plumbtop_tree* t, const plumbtop_lattice* lat,
                         const plumbtop_series* s, int spinc_index, int weyl_index,
                         const char* trunc_rat, int threads, char** report_json, char** err) {
  return guarded(err, [&] {
    if (weyl_index < 0 || weyl_index >= lat->lat->weyl_order())
      throw domain_error("weyl index out of range");
    SpincRep a = spinc_by_index(t->t, lat->lat, spinc_index);
    GradedTwistOracle oracle(*s->s);
    InvarianceReport rep = verify_weyl_invariance(t->t, oracle, a, WeylRef{weyl_index, false},
                                                  options(trunc_rat, threads));
    *report_json = dup_string(report_to_json(rep).dump(2));
  });
}

int plumbtop_verify_twist(const plumbtop_tree* t, const plumbtop_lattice* lat,
                          const plumbtop_series* s, int spinc_index, int weyl_index,
                          const char* trunc_rat, int threads, char** report_json, char** err) {
  return guarded(err, [&] {
    if (weyl_index < 0 || weyl_index >= lat->lat->weyl_order())
      throw domain_error("weyl index out of range");
    SpincRep a = spinc_by_index(t->t, lat->lat, spinc_index);
    InvarianceReport rep = verify_twist_independence(t->t, *s->s, a, WeylRef{weyl_index, false},
                                                     options(trunc_rat, threads));
    *report_json = dup_string(report_to_json(rep).dump(2));
  });
}

int plumbtop_brieskorn(long b1, long b2, long b3, const plumbtop_lattice* lat,
                       const plumbtop_series* s, const char* trunc_rat, const char* via,
                       int threads, char** json, char** err) {
  return guarded(err, [&] {
    auto [data, tree] = brieskorn_plumbing(b1, b2, b3);
    std::string mode = via ? via : "both";
    Json j;
    j["tree"] = tree_to_json(tree);
    j["b0"] = data.b0;
    j["a"] = Json::array({data.a[0], data.a[1], data.a[2]});
    Json legs = Json::array();
    for (const auto& leg : data.legs) legs.push_back(leg);
    j["legs"] = legs;
    j["h"] = Json::array({data.h[0].get_str(), data.h[1].get_str(), data.h[2].get_str()});
    j["C"] = rat_to_string(data.constant_c(*lat->lat));

    YOptions opt = options(trunc_rat, threads);
    std::optional<YResult> via_tree;
    if (mode == "tree" || mode == "both") {
      SpincSpace space(tree, lat->lat);
      GradedTwistOracle oracle(*s->s);
      via_tree = compute_y(tree, oracle, space.delta(), opt);
      j["via_tree"] = qseries_to_json(via_tree->series);
    }
    if (mode == "closed-form" || mode == "both") {
      Rat cap;
      if (via_tree) {
        cap = via_tree->series.truncation;
      } else {
        cap = data.constant_c(*lat->lat) + opt.trunc_units;
      }
      QSeries closed = brieskorn_y(data, *s->s, cap);
      j["via_closed_form"] = qseries_to_json(closed);
      if (via_tree) {
        std::string diff;
        bool equal = via_tree->series.equal_up_to(closed, cap, &diff);
        j["paths_equal"] = equal;
        if (!equal) j["diff"] = diff;
      }
    }
    if (mode != "tree" && mode != "closed-form" && mode != "both")
      throw parse_error("via must be tree, closed-form, or both");
    *json = dup_string(j.dump(2));
  });
}

}  // extern "C"
