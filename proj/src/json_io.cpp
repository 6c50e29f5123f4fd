#include "json_io.hpp"

namespace plumbtop {

Json tree_to_json(const PlumbingTree& t) {
  Json j;
  j["vertices"] = Json::array();
  for (Int m : t.m) j["vertices"].push_back(Json{{"m", m}});
  j["edges"] = Json::array();
  for (auto [u, v] : t.edges) j["edges"].push_back(Json::array({u, v}));
  return j;
}

PlumbingTree tree_from_json(const Json& j) {
  PlumbingTree t;
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw parse_error("tree: missing \"vertices\" array");
  for (const auto& v : j["vertices"]) {
    if (!v.contains("m") || !v["m"].is_number_integer())
      throw parse_error("tree: each vertex needs an integer \"m\"");
    t.m.push_back(v["m"].get<Int>());
  }
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw parse_error("tree: edges must be pairs");
      t.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  t.validate();
  return t;
}

Json move_to_json(const MoveSpec& mv) {
  Json j;
  j["kind"] = move_kind_name(mv.kind);
  j["a"] = mv.a;
  if (mv.b >= 0) j["b"] = mv.b;
  if (mv.kind == MoveKind::C) {
    j["m1"] = mv.m1;
    j["left"] = mv.left;
  }
  return j;
}

MoveSpec move_from_json(const Json& j) {
  MoveSpec mv;
  mv.kind = move_kind_from_name(j.at("kind").get<std::string>());
  mv.a = j.at("a").get<int>();
  if (j.contains("b")) mv.b = j["b"].get<int>();
  if (j.contains("m1")) mv.m1 = j["m1"].get<Int>();
  if (j.contains("left")) mv.left = j["left"].get<std::vector<int>>();
  return mv;
}

Json rat_vec_to_json(const std::vector<Rat>& v) {
  Json j = Json::array();
  for (const Rat& x : v) j.push_back(rat_to_string(x));
  return j;
}

Json int_vec_to_json(const IntVec& v) {
  Json j = Json::array();
  for (Int x : v) j.push_back(rat_to_string(Rat(static_cast<long>(x))));
  return j;
}

IntVec int_vec_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("expected a coordinate array");
  IntVec v;
  for (const auto& x : j) {
    Rat r = x.is_string() ? rat_from_string(x.get<std::string>())
                          : Rat(static_cast<long>(x.get<Int>()));
    if (r.get_den() != 1) throw parse_error("coordinate is not an integer lattice entry");
    v.push_back(to_int_checked(Zint(r.get_num())));
  }
  return v;
}

namespace {

Json weyl_to_json(const RootLatticeData& lat, WeylRef w) {
  Json j;
  const MatZ& m = lat.weyl()[w.idx].mat;
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m(i, c).get_si());
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["negated"] = w.neg;
  return j;
}

WeylRef weyl_from_json(const RootLatticeData& lat, const Json& j) {
  if (j.is_number_integer()) {
    int idx = j.get<int>();
    if (idx < 0 || idx >= lat.weyl_order()) throw parse_error("weyl index out of range");
    return WeylRef{idx, false};
  }
  MatZ m(lat.rank, lat.rank);
  const Json& rows = j.contains("matrix") ? j["matrix"] : j;
  for (int i = 0; i < lat.rank; ++i)
    for (int c = 0; c < lat.rank; ++c) m(i, c) = rows.at(i).at(c).get<long>();
  int idx = lat.index_of_matrix(m);
  bool neg = j.is_object() && j.contains("negated") && j["negated"].get<bool>();
  if (idx < 0) {
    // Allow the negated matrix when -1 is not in W.
    for (auto& z : m.a) z = -z;
    idx = lat.index_of_matrix(m);
    neg = !neg;
    if (idx < 0) throw parse_error("matrix is not a Weyl group element");
  }
  return lat.canonical(WeylRef{idx, neg});
}

}  // namespace

Json series_to_json(const AdmissibleSeries& p) {
  Json j;
  j["lattice"] = p.lattice()->label;
  if (!p.name().empty()) j["name"] = p.name();
  j["admissible"] = p.admissible_flag();
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json jt;
    jt["scalar"] = rat_to_string(t.scalar);
    jt["shift"] = int_vec_to_json(t.gamma);
    jt["kind"] = t.kind == BasisKind::KostantTwist ? "kostant" : "line";
    jt["x"] = weyl_to_json(*p.lattice(), t.x);
    terms.push_back(jt);
  }
  j["terms"] = terms;
  return j;
}

AdmissibleSeries series_from_json(const LatticePtr& lat, const Json& j) {
  if (j.contains("lattice") && j["lattice"].get<std::string>() != lat->label)
    throw parse_error("series lattice does not match the requested lattice");
  std::vector<SeriesTerm> terms;
  for (const auto& jt : j.at("terms")) {
    SeriesTerm t;
    t.scalar = rat_from_string(jt.at("scalar").get<std::string>());
    t.gamma = int_vec_from_json(jt.at("shift"));
    std::string kind = jt.at("kind").get<std::string>();
    if (kind == "kostant") t.kind = BasisKind::KostantTwist;
    else if (kind == "line") t.kind = BasisKind::EvenWeylLine;
    else throw parse_error("unknown series term kind: " + kind);
    t.x = weyl_from_json(*lat, jt.at("x"));
    terms.push_back(std::move(t));
  }
  bool adm = j.contains("admissible") ? j["admissible"].get<bool>() : false;
  std::string name = j.contains("name") ? j["name"].get<std::string>() : "";
  return AdmissibleSeries(lat, std::move(terms), adm, name);
}

AdmissibleSeries series_from_spec(const LatticePtr& lat, const std::string& text) {
  if (text == "W") return AdmissibleSeries::kostant_series(lat);
  // translate:<i>:<gamma coords comma separated>
  if (text.rfind("translate:", 0) == 0) {
    std::string rest = text.substr(10);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw parse_error("translate spec needs translate:<i>:<coords>");
    int idx = std::stoi(rest.substr(0, colon));
    IntVec gamma;
    std::string coords = rest.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= coords.size()) {
      auto comma = coords.find(',', pos);
      std::string tok = coords.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
      if (!tok.empty()) gamma.push_back(std::stol(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return AdmissibleSeries::translate_family_member(lat, gamma, idx);
  }
  Json j = Json::parse(text, nullptr, true);
  return series_from_json(lat, j);
}

Json window_to_json(const CoefficientWindow& w) {
  Json j;
  j["lattice"] = w.lat->label;
  j["radius"] = rat_to_string(w.radius);
  Json table = Json::array();
  for (const auto& [v, c] : w.table)
    table.push_back(Json::array({int_vec_to_json(v), rat_to_string(c)}));
  j["table"] = table;
  return j;
}

CoefficientWindow window_from_json(const LatticePtr& lat, const Json& j) {
  CoefficientWindow w;
  w.lat = lat;
  if (j.contains("lattice") && j["lattice"].get<std::string>() != lat->label)
    throw parse_error("window lattice does not match the requested lattice");
  w.radius = rat_from_string(j.at("radius").get<std::string>());
  for (const auto& row : j.at("table")) {
    IntVec v = int_vec_from_json(row.at(0));
    Rat c = rat_from_string(row.at(1).get<std::string>());
    if (c != 0) w.table.emplace(std::move(v), c);
  }
  return w;
}

Json qseries_to_json(const QSeries& s) {
  Json j;
  j["truncation"] = rat_to_string(s.truncation);
  j["exponent_denominator"] = s.exponent_denominator().get_str();
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms)
    terms.push_back(Json::array({rat_to_string(e), rat_to_string(c)}));
  j["terms"] = terms;
  j["pretty"] = s.human_readable(24);
  return j;
}

Json spinc_to_json(const SpincRep& a) {
  Json j = Json::array();
  for (const auto& c : a.comp) j.push_back(int_vec_to_json(c));
  return j;
}

SpincRep spinc_from_json(const Json& j) {
  SpincRep a;
  for (const auto& row : j) a.comp.push_back(int_vec_from_json(row));
  return a;
}

Json report_to_json(const AdmissibilityReport& r) {
  Json j;
  j["p1_ok"] = r.p1_ok;
  j["p2_ok"] = r.p2_ok;
  j["ok"] = r.ok();
  j["sites_checked"] = r.sites_checked;
  j["violations"] = r.violations;
  j["caveats"] = r.caveats;
  j["certificates"] = r.certificates;
  return j;
}

Json report_to_json(const InvarianceReport& r) {
  Json j;
  j["applicable"] = r.applicable;
  j["equal"] = r.equal;
  j["compared_up_to"] = rat_to_string(r.compared_up_to);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace plumbtop
