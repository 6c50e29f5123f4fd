#pragma once

#include <map>

#include "root_lattice.hpp"

namespace plumbtop {

// A series fails to admit the requested convolution power: the cone
// certificates of its terms cannot bound the convolution region.
class not_convolvable : public domain_error {
 public:
  using domain_error::domain_error;
};

enum class BasisKind { KostantTwist, EvenWeylLine };

// One summand of a closed-form admissible series:
//   scalar * z^{2 gamma} * W^x(z)   (KostantTwist)
//   scalar * z^{2 gamma} * L_x(z)   (EvenWeylLine)
struct SeriesTerm {
  Rat scalar;
  IntVec gamma;
  BasisKind kind = BasisKind::KostantTwist;
  WeylRef x;
};

class AdmissibleSeries {
 public:
  AdmissibleSeries(LatticePtr lat, std::vector<SeriesTerm> terms, bool admissible,
                   std::string name = "");

  // The key example W(z) built from the Kostant partition function.
  static AdmissibleSeries kostant_series(LatticePtr lat);
  // W + z^{2 gamma} (W - W^sigma) for sigma the reflection in the chosen
  // simple root; requires <gamma, 2 rho - alpha_i> >= 0.
  static AdmissibleSeries translate_family_member(LatticePtr lat, const IntVec& gamma,
                                                  int simple_root_index);
  // P + c z^{2 gamma} L_x; the annihilation lemma behind this family is
  // proved for A2 only, so other lattices are rejected.
  AdmissibleSeries with_even_weyl_line(const Rat& c, const IntVec& gamma, WeylRef x) const;

  AdmissibleSeries twist(WeylRef w) const;

  Rat coefficient(const IntVec& mu) const;
  // Coefficient of z^mu in P^x(z) = (-1)^{l(x)} sum c(a) z^{x(a)}.
  Rat twisted_coefficient(WeylRef x, const IntVec& mu) const;

  const LatticePtr& lattice() const { return lat_; }
  const std::vector<SeriesTerm>& terms() const { return terms_; }
  bool admissible_flag() const { return admissible_; }
  const std::string& name() const { return name_; }

 private:
  LatticePtr lat_;
  std::vector<SeriesTerm> terms_;
  bool admissible_ = false;
  std::string name_;
  void normalize();
};

// Coefficient oracle for the graded Weyl twists P^x_n. Degrees 0..2 come
// from finite Weyl-denominator tables; degree n >= 3 is the (n-2)-nd
// power of P^x, evaluated lazily per site by cone-bounded convolution.
class GradedTwistOracle {
 public:
  explicit GradedTwistOracle(AdmissibleSeries series);

  Rat coeff(WeylRef x, int n, const IntVec& mu) const;
  const AdmissibleSeries& series() const { return series_; }
  const LatticePtr& lattice() const { return series_.lattice(); }

 private:
  struct ConvPlan {
    std::vector<SeriesTerm> twisted;  // terms of P^x
    IntVec h;                         // functional positive on all cone directions
    Rat apex_max;                     // max over terms of max h-value on the support
    std::vector<Rat> apex;            // per-term max h-value
  };
  const ConvPlan& plan_for(WeylRef x) const;
  Rat convolution(WeylRef x, const ConvPlan& plan, int factors, const IntVec& mu) const;

  AdmissibleSeries series_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, ConvPlan> plans_;  // key: (idx, neg)
  mutable std::unordered_map<IntVec, Rat, IntVecHash> conv_memo_;  // key: [idx, neg, m, mu...]
};

// Finite truncation of a lattice series, for verification input and the
// puzzle solver output.
struct CoefficientWindow {
  LatticePtr lat;
  Rat radius;  // table complete for <v,v> <= radius
  std::map<IntVec, Rat> table;

  Rat value(const IntVec& v) const {
    auto it = table.find(v);
    return it == table.end() ? Rat(0) : it->second;
  }
};

CoefficientWindow window_from_series(const AdmissibleSeries& p, const Rat& radius);

struct AdmissibilityReport {
  bool p1_ok = true;
  bool p2_ok = true;
  std::vector<std::string> violations;
  std::vector<std::string> caveats;
  std::vector<std::string> certificates;
  int sites_checked = 0;
  bool ok() const { return p1_ok && p2_ok; }
};

AdmissibilityReport verify_admissible(const AdmissibleSeries& p, const Rat& radius);
AdmissibilityReport verify_admissible(const CoefficientWindow& win);

enum class PuzzleSide { VanishPositive, VanishNegative };

struct PuzzleResult {
  CoefficientWindow window;
  bool unique = false;
  int free_variables = 0;
  std::string matches;  // "W", "W_iota", or ""
};

// Constraint propagation of c(j-1) - c(j+1) = [j == 0] from the vanishing
// side; reproduces W or its twist on any window.
PuzzleResult solve_puzzle_a1(const LatticePtr& a1, const Rat& radius, PuzzleSide side);

}  // namespace plumbtop
