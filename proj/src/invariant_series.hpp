#pragma once

#include "admissible_series.hpp"
#include "plumbing.hpp"
#include "qseries.hpp"
#include "spin_c.hpp"

namespace plumbtop {

struct YOptions {
  Rat trunc_units = 24;  // kept exponent range above the minimal-exponent bound
  SearchBounds bounds;
  int threads = 1;
  std::optional<Rat> absolute_cap;  // complete up to this exponent instead
};

struct YResult {
  QSeries series;
  int prefactor_sign = 1;
  Rat prefactor_exponent;
  Rat min_exponent_bound;  // real-relaxation lower bound on exponents
  bool ring_ok = true;     // <l,l> = <a,a> mod 4 (mod 8 for A1) on every point
  std::string warning;
  long long points = 0;
  long long slices = 0;
};

// Y_{P,a}(q) for a reduced weakly negative definite tree. The sum over
// l in a + 2BL(x)Q splits into finite choices at degree <= 2 vertices and
// an exact ellipsoid enumeration over the degree >= 3 block.
YResult compute_y(const PlumbingTree& tree, const GradedTwistOracle& oracle, const SpincRep& a,
                  const YOptions& opt);

// The coefficient c_Gamma(l) of a single representative.
Rat c_gamma(const PlumbingTree& tree, const GradedTwistOracle& oracle, const SpincRep& l,
            const SearchBounds& bounds = {});

struct InvarianceReport {
  bool applicable = true;
  bool equal = false;
  std::string detail;
  Rat compared_up_to;
};

InvarianceReport verify_move_invariance(const PlumbingTree& t, const MoveSpec& mv,
                                        const GradedTwistOracle& oracle, const SpincRep& a,
                                        const YOptions& opt);

InvarianceReport verify_weyl_invariance(const PlumbingTree& t, const GradedTwistOracle& oracle,
                                        const SpincRep& a, WeylRef w, const YOptions& opt);

InvarianceReport verify_twist_independence(const PlumbingTree& t, const AdmissibleSeries& p,
                                           const SpincRep& a, WeylRef w, const YOptions& opt);

}  // namespace plumbtop
