#pragma once

#include "admissible_series.hpp"
#include "plumbing.hpp"
#include "qseries.hpp"

namespace plumbtop {

struct BrieskornData {
  std::array<Int, 3> b{};
  Int b0 = 0;                         // central Euler number
  std::array<Int, 3> a{};             // 0 < a_i < b_i with b0 + sum a_i/b_i = -1/(b1 b2 b3)
  std::array<std::vector<Int>, 3> legs;  // k^i_j > 0; vertex labels are -k^i_j
  std::array<Zint, 3> h{};            // |det| with the i-th terminal vertex deleted
  int s = 0;                          // vertex count
  Zint trace;                         // tr B
  Rat c_over_rho;                     // C / <rho, rho>

  Rat constant_c(const RootLatticeData& lat) const { return c_over_rho * lat.rho_pairing(); }
};

// Star-shaped negative definite plumbing for Sigma(b1, b2, b3), with leg
// labels from negative continued fractions of b_i / a_i and a_i picked by
// the modular normalization a_i = -(b1 b2 b3 / b_i)^{-1} mod b_i.
std::pair<BrieskornData, PlumbingTree> brieskorn_plumbing(Int b1, Int b2, Int b3);

// Psi_P(d, eta): the higher rank false theta building block, complete for
// exponents <= cap.
QSeries psi_series(const AdmissibleSeries& p, Int d, const IntVec& eta, const Rat& cap);

// The closed-form series q^C sum_{w1,w2} (-1)^{l(w1 w2)} Psi_P(b1 b2 b3,
// eta_{w1,w2}), complete for exponents <= cap.
QSeries brieskorn_y(const BrieskornData& data, const AdmissibleSeries& p, const Rat& cap);

}  // namespace plumbtop
