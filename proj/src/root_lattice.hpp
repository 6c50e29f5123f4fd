#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "linalg.hpp"
#include "rat.hpp"

namespace plumbtop {

// A Weyl group element, acting on simple-root coordinates.
struct WeylElementData {
  MatZ mat;
  MatZ inv;
  int length = 0;
  int sign = 1;  // (-1)^length
};

// Reference to an element of the extended group <W, iota>, where iota is
// the formal negation v -> -v. When -1 lies in W the two descriptions of
// the same element carry the same sign, so the representation is harmless.
struct WeylRef {
  int idx = 0;
  bool neg = false;
  bool operator==(const WeylRef&) const = default;
};

class RootLatticeData {
 public:
  // Cartan kinds. "A" is the supported series; the construction below is
  // generic over a Cartan matrix, so further kinds slot in behind the
  // same interface.
  static std::shared_ptr<const RootLatticeData> build(const std::string& kind, int rank);
  // Labels of the form "A1", "A2", ...
  static std::shared_ptr<const RootLatticeData> from_label(const std::string& label);

  std::string kind;
  std::string label;
  int rank = 0;
  MatZ gram;                             // <alpha_i, alpha_j>
  std::vector<IntVec> positive_roots;    // simple-root coordinates
  IntVec two_rho;                        // coordinates of 2*rho
  MatQ fundamental_weights;              // column i = lambda_i
  int num_positive = 0;                  // |Delta^+|

  const std::vector<WeylElementData>& weyl() const { return weyl_; }
  int weyl_order() const { return static_cast<int>(weyl_.size()); }
  int identity_index() const { return 0; }

  bool iota_in_weyl() const { return iota_index_ >= 0; }
  int iota_sign() const { return num_positive % 2 == 0 ? 1 : -1; }
  WeylRef iota() const;
  WeylRef identity() const { return WeylRef{0, false}; }

  // Canonical form: fold the formal negation into W whenever -1 is in W.
  WeylRef canonical(WeylRef w) const;
  WeylRef compose(WeylRef a, WeylRef b) const;
  WeylRef inverse(WeylRef a) const;
  int sign_of(WeylRef w) const;
  // Length of a genuine W element; -1 for proper extended elements.
  int length_of(WeylRef w) const;
  IntVec apply(WeylRef w, const IntVec& v) const;
  IntVec apply_inverse(WeylRef w, const IntVec& v) const;
  std::vector<Rat> apply(WeylRef w, const std::vector<Rat>& v) const;
  int index_of_matrix(const MatZ& m) const;  // -1 if not in W

  Int pairing_int(const IntVec& a, const IntVec& b) const;
  Rat pairing(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
  Rat rho_pairing() const;  // <rho, rho>

  bool in_two_q(const IntVec& v) const;
  bool in_two_rho_plus_two_q(const IntVec& v) const;

  // Kostant partition function; memoized, thread-safe.
  Int kostant(const IntVec& a) const;

  // Orbit of 2*rho with the sign (-1)^{l(w)} attached, in canonical W
  // order. The orbit is free since rho is regular.
  const std::vector<std::pair<IntVec, int>>& two_rho_orbit() const { return orbit_; }
  // Coefficient tables of the degree-1 and degree-0 graded twists.
  std::optional<int> f1_sign(const IntVec& mu) const;
  const std::unordered_map<IntVec, Int, IntVecHash>& f0_table() const { return f0_; }

  // All integer vectors v in the coset (offset + 2 Z^r) with <v,v> <= radius.
  std::vector<IntVec> coset_ball(const IntVec& offset, const Rat& radius) const;
  // All lattice vectors v with <v,v> <= radius.
  std::vector<IntVec> ball(const Rat& radius) const;

 private:
  RootLatticeData() = default;
  void enumerate_roots();
  void enumerate_weyl();
  void build_tables();

  std::vector<WeylElementData> weyl_;
  std::unordered_map<std::string, int> weyl_index_;
  int iota_index_ = -1;
  std::vector<std::pair<IntVec, int>> orbit_;
  std::unordered_map<IntVec, int, IntVecHash> orbit_sign_;
  std::unordered_map<IntVec, Int, IntVecHash> f0_;

  mutable std::mutex kostant_mutex_;
  mutable std::unordered_map<IntVec, Int, IntVecHash> kostant_memo_;
  Int kostant_rec(IntVec a, std::size_t i) const;
};

using LatticePtr = std::shared_ptr<const RootLatticeData>;

std::string matz_key(const MatZ& m);

}  // namespace plumbtop
