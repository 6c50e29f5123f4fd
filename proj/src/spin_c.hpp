#pragma once

#include "plumbing.hpp"
#include "root_lattice.hpp"

namespace plumbtop {

// A representative of a generalized Spin^c structure: one lattice vector
// per tree vertex (an element of L' tensor Q).
struct SpincRep {
  std::vector<IntVec> comp;
  bool operator==(const SpincRep&) const = default;
};

// The space (delta + 2 L' (x) Q) / (2 B L (x) Q) for a fixed tree and
// root lattice, with Smith-form canonicalization of class representatives.
class SpincSpace {
 public:
  SpincSpace(PlumbingTree tree, LatticePtr lat);

  const PlumbingTree& tree() const { return tree_; }
  const LatticePtr& lattice() const { return lat_; }
  const FramingData& framing_data() const { return f_; }

  SpincRep delta() const;
  Zint class_count() const;  // |det B|^rank
  std::vector<SpincRep> enumerate() const;
  SpincRep canonicalize(const SpincRep& a) const;
  bool equivalent(const SpincRep& a, const SpincRep& b) const;
  // Per-vertex parity membership: a_v in (2 - deg v) 2 rho + 2Q.
  bool valid_rep(const SpincRep& a) const;
  SpincRep weyl_act(WeylRef w, const SpincRep& a) const;
  // <a, b> through B^{-1} tensored with the lattice pairing.
  Rat pairing(const SpincRep& a, const SpincRep& b) const;

 private:
  PlumbingTree tree_;
  LatticePtr lat_;
  FramingData f_;
  SmithForm snf_;
};

SpincRep delta_rep(const PlumbingTree& t, const RootLatticeData& lat);

// Transport of a representative across a Neumann move, in the direction
// of the move itself. Blow-ups apply the distinguished R maps; blow-downs
// invert them on classes by an exact integer solve.
SpincRep transport(const PlumbingTree& src, const LatticePtr& lat, const MoveSpec& mv,
                   const MoveResult& mr, const SpincRep& a);

}  // namespace plumbtop
