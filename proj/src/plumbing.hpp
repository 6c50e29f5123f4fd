#pragma once

#include <array>

#include "linalg.hpp"
#include "rat.hpp"

namespace plumbtop {

class inapplicable_move : public domain_error {
 public:
  using domain_error::domain_error;
};

class degenerate_framing : public domain_error {
 public:
  using domain_error::domain_error;
};

struct PlumbingTree {
  std::vector<Int> m;                      // Euler numbers, in vertex order
  std::vector<std::array<int, 2>> edges;

  int size() const { return static_cast<int>(m.size()); }
  void validate() const;                   // connected, acyclic, sane indices
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;
  // Canonical labelled-tree code (AHU rooted at the centroid); equal codes
  // if and only if the labelled trees are isomorphic.
  std::string canonical_code() const;
  // Vertices on u's side once the edge (u,v) is removed.
  std::vector<int> side_of_edge(int u, int v) const;
};

struct FramingData {
  MatZ b;
  Zint det;
  MatQ inverse;
  int sigma = 0;
  int pi = 0;
  Zint trace;
};

FramingData framing(const PlumbingTree& t);
bool is_weakly_negative_definite(const PlumbingTree& t);

enum class MoveKind {
  AMinus,
  APlus,
  BMinus,
  BPlus,
  C,
  AMinusInv,
  APlusInv,
  BMinusInv,
  BPlusInv,
  CInv
};

const char* move_kind_name(MoveKind k);
MoveKind move_kind_from_name(const std::string& s);
MoveKind inverse_kind(MoveKind k);

// Site data for a move.
//   A blow-ups:  a = left vertex, b = right vertex (edge must exist).
//   A blow-downs: a = the +-1 degree-2 vertex, b = its left neighbor.
//   B blow-ups:  a = anchor vertex.
//   B blow-downs: a = the +-1 leaf.
//   C:           a = split vertex, m1 = left label, left = neighbors kept left.
//   C inverse:   a = the 0-labelled degree-2 vertex, b = its left neighbor.
struct MoveSpec {
  MoveKind kind = MoveKind::AMinus;
  int a = -1;
  int b = -1;
  Int m1 = 0;
  std::vector<int> left;
};

struct MoveResult {
  PlumbingTree tree;
  std::vector<int> vertex_map;    // old index -> new index (-1 if removed)
  std::vector<int> new_vertices;  // fresh indices in the new tree
};

MoveResult apply_move(const PlumbingTree& t, const MoveSpec& mv);

struct SearchBounds {
  int max_moves = 64;
  Int label_slack = 4;
  int length_slack = 4;
  std::size_t max_states = 100000;
};

struct Branch {
  int anchor;             // the degree >= 3 endpoint
  std::vector<int> path;  // from the anchor's neighbor out to the leaf
};

std::vector<Branch> find_branches(const PlumbingTree& t);

// Abstract contraction ops, replayable as tree moves at a branch/bridge site.
struct AbstractOp {
  enum Kind { BlowDownLeaf, BlowDownInterior, BlowUpLeaf, BlowUpEdge, Split, Merge } kind;
  int pos = 0;
  Int val = 0;  // epsilon for blow-ups, m1 for splits
};

struct ContractionSearch {
  bool found = false;
  std::vector<AbstractOp> ops;
  bool bound_hit = false;  // the state space was cut off by the bounds
};

ContractionSearch branch_contraction(const PlumbingTree& t, const Branch& br,
                                     const SearchBounds& bounds);
std::vector<Branch> find_contractible_branches(const PlumbingTree& t, const SearchBounds& bounds);

// Replay a branch contraction as real moves; returns the new tree, the
// move trace, and where each surviving old vertex went.
struct ReplayResult {
  PlumbingTree tree;
  std::vector<MoveSpec> trace;
  std::vector<int> vertex_map;
};
ReplayResult contract_branch(const PlumbingTree& t, const Branch& br,
                             const std::vector<AbstractOp>& ops);

struct ReduceResult {
  PlumbingTree tree;
  std::vector<MoveSpec> trace;
  SearchBounds bounds;
  bool bound_hit = false;
};
ReduceResult reduce(const PlumbingTree& t, const SearchBounds& bounds = {});
bool is_reduced(const PlumbingTree& t, const SearchBounds& bounds = {});

struct ForcingBridge {
  int v = 0, w = 0;
  std::vector<int> interior;
  Int delta_pi = 0;
};
std::vector<ForcingBridge> forcing_bridges(const PlumbingTree& t,
                                           const SearchBounds& bounds = {});

// Bridge constraints organised for Weyl assignment enumeration: one entry
// per degree >= 3 vertex, grouped into components joined by forcing
// bridges, with the iota-parity of each vertex relative to its
// component's anchor (the lowest-index vertex).
struct WeylAssignmentStructure {
  std::vector<int> high_vertices;
  std::vector<int> component;  // per entry of high_vertices
  std::vector<int> parity;     // 0/1 per entry
  int num_components = 0;
  std::vector<ForcingBridge> bridges;
};
WeylAssignmentStructure weyl_assignment_structure(const PlumbingTree& t,
                                                  const SearchBounds& bounds = {});

}  // namespace plumbtop
