#pragma once

// Finite orthomodular lattice {0, 1, atoms, coatoms} of a Greechie diagram,
// with every operation tabulated.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oalat/mmp.hpp"

namespace oalat {

/// Node numbering: 0 is lattice zero, 1 is lattice one, [2, 2+A) atoms in
/// hypergraph order, [2+A, 2+2A) the matching coatoms.
using NodeId = std::uint16_t;

inline constexpr NodeId kZero = 0;
inline constexpr NodeId kOne = 1;

class NotALattice : public std::runtime_error {
public:
  NotALattice(const std::string& what, NodeId x, NodeId y)
      : std::runtime_error(what), x(x), y(y) {}
  NodeId x, y;
};

/// Raw operation tables, row-major N x N for the binary ones.
struct LatticeTables {
  std::size_t node_count = 0;
  std::vector<NodeId> ortho;
  std::vector<std::uint8_t> le;
  std::vector<NodeId> join;
  std::vector<NodeId> meet;
};

class OmlLattice {
public:
  /// Adopts the tables as given; the Sasaki table is derived from them.
  /// No axioms are checked here (see check_oml).
  OmlLattice(LatticeTables tables, Hypergraph source);

  std::size_t node_count() const { return n_; }
  std::size_t atom_count() const { return source_.atoms.size(); }
  const Hypergraph& hypergraph() const { return source_; }
  const LatticeTables& tables() const { return t_; }

  NodeId ortho(NodeId x) const { return t_.ortho[check(x)]; }
  bool le(NodeId x, NodeId y) const { return t_.le[idx(x, y)] != 0; }
  NodeId join(NodeId x, NodeId y) const { return t_.join[idx(x, y)]; }
  NodeId meet(NodeId x, NodeId y) const { return t_.meet[idx(x, y)]; }
  /// x -> y = x' v (x ^ y)
  NodeId sasaki(NodeId x, NodeId y) const { return sasaki_[idx(x, y)]; }

  // Unchecked row pointers for the scan kernels.
  const NodeId* join_table() const { return t_.join.data(); }
  const NodeId* meet_table() const { return t_.meet.data(); }
  const NodeId* sasaki_table() const { return sasaki_.data(); }
  const NodeId* ortho_table() const { return t_.ortho.data(); }
  const std::uint8_t* le_table() const { return t_.le.data(); }

  NodeId atom_node(AtomIndex a) const { return static_cast<NodeId>(2 + a); }
  NodeId coatom_node(AtomIndex a) const { return static_cast<NodeId>(2 + atom_count() + a); }
  bool is_atom(NodeId x) const { return x >= 2 && x < 2 + atom_count(); }
  bool is_coatom(NodeId x) const { return x >= 2 + atom_count() && x < n_; }
  /// Atom underlying an atom or coatom node.
  AtomIndex atom_of(NodeId x) const;

  /// "0", "0'" (lattice one), "++A" (atom) or "++A'" (coatom).
  std::string node_name(NodeId x) const;
  /// Inverse of node_name; throws std::invalid_argument.
  NodeId parse_node(std::string_view name) const;

  /// Blocks containing the atom underlying x; empty for 0 and 1.
  const std::vector<std::size_t>& blocks_of(NodeId x) const;

  /// One node per line: index, name, ortho partner, covered nodes.
  std::string dump() const;

private:
  std::size_t check(NodeId x) const {
    if (x >= n_) throw std::out_of_range("node " + std::to_string(x) + " out of range");
    return x;
  }
  std::size_t idx(NodeId x, NodeId y) const { return check(x) * n_ + check(y); }

  LatticeTables t_;
  Hypergraph source_;
  std::size_t n_;
  std::vector<NodeId> sasaki_;
  std::vector<std::vector<std::size_t>> atom_blocks_;
  std::vector<std::size_t> no_blocks_;
};

/// Builds the Greechie/Hasse lattice.  Throws NotALattice when some pair has
/// no least upper bound or greatest lower bound, std::invalid_argument for
/// an MMP-invalid hypergraph.
OmlLattice build_hasse(const Hypergraph& h);

struct OmlViolation {
  std::string law;
  NodeId x = 0, y = 0, z = 0;
};

/// Brute-force check of the lattice, ortholattice and orthomodular laws.
std::optional<OmlViolation> check_oml(const OmlLattice& l);

}  // namespace oalat
