#pragma once

// MMP hypergraphs: atoms (vertices) and blocks (edges) in the one-line ASCII
// encoding used for Greechie diagrams, e.g. "123,145."

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oalat {

/// The 90 base characters, in encoding order.  Label index i maps to
/// i / 90 leading '+' characters followed by kMmpAlphabet[i % 90].
inline constexpr std::string_view kMmpAlphabet =
    "123456789"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    "!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~";

static_assert(kMmpAlphabet.size() == 90);

class MmpError : public std::runtime_error {
public:
  MmpError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at column " + std::to_string(position + 1)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

struct AtomLabel {
  std::uint32_t prefix_count = 0;
  char base = '1';

  /// Position in the label sequence 1..9,A..~,+1,...,++1,...
  std::uint32_t ordinal() const;
  static AtomLabel from_ordinal(std::uint32_t ordinal);
  static bool is_base_char(char c);

  std::string str() const;

  friend bool operator==(const AtomLabel&, const AtomLabel&) = default;
  friend std::strong_ordering operator<=>(const AtomLabel& a, const AtomLabel& b) {
    return a.ordinal() <=> b.ordinal();
  }
};

/// Parses a single label such as "++J".  Throws MmpError.
AtomLabel parse_atom_label(std::string_view text);

using AtomIndex = std::uint32_t;
using Block = std::vector<AtomIndex>;

struct Hypergraph {
  std::vector<AtomLabel> atoms;  // first-appearance order
  std::vector<Block> blocks;     // indices into atoms

  std::size_t atom_count() const { return atoms.size(); }
  std::size_t block_count() const { return blocks.size(); }
  std::optional<AtomIndex> find_atom(const AtomLabel& label) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

Hypergraph parse_mmp(std::string_view text);
std::string serialize_mmp(const Hypergraph& h);

enum class MmpCondition {
  uncovered_atom,      // (i)  every vertex belongs to an edge
  small_block,         // (ii) every edge has at least 3 vertices
  large_intersection,  // (iii) edges meeting in n-2 vertices have >= n
  repeated_atom,
  duplicate_block,
};

struct MmpViolation {
  MmpCondition condition;
  std::vector<AtomIndex> atoms;
  std::vector<std::size_t> blocks;
  std::string message;
};

std::vector<MmpViolation> validate(const Hypergraph& h);

/// Result of relabeling; old_labels[i] is the original label of new atom i.
struct Renaming {
  Hypergraph graph;
  std::vector<AtomLabel> old_labels;
};

/// Relabels atoms 1,2,...,9,A,... in order of first appearance in the blocks.
Renaming canonical_rename_with_map(const Hypergraph& h);
Hypergraph canonical_rename(const Hypergraph& h);

/// Finds an atom bijection h1 -> h2 carrying blocks onto blocks.  The
/// returned vector maps atom index of h1 to atom index of h2.
std::optional<std::vector<AtomIndex>> is_isomorphic(const Hypergraph& h1,
                                                    const Hypergraph& h2);

}  // namespace oalat
