#include "oalat/mmp.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace oalat {

std::uint32_t AtomLabel::ordinal() const {
  auto pos = kMmpAlphabet.find(base);
  if (pos == std::string_view::npos) {
    throw std::invalid_argument("atom label has base outside the MMP alphabet");
  }
  return prefix_count * static_cast<std::uint32_t>(kMmpAlphabet.size()) +
         static_cast<std::uint32_t>(pos);
}

AtomLabel AtomLabel::from_ordinal(std::uint32_t ordinal) {
  const auto n = static_cast<std::uint32_t>(kMmpAlphabet.size());
  return AtomLabel{ordinal / n, kMmpAlphabet[ordinal % n]};
}

bool AtomLabel::is_base_char(char c) {
  return kMmpAlphabet.find(c) != std::string_view::npos;
}

std::string AtomLabel::str() const {
  std::string s(prefix_count, '+');
  s.push_back(base);
  return s;
}

AtomLabel parse_atom_label(std::string_view text) {
  std::size_t i = 0;
  std::uint32_t plus = 0;
  while (i < text.size() && text[i] == '+') {
    ++plus;
    ++i;
  }
  if (i == text.size()) throw MmpError("dangling '+' without base character", i);
  if (!AtomLabel::is_base_char(text[i])) {
    throw MmpError(std::string("character '") + text[i] + "' is not an atom label", i);
  }
  if (i + 1 != text.size()) throw MmpError("trailing characters after atom label", i + 1);
  return AtomLabel{plus, text[i]};
}

std::optional<AtomIndex> Hypergraph::find_atom(const AtomLabel& label) const {
  auto it = std::find(atoms.begin(), atoms.end(), label);
  if (it == atoms.end()) return std::nullopt;
  return static_cast<AtomIndex>(it - atoms.begin());
}

Hypergraph parse_mmp(std::string_view text) {
  // Trailing whitespace (including the newline) is not part of the line.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  if (text.empty() || text.back() != '.') {
    throw MmpError("missing terminal period", text.size());
  }

  Hypergraph h;
  std::map<AtomLabel, AtomIndex> index;
  Block current;
  std::uint32_t plus = 0;
  bool in_block = false;  // seen a character of the current block

  auto close_block = [&](std::size_t pos) {
    if (plus != 0) throw MmpError("dangling '+' without base character", pos);
    if (current.empty()) throw MmpError("empty block", pos);
    h.blocks.push_back(std::move(current));
    current.clear();
    in_block = false;
  };

  const std::size_t end = text.size() - 1;
  for (std::size_t i = 0; i < end; ++i) {
    const char c = text[i];
    if (c == ',') {
      close_block(i);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_block) throw MmpError("whitespace inside a block", i);
      continue;
    }
    in_block = true;
    if (c == '+') {
      ++plus;
      continue;
    }
    if (c == '.') throw MmpError("unexpected period before end of line", i);
    if (!AtomLabel::is_base_char(c)) {
      throw MmpError(std::string("character '") + c + "' is not in the MMP alphabet", i);
    }
    const AtomLabel label{plus, c};
    plus = 0;
    auto [it, inserted] = index.emplace(label, static_cast<AtomIndex>(h.atoms.size()));
    if (inserted) h.atoms.push_back(label);
    if (std::find(current.begin(), current.end(), it->second) != current.end()) {
      throw MmpError("atom " + label.str() + " repeated inside one block", i);
    }
    current.push_back(it->second);
  }
  close_block(end);
  return h;
}

std::string serialize_mmp(const Hypergraph& h) {
  std::string out;
  for (std::size_t b = 0; b < h.blocks.size(); ++b) {
    if (b != 0) out.push_back(',');
    for (AtomIndex a : h.blocks[b]) {
      if (a >= h.atoms.size()) {
        throw std::out_of_range("block " + std::to_string(b) + " references atom index " +
                                std::to_string(a) + " beyond the atom table");
      }
      out += h.atoms[a].str();
    }
  }
  out.push_back('.');
  return out;
}

namespace {

std::string block_text(const Hypergraph& h, std::size_t b) {
  std::string s;
  for (AtomIndex a : h.blocks[b]) s += h.atoms[a].str();
  return s;
}

}  // namespace

std::vector<MmpViolation> validate(const Hypergraph& h) {
  std::vector<MmpViolation> out;
  std::vector<int> occurrences(h.atoms.size(), 0);

  for (std::size_t b = 0; b < h.blocks.size(); ++b) {
    const Block& blk = h.blocks[b];
    if (blk.size() < 3) {
      out.push_back({MmpCondition::small_block, blk, {b},
                     "block " + block_text(h, b) + " has fewer than 3 atoms"});
    }
    std::set<AtomIndex> seen;
    for (AtomIndex a : blk) {
      if (a >= h.atoms.size()) {
        out.push_back({MmpCondition::repeated_atom, {a}, {b}, "atom index out of range"});
        continue;
      }
      if (!seen.insert(a).second) {
        out.push_back({MmpCondition::repeated_atom, {a}, {b},
                       "atom " + h.atoms[a].str() + " repeated in block " + block_text(h, b)});
      }
      ++occurrences[a];
    }
  }
  for (AtomIndex a = 0; a < h.atoms.size(); ++a) {
    if (occurrences[a] == 0) {
      out.push_back({MmpCondition::uncovered_atom, {a}, {},
                     "atom " + h.atoms[a].str() + " belongs to no block"});
    }
  }

  std::vector<std::vector<AtomIndex>> sorted(h.blocks.size());
  for (std::size_t b = 0; b < h.blocks.size(); ++b) {
    sorted[b] = h.blocks[b];
    std::sort(sorted[b].begin(), sorted[b].end());
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (sorted[i] == sorted[j]) {
        out.push_back({MmpCondition::duplicate_block, sorted[i], {i, j},
                       "block " + block_text(h, i) + " listed twice"});
        continue;
      }
      std::vector<AtomIndex> common;
      std::set_intersection(sorted[i].begin(), sorted[i].end(), sorted[j].begin(),
                            sorted[j].end(), std::back_inserter(common));
      if (common.empty()) continue;
      // Meeting in k = n-2 atoms requires both blocks to have n = k+2 atoms.
      const std::size_t need = common.size() + 2;
      if (sorted[i].size() < need || sorted[j].size() < need) {
        out.push_back({MmpCondition::large_intersection, common, {i, j},
                       "blocks " + block_text(h, i) + " and " + block_text(h, j) + " share " +
                           std::to_string(common.size()) + " atoms but need " +
                           std::to_string(need) + " atoms each"});
      }
    }
  }
  return out;
}

Renaming canonical_rename_with_map(const Hypergraph& h) {
  std::vector<std::int64_t> fresh(h.atoms.size(), -1);
  Renaming r;
  for (const Block& blk : h.blocks) {
    Block nb;
    nb.reserve(blk.size());
    for (AtomIndex a : blk) {
      if (fresh[a] < 0) {
        fresh[a] = static_cast<std::int64_t>(r.old_labels.size());
        r.old_labels.push_back(h.atoms[a]);
        r.graph.atoms.push_back(AtomLabel::from_ordinal(static_cast<std::uint32_t>(fresh[a])));
      }
      nb.push_back(static_cast<AtomIndex>(fresh[a]));
    }
    r.graph.blocks.push_back(std::move(nb));
  }
  return r;
}

Hypergraph canonical_rename(const Hypergraph& h) { return canonical_rename_with_map(h).graph; }

namespace {

struct IsoGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> blocks_of;  // atom -> incident blocks
  std::vector<std::vector<int>> shared;             // atom x atom -> #common blocks
  std::vector<std::vector<std::size_t>> signature;  // sorted incident block sizes
  std::set<std::vector<AtomIndex>> block_set;

  explicit IsoGraph(const Hypergraph& h) : n(h.atoms.size()) {
    blocks_of.resize(n);
    shared.assign(n, std::vector<int>(n, 0));
    signature.resize(n);
    for (std::size_t b = 0; b < h.blocks.size(); ++b) {
      const Block& blk = h.blocks[b];
      for (AtomIndex x : blk) {
        blocks_of[x].push_back(b);
        signature[x].push_back(blk.size());
        for (AtomIndex y : blk) {
          if (x != y) ++shared[x][y];
        }
      }
      auto s = blk;
      std::sort(s.begin(), s.end());
      block_set.insert(s);
    }
    for (auto& s : signature) std::sort(s.begin(), s.end());
  }
};

class IsoSearch {
public:
  IsoSearch(const Hypergraph& h1, const Hypergraph& h2) : h1_(h1), g1_(h1), g2_(h2) {
    order_ = bfs_order();
    map_.assign(g1_.n, kUnmapped);
    used_.assign(g2_.n, false);
  }

  std::optional<std::vector<AtomIndex>> run() {
    if (extend(0)) return map_;
    return std::nullopt;
  }

private:
  static constexpr AtomIndex kUnmapped = ~AtomIndex{0};

  std::vector<AtomIndex> bfs_order() const {
    // Visit atoms so that each one (after the first of a component) is
    // adjacent to an already placed atom; this makes adjacency pruning bite.
    std::vector<AtomIndex> order;
    std::vector<bool> seen(g1_.n, false);
    for (AtomIndex start = 0; start < g1_.n; ++start) {
      if (seen[start]) continue;
      seen[start] = true;
      order.push_back(start);
      for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
        const AtomIndex x = order[head];
        for (std::size_t b : g1_.blocks_of[x]) {
          for (AtomIndex y : h1_.blocks[b]) {
            if (!seen[y]) {
              seen[y] = true;
              order.push_back(y);
            }
          }
        }
      }
    }
    return order;
  }

  bool consistent(AtomIndex x, AtomIndex image) const {
    if (g1_.signature[x] != g2_.signature[image]) return false;
    for (AtomIndex y = 0; y < g1_.n; ++y) {
      if (map_[y] == kUnmapped) continue;
      if (g1_.shared[x][y] != g2_.shared[image][map_[y]]) return false;
    }
    // Every block of h1 that becomes fully mapped must land on a block of h2.
    for (std::size_t b : g1_.blocks_of[x]) {
      std::vector<AtomIndex> img;
      bool complete = true;
      for (AtomIndex y : h1_.blocks[b]) {
        AtomIndex m = y == x ? image : map_[y];
        if (m == kUnmapped) {
          complete = false;
          break;
        }
        img.push_back(m);
      }
      if (!complete) continue;
      std::sort(img.begin(), img.end());
      if (!g2_.block_set.count(img)) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const AtomIndex x = order_[depth];
    for (AtomIndex image = 0; image < g2_.n; ++image) {
      if (used_[image] || !consistent(x, image)) continue;
      map_[x] = image;
      used_[image] = true;
      if (extend(depth + 1)) return true;
      map_[x] = kUnmapped;
      used_[image] = false;
    }
    return false;
  }

  const Hypergraph& h1_;
  IsoGraph g1_, g2_;
  std::vector<AtomIndex> order_;
  std::vector<AtomIndex> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<AtomIndex>> is_isomorphic(const Hypergraph& h1, const Hypergraph& h2) {
  if (h1.atoms.size() != h2.atoms.size() || h1.blocks.size() != h2.blocks.size()) {
    return std::nullopt;
  }
  std::multiset<std::size_t> s1, s2;
  for (const auto& b : h1.blocks) s1.insert(b.size());
  for (const auto& b : h2.blocks) s2.insert(b.size());
  if (s1 != s2) return std::nullopt;

  IsoGraph probe(h2);
  if (probe.block_set.size() != h2.blocks.size()) return std::nullopt;
  return IsoSearch(h1, h2).run();
}

}  // namespace oalat
