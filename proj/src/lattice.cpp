#include "oalat/lattice.hpp"

#include <sstream>

namespace oalat {

OmlLattice::OmlLattice(LatticeTables tables, Hypergraph source)
    : t_(std::move(tables)), source_(std::move(source)), n_(t_.node_count) {
  if (n_ > 65535) throw std::invalid_argument("lattice too large for 16-bit node ids");
  if (t_.ortho.size() != n_ || t_.le.size() != n_ * n_ || t_.join.size() != n_ * n_ ||
      t_.meet.size() != n_ * n_) {
    throw std::invalid_argument("lattice tables have inconsistent sizes");
  }
  sasaki_.resize(n_ * n_);
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      sasaki_[x * n_ + y] = t_.join[t_.ortho[x] * n_ + t_.meet[x * n_ + y]];
    }
  }
  atom_blocks_.resize(source_.atoms.size());
  for (std::size_t b = 0; b < source_.blocks.size(); ++b) {
    for (AtomIndex a : source_.blocks[b]) {
      if (a < atom_blocks_.size()) atom_blocks_[a].push_back(b);
    }
  }
}

AtomIndex OmlLattice::atom_of(NodeId x) const {
  if (is_atom(x)) return static_cast<AtomIndex>(x - 2);
  if (is_coatom(x)) return static_cast<AtomIndex>(x - 2 - atom_count());
  throw std::invalid_argument("node " + std::to_string(x) + " is neither atom nor coatom");
}

std::string OmlLattice::node_name(NodeId x) const {
  check(x);
  if (x == kZero) return "0";
  if (x == kOne) return "0'";
  std::string s = source_.atoms[atom_of(x)].str();
  if (is_coatom(x)) s.push_back('\'');
  return s;
}

NodeId OmlLattice::parse_node(std::string_view name) const {
  if (name == "0") return kZero;
  if (name == "0'") return kOne;
  bool primed = false;
  if (!name.empty() && name.back() == '\'') {
    // "'" is itself an atom character; a lone "'" or "+'" names that atom.
    std::string_view stem = name.substr(0, name.size() - 1);
    if (!stem.empty() && stem.back() != '+') {
      primed = true;
      name = stem;
    }
  }
  AtomLabel label;
  try {
    label = parse_atom_label(name);
  } catch (const MmpError& e) {
    throw std::invalid_argument("bad node name '" + std::string(name) + "': " + e.what());
  }
  auto a = source_.find_atom(label);
  if (!a) throw std::invalid_argument("no atom named '" + std::string(name) + "'");
  return primed ? coatom_node(*a) : atom_node(*a);
}

const std::vector<std::size_t>& OmlLattice::blocks_of(NodeId x) const {
  if (x == kZero || x == kOne) return no_blocks_;
  return atom_blocks_[atom_of(x)];
}

std::string OmlLattice::dump() const {
  std::ostringstream os;
  for (std::size_t x = 0; x < n_; ++x) {
    const auto nx = static_cast<NodeId>(x);
    os << x << '\t' << node_name(nx) << '\t' << node_name(ortho(nx)) << '\t';
    bool first = true;
    for (std::size_t y = 0; y < n_; ++y) {
      const auto ny = static_cast<NodeId>(y);
      if (y == x || !le(ny, nx)) continue;
      // y is covered by x when nothing sits strictly between them.
      bool covered = true;
      for (std::size_t z = 0; z < n_ && covered; ++z) {
        const auto nz = static_cast<NodeId>(z);
        if (z != x && z != y && le(ny, nz) && le(nz, nx)) covered = false;
      }
      if (!covered) continue;
      if (!first) os << ' ';
      os << node_name(ny);
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

OmlLattice build_hasse(const Hypergraph& h) {
  if (auto v = validate(h); !v.empty()) {
    throw std::invalid_argument("hypergraph is not a valid MMP: " + v.front().message);
  }
  const std::size_t atoms = h.atoms.size();
  const std::size_t n = 2 + 2 * atoms;
  if (n > 65535) throw std::invalid_argument("too many atoms");

  LatticeTables t;
  t.node_count = n;
  t.ortho.resize(n);
  t.ortho[kZero] = kOne;
  t.ortho[kOne] = kZero;
  for (std::size_t a = 0; a < atoms; ++a) {
    t.ortho[2 + a] = static_cast<NodeId>(2 + atoms + a);
    t.ortho[2 + atoms + a] = static_cast<NodeId>(2 + a);
  }

  t.le.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    t.le[kZero * n + x] = 1;
    t.le[x * n + kOne] = 1;
    t.le[x * n + x] = 1;
  }
  // Atom a sits below coatom b' exactly when a and b are distinct atoms of a
  // common block.
  for (const Block& blk : h.blocks) {
    for (AtomIndex a : blk) {
      for (AtomIndex b : blk) {
        if (a != b) t.le[(2 + a) * n + (2 + atoms + b)] = 1;
      }
    }
  }

  // Least upper / greatest lower bounds by direct search over the bounds.
  t.join.resize(n * n);
  t.meet.resize(n * n);
  std::vector<NodeId> bounds;
  bounds.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      bounds.clear();
      for (std::size_t z = 0; z < n; ++z) {
        if (t.le[x * n + z] && t.le[y * n + z]) bounds.push_back(static_cast<NodeId>(z));
      }
      std::optional<NodeId> lub;
      for (NodeId z : bounds) {
        bool least = true;
        for (NodeId w : bounds) {
          if (!t.le[z * n + w]) {
            least = false;
            break;
          }
        }
        if (least) {
          lub = z;
          break;
        }
      }
      if (!lub) {
        throw NotALattice("no least upper bound for nodes " + std::to_string(x) + " and " +
                              std::to_string(y),
                          static_cast<NodeId>(x), static_cast<NodeId>(y));
      }
      t.join[x * n + y] = t.join[y * n + x] = *lub;

      bounds.clear();
      for (std::size_t z = 0; z < n; ++z) {
        if (t.le[z * n + x] && t.le[z * n + y]) bounds.push_back(static_cast<NodeId>(z));
      }
      std::optional<NodeId> glb;
      for (NodeId z : bounds) {
        bool greatest = true;
        for (NodeId w : bounds) {
          if (!t.le[w * n + z]) {
            greatest = false;
            break;
          }
        }
        if (greatest) {
          glb = z;
          break;
        }
      }
      if (!glb) {
        throw NotALattice("no greatest lower bound for nodes " + std::to_string(x) + " and " +
                              std::to_string(y),
                          static_cast<NodeId>(x), static_cast<NodeId>(y));
      }
      t.meet[x * n + y] = t.meet[y * n + x] = *glb;
    }
  }
  return OmlLattice(std::move(t), h);
}

std::optional<OmlViolation> check_oml(const OmlLattice& l) {
  const std::size_t n = l.node_count();
  const auto& t = l.tables();
  auto J = [&](std::size_t x, std::size_t y) { return t.join[x * n + y]; };
  auto M = [&](std::size_t x, std::size_t y) { return t.meet[x * n + y]; };
  auto L = [&](std::size_t x, std::size_t y) { return t.le[x * n + y] != 0; };
  auto O = [&](std::size_t x) { return t.ortho[x]; };
  auto fail = [](const char* law, std::size_t x, std::size_t y = 0, std::size_t z = 0) {
    return OmlViolation{law, static_cast<NodeId>(x), static_cast<NodeId>(y),
                        static_cast<NodeId>(z)};
  };

  for (std::size_t x = 0; x < n; ++x) {
    if (O(x) >= n) return fail("ortho in range", x);
    if (O(O(x)) != x) return fail("a'' = a", x);
    if (J(x, O(x)) != kOne) return fail("a v a' = 1", x);
    if (M(x, O(x)) != kZero) return fail("a ^ a' = 0", x);
    if (!L(kZero, x) || !L(x, kOne)) return fail("0 <= a <= 1", x);
    if (!L(x, x)) return fail("a <= a", x);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (J(x, y) >= n || M(x, y) >= n) return fail("operation in range", x, y);
      if (J(x, y) != J(y, x)) return fail("a v b = b v a", x, y);
      if (M(x, y) != M(y, x)) return fail("a ^ b = b ^ a", x, y);
      if (M(x, J(x, y)) != x) return fail("a ^ (a v b) = a", x, y);
      if (J(x, M(x, y)) != x) return fail("a v (a ^ b) = a", x, y);
      if (L(x, y) != (M(x, y) == x)) return fail("a <= b iff a = a ^ b", x, y);
      if (L(x, y) && L(y, x) && x != y) return fail("antisymmetry", x, y);
      if (L(x, y) && !L(O(y), O(x))) return fail("a <= b implies b' <= a'", x, y);
      // Orthomodular law in its implicational form.
      if (L(x, y) && y != J(x, M(y, O(x)))) return fail("a <= b implies b = a v (b ^ a')", x, y);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto xy_j = J(x, y);
      const auto xy_m = M(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (J(xy_j, z) != J(x, J(y, z))) return fail("(a v b) v c = a v (b v c)", x, y, z);
        if (M(xy_m, z) != M(x, M(y, z))) return fail("(a ^ b) ^ c = a ^ (b ^ c)", x, y, z);
      }
    }
  }
  return std::nullopt;
}

}  // namespace oalat
