#include "oalat/hilbert.hpp"

#include <algorithm>
#include <sstream>

#include "oalat/search.hpp"
#include <stdexcept>

namespace oalat {

namespace {

std::size_t pivot_of(const RationalVector& row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (sgn(row[j]) != 0) return j;
  }
  return row.size();
}

bool is_zero(const RationalVector& v) { return pivot_of(v) == v.size(); }

void require_same(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument("subspaces of Q^" + std::to_string(a.ambient()) + " and Q^" +
                                std::to_string(b.ambient()));
  }
}

mpq_class dot(const RationalVector& x, const RationalVector& y) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

Subspace::Subspace(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("ambient dimension must be positive");
}

Subspace Subspace::span(std::size_t dim, const std::vector<RationalVector>& rows) {
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("vector length differs from the dimension");
    if (is_zero(r)) throw std::invalid_argument("zero vector in a spanning set");
  }
  Subspace s(dim);
  s.basis_ = reduce(dim, rows);
  return s;
}

Subspace Subspace::full(std::size_t dim) {
  std::vector<RationalVector> rows(dim, RationalVector(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) rows[i][i] = 1;
  return span(dim, rows);
}

std::vector<RationalVector> Subspace::reduce(std::size_t dim, std::vector<RationalVector> rows) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][col]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    const mpq_class lead = rows[rank][col];
    for (auto& x : rows[rank]) x /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][col]) == 0) continue;
      const mpq_class f = rows[r][col];
      for (std::size_t j = col; j < dim; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

bool Subspace::contains(const RationalVector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector length differs from the dimension");
  RationalVector w = v;
  for (const auto& row : basis_) {
    const std::size_t p = pivot_of(row);
    if (sgn(w[p]) == 0) continue;
    const mpq_class f = w[p];
    for (std::size_t j = p; j < dim_; ++j) w[j] -= f * row[j];
  }
  return is_zero(w);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same(a, b);
  std::vector<RationalVector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), rows);
}

Subspace subspace_ortho(const Subspace& a) {
  const std::size_t d = a.ambient();
  std::vector<std::size_t> pivots;
  for (const auto& row : a.basis()) pivots.push_back(pivot_of(row));
  std::vector<RationalVector> rows;
  for (std::size_t free = 0; free < d; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    RationalVector v(d, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a.basis()[r][free];
    rows.push_back(std::move(v));
  }
  return Subspace::span(d, rows);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same(a, b);
  return subspace_ortho(subspace_sum(subspace_ortho(a), subspace_ortho(b)));
}

bool subspace_leq(const Subspace& a, const Subspace& b) {
  require_same(a, b);
  return std::all_of(a.basis().begin(), a.basis().end(),
                     [&](const RationalVector& v) { return b.contains(v); });
}

Subspace subspace_term_T(std::size_t m, const std::vector<std::size_t>& indices,
                         const std::vector<Subspace>& M, const std::vector<Subspace>& N) {
  if (m == 0 || indices.size() != m + 1) throw std::invalid_argument("T_m needs m+1 indices, m >= 1");
  for (std::size_t i : indices) {
    if (i >= M.size() || i >= N.size()) throw std::out_of_range("subspace index out of range");
  }
  if (m == 1) {
    return subspace_intersect(subspace_sum(M[indices[0]], M[indices[1]]),
                              subspace_sum(N[indices[0]], N[indices[1]]));
  }
  auto with = [&](std::size_t x, std::size_t y) {
    std::vector<std::size_t> out{indices[x], indices[y]};
    out.insert(out.end(), indices.begin() + 3, indices.end());
    return out;
  };
  const Subspace t01 = subspace_term_T(m - 1, with(0, 1), M, N);
  const Subspace t02 = subspace_term_T(m - 1, with(0, 2), M, N);
  const Subspace t12 = subspace_term_T(m - 1, with(1, 2), M, N);
  return subspace_intersect(t01, subspace_sum(t02, t12));
}

bool check_noa_subspace(std::size_t n, const std::vector<Subspace>& M,
                        const std::vector<Subspace>& N) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (M.size() != n + 1 || N.size() != n + 1) {
    throw std::invalid_argument("need n+1 subspaces in each family");
  }
  for (std::size_t i = 0; i <= n; ++i) {
    require_same(M[0], M[i]);
    require_same(M[0], N[i]);
  }
  Subspace left = Subspace::full(M[0].ambient());
  for (std::size_t i = 0; i <= n; ++i) left = subspace_intersect(left, subspace_sum(M[i], N[i]));
  std::vector<std::size_t> all(n + 1);
  for (std::size_t i = 0; i <= n; ++i) all[i] = i;
  const Subspace t = subspace_term_T(n, all, M, N);
  const Subspace right = subspace_sum(N[0], subspace_intersect(M[0], subspace_sum(M[1], t)));
  return subspace_leq(left, right);
}

RationalVector parse_rational_vector(std::string_view text) {
  RationalVector v;
  std::string item;
  std::stringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t\r");
    if (b == std::string::npos) throw std::invalid_argument("empty vector component");
    item = item.substr(b, e - b + 1);
    if (!item.empty() && item[0] == '+') item.erase(0, 1);
    mpq_class q;
    if (q.set_str(item, 10) != 0 || item.find_first_of(" \t") != std::string::npos) {
      throw std::invalid_argument("bad vector component '" + item + "'");
    }
    if (item.find('/') != std::string::npos && sgn(mpq_class(mpz_class(item.substr(item.find('/') + 1)))) == 0) {
      throw std::invalid_argument("zero denominator in '" + item + "'");
    }
    q.canonicalize();
    v.push_back(q);
  }
  if (v.empty()) throw std::invalid_argument("empty vector");
  return v;
}

VectorAssignment parse_vector_file(std::string_view text) {
  VectorAssignment out;
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(number) + ": expected 'LABEL: a,b,c'");
    }
    std::string label = line.substr(0, colon);
    label.erase(0, label.find_first_not_of(" \t"));
    label.erase(label.find_last_not_of(" \t") + 1);
    try {
      const AtomLabel a = parse_atom_label(label);
      if (!out.emplace(a, parse_rational_vector(line.substr(colon + 1))).second) {
        throw std::invalid_argument("duplicate atom " + label);
      }
    } catch (const std::exception& ex) {
      throw std::invalid_argument("line " + std::to_string(number) + ": " + ex.what());
    }
  }
  return out;
}

SubspaceFamilies parse_subspace_file(std::string_view text, std::size_t dim) {
  std::map<std::size_t, Subspace> fam[2];
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = "line " + std::to_string(number) + ": ";
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    const auto colon = line.find(':');
    const char family = line[start];
    if (colon == std::string::npos || (family != 'M' && family != 'N')) {
      throw std::invalid_argument(where + "expected 'M<i>: vectors' or 'N<i>: vectors'");
    }
    std::size_t index = 0;
    try {
      index = parse_index_range(line.substr(start + 1, colon - start - 1)).first;
      std::vector<RationalVector> rows;
      std::stringstream vs(line.substr(colon + 1));
      std::string item;
      while (std::getline(vs, item, ';')) {
        if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(parse_rational_vector(item));
      }
      if (!fam[family == 'N'].emplace(index, Subspace::span(dim, rows)).second) {
        throw std::invalid_argument(std::string(1, family) + std::to_string(index) + " given twice");
      }
    } catch (const std::exception& ex) {
      throw std::invalid_argument(where + ex.what());
    }
  }
  SubspaceFamilies out;
  for (int f = 0; f < 2; ++f) {
    auto& dst = f == 0 ? out.M : out.N;
    for (const auto& [i, s] : fam[f]) {
      if (i != dst.size()) {
        throw std::invalid_argument(std::string(1, "MN"[f]) + std::to_string(dst.size()) + " is missing");
      }
      dst.push_back(s);
    }
  }
  if (out.M.size() != out.N.size()) throw std::invalid_argument("M and N families differ in size");
  return out;
}

VectorCheck verify_vectors(const Hypergraph& h, const VectorAssignment& v) {
  std::vector<const RationalVector*> vec;
  std::size_t dim = 0;
  for (const AtomLabel& a : h.atoms) {
    const auto it = v.find(a);
    if (it == v.end()) throw std::invalid_argument("no vector for atom " + a.str());
    if (is_zero(it->second)) throw std::invalid_argument("zero vector for atom " + a.str());
    if (dim == 0) dim = it->second.size();
    if (it->second.size() != dim) throw std::invalid_argument("vectors of different lengths");
    vec.push_back(&it->second);
  }
  for (const Block& b : h.blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        if (sgn(dot(*vec[b[i]], *vec[b[j]])) != 0) {
          return {false, "atoms " + h.atoms[b[i]].str() + " and " + h.atoms[b[j]].str() +
                             " share a block but are not orthogonal"};
        }
      }
    }
  }
  // Proportional vectors span the same line, so compare normalized rays.
  std::map<RationalVector, AtomIndex> rays;
  for (AtomIndex a = 0; a < vec.size(); ++a) {
    RationalVector r = *vec[a];
    const mpq_class lead = r[pivot_of(r)];
    for (auto& x : r) x /= lead;
    const auto [it, inserted] = rays.emplace(std::move(r), a);
    if (!inserted) {
      return {false, "atoms " + h.atoms[it->second].str() + " and " + h.atoms[a].str() +
                         " have proportional vectors"};
    }
  }
  return {};
}

namespace {

// Exactly-one-per-block search with unit propagation.  Branches on the open
// block with the fewest unassigned atoms, trying each as its 1.
class ColorSearch {
public:
  explicit ColorSearch(const Hypergraph& h)
      : h_(h), value_(h.atom_count(), -1), atom_blocks_(h.atom_count()) {
    for (std::size_t b = 0; b < h.block_count(); ++b) {
      for (AtomIndex a : h.blocks[b]) atom_blocks_[a].push_back(b);
    }
    ones_.assign(h.block_count(), 0);
    free_.resize(h.block_count());
    for (std::size_t b = 0; b < h.block_count(); ++b) free_[b] = h.blocks[b].size();
  }

  std::uint64_t run(std::uint64_t limit, std::optional<Coloring>* first) {
    limit_ = limit;
    first_ = first;
    search();
    return found_;
  }

private:
  bool assign(AtomIndex a, std::int8_t v) {
    if (value_[a] >= 0) return value_[a] == v;
    value_[a] = v;
    trail_.push_back(a);
    for (std::size_t b : atom_blocks_[a]) {
      --free_[b];
      if (v == 1) ++ones_[b];
    }
    for (std::size_t b : atom_blocks_[a]) {
      if (ones_[b] > 1) return false;
      if (ones_[b] == 0 && free_[b] == 0) return false;
      if (v == 1) {
        for (AtomIndex x : h_.blocks[b]) {
          if (x != a && !assign(x, 0)) return false;
        }
      } else if (ones_[b] == 0 && free_[b] == 1) {
        for (AtomIndex x : h_.blocks[b]) {
          if (value_[x] < 0 && !assign(x, 1)) return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const AtomIndex a = trail_.back();
      trail_.pop_back();
      for (std::size_t b : atom_blocks_[a]) {
        ++free_[b];
        if (value_[a] == 1) --ones_[b];
      }
      value_[a] = -1;
    }
  }

  void search() {
    if (found_ >= limit_) return;
    std::size_t pick = h_.block_count();
    for (std::size_t b = 0; b < h_.block_count(); ++b) {
      if (ones_[b] == 0 && (pick == h_.block_count() || free_[b] < free_[pick])) pick = b;
    }
    if (pick == h_.block_count()) {
      ++found_;
      if (first_ != nullptr && !*first_) {
        Coloring c(value_.size());
        for (std::size_t a = 0; a < value_.size(); ++a) c[a] = value_[a] == 1 ? 1 : 0;
        *first_ = std::move(c);
      }
      return;
    }
    for (AtomIndex a : h_.blocks[pick]) {
      if (value_[a] >= 0) continue;
      const std::size_t mark = trail_.size();
      if (assign(a, 1)) search();
      undo(mark);
      if (found_ >= limit_) return;
    }
  }

  const Hypergraph& h_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::size_t>> atom_blocks_;
  std::vector<std::size_t> ones_, free_;
  std::vector<AtomIndex> trail_;
  std::uint64_t found_ = 0;
  std::uint64_t limit_ = 0;
  std::optional<Coloring>* first_ = nullptr;
};

}  // namespace

std::optional<Coloring> ks_colorable(const Hypergraph& h) {
  std::optional<Coloring> first;
  ColorSearch(h).run(1, &first);
  return first;
}

std::uint64_t count_colorings(const Hypergraph& h, std::uint64_t limit) {
  return ColorSearch(h).run(limit, nullptr);
}

}  // namespace oalat
