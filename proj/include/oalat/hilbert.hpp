#pragma once

// Exact subspace arithmetic over the rationals, the subspace form of the
// orthoarguesian laws, vector realizations of MMP hypergraphs, and 0-1
// (Kochen-Specker) colourings.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oalat/mmp.hpp"

namespace oalat {

using RationalVector = std::vector<mpq_class>;

/// Linear subspace of Q^d, stored as the reduced row echelon basis so that
/// equal subspaces compare equal.
class Subspace {
public:
  /// The zero subspace of Q^dim.
  explicit Subspace(std::size_t dim = 3);
  /// Span of the rows.  Throws std::invalid_argument on a zero row or a
  /// row of the wrong length.
  static Subspace span(std::size_t dim, const std::vector<RationalVector>& rows);
  static Subspace full(std::size_t dim);

  std::size_t ambient() const { return dim_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<RationalVector>& basis() const { return basis_; }
  bool contains(const RationalVector& v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

private:
  static std::vector<RationalVector> reduce(std::size_t dim, std::vector<RationalVector> rows);

  std::size_t dim_;
  std::vector<RationalVector> basis_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
/// Null space of the basis (orthogonal complement under the dot product).
Subspace subspace_ortho(const Subspace& a);
/// (a' + b')'
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool subspace_leq(const Subspace& a, const Subspace& b);

/// T_1(i0,i1) = (M_i0 + M_i1) ^ (N_i0 + N_i1);
/// T_m(i0..im) = T_{m-1}(i0,i1,i3..im) ^ (T_{m-1}(i0,i2,i3..im) + T_{m-1}(i1,i2,i3..im)).
Subspace subspace_term_T(std::size_t m, const std::vector<std::size_t>& indices,
                         const std::vector<Subspace>& M, const std::vector<Subspace>& N);

/// (M0+N0) ^ ... ^ (Mn+Nn) <= N0 + (M0 ^ (M1 + T_n(0..n))).  Holds for all
/// subspaces, so false means the arithmetic is broken.
bool check_noa_subspace(std::size_t n, const std::vector<Subspace>& M,
                        const std::vector<Subspace>& N);

/// Parses "a,b,c" with integer or p/q components.
RationalVector parse_rational_vector(std::string_view text);

using VectorAssignment = std::map<AtomLabel, RationalVector>;

/// One "LABEL: a,b,c" line per atom; blank lines and '#' comments skipped.
VectorAssignment parse_vector_file(std::string_view text);

struct SubspaceFamilies {
  std::vector<Subspace> M;
  std::vector<Subspace> N;
};

/// Lines "M0: v; v" and "N0: v" (spanning vectors separated by ';', nothing
/// after the colon for the zero subspace).  Both families must be numbered
/// 0..n without gaps.  '#' starts a comment.
SubspaceFamilies parse_subspace_file(std::string_view text, std::size_t dim);

struct VectorCheck {
  bool ok = true;
  std::string problem;  // first failure, empty when ok
};

/// Vectors within a block are pairwise orthogonal and no two atoms get
/// proportional vectors.  Throws std::invalid_argument for a missing atom,
/// a zero vector or mixed dimensions.
VectorCheck verify_vectors(const Hypergraph& h, const VectorAssignment& v);

/// colour[a] is 1 for exactly one atom of every block; atoms in no block
/// are left at 0.
using Coloring = std::vector<std::uint8_t>;

std::optional<Coloring> ks_colorable(const Hypergraph& h);
/// Number of colourings, stopping once `limit` is reached.
std::uint64_t count_colorings(const Hypergraph& h,
                              std::uint64_t limit = ~std::uint64_t{0});

}  // namespace oalat
