#pragma once

#include <cstdint>
#include <vector>

#include "thermoform/multilinear.hpp"

namespace thermoform {

// A linear subspace of R^d held as a canonical orthonormal basis, so that two
// objects describing the same span compare entrywise equal up to roundoff.
class Subspace {
 public:
  // Canonicalises the span of the given columns. The rank is derived with a
  // relative tolerance; zero rank is rejected.
  static Subspace from_spanning(const Matrix& spanning_columns);

  int ambient_dimension() const { return static_cast<int>(basis_.rows()); }
  int dimension() const { return static_cast<int>(basis_.cols()); }
  // d x l with orthonormal columns in canonical form.
  const Matrix& basis() const { return basis_; }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

// sin of the largest principal angle between the spans; 0 for equal spans,
// 1 when some direction of one is orthogonal to all of the other. Requires
// equal ambient dimensions. Spans of different dimension are at distance 1.
double subspace_distance(const Subspace& a, const Subspace& b);

inline constexpr double kSubspaceTolerance = 1e-8;

// Equality of spans: largest principal angle below tol (compared through its
// sine, which is faithful at these magnitudes).
bool same_subspace(const Subspace& a, const Subspace& b,
                   double tol = kSubspaceTolerance);

// Image subspace a(s); a must be d x d with d the ambient dimension of s.
Subspace map_subspace(const Matrix& a, const Subspace& s);

// One subspace per factor of a product system.
using SubspaceTuple = std::vector<Subspace>;

bool same_tuple(const SubspaceTuple& a, const SubspaceTuple& b,
                double tol = kSubspaceTolerance);

// A finite family of subspace tuples together with its single-symbol
// reachability structure: adjacency[r][c] = 1 iff some generator index maps
// member r onto member c in every factor simultaneously.
struct SubspaceClass {
  std::vector<SubspaceTuple> members;
  std::vector<std::vector<std::uint8_t>> adjacency;

  std::size_t size() const { return members.size(); }
  // Index of the member equal to the tuple, or -1.
  std::ptrdiff_t find(const SubspaceTuple& tuple,
                      double tol = kSubspaceTolerance) const;
};

// Deterministic ordering used to keep member lists canonical: compares
// dimensions, then flattened canonical bases entrywise.
bool tuple_less(const SubspaceTuple& a, const SubspaceTuple& b);

}  // namespace thermoform
