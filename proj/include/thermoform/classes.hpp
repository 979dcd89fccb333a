#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermoform/potentials.hpp"
#include "thermoform/subspace.hpp"

namespace thermoform {

struct OrbitResult {
  std::optional<SubspaceClass> closure;  // absent exactly when overflowed
  bool overflowed = false;
  std::size_t explored = 0;  // members collected before stopping
  // True when every generator permutes the members. Invertible maps act
  // injectively on subspaces, so a closure that fails this only closed by
  // numerical convergence toward an attracting direction.
  bool permutation = false;
};

// Closes a tuple under images by every generator index. Members are sorted
// canonically and the single-symbol adjacency is recorded. Exceeding the cap
// is an expected outcome, reported in the result rather than thrown.
OrbitResult orbit_of(const SubspaceTuple& seed, const MatrixSystem& system,
                     std::size_t cap = 256);

struct ClassSearchConfig {
  std::size_t cap = 256;             // orbit size cap
  std::size_t product_length = 3;    // eigenvector seeds use products up to this
  std::size_t max_seeds = 4096;      // cap on seed tuples tried
  std::vector<SubspaceTuple> extra_seeds;
};

struct ClassSearchResult {
  std::vector<SubspaceClass> classes;  // finite orbits found, deduplicated
  bool exhaustive = false;             // heuristic seed search: always false
  std::size_t seeds_tried = 0;
  std::size_t overflows = 0;  // seeds whose orbit exceeded the cap
  std::size_t artifact_rejects = 0;  // closures some generator did not permute
};

// Seeds orbits from coordinate subspaces, real eigenspaces of generator
// products, and any caller-supplied tuples, keeping the finite closures.
// dims gives the sought subspace dimension per factor. Finding nothing never
// proves nothing exists; the result says so via `exhaustive`.
ClassSearchResult find_finite_orbit_classes(const MatrixSystem& system,
                                            const std::vector<int>& dims,
                                            const ClassSearchConfig& config = {});

// Splits an equivariant class into its transitive parts (mutually reachable
// member sets; invertibility makes each generator act as a permutation, so
// the parts partition the class). Throws PreconditionError when some image
// leaves the class.
std::vector<SubspaceClass> decompose_equivariant(const SubspaceClass& cls,
                                                 const MatrixSystem& system);

struct ClassificationReport {
  bool equivariant = false;
  bool transitive = false;
  bool primitive = false;
  std::size_t period = 0;                // gcd of cycle lengths; 0 if not transitive
  std::size_t primitivity_exponent = 0;  // least t with M^t all-positive; 0 if none
};

// Equivariance, transitivity (adjacency irreducible), period, and primitivity
// verified through an actual all-positive power, whose exponent is capped by
// (size-1)^2 + 1.
ClassificationReport classify(const SubspaceClass& cls,
                              const MatrixSystem& system);

enum class IrreducibilityStatus { kIrreducible, kReducible, kUndetermined };

struct IrreducibilityVerdict {
  IrreducibilityStatus status = IrreducibilityStatus::kUndetermined;
  std::string certificate;  // how the verdict was reached
  std::optional<Subspace> witness;  // proper invariant subspace when reducible
  int algebra_dimension = 0;  // dimension spanned by the generated products
};

// Three-way check: the products' linear span reaching full dimension d*d
// certifies irreducibility; a common invariant subspace found among
// eigenvector spans of short products certifies reducibility; otherwise
// undetermined.
IrreducibilityVerdict is_irreducible(const std::vector<Matrix>& generators,
                                     std::size_t product_length = 4);

struct ProximalWordSearch {
  std::optional<Word> word;   // lexicographically first hit, shortest length
  std::size_t searched_to = 0;
  std::vector<ProximalityReport> factor_reports;  // for the found word
};

// First word (by length, then lex order) whose product is proximal in every
// factor. With a class given, the word must fix some member tuple and the
// restrictions to that member must all be proximal.
ProximalWordSearch find_simultaneous_proximal_word(
    const MatrixSystem& system, std::size_t max_length,
    const SubspaceClass* within = nullptr, double tol = 1e-8);

struct CyclicSplitting {
  std::vector<Subspace> parts;  // every generator maps part t onto part t+1 mod m
};

// Searches one generator family for a direct-sum splitting cycled the same
// way by every generator; none found at the searched sizes returns nullopt.
std::optional<CyclicSplitting> detect_cyclic_splitting(
    const std::vector<Matrix>& generators, std::size_t max_parts = 8,
    const ClassSearchConfig& config = {});

}  // namespace thermoform
