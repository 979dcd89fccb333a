#include "thermoform/classes.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace thermoform {

namespace {

constexpr std::size_t kProductEnumerationCap = 4096;

void check_seed(const SubspaceTuple& seed, const MatrixSystem& system) {
  if (seed.size() != system.factor_count()) {
    throw InvalidInputError("seed tuple size does not match factor count");
  }
  for (std::size_t j = 0; j < seed.size(); ++j) {
    if (seed[j].ambient_dimension() != system.factor(j).dim) {
      throw InvalidInputError("seed subspace does not live in factor " +
                              std::to_string(j + 1));
    }
  }
}

SubspaceTuple image_tuple(const SubspaceTuple& tuple,
                          const MatrixSystem& system, Symbol symbol) {
  SubspaceTuple image;
  image.reserve(tuple.size());
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    image.push_back(map_subspace(
        system.factor(j).generators[static_cast<std::size_t>(symbol) - 1],
        tuple[j]));
  }
  return image;
}

std::ptrdiff_t find_tuple(const std::vector<SubspaceTuple>& members,
                          const SubspaceTuple& tuple) {
  for (std::size_t r = 0; r < members.size(); ++r) {
    if (same_tuple(members[r], tuple)) return static_cast<std::ptrdiff_t>(r);
  }
  return -1;
}

// table[r][i-1] = member index of the image of member r under symbol i, or
// -1 when the image leaves the list.
std::vector<std::vector<std::ptrdiff_t>> image_table(
    const std::vector<SubspaceTuple>& members, const MatrixSystem& system) {
  std::vector<std::vector<std::ptrdiff_t>> table(
      members.size(),
      std::vector<std::ptrdiff_t>(system.alphabet_size(), -1));
  for (std::size_t r = 0; r < members.size(); ++r) {
    for (Symbol i = 1; i <= system.alphabet_size(); ++i) {
      table[r][i - 1] = find_tuple(members, image_tuple(members[r], system, i));
    }
  }
  return table;
}

// Invertible maps act injectively on subspaces, so on a genuine finite class
// every symbol permutes the members. A collision is the signature of an
// orbit that only closed by numerical convergence toward an attractor.
bool is_permutation_table(const std::vector<std::vector<std::ptrdiff_t>>& table,
                          Symbol alphabet_size) {
  const std::size_t n = table.size();
  for (Symbol i = 1; i <= alphabet_size; ++i) {
    std::vector<std::uint8_t> hit(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      const std::ptrdiff_t c = table[r][i - 1];
      if (c < 0 || hit[static_cast<std::size_t>(c)]) return false;
      hit[static_cast<std::size_t>(c)] = 1;
    }
  }
  return true;
}

std::vector<std::vector<std::uint8_t>> adjacency_from_table(
    const std::vector<std::vector<std::ptrdiff_t>>& table) {
  std::vector<std::vector<std::uint8_t>> adjacency(
      table.size(), std::vector<std::uint8_t>(table.size(), 0));
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (const std::ptrdiff_t c : table[r]) {
      if (c >= 0) adjacency[r][static_cast<std::size_t>(c)] = 1;
    }
  }
  return adjacency;
}

SubspaceClass make_class(std::vector<SubspaceTuple> members,
                         const MatrixSystem& system) {
  std::sort(members.begin(), members.end(), tuple_less);
  SubspaceClass cls;
  cls.adjacency = adjacency_from_table(image_table(members, system));
  cls.members = std::move(members);
  return cls;
}

bool same_class(const SubspaceClass& a, const SubspaceClass& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (!same_tuple(a.members[r], b.members[r])) return false;
  }
  return true;
}

std::vector<std::vector<int>> size_subsets(int universe, int size) {
  std::vector<std::vector<int>> subsets;
  if (size < 1 || size > universe) return subsets;
  std::vector<int> pick(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    subsets.push_back(pick);
    int pos = size - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == universe - size + pos) --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < size; ++i) {
      pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return subsets;
}

// Unit real eigendirections of a, deduplicated.
std::vector<Vector> real_eigendirections(const Matrix& a) {
  std::vector<Vector> directions;
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) return directions;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto lambda = solver.eigenvalues()[i];
    if (std::abs(lambda.imag()) > 1e-8 * (1.0 + std::abs(lambda))) continue;
    Vector v = solver.eigenvectors().col(i).real();
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    bool duplicate = false;
    for (const Vector& seen : directions) {
      if (std::abs(std::abs(seen.dot(v)) - 1.0) < 1e-10) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) directions.push_back(std::move(v));
  }
  return directions;
}

// Generator products for |w| <= max_length in order of length then rank,
// capped so huge alphabets stay bounded.
std::vector<Matrix> short_products(const std::vector<Matrix>& generators,
                                   std::size_t max_length) {
  std::vector<Matrix> products;
  std::vector<Matrix> frontier{
      Matrix::Identity(generators.front().rows(), generators.front().cols())};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Matrix> next;
    next.reserve(frontier.size() * generators.size());
    for (const Matrix& prefix : frontier) {
      for (const Matrix& g : generators) {
        if (products.size() >= kProductEnumerationCap) return products;
        next.push_back(prefix * g);
        products.push_back(next.back());
      }
    }
    frontier = std::move(next);
  }
  return products;
}

// Candidate invariant-subspace seeds for one factor: coordinate subspaces and
// spans of eigenvector subsets of short products.
std::vector<Subspace> candidate_subspaces(const std::vector<Matrix>& generators,
                                          int ell, std::size_t product_length) {
  const int d = static_cast<int>(generators.front().rows());
  std::vector<Subspace> candidates;
  auto add = [&](const Matrix& spanning) {
    Subspace s = Subspace::from_spanning(spanning);
    if (s.dimension() != ell) return;
    for (const Subspace& seen : candidates) {
      if (same_subspace(seen, s)) return;
    }
    candidates.push_back(std::move(s));
  };

  for (const auto& subset : size_subsets(d, ell)) {
    Matrix spanning = Matrix::Zero(d, ell);
    for (int c = 0; c < ell; ++c) {
      spanning(subset[static_cast<std::size_t>(c)], c) = 1.0;
    }
    add(spanning);
  }

  for (const Matrix& product : short_products(generators, product_length)) {
    const auto directions = real_eigendirections(product);
    const int found = static_cast<int>(directions.size());
    for (const auto& subset : size_subsets(found, ell)) {
      Matrix spanning(d, ell);
      for (int c = 0; c < ell; ++c) {
        spanning.col(c) = directions[static_cast<std::size_t>(subset[static_cast<std::size_t>(c)])];
      }
      add(spanning);
    }
  }
  return candidates;
}

using BoolMatrix = std::vector<std::vector<std::uint8_t>>;

BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix out(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t m = 0; m < n; ++m) {
      if (!a[r][m]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (b[m][c]) out[r][c] = 1;
      }
    }
  }
  return out;
}

bool all_positive(const BoolMatrix& a) {
  for (const auto& row : a) {
    for (std::uint8_t v : row) {
      if (!v) return false;
    }
  }
  return true;
}

// Reachability from every node to every node.
bool strongly_connected(const BoolMatrix& adjacency) {
  const std::size_t n = adjacency.size();
  auto reach = [&](bool forward) {
    std::vector<std::uint8_t> seen(n, 0);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v = 0; v < n; ++v) {
        const bool edge = forward ? adjacency[u][v] : adjacency[v][u];
        if (edge && !seen[v]) {
          seen[v] = 1;
          queue.push(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](std::uint8_t s) { return s; });
  };
  return reach(true) && reach(false);
}

// gcd of directed cycle lengths of a strongly connected graph.
std::size_t graph_period(const BoolMatrix& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<long long> level(n, -1);
  std::queue<std::size_t> queue;
  queue.push(0);
  level[0] = 0;
  long long g = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v = 0; v < n; ++v) {
      if (!adjacency[u][v]) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push(v);
      } else {
        g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
      }
    }
  }
  return g == 0 ? 1 : static_cast<std::size_t>(g);
}

}  // namespace

OrbitResult orbit_of(const SubspaceTuple& seed, const MatrixSystem& system,
                     std::size_t cap) {
  check_seed(seed, system);
  OrbitResult result;
  std::vector<SubspaceTuple> members{seed};
  for (std::size_t next = 0; next < members.size(); ++next) {
    for (Symbol i = 1; i <= system.alphabet_size(); ++i) {
      SubspaceTuple image = image_tuple(members[next], system, i);
      if (find_tuple(members, image) < 0) {
        if (members.size() >= cap) {
          result.overflowed = true;
          result.explored = members.size();
          return result;
        }
        members.push_back(std::move(image));
      }
    }
  }
  result.explored = members.size();
  result.closure = make_class(std::move(members), system);
  result.permutation = is_permutation_table(
      image_table(result.closure->members, system), system.alphabet_size());
  return result;
}

ClassSearchResult find_finite_orbit_classes(const MatrixSystem& system,
                                            const std::vector<int>& dims,
                                            const ClassSearchConfig& config) {
  if (dims.size() != system.factor_count()) {
    throw InvalidInputError("need one subspace dimension per factor");
  }
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (dims[j] < 1 || dims[j] > system.factor(j).dim) {
      throw InvalidInputError("subspace dimension for factor " +
                              std::to_string(j + 1) + " outside [1, dim]");
    }
  }

  std::vector<std::vector<Subspace>> per_factor;
  per_factor.reserve(system.factor_count());
  for (std::size_t j = 0; j < system.factor_count(); ++j) {
    per_factor.push_back(candidate_subspaces(system.factor(j).generators,
                                             dims[j], config.product_length));
  }

  // Cartesian product of the per-factor candidates, then caller seeds.
  std::vector<SubspaceTuple> seeds;
  const bool any_empty =
      std::any_of(per_factor.begin(), per_factor.end(),
                  [](const std::vector<Subspace>& c) { return c.empty(); });
  std::vector<std::size_t> cursor(system.factor_count(), 0);
  bool done = any_empty;
  while (!done && seeds.size() < config.max_seeds) {
    SubspaceTuple tuple;
    tuple.reserve(system.factor_count());
    for (std::size_t j = 0; j < system.factor_count(); ++j) {
      tuple.push_back(per_factor[j][cursor[j]]);
    }
    seeds.push_back(std::move(tuple));
    done = true;
    for (std::size_t j = system.factor_count(); j-- > 0;) {
      if (++cursor[j] < per_factor[j].size()) {
        done = false;
        break;
      }
      cursor[j] = 0;
    }
  }
  for (const SubspaceTuple& extra : config.extra_seeds) {
    if (seeds.size() >= config.max_seeds) break;
    check_seed(extra, system);
    seeds.push_back(extra);
  }

  ClassSearchResult result;
  for (const SubspaceTuple& seed : seeds) {
    ++result.seeds_tried;
    OrbitResult orbit = orbit_of(seed, system, config.cap);
    if (orbit.overflowed) {
      ++result.overflows;
      continue;
    }
    if (!orbit.permutation) {
      ++result.artifact_rejects;
      continue;
    }
    bool known = false;
    for (const SubspaceClass& existing : result.classes) {
      if (same_class(existing, *orbit.closure)) {
        known = true;
        break;
      }
    }
    if (!known) result.classes.push_back(std::move(*orbit.closure));
  }
  std::sort(result.classes.begin(), result.classes.end(),
            [](const SubspaceClass& a, const SubspaceClass& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return tuple_less(a.members.front(), b.members.front());
            });
  return result;
}

std::vector<SubspaceClass> decompose_equivariant(const SubspaceClass& cls,
                                                 const MatrixSystem& system) {
  const std::size_t n = cls.size();
  if (n == 0) throw InvalidInputError("empty class");

  // Union members connected by a generator image; equivariance makes each
  // generator a permutation of the class, so connectivity is symmetric.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  const auto table = image_table(cls.members, system);
  for (std::size_t r = 0; r < n; ++r) {
    for (const std::ptrdiff_t c : table[r]) {
      if (c < 0) {
        throw PreconditionError(
            "class is not equivariant: an image leaves the member list");
      }
      parent[root(r)] = root(static_cast<std::size_t>(c));
    }
  }

  std::vector<std::vector<SubspaceTuple>> groups;
  std::vector<std::ptrdiff_t> group_of(n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t rep = root(r);
    if (group_of[rep] < 0) {
      group_of[rep] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(group_of[rep])].push_back(cls.members[r]);
  }

  std::vector<SubspaceClass> parts;
  parts.reserve(groups.size());
  for (auto& group : groups) parts.push_back(make_class(std::move(group), system));
  std::sort(parts.begin(), parts.end(),
            [](const SubspaceClass& a, const SubspaceClass& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return tuple_less(a.members.front(), b.members.front());
            });
  return parts;
}

ClassificationReport classify(const SubspaceClass& cls,
                              const MatrixSystem& system) {
  ClassificationReport report;
  const std::size_t n = cls.size();
  if (n == 0) throw InvalidInputError("empty class");

  const auto table = image_table(cls.members, system);
  report.equivariant = true;
  for (std::size_t r = 0; r < n && report.equivariant; ++r) {
    for (const std::ptrdiff_t c : table[r]) {
      if (c < 0) {
        report.equivariant = false;
        break;
      }
    }
  }
  if (!report.equivariant) return report;
  const BoolMatrix adjacency = adjacency_from_table(table);

  report.transitive = strongly_connected(adjacency);
  if (!report.transitive) return report;

  report.period = graph_period(adjacency);
  if (report.period != 1) return report;

  // Wielandt: a primitive adjacency reaches all-positive by (n-1)^2 + 1.
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  BoolMatrix power = adjacency;
  for (std::size_t t = 1; t <= bound; ++t) {
    if (all_positive(power)) {
      report.primitive = true;
      report.primitivity_exponent = t;
      break;
    }
    power = bool_multiply(power, adjacency);
  }
  return report;
}

IrreducibilityVerdict is_irreducible(const std::vector<Matrix>& generators,
                                     std::size_t product_length) {
  if (generators.empty()) throw InvalidInputError("empty generator family");
  for (const Matrix& g : generators) {
    check_square_finite(g);
    if (g.rows() != generators.front().rows()) {
      throw InvalidInputError("generators have inconsistent dimensions");
    }
    if (!is_invertible(g)) {
      throw InvalidInputError("irreducibility check expects invertible maps");
    }
  }
  const Eigen::Index d = generators.front().rows();
  const Eigen::Index full = d * d;

  IrreducibilityVerdict verdict;

  // Span of all products, grown by closing a spanning list under left
  // multiplication; Gram-Schmidt over vectorised matrices tracks dimension.
  std::vector<Matrix> spanning;
  std::vector<Matrix> ortho;
  auto try_add = [&](Matrix m) {
    const double scale = m.norm();
    if (!(scale > 0.0)) return;
    m /= scale;
    Matrix residual = m;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Matrix& o : ortho) {
        residual -= (o.array() * residual.array()).sum() * o;
      }
    }
    if (residual.norm() > 1e-10) {
      ortho.push_back(residual / residual.norm());
      spanning.push_back(std::move(m));
    }
  };
  for (const Matrix& g : generators) try_add(g);
  for (std::size_t next = 0;
       next < spanning.size() && static_cast<Eigen::Index>(ortho.size()) < full;
       ++next) {
    for (const Matrix& g : generators) {
      try_add(g * spanning[next]);
      if (static_cast<Eigen::Index>(ortho.size()) == full) break;
    }
  }
  verdict.algebra_dimension = static_cast<int>(ortho.size());
  if (static_cast<Eigen::Index>(ortho.size()) == full) {
    verdict.status = IrreducibilityStatus::kIrreducible;
    verdict.certificate = "generated products span the full matrix space";
    return verdict;
  }

  // Invariant subspaces, if any, show up among spans of eigenvector subsets
  // of short products.
  for (const Matrix& product : short_products(generators, product_length)) {
    const auto directions = real_eigendirections(product);
    const int found = static_cast<int>(directions.size());
    for (int size = 1; size < static_cast<int>(d); ++size) {
      for (const auto& subset : size_subsets(found, size)) {
        Matrix spanning_cols(d, size);
        for (int c = 0; c < size; ++c) {
          spanning_cols.col(c) =
              directions[static_cast<std::size_t>(subset[static_cast<std::size_t>(c)])];
        }
        const Subspace candidate = Subspace::from_spanning(spanning_cols);
        if (candidate.dimension() >= static_cast<int>(d)) continue;
        bool invariant = true;
        for (const Matrix& g : generators) {
          if (!same_subspace(map_subspace(g, candidate), candidate)) {
            invariant = false;
            break;
          }
        }
        if (invariant) {
          verdict.status = IrreducibilityStatus::kReducible;
          verdict.certificate =
              "eigenvector span of a short product is invariant";
          verdict.witness = candidate;
          return verdict;
        }
      }
    }
  }

  verdict.status = IrreducibilityStatus::kUndetermined;
  verdict.certificate =
      "products span dimension " + std::to_string(verdict.algebra_dimension) +
      " of " + std::to_string(full) + " and no invariant subspace was found";
  return verdict;
}

ProximalWordSearch find_simultaneous_proximal_word(const MatrixSystem& system,
                                                   std::size_t max_length,
                                                   const SubspaceClass* within,
                                                   double tol) {
  if (max_length == 0) throw InvalidInputError("max length must be >= 1");
  if (within != nullptr && within->members.empty()) {
    throw InvalidInputError("restriction class is empty");
  }
  ProximalWordSearch search;
  for (std::size_t len = 1; len <= max_length; ++len) {
    search.searched_to = len;
    for_each_word(system.alphabet_size(), len, [&](const std::vector<Symbol>& symbols) {
      if (search.word) return;
      const Word w(symbols, system.alphabet_size());
      std::vector<Matrix> products;
      products.reserve(system.factor_count());
      for (std::size_t j = 0; j < system.factor_count(); ++j) {
        products.push_back(system.word_product(j, w));
      }

      if (within == nullptr) {
        std::vector<ProximalityReport> reports;
        for (const Matrix& p : products) {
          reports.push_back(is_proximal(p, tol));
          if (!reports.back().proximal()) return;
        }
        search.word = w;
        search.factor_reports = std::move(reports);
        return;
      }

      for (const SubspaceTuple& member : within->members) {
        bool fixes = true;
        for (std::size_t j = 0; j < member.size(); ++j) {
          if (!same_subspace(map_subspace(products[j], member[j]), member[j])) {
            fixes = false;
            break;
          }
        }
        if (!fixes) continue;
        std::vector<ProximalityReport> reports;
        bool all = true;
        for (std::size_t j = 0; j < member.size(); ++j) {
          const Matrix restricted =
              member[j].basis().transpose() * products[j] * member[j].basis();
          reports.push_back(is_proximal(restricted, tol));
          if (!reports.back().proximal()) {
            all = false;
            break;
          }
        }
        if (all) {
          search.word = w;
          search.factor_reports = std::move(reports);
          return;
        }
      }
    });
    if (search.word) break;
  }
  return search;
}

std::optional<CyclicSplitting> detect_cyclic_splitting(
    const std::vector<Matrix>& generators, std::size_t max_parts,
    const ClassSearchConfig& config) {
  if (generators.empty()) throw InvalidInputError("empty generator family");
  for (const Matrix& g : generators) {
    check_square_finite(g);
    if (g.rows() != generators.front().rows()) {
      throw InvalidInputError("generators have inconsistent dimensions");
    }
    if (!is_invertible(g)) {
      throw InvalidInputError("cyclic splittings need invertible maps");
    }
  }
  const int d = static_cast<int>(generators.front().rows());

  for (std::size_t parts = 2; parts <= std::min<std::size_t>(max_parts, d); ++parts) {
    if (d % static_cast<int>(parts) != 0) continue;
    const int ell = d / static_cast<int>(parts);
    for (const Subspace& seed :
         candidate_subspaces(generators, ell, config.product_length)) {
      // Orbit of the seed under the family, capped at the part count.
      std::vector<Subspace> orbit{seed};
      bool small = true;
      for (std::size_t next = 0; next < orbit.size() && small; ++next) {
        for (const Matrix& g : generators) {
          Subspace image = map_subspace(g, orbit[next]);
          bool seen = false;
          for (const Subspace& s : orbit) {
            if (same_subspace(s, image)) {
              seen = true;
              break;
            }
          }
          if (!seen) {
            if (orbit.size() >= parts) {
              small = false;
              break;
            }
            orbit.push_back(std::move(image));
          }
        }
      }
      if (!small || orbit.size() != parts) continue;

      // All orbit parts together must fill the space.
      Matrix stacked(d, d);
      for (std::size_t t = 0; t < parts; ++t) {
        stacked.middleCols(static_cast<Eigen::Index>(t) * ell, ell) =
            orbit[t].basis();
      }
      Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
      qr.setThreshold(1e-10);
      if (qr.rank() != d) continue;

      // Every generator must induce one and the same single cycle.
      std::vector<std::size_t> sigma(parts);
      bool consistent = true;
      for (std::size_t gi = 0; gi < generators.size() && consistent; ++gi) {
        for (std::size_t t = 0; t < parts; ++t) {
          const Subspace image = map_subspace(generators[gi], orbit[t]);
          std::ptrdiff_t target = -1;
          for (std::size_t c = 0; c < parts; ++c) {
            if (same_subspace(orbit[c], image)) {
              target = static_cast<std::ptrdiff_t>(c);
              break;
            }
          }
          if (target < 0 || (gi > 0 && sigma[t] != static_cast<std::size_t>(target))) {
            consistent = false;
            break;
          }
          if (gi == 0) sigma[t] = static_cast<std::size_t>(target);
        }
      }
      if (!consistent) continue;

      // sigma must be a single cycle through all parts.
      CyclicSplitting splitting;
      splitting.parts.reserve(parts);
      std::size_t at = 0;
      for (std::size_t step = 0; step < parts; ++step) {
        splitting.parts.push_back(orbit[at]);
        at = sigma[at];
      }
      if (at != 0 || splitting.parts.size() != parts) continue;
      bool distinct = true;
      for (std::size_t x = 0; x < parts && distinct; ++x) {
        for (std::size_t y = x + 1; y < parts; ++y) {
          if (same_subspace(splitting.parts[x], splitting.parts[y])) {
            distinct = false;
            break;
          }
        }
      }
      if (distinct) return splitting;
    }
  }
  return std::nullopt;
}

}  // namespace thermoform
