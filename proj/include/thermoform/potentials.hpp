#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thermoform/multilinear.hpp"
#include "thermoform/subspace.hpp"
#include "thermoform/symbolic.hpp"

namespace thermoform {

// One factor of a product system: N generators acting on R^dim, weighted by
// the exponent beta in the product over factors.
struct Factor {
  int dim = 0;
  double beta = 1.0;
  std::vector<Matrix> generators;
};

// Tuple of invertible generator families over a common alphabet. Products are
// taken left to right: the matrix of w = (w_1,...,w_n) is A_{w_1} ... A_{w_n}.
class MatrixSystem {
 public:
  MatrixSystem(Symbol alphabet_size, std::vector<Factor> factors);

  Symbol alphabet_size() const { return alphabet_size_; }
  std::size_t factor_count() const { return factors_.size(); }
  const Factor& factor(std::size_t j) const { return factors_[j]; }
  const std::vector<Factor>& factors() const { return factors_; }

  Matrix word_product(std::size_t j, const Word& w) const;

 private:
  Symbol alphabet_size_;
  std::vector<Factor> factors_;
};

// Incremental evaluator: a depth-first enumeration pushes and pops symbols
// and reads the log value of the current prefix in O(1) matrix work per step.
class PotentialWalker {
 public:
  virtual ~PotentialWalker() = default;
  virtual void push(Symbol s) = 0;
  virtual void pop() = 0;
  virtual std::size_t depth() const = 0;
  // log value of the word pushed so far; requires depth() >= 1.
  virtual double log_value() const = 0;
};

// Weight function on finite words, evaluated in log domain.
class Potential {
 public:
  virtual ~Potential() = default;
  virtual Symbol alphabet_size() const = 0;
  virtual std::unique_ptr<PotentialWalker> make_walker(std::size_t max_depth) const = 0;
  // Constant kappa such that appending any single symbol divides the value by
  // at most exp(kappa); partition sums then obey a_{n+1} >= a_n - kappa.
  virtual double growth_drop_bound() const = 0;
  virtual std::string name() const = 0;

  double log_value(const Word& w) const;
};

// log prod_j |A_w^(j)|^{beta_j}.
class GeneralisedPotential final : public Potential {
 public:
  explicit GeneralisedPotential(std::shared_ptr<const MatrixSystem> system);

  Symbol alphabet_size() const override;
  std::unique_ptr<PotentialWalker> make_walker(std::size_t max_depth) const override;
  double growth_drop_bound() const override;
  std::string name() const override { return "generalised"; }

  const MatrixSystem& system() const { return *system_; }

 private:
  std::shared_ptr<const MatrixSystem> system_;
};

// Singular value function of one generator tuple at exponent s >= 0:
// sigma_1 ... sigma_floor(s) * sigma_ceil(s)^(s - floor(s)) for s <= d and
// |det|^(s/d) beyond; s = 0 gives the constant 1.
class SingularValuePotential final : public Potential {
 public:
  SingularValuePotential(std::vector<Matrix> generators, double s);

  Symbol alphabet_size() const override;
  std::unique_ptr<PotentialWalker> make_walker(std::size_t max_depth) const override;
  double growth_drop_bound() const override;
  std::string name() const override;

  double exponent() const { return s_; }
  int dim() const { return static_cast<int>(generators_.front().rows()); }
  const std::vector<Matrix>& generators() const { return generators_; }

 private:
  std::vector<Matrix> generators_;
  double s_;
};

// log max over class members of prod_j |A_w^(j) restricted to W_j|^{beta_j}.
class RestrictedPotential final : public Potential {
 public:
  RestrictedPotential(std::shared_ptr<const MatrixSystem> system,
                      SubspaceClass subspace_class);

  Symbol alphabet_size() const override;
  std::unique_ptr<PotentialWalker> make_walker(std::size_t max_depth) const override;
  double growth_drop_bound() const override;
  std::string name() const override { return "restricted"; }

  const MatrixSystem& system() const { return *system_; }
  const SubspaceClass& subspace_class() const { return class_; }

 private:
  std::shared_ptr<const MatrixSystem> system_;
  SubspaceClass class_;
};

// Product of per-symbol positive weights; exactly multiplicative.
class ScalarWeightPotential final : public Potential {
 public:
  explicit ScalarWeightPotential(std::vector<double> weights);

  Symbol alphabet_size() const override;
  std::unique_ptr<PotentialWalker> make_walker(std::size_t max_depth) const override;
  double growth_drop_bound() const override;
  std::string name() const override { return "scalar-weights"; }

  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// Named evaluation entry points.
double log_evaluate(const MatrixSystem& system, const Word& w);
double log_evaluate_sv(const std::vector<Matrix>& generators, double s,
                       const Word& w);
double log_evaluate_restricted(const MatrixSystem& system,
                               const SubspaceClass& subspace_class,
                               const Word& w);

// Singular value function of a single matrix in log domain.
double log_sv_value(const Matrix& a, double s);
// Same quantity through exterior-power norms:
// (1 + floor(s) - s) log|A^^floor(s)| + (s - floor(s)) log|A^^ceil(s)|,
// valid for 0 <= s <= d. Used to cross-check log_sv_value.
double log_sv_via_exterior(const Matrix& a, double s);

struct SubmultiplicativityReport {
  double max_log_violation = 0.0;  // max of log p(ij) - log p(i) - log p(j)
  std::optional<Word> worst_left;
  std::optional<Word> worst_right;
  bool exhaustive = true;
  std::uint64_t pairs_checked = 0;

  bool passed(double tol = 1e-9) const { return max_log_violation <= tol; }
};

// Scans pairs (i, j) with |i| + |j| <= max_combined_length. When the pair
// count exceeds the budget, falls back to seeded uniform sampling of that
// many pairs and marks the report non-exhaustive.
SubmultiplicativityReport check_submultiplicative(
    const Potential& p, std::size_t max_combined_length,
    std::uint64_t sample_budget = kDefaultEnumerationBudget,
    std::uint64_t seed = 1);

struct QuasimultiplicativityEstimate {
  double log_delta = 0.0;  // worst pair's best connector log-ratio
  double delta = 1.0;
  std::size_t connector_bound = 0;  // m
  std::size_t window = 0;           // L
  bool connectors_exact_length = false;
  std::optional<Word> worst_left;
  std::optional<Word> worst_right;
  std::optional<Word> worst_connector;  // absent when the empty connector wins
};

// delta estimate: min over pairs |i|, |j| in [1, window] of the best
// connector ratio p(ikj) / (p(i) p(j)); connectors range over |k| <= bound
// including the empty word, or exactly |k| = bound when exact_length is set.
QuasimultiplicativityEstimate quasimultiplicativity_scan(
    const Potential& p, std::size_t connector_bound, std::size_t window,
    bool exact_length, EnumerationBudget budget = {});

inline QuasimultiplicativityEstimate estimate_quasimultiplicativity(
    const Potential& p, std::size_t connector_bound, std::size_t window,
    EnumerationBudget budget = {}) {
  return quasimultiplicativity_scan(p, connector_bound, window,
                                    /*exact_length=*/false, budget);
}

// Replaces each factor by its ell_j-th exterior power with exponent
// beta_j / ell_j; the top Lyapunov exponent of factor j of the output equals
// the sum of the leading ell_j exponents of the input factor.
MatrixSystem simple_top_reduction(const MatrixSystem& system,
                                  const std::vector<int>& ells);

}  // namespace thermoform
