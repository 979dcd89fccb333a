#include "thermoform/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace thermoform {

namespace {

void check_generator_family(const std::vector<Matrix>& generators,
                            Symbol alphabet_size, const std::string& where) {
  if (generators.size() != alphabet_size) {
    throw InvalidInputError(where + ": expected " +
                            std::to_string(alphabet_size) + " generators, got " +
                            std::to_string(generators.size()));
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Matrix& g = generators[i];
    check_square_finite(g);
    if (g.rows() != generators.front().rows()) {
      throw InvalidInputError(where + ": generator " + std::to_string(i + 1) +
                              " has inconsistent dimension");
    }
    if (!is_invertible(g)) {
      throw InvalidInputError(where + ": generator " + std::to_string(i + 1) +
                              " is numerically singular");
    }
  }
}

double max_inverse_log_norm(const std::vector<Matrix>& generators) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Matrix& g : generators) {
    worst = std::max(worst, std::log(operator_norm(g.inverse())));
  }
  return worst;
}

// Prefix products of one generator family along the pushed word;
// slot 0 holds the identity.
class ProductStack {
 public:
  void init(const std::vector<Matrix>* generators, std::size_t max_depth) {
    generators_ = generators;
    const Eigen::Index d = generators->front().rows();
    prefix_.assign(max_depth + 1, Matrix(d, d));
    prefix_[0] = Matrix::Identity(d, d);
    top_ = 0;
  }
  void push(Symbol s) {
    prefix_[top_ + 1].noalias() =
        prefix_[top_] * (*generators_)[static_cast<std::size_t>(s) - 1];
    ++top_;
  }
  void pop() { --top_; }
  const Matrix& current() const { return prefix_[top_]; }

 private:
  const std::vector<Matrix>* generators_ = nullptr;
  std::vector<Matrix> prefix_;
  std::size_t top_ = 0;
};

// Push/pop bookkeeping common to the matrix-valued walkers.
class ProductStacksWalker : public PotentialWalker {
 public:
  ProductStacksWalker(const MatrixSystem& system, std::size_t max_depth)
      : system_(system) {
    stacks_.resize(system.factor_count());
    for (std::size_t j = 0; j < system.factor_count(); ++j) {
      stacks_[j].init(&system.factor(j).generators, max_depth);
    }
  }

  void push(Symbol s) override {
    if (s < 1 || s > system_.alphabet_size()) {
      throw InvalidInputError("symbol outside the system's alphabet");
    }
    for (ProductStack& stack : stacks_) stack.push(s);
    ++depth_;
  }
  void pop() override {
    for (ProductStack& stack : stacks_) stack.pop();
    --depth_;
  }
  std::size_t depth() const override { return depth_; }

 protected:
  const MatrixSystem& system_;
  std::vector<ProductStack> stacks_;
  std::size_t depth_ = 0;
};

class GeneralisedWalker final : public ProductStacksWalker {
 public:
  using ProductStacksWalker::ProductStacksWalker;

  double log_value() const override {
    double total = 0.0;
    for (std::size_t j = 0; j < stacks_.size(); ++j) {
      total += system_.factor(j).beta * std::log(operator_norm(stacks_[j].current()));
    }
    return total;
  }
};

class RestrictedWalker final : public ProductStacksWalker {
 public:
  RestrictedWalker(const MatrixSystem& system, const SubspaceClass& cls,
                   std::size_t max_depth)
      : ProductStacksWalker(system, max_depth), class_(cls) {}

  double log_value() const override {
    double best = -std::numeric_limits<double>::infinity();
    for (const SubspaceTuple& member : class_.members) {
      double total = 0.0;
      for (std::size_t j = 0; j < stacks_.size(); ++j) {
        total += system_.factor(j).beta *
                 std::log(operator_norm(stacks_[j].current() * member[j].basis()));
      }
      best = std::max(best, total);
    }
    return best;
  }

 private:
  const SubspaceClass& class_;
};

class SingularValueWalker final : public PotentialWalker {
 public:
  SingularValueWalker(const std::vector<Matrix>& generators, double s,
                      std::size_t max_depth)
      : s_(s) {
    stack_.init(&generators, max_depth);
  }

  void push(Symbol s) override {
    stack_.push(s);
    ++depth_;
  }
  void pop() override {
    stack_.pop();
    --depth_;
  }
  std::size_t depth() const override { return depth_; }
  double log_value() const override { return log_sv_value(stack_.current(), s_); }

 private:
  ProductStack stack_;
  double s_;
  std::size_t depth_ = 0;
};

class ScalarWalker final : public PotentialWalker {
 public:
  ScalarWalker(const std::vector<double>& weights, std::size_t max_depth)
      : weights_(weights) {
    partial_.reserve(max_depth + 1);
    partial_.push_back(0.0);
  }

  void push(Symbol s) override {
    if (s < 1 || s > weights_.size()) {
      throw InvalidInputError("symbol outside the weight alphabet");
    }
    partial_.push_back(partial_.back() +
                       std::log(weights_[static_cast<std::size_t>(s) - 1]));
  }
  void pop() override { partial_.pop_back(); }
  std::size_t depth() const override { return partial_.size() - 1; }
  double log_value() const override { return partial_.back(); }

 private:
  const std::vector<double>& weights_;
  std::vector<double> partial_;
};

// tables[len-1][rank-1] = log p(word) for every word with 1 <= len <= max_len,
// filled by one depth-first sweep.
std::vector<std::vector<double>> value_tables(const Potential& p,
                                              std::size_t max_len,
                                              const EnumerationBudget& budget) {
  const Symbol n_symbols = p.alphabet_size();
  std::uint64_t total = 0;
  std::vector<std::vector<double>> tables(max_len);
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::uint64_t count = word_count(n_symbols, len);
    total += count;
    if (total > budget.max_terms) {
      throw ResourceLimitError("value table of " + std::to_string(total) +
                               " words exceeds budget of " +
                               std::to_string(budget.max_terms));
    }
    tables[len - 1].resize(count);
  }
  auto walker = p.make_walker(max_len);
  auto sweep = [&](auto&& self, std::size_t depth, std::uint64_t rank) -> void {
    for (Symbol s = 1; s <= n_symbols; ++s) {
      walker->push(s);
      const std::uint64_t child = rank * n_symbols + (s - 1);
      tables[depth][child] = walker->log_value();
      if (depth + 1 < max_len) self(self, depth + 1, child);
      walker->pop();
    }
  };
  sweep(sweep, 0, 0);
  return tables;
}

}  // namespace

MatrixSystem::MatrixSystem(Symbol alphabet_size, std::vector<Factor> factors)
    : alphabet_size_(alphabet_size), factors_(std::move(factors)) {
  if (alphabet_size_ < 2) {
    throw InvalidInputError("alphabet size must be at least 2");
  }
  if (factors_.empty()) {
    throw InvalidInputError("a system needs at least one factor");
  }
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    Factor& f = factors_[j];
    const std::string where = "factor " + std::to_string(j + 1);
    if (f.dim < 1) throw InvalidInputError(where + ": dimension must be >= 1");
    if (!(f.beta > 0.0) || !std::isfinite(f.beta)) {
      throw InvalidInputError(where + ": exponent must be positive and finite");
    }
    check_generator_family(f.generators, alphabet_size_, where);
    if (f.generators.front().rows() != f.dim) {
      throw InvalidInputError(where + ": generators do not match dimension " +
                              std::to_string(f.dim));
    }
  }
}

Matrix MatrixSystem::word_product(std::size_t j, const Word& w) const {
  if (j >= factors_.size()) throw InvalidInputError("factor index out of range");
  if (w.alphabet_size() != alphabet_size_) {
    throw InvalidInputError("word alphabet does not match the system");
  }
  const std::vector<Matrix>& gens = factors_[j].generators;
  Matrix product = gens[w.at(0) - 1];
  for (std::size_t q = 1; q < w.length(); ++q) {
    product = product * gens[w.at(q) - 1];
  }
  return product;
}

double Potential::log_value(const Word& w) const {
  if (w.alphabet_size() != alphabet_size()) {
    throw InvalidInputError("word alphabet does not match the potential");
  }
  auto walker = make_walker(w.length());
  for (std::size_t q = 0; q < w.length(); ++q) walker->push(w.at(q));
  return walker->log_value();
}

GeneralisedPotential::GeneralisedPotential(
    std::shared_ptr<const MatrixSystem> system)
    : system_(std::move(system)) {
  if (!system_) throw InvalidInputError("null system");
}

Symbol GeneralisedPotential::alphabet_size() const {
  return system_->alphabet_size();
}

std::unique_ptr<PotentialWalker> GeneralisedPotential::make_walker(
    std::size_t max_depth) const {
  return std::make_unique<GeneralisedWalker>(*system_, max_depth);
}

double GeneralisedPotential::growth_drop_bound() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (Symbol i = 1; i <= system_->alphabet_size(); ++i) {
    double drop = 0.0;
    for (const Factor& f : system_->factors()) {
      drop += f.beta * std::log(operator_norm(
                           f.generators[static_cast<std::size_t>(i) - 1].inverse()));
    }
    worst = std::max(worst, drop);
  }
  return worst;
}

SingularValuePotential::SingularValuePotential(std::vector<Matrix> generators,
                                               double s)
    : generators_(std::move(generators)), s_(s) {
  if (generators_.size() < 2) {
    throw InvalidInputError("a generator tuple needs at least 2 entries");
  }
  check_generator_family(generators_,
                         static_cast<Symbol>(generators_.size()),
                         "singular value potential");
  if (!(s_ >= 0.0) || !std::isfinite(s_)) {
    throw InvalidInputError("singular value exponent must be >= 0");
  }
}

Symbol SingularValuePotential::alphabet_size() const {
  return static_cast<Symbol>(generators_.size());
}

std::unique_ptr<PotentialWalker> SingularValuePotential::make_walker(
    std::size_t max_depth) const {
  return std::make_unique<SingularValueWalker>(generators_, s_, max_depth);
}

double SingularValuePotential::growth_drop_bound() const {
  return s_ * max_inverse_log_norm(generators_);
}

std::string SingularValuePotential::name() const {
  return "singular-value(s=" + std::to_string(s_) + ")";
}

RestrictedPotential::RestrictedPotential(
    std::shared_ptr<const MatrixSystem> system, SubspaceClass subspace_class)
    : system_(std::move(system)), class_(std::move(subspace_class)) {
  if (!system_) throw InvalidInputError("null system");
  if (class_.members.empty()) {
    throw InvalidInputError("restricted potential needs a nonempty class");
  }
  for (const SubspaceTuple& member : class_.members) {
    if (member.size() != system_->factor_count()) {
      throw InvalidInputError("class tuple size does not match factor count");
    }
    for (std::size_t j = 0; j < member.size(); ++j) {
      if (member[j].ambient_dimension() != system_->factor(j).dim) {
        throw InvalidInputError("class subspace does not live in factor " +
                                std::to_string(j + 1));
      }
      if (member[j].dimension() != class_.members.front()[j].dimension()) {
        throw InvalidInputError("class members have inconsistent dimensions");
      }
    }
  }
}

Symbol RestrictedPotential::alphabet_size() const {
  return system_->alphabet_size();
}

std::unique_ptr<PotentialWalker> RestrictedPotential::make_walker(
    std::size_t max_depth) const {
  return std::make_unique<RestrictedWalker>(*system_, class_, max_depth);
}

double RestrictedPotential::growth_drop_bound() const {
  return GeneralisedPotential(system_).growth_drop_bound();
}

ScalarWeightPotential::ScalarWeightPotential(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw InvalidInputError("scalar weights need at least 2 entries");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidInputError("scalar weights must be positive and finite");
    }
  }
}

Symbol ScalarWeightPotential::alphabet_size() const {
  return static_cast<Symbol>(weights_.size());
}

std::unique_ptr<PotentialWalker> ScalarWeightPotential::make_walker(
    std::size_t max_depth) const {
  return std::make_unique<ScalarWalker>(weights_, max_depth);
}

double ScalarWeightPotential::growth_drop_bound() const {
  return -std::log(*std::min_element(weights_.begin(), weights_.end()));
}

double log_evaluate(const MatrixSystem& system, const Word& w) {
  double total = 0.0;
  for (std::size_t j = 0; j < system.factor_count(); ++j) {
    total += system.factor(j).beta *
             std::log(operator_norm(system.word_product(j, w)));
  }
  return total;
}

double log_evaluate_sv(const std::vector<Matrix>& generators, double s,
                       const Word& w) {
  return SingularValuePotential(generators, s).log_value(w);
}

double log_evaluate_restricted(const MatrixSystem& system,
                               const SubspaceClass& subspace_class,
                               const Word& w) {
  double best = -std::numeric_limits<double>::infinity();
  for (const SubspaceTuple& member : subspace_class.members) {
    double total = 0.0;
    for (std::size_t j = 0; j < system.factor_count(); ++j) {
      total += system.factor(j).beta *
               std::log(operator_norm(system.word_product(j, w) *
                                      member[j].basis()));
    }
    best = std::max(best, total);
  }
  return best;
}

double log_sv_value(const Matrix& a, double s) {
  check_square_finite(a);
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw InvalidInputError("singular value exponent must be >= 0");
  }
  if (s == 0.0) return 0.0;
  const auto sigma = singular_values(a);
  const int d = static_cast<int>(sigma.size());
  if (s >= static_cast<double>(d)) {
    double log_det = 0.0;
    for (double v : sigma) log_det += std::log(v);
    return (s / static_cast<double>(d)) * log_det;
  }
  const int whole = static_cast<int>(std::floor(s));
  const double frac = s - static_cast<double>(whole);
  double value = 0.0;
  for (int i = 0; i < whole; ++i) value += std::log(sigma[static_cast<std::size_t>(i)]);
  if (frac > 0.0) value += frac * std::log(sigma[static_cast<std::size_t>(whole)]);
  return value;
}

double log_sv_via_exterior(const Matrix& a, double s) {
  check_square_finite(a);
  const int d = static_cast<int>(a.rows());
  if (!(s >= 0.0) || s > static_cast<double>(d)) {
    throw InvalidInputError("exterior cross-check needs 0 <= s <= d");
  }
  const int whole = static_cast<int>(std::floor(s));
  const int upper = static_cast<int>(std::ceil(s));
  const double frac = s - static_cast<double>(whole);
  double value = (1.0 - frac) * std::log(operator_norm(exterior_power(a, whole)));
  if (upper != whole) {
    value += frac * std::log(operator_norm(exterior_power(a, upper)));
  }
  return value;
}

SubmultiplicativityReport check_submultiplicative(const Potential& p,
                                                  std::size_t max_combined_length,
                                                  std::uint64_t sample_budget,
                                                  std::uint64_t seed) {
  if (max_combined_length < 2) {
    throw InvalidInputError("need combined length >= 2 to form a pair");
  }
  const Symbol n_symbols = p.alphabet_size();
  SubmultiplicativityReport report;
  report.max_log_violation = -std::numeric_limits<double>::infinity();

  std::uint64_t pair_count = 0;
  bool overflow = false;
  for (std::size_t a = 1; a + 1 <= max_combined_length && !overflow; ++a) {
    for (std::size_t b = 1; a + b <= max_combined_length && !overflow; ++b) {
      const std::uint64_t pairs = word_count(n_symbols, a + b);
      if (pair_count + pairs < pair_count) overflow = true;
      pair_count += pairs;
      if (pair_count > sample_budget) overflow = true;
    }
  }

  auto record = [&](const Word& left, const Word& right, double gap) {
    ++report.pairs_checked;
    if (gap > report.max_log_violation) {
      report.max_log_violation = gap;
      report.worst_left = left;
      report.worst_right = right;
    }
  };

  if (!overflow) {
    report.exhaustive = true;
    const auto tables =
        value_tables(p, max_combined_length, {.max_terms = sample_budget * 2});
    for (std::size_t a = 1; a + 1 <= max_combined_length; ++a) {
      const std::uint64_t left_count = word_count(n_symbols, a);
      for (std::size_t b = 1; a + b <= max_combined_length; ++b) {
        const std::uint64_t right_count = word_count(n_symbols, b);
        for (std::uint64_t li = 0; li < left_count; ++li) {
          for (std::uint64_t ri = 0; ri < right_count; ++ri) {
            const double gap = tables[a + b - 1][li * right_count + ri] -
                               tables[a - 1][li] - tables[b - 1][ri];
            if (gap > report.max_log_violation) {
              record(lex_inverse(li + 1, n_symbols, a),
                     lex_inverse(ri + 1, n_symbols, b), gap);
            } else {
              ++report.pairs_checked;
            }
          }
        }
      }
    }
    return report;
  }

  report.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length_dist(1, max_combined_length - 1);
  std::uniform_int_distribution<Symbol> symbol_dist(1, n_symbols);
  for (std::uint64_t trial = 0; trial < sample_budget; ++trial) {
    const std::size_t a = length_dist(rng);
    std::uniform_int_distribution<std::size_t> rest(1, max_combined_length - a);
    const std::size_t b = rest(rng);
    std::vector<Symbol> left(a), right(b);
    for (Symbol& s : left) s = symbol_dist(rng);
    for (Symbol& s : right) s = symbol_dist(rng);
    const Word wl(std::move(left), n_symbols);
    const Word wr(std::move(right), n_symbols);
    const double gap =
        p.log_value(concat(wl, wr)) - p.log_value(wl) - p.log_value(wr);
    record(wl, wr, gap);
  }
  return report;
}

QuasimultiplicativityEstimate quasimultiplicativity_scan(
    const Potential& p, std::size_t connector_bound, std::size_t window,
    bool exact_length, EnumerationBudget budget) {
  if (window < 1) throw InvalidInputError("window must be >= 1");
  if (exact_length && connector_bound < 1) {
    throw InvalidInputError("exact connector length must be >= 1");
  }
  const Symbol n_symbols = p.alphabet_size();
  const std::size_t max_len = 2 * window + connector_bound;
  const auto tables = value_tables(p, max_len, budget);

  // Guard the scan itself, not only the tables backing it.
  std::uint64_t lookups = 0;
  for (std::size_t a = 1; a <= window; ++a) {
    for (std::size_t b = 1; b <= window; ++b) {
      for (std::size_t t = exact_length ? connector_bound : 0;
           t <= connector_bound; ++t) {
        lookups += word_count(n_symbols, a) * word_count(n_symbols, b) *
                   word_count(n_symbols, t);
      }
    }
  }
  if (lookups > budget.max_terms) {
    throw ResourceLimitError("connector scan of " + std::to_string(lookups) +
                             " evaluations exceeds budget of " +
                             std::to_string(budget.max_terms));
  }

  QuasimultiplicativityEstimate estimate;
  estimate.connector_bound = connector_bound;
  estimate.window = window;
  estimate.connectors_exact_length = exact_length;
  estimate.log_delta = std::numeric_limits<double>::infinity();

  for (std::size_t a = 1; a <= window; ++a) {
    const std::uint64_t left_count = word_count(n_symbols, a);
    for (std::size_t b = 1; b <= window; ++b) {
      const std::uint64_t right_count = word_count(n_symbols, b);
      for (std::uint64_t li = 0; li < left_count; ++li) {
        for (std::uint64_t ri = 0; ri < right_count; ++ri) {
          const double base = tables[a - 1][li] + tables[b - 1][ri];
          double best = -std::numeric_limits<double>::infinity();
          std::size_t best_len = 0;
          std::uint64_t best_rank = 0;
          for (std::size_t t = exact_length ? connector_bound : 0;
               t <= connector_bound; ++t) {
            const std::uint64_t mid_count = t == 0 ? 1 : word_count(n_symbols, t);
            for (std::uint64_t ki = 0; ki < mid_count; ++ki) {
              const std::uint64_t joined =
                  (li * mid_count + ki) * right_count + ri;
              const double ratio = tables[a + t + b - 1][joined] - base;
              if (ratio > best) {
                best = ratio;
                best_len = t;
                best_rank = ki;
              }
            }
          }
          if (best < estimate.log_delta) {
            estimate.log_delta = best;
            estimate.worst_left = lex_inverse(li + 1, n_symbols, a);
            estimate.worst_right = lex_inverse(ri + 1, n_symbols, b);
            if (best_len > 0) {
              estimate.worst_connector =
                  lex_inverse(best_rank + 1, n_symbols, best_len);
            } else {
              estimate.worst_connector.reset();
            }
          }
        }
      }
    }
  }
  estimate.delta = std::exp(estimate.log_delta);
  return estimate;
}

MatrixSystem simple_top_reduction(const MatrixSystem& system,
                                  const std::vector<int>& ells) {
  if (ells.size() != system.factor_count()) {
    throw InvalidInputError("need one exterior order per factor");
  }
  std::vector<Factor> reduced;
  reduced.reserve(system.factor_count());
  for (std::size_t j = 0; j < system.factor_count(); ++j) {
    const Factor& f = system.factor(j);
    const int ell = ells[j];
    if (ell < 1 || ell > f.dim) {
      throw InvalidInputError("exterior order for factor " +
                              std::to_string(j + 1) + " outside [1, dim]");
    }
    Factor g;
    g.beta = f.beta / static_cast<double>(ell);
    g.generators.reserve(f.generators.size());
    for (const Matrix& gen : f.generators) {
      g.generators.push_back(exterior_power(gen, ell));
    }
    g.dim = static_cast<int>(g.generators.front().rows());
    reduced.push_back(std::move(g));
  }
  return MatrixSystem(system.alphabet_size(), std::move(reduced));
}

}  // namespace thermoform
