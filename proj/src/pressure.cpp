#include "thermoform/pressure.hpp"

#include <algorithm>
#include <cmath>

#include "thermoform/parallel.hpp"

namespace thermoform {

void LogSumAccumulator::add(double log_term) {
  if (log_term == -std::numeric_limits<double>::infinity()) return;
  if (sum_ == 0.0) {
    max_log_ = log_term;
    sum_ = 1.0;
    return;
  }
  if (log_term <= max_log_) {
    sum_ += std::exp(log_term - max_log_);
  } else {
    sum_ = sum_ * std::exp(max_log_ - log_term) + 1.0;
    max_log_ = log_term;
  }
}

void LogSumAccumulator::merge(const LogSumAccumulator& other) {
  if (other.sum_ == 0.0) return;
  if (sum_ == 0.0) {
    *this = other;
    return;
  }
  if (other.max_log_ <= max_log_) {
    sum_ += other.sum_ * std::exp(other.max_log_ - max_log_);
  } else {
    sum_ = sum_ * std::exp(max_log_ - other.max_log_) + other.sum_;
    max_log_ = other.max_log_;
  }
}

double LogSumAccumulator::log_total() const {
  if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
  return max_log_ + std::log(sum_);
}

namespace {

// Slice prefix depth: a function of the alphabet and length only, never of
// the worker count, so the reduction tree has a fixed shape.
std::size_t slice_prefix_depth(Symbol n_symbols, std::size_t length) {
  std::size_t depth = 0;
  std::uint64_t slices = 1;
  while (depth < length && slices < 64) {
    slices *= n_symbols;
    ++depth;
  }
  return depth;
}

}  // namespace

double partition_sum(const Potential& p, std::size_t length,
                     EnumerationBudget budget) {
  if (length == 0) throw InvalidInputError("partition sums need length >= 1");
  const Symbol n_symbols = p.alphabet_size();
  const std::uint64_t total = word_count(n_symbols, length);
  if (total > budget.max_terms) {
    throw ResourceLimitError("partition sum over " + std::to_string(total) +
                             " words exceeds budget of " +
                             std::to_string(budget.max_terms));
  }

  const std::size_t prefix_depth = slice_prefix_depth(n_symbols, length);
  const std::uint64_t slices = word_count(n_symbols, prefix_depth);
  std::vector<LogSumAccumulator> partial(slices);

  parallel_for_index(slices, [&](std::uint64_t slice) {
    auto walker = p.make_walker(length);
    const Word prefix = lex_inverse(slice + 1, n_symbols, prefix_depth);
    for (std::size_t q = 0; q < prefix_depth; ++q) walker->push(prefix.at(q));
    LogSumAccumulator& acc = partial[slice];
    if (prefix_depth == length) {
      acc.add(walker->log_value());
      return;
    }
    auto sweep = [&](auto&& self, std::size_t depth) -> void {
      for (Symbol s = 1; s <= n_symbols; ++s) {
        walker->push(s);
        if (depth + 1 == length) {
          acc.add(walker->log_value());
        } else {
          self(self, depth + 1);
        }
        walker->pop();
      }
    };
    sweep(sweep, prefix_depth);
  });

  LogSumAccumulator result;
  for (const LogSumAccumulator& acc : partial) result.merge(acc);
  return result.log_total();
}

PressureEstimate pressure(const Potential& p, std::size_t depth,
                          std::size_t connector_bound, std::size_t window,
                          EnumerationBudget budget,
                          std::optional<double> proven_log_delta) {
  if (depth < 2) throw InvalidInputError("pressure needs depth >= 2");

  PressureEstimate estimate;
  estimate.depth = depth;
  estimate.connector_bound = connector_bound;
  estimate.window = window;
  estimate.log_partition_sums.reserve(depth);
  estimate.upper = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= depth; ++n) {
    const double a_n = partition_sum(p, n, budget);
    estimate.log_partition_sums.push_back(a_n);
    estimate.upper = std::min(estimate.upper, a_n / static_cast<double>(n));
  }
  estimate.point = estimate.log_partition_sums.back() / static_cast<double>(depth);

  if (proven_log_delta) {
    estimate.log_delta = *proven_log_delta;
    estimate.lower_is_heuristic = false;
  } else {
    estimate.log_delta =
        estimate_quasimultiplicativity(p, connector_bound, window, budget)
            .log_delta;
    estimate.lower_is_heuristic = true;
  }
  estimate.growth_drop = p.growth_drop_bound();

  if (estimate.log_delta > -std::numeric_limits<double>::infinity()) {
    const double m = static_cast<double>(connector_bound);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= depth; ++n) {
      const double candidate =
          (estimate.log_partition_sums[n - 1] + estimate.log_delta -
           std::log1p(m) - m * estimate.growth_drop) /
          (static_cast<double>(n) + m);
      best = std::max(best, candidate);
    }
    estimate.lower = best;
  }
  return estimate;
}

DimensionEstimate affinity_dimension(const std::vector<Matrix>& generators,
                                     std::size_t depth, double tol,
                                     std::size_t connector_bound,
                                     std::size_t window,
                                     EnumerationBudget budget) {
  if (depth < 2) throw InvalidInputError("dimension estimates need depth >= 2");
  if (!(tol > 0.0)) throw InvalidInputError("tolerance must be positive");
  if (generators.size() < 2) {
    throw InvalidInputError("a generator tuple needs at least 2 entries");
  }
  double max_norm = 0.0;
  for (const Matrix& g : generators) max_norm = std::max(max_norm, operator_norm(g));
  if (!(max_norm < 1.0)) {
    throw InvalidInputError(
        "affinity dimension requires strictly contracting generators");
  }

  const int d = static_cast<int>(generators.front().rows());
  const double n_symbols = static_cast<double>(generators.size());
  auto point_pressure = [&](double s) {
    return partition_sum(SingularValuePotential(generators, s), depth, budget) /
           static_cast<double>(depth);
  };

  DimensionEstimate estimate;
  estimate.bracket_low = 0.0;
  estimate.bracket_high = 2.0 * d;
  estimate.pressure_low = point_pressure(0.0);  // log N, positive
  estimate.pressure_high = point_pressure(estimate.bracket_high);
  if (estimate.pressure_high > 0.0) {
    // Every value is at most N^n * max_norm^(n s), so this s is past the zero.
    estimate.bracket_high = 1.01 * std::log(n_symbols) / -std::log(max_norm) + 0.1;
    estimate.pressure_high = point_pressure(estimate.bracket_high);
  }

  while (estimate.bracket_high - estimate.bracket_low > tol &&
         estimate.iterations < 64) {
    const double mid = 0.5 * (estimate.bracket_low + estimate.bracket_high);
    const double value = point_pressure(mid);
    if (value > 0.0) {
      estimate.bracket_low = mid;
      estimate.pressure_low = value;
    } else {
      estimate.bracket_high = mid;
      estimate.pressure_high = value;
    }
    ++estimate.iterations;
  }
  estimate.value = 0.5 * (estimate.bracket_low + estimate.bracket_high);

  const PressureEstimate at_low =
      pressure(SingularValuePotential(generators, estimate.bracket_low), depth,
               connector_bound, window, budget);
  const PressureEstimate at_high =
      pressure(SingularValuePotential(generators, estimate.bracket_high), depth,
               connector_bound, window, budget);
  estimate.certified =
      at_high.upper <= 0.0 && at_low.lower.has_value() && *at_low.lower >= 0.0;
  return estimate;
}

}  // namespace thermoform
