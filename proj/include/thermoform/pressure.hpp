#pragma once

#include <optional>
#include <vector>

#include "thermoform/potentials.hpp"

namespace thermoform {

// Streaming log-sum-exp: tracks the running maximum and the sum of
// exponentials relative to it, so equal-weight streams stay exact.
class LogSumAccumulator {
 public:
  void add(double log_term);
  void merge(const LogSumAccumulator& other);
  double log_total() const;
  bool empty() const { return sum_ == 0.0; }

 private:
  double max_log_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;  // sum of exp(term - max_log_)
};

// a_n = log sum over |w| = n of p(w). The word space is cut along a prefix
// depth that depends only on the alphabet and n, each slice is accumulated in
// lexicographic order and the slices are merged in that same fixed order, so
// the result does not depend on how many worker threads ran.
double partition_sum(const Potential& p, std::size_t length,
                     EnumerationBudget budget = {});

struct PressureEstimate {
  std::vector<double> log_partition_sums;  // a_1 ... a_depth
  double upper = 0.0;                      // min_n a_n / n, certified
  std::optional<double> lower;             // absent when the delta estimate is 0
  bool lower_is_heuristic = true;          // delta came from a finite window
  double point = 0.0;                      // a_depth / depth
  std::size_t depth = 0;
  std::size_t connector_bound = 0;         // m in the lower-bound formula
  std::size_t window = 0;                  // L used to estimate delta
  double log_delta = 0.0;                  // measured (or supplied) log delta
  double growth_drop = 0.0;                // kappa: single-symbol extension drop

  double width() const { return lower ? upper - *lower : std::numeric_limits<double>::infinity(); }
};

// Pressure bracket at finite depth. The upper bound min_n a_n / n is exact
// for submultiplicative potentials. The lower bound chains the measured
// connector constant delta through
//   a_{2n+m} >= 2 a_n + log delta - log(m+1) - m kappa,
// giving P >= (a_n + log delta - log(m+1) - m kappa) / (n + m) for every n;
// it is flagged heuristic unless the caller supplies a proven log delta.
// See doc/pressure_lower_bound.md for the derivation.
PressureEstimate pressure(const Potential& p, std::size_t depth,
                          std::size_t connector_bound = 2,
                          std::size_t window = 2,
                          EnumerationBudget budget = {},
                          std::optional<double> proven_log_delta = {});

struct DimensionEstimate {
  double value = 0.0;          // midpoint of the final bisection bracket
  double bracket_low = 0.0;    // s with nonnegative pressure point estimate
  double bracket_high = 0.0;   // s with negative pressure point estimate
  std::size_t iterations = 0;
  bool certified = false;      // endpoint pressure brackets have definite signs
  double pressure_low = 0.0;   // point estimate at bracket_low
  double pressure_high = 0.0;  // point estimate at bracket_high
};

// Unique zero of s -> pressure of the singular value potential at exponent s,
// located by bisection on the depth-n point estimate. Requires every
// generator to be a strict contraction. The initial bracket [0, 2d] is
// widened to log N / -log(max norm) when the pressure at 2d is still
// positive, which restores a sign change without extra assumptions.
DimensionEstimate affinity_dimension(const std::vector<Matrix>& generators,
                                     std::size_t depth, double tol = 1e-6,
                                     std::size_t connector_bound = 0,
                                     std::size_t window = 2,
                                     EnumerationBudget budget = {});

}  // namespace thermoform
