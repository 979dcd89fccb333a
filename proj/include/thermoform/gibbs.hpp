#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thermoform/classes.hpp"
#include "thermoform/potentials.hpp"
#include "thermoform/pressure.hpp"

namespace thermoform {

// Depth-n cylinder approximation of an equilibrium state: the length-n word w
// carries mass exp(log p(w) - log Z_n). These are Gibbs-normalized
// approximations, exact only up to the bounded distortion constant of the
// true state.
class GibbsTable {
 public:
  GibbsTable(const Potential& p, std::size_t depth,
             EnumerationBudget budget = {});

  Symbol alphabet_size() const { return alphabet_size_; }
  std::size_t depth() const { return depth_; }
  double log_normaliser() const { return log_normaliser_; }

  // Raw log potential values indexed by lexicographic rank (lex_index - 1).
  const std::vector<double>& log_values() const { return log_values_; }

  double log_mass(const Word& w) const;
  double mass(const Word& w) const;
  double mass_by_rank(std::uint64_t rank) const;

 private:
  Symbol alphabet_size_;
  std::size_t depth_;
  std::vector<double> log_values_;
  double log_normaliser_;
};

// Shannon entropy of the table's word distribution divided by the depth,
// clamped into [0, log N].
double entropy_estimate(const GibbsTable& t);

struct ErgodicAverage {
  double value = 0.0;  // (1/n) sum of mass(w) log q(w)
  // entropy + value - log_normaliser/depth; near zero when q is the table's
  // own potential, by the variational identity.
  double variational_residual = 0.0;
};

ErgodicAverage ergodic_average(const GibbsTable& t, const Potential& q);

struct LyapunovSpectrum {
  // exponents[j][i] = (1/n) sum of mass(w) log sigma_{i+1} of the factor-j
  // word product; non-increasing in i.
  std::vector<std::vector<double>> exponents;
  // (1/n) sum of mass(w) log spectral_radius; approaches the top exponent.
  std::vector<double> spectral_radius_variant;
};

LyapunovSpectrum lyapunov_spectrum(const MatrixSystem& system,
                                   const GibbsTable& t);

// Factor dimensions whose leading exponent block is separated from the rest
// by more than gap_threshold; one entry per factor, 0 when no gap is found.
std::vector<int> leading_block_sizes(const LyapunovSpectrum& spectrum,
                                     double gap_threshold = 1e-3);

// Fixed connector length variant of the quasimultiplicativity scan: the
// measured quantity is the mixing pre-condition constant
// min over pairs of max_{|k| = m} p(ikj) / (p(i) p(j)).
QuasimultiplicativityEstimate psi_mixing_precondition(
    const Potential& p, std::size_t connector_length, std::size_t window,
    EnumerationBudget budget = {});

struct MixingReport {
  std::size_t gap = 0;
  std::size_t window = 0;
  // max over words |i|, |j| <= window of |m(i & shifted j)/(m(i)m(j)) - 1|,
  // all three masses read from one common fixed-depth table per pair shape.
  double sup_deviation = 0.0;
  std::optional<Word> witness_left;
  std::optional<Word> witness_right;
};

struct ParitySummary {
  std::size_t modulus = 0;
  // max deviation over scanned gaps in each residue class; NaN when the scan
  // covered no gap with that residue.
  std::vector<double> max_deviation_per_residue;
};

struct CorrelationScan {
  std::vector<MixingReport> reports;        // one per requested gap
  std::vector<ParitySummary> parities;      // moduli 2..6
};

CorrelationScan correlation_ratio_scan(const Potential& p,
                                       const std::vector<std::size_t>& gaps,
                                       std::size_t window,
                                       EnumerationBudget budget = {});

struct EpsilonIndependence {
  // max over positive-mass past cells Q of max over future cells P of
  // |m(P & Q)/m(Q) - m(P)|.
  double full_max = 0.0;
  // min over retained-set sweeps of max(retained score, discarded mass):
  // the smallest eps for which dropping past cells of total mass <= eps
  // leaves only cells with score <= eps.
  double epsilon_hat = 0.0;
  std::optional<Word> worst_past;
  std::optional<Word> worst_future;
};

EpsilonIndependence epsilon_independence(const GibbsTable& t,
                                         std::size_t past_length,
                                         std::size_t gap,
                                         std::size_t future_length);

enum class ErgodicityVerdict {
  kNoObstructionFound,  // not a proof of total ergodicity
  kPeriodObstruction,
};

struct ClassSummary {
  SubspaceClass cls;
  ClassificationReport report;
};

struct TotalErgodicityConfig {
  std::vector<int> dims;  // per-factor member dimension; empty means all 1
  ClassSearchConfig search;
  std::vector<std::size_t> gaps;  // empty skips the correlation scan
  std::size_t window = 2;
  EnumerationBudget budget;
};

struct TotalErgodicityReport {
  ErgodicityVerdict verdict = ErgodicityVerdict::kNoObstructionFound;
  std::vector<ClassSummary> classes;
  std::optional<CorrelationScan> scan;
  std::string note;
};

TotalErgodicityReport total_ergodicity_diagnostic(
    std::shared_ptr<const MatrixSystem> system,
    const TotalErgodicityConfig& config = {});

struct MarginalConsistency {
  double max_log_ratio = 0.0;  // max over coarse words of log(marginal/mass)
  double log_bound = 0.0;      // a_n + a_1 - a_{n+1}, nonnegative up to noise
};

// Compares the last-symbol marginal of a depth-(n+1) table against the
// depth-n table of the same potential.
MarginalConsistency marginal_consistency(const Potential& p,
                                         const GibbsTable& fine,
                                         const GibbsTable& coarse);

}  // namespace thermoform
