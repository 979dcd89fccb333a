#include "thermoform/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "thermoform/parallel.hpp"

namespace thermoform {

namespace {

constexpr double kQuietNan = std::numeric_limits<double>::quiet_NaN();

std::size_t slice_prefix_depth(Symbol n_symbols, std::size_t length) {
  std::size_t depth = 0;
  std::uint64_t slices = 1;
  while (depth < length && slices < 64) {
    slices *= n_symbols;
    ++depth;
  }
  return depth;
}

// Walks every length-n word in rank order, calling leaf(rank) with the walker
// positioned on the word.
template <typename Leaf>
void walk_ranks(PotentialWalker& walker, Symbol n_symbols, std::size_t length,
                Leaf&& leaf) {
  std::uint64_t rank = 0;
  auto sweep = [&](auto&& self, std::size_t depth) -> void {
    for (Symbol s = 1; s <= n_symbols; ++s) {
      walker.push(s);
      if (depth + 1 == length) {
        leaf(rank++);
      } else {
        self(self, depth + 1);
      }
      walker.pop();
    }
  };
  sweep(sweep, 0);
}

}  // namespace

GibbsTable::GibbsTable(const Potential& p, std::size_t depth,
                       EnumerationBudget budget)
    : alphabet_size_(p.alphabet_size()), depth_(depth) {
  if (depth == 0) throw InvalidInputError("table depth must be >= 1");
  const std::uint64_t total = word_count(alphabet_size_, depth);
  if (total > budget.max_terms) {
    throw ResourceLimitError("table over " + std::to_string(total) +
                             " words exceeds budget of " +
                             std::to_string(budget.max_terms));
  }
  log_values_.resize(total);

  const std::size_t prefix_depth = slice_prefix_depth(alphabet_size_, depth);
  const std::uint64_t slices = word_count(alphabet_size_, prefix_depth);
  const std::uint64_t slice_width = word_count(alphabet_size_, depth - prefix_depth);
  std::vector<LogSumAccumulator> partial(slices);

  parallel_for_index(slices, [&](std::uint64_t slice) {
    auto walker = p.make_walker(depth);
    const Word prefix = lex_inverse(slice + 1, alphabet_size_, prefix_depth);
    for (std::size_t q = 0; q < prefix_depth; ++q) walker->push(prefix.at(q));
    std::uint64_t rank = slice * slice_width;
    LogSumAccumulator& acc = partial[slice];
    if (prefix_depth == depth) {
      log_values_[rank] = walker->log_value();
      acc.add(log_values_[rank]);
      return;
    }
    auto sweep = [&](auto&& self, std::size_t at) -> void {
      for (Symbol s = 1; s <= alphabet_size_; ++s) {
        walker->push(s);
        if (at + 1 == depth) {
          log_values_[rank] = walker->log_value();
          acc.add(log_values_[rank]);
          ++rank;
        } else {
          self(self, at + 1);
        }
        walker->pop();
      }
    };
    sweep(sweep, prefix_depth);
  });

  LogSumAccumulator normaliser;
  for (const LogSumAccumulator& acc : partial) normaliser.merge(acc);
  log_normaliser_ = normaliser.log_total();
  if (!std::isfinite(log_normaliser_)) {
    throw NumericalFailureError("table normaliser is not finite",
                                log_normaliser_);
  }
}

double GibbsTable::log_mass(const Word& w) const {
  if (w.alphabet_size() != alphabet_size_) {
    throw InvalidInputError("word alphabet does not match the table");
  }
  if (w.length() != depth_) {
    throw InvalidInputError("word length does not match the table depth");
  }
  return log_values_[lex_index(w) - 1] - log_normaliser_;
}

double GibbsTable::mass(const Word& w) const { return std::exp(log_mass(w)); }

double GibbsTable::mass_by_rank(std::uint64_t rank) const {
  return std::exp(log_values_[rank] - log_normaliser_);
}

double entropy_estimate(const GibbsTable& t) {
  double h = 0.0;
  for (std::uint64_t rank = 0; rank < t.log_values().size(); ++rank) {
    const double log_mass = t.log_values()[rank] - t.log_normaliser();
    h -= std::exp(log_mass) * log_mass;
  }
  h /= static_cast<double>(t.depth());
  const double cap = std::log(static_cast<double>(t.alphabet_size()));
  return std::clamp(h, 0.0, cap);
}

ErgodicAverage ergodic_average(const GibbsTable& t, const Potential& q) {
  if (q.alphabet_size() != t.alphabet_size()) {
    throw InvalidInputError("potential alphabet does not match the table");
  }
  auto walker = q.make_walker(t.depth());
  double weighted = 0.0;
  walk_ranks(*walker, t.alphabet_size(), t.depth(), [&](std::uint64_t rank) {
    weighted += t.mass_by_rank(rank) * walker->log_value();
  });

  ErgodicAverage avg;
  avg.value = weighted / static_cast<double>(t.depth());
  avg.variational_residual =
      entropy_estimate(t) + avg.value -
      t.log_normaliser() / static_cast<double>(t.depth());
  return avg;
}

LyapunovSpectrum lyapunov_spectrum(const MatrixSystem& system,
                                   const GibbsTable& t) {
  if (system.alphabet_size() != t.alphabet_size()) {
    throw InvalidInputError("system alphabet does not match the table");
  }
  const std::size_t factors = system.factor_count();
  const std::size_t n = t.depth();

  LyapunovSpectrum spectrum;
  spectrum.exponents.resize(factors);
  for (std::size_t j = 0; j < factors; ++j) {
    spectrum.exponents[j].assign(static_cast<std::size_t>(system.factor(j).dim), 0.0);
  }
  spectrum.spectral_radius_variant.assign(factors, 0.0);

  // Prefix products per factor; level q holds the product of the first q
  // symbols of the current branch.
  std::vector<std::vector<Matrix>> prefix(factors);
  for (std::size_t j = 0; j < factors; ++j) {
    const int d = system.factor(j).dim;
    prefix[j].assign(n + 1, Matrix::Identity(d, d));
  }

  std::uint64_t rank = 0;
  auto sweep = [&](auto&& self, std::size_t depth) -> void {
    for (Symbol s = 1; s <= system.alphabet_size(); ++s) {
      for (std::size_t j = 0; j < factors; ++j) {
        prefix[j][depth + 1].noalias() =
            prefix[j][depth] *
            system.factor(j).generators[static_cast<std::size_t>(s) - 1];
      }
      if (depth + 1 == n) {
        const double mass = t.mass_by_rank(rank++);
        for (std::size_t j = 0; j < factors; ++j) {
          const std::vector<double> sigma = singular_values(prefix[j][n]);
          for (std::size_t i = 0; i < sigma.size(); ++i) {
            spectrum.exponents[j][i] += mass * std::log(sigma[i]);
          }
          spectrum.spectral_radius_variant[j] +=
              mass * std::log(spectral_radius(prefix[j][n]));
        }
      } else {
        self(self, depth + 1);
      }
    }
  };
  sweep(sweep, 0);

  for (std::size_t j = 0; j < factors; ++j) {
    for (double& lambda : spectrum.exponents[j]) lambda /= static_cast<double>(n);
    spectrum.spectral_radius_variant[j] /= static_cast<double>(n);
  }
  return spectrum;
}

std::vector<int> leading_block_sizes(const LyapunovSpectrum& spectrum,
                                     double gap_threshold) {
  std::vector<int> blocks;
  blocks.reserve(spectrum.exponents.size());
  for (const std::vector<double>& lambda : spectrum.exponents) {
    int block = 0;
    if (lambda.size() == 1) {
      block = 1;
    } else {
      for (std::size_t ell = 0; ell + 1 < lambda.size(); ++ell) {
        if (lambda[ell] - lambda[ell + 1] > gap_threshold) {
          block = static_cast<int>(ell + 1);
          break;
        }
      }
    }
    blocks.push_back(block);
  }
  return blocks;
}

QuasimultiplicativityEstimate psi_mixing_precondition(
    const Potential& p, std::size_t connector_length, std::size_t window,
    EnumerationBudget budget) {
  if (connector_length == 0) {
    throw InvalidInputError("the mixing pre-condition needs connector length >= 1");
  }
  return quasimultiplicativity_scan(p, connector_length, window,
                                    /*exact_length=*/true, budget);
}

CorrelationScan correlation_ratio_scan(const Potential& p,
                                       const std::vector<std::size_t>& gaps,
                                       std::size_t window,
                                       EnumerationBudget budget) {
  if (window == 0) throw InvalidInputError("window must be >= 1");
  const Symbol n_symbols = p.alphabet_size();

  std::map<std::size_t, GibbsTable> tables;
  auto table_for = [&](std::size_t depth) -> const GibbsTable& {
    auto it = tables.find(depth);
    if (it == tables.end()) {
      it = tables.emplace(depth, GibbsTable(p, depth, budget)).first;
    }
    return it->second;
  };

  CorrelationScan scan;
  scan.reports.reserve(gaps.size());
  for (const std::size_t gap : gaps) {
    MixingReport report;
    report.gap = gap;
    report.window = window;
    for (std::size_t a = 1; a <= window; ++a) {
      for (std::size_t b = 1; b <= window; ++b) {
        const GibbsTable& table = table_for(a + gap + b);
        const std::uint64_t lefts = word_count(n_symbols, a);
        const std::uint64_t rights = word_count(n_symbols, b);
        const std::uint64_t suffix = word_count(n_symbols, gap + b);

        std::vector<double> joint(lefts * rights, 0.0);
        std::vector<double> left_mass(lefts, 0.0);
        std::vector<double> right_mass(rights, 0.0);
        const std::uint64_t total = word_count(n_symbols, a + gap + b);
        for (std::uint64_t rank = 0; rank < total; ++rank) {
          const std::uint64_t li = rank / suffix;
          const std::uint64_t ri = rank % rights;
          const double m = table.mass_by_rank(rank);
          joint[li * rights + ri] += m;
          left_mass[li] += m;
          right_mass[ri] += m;
        }

        for (std::uint64_t li = 0; li < lefts; ++li) {
          for (std::uint64_t ri = 0; ri < rights; ++ri) {
            const double product = left_mass[li] * right_mass[ri];
            if (!(product > 0.0)) continue;
            const double deviation =
                std::abs(joint[li * rights + ri] / product - 1.0);
            if (deviation > report.sup_deviation ||
                !report.witness_left.has_value()) {
              report.sup_deviation = std::max(report.sup_deviation, deviation);
              report.witness_left = lex_inverse(li + 1, n_symbols, a);
              report.witness_right = lex_inverse(ri + 1, n_symbols, b);
            }
          }
        }
      }
    }
    scan.reports.push_back(std::move(report));
  }

  for (std::size_t modulus = 2; modulus <= 6; ++modulus) {
    ParitySummary summary;
    summary.modulus = modulus;
    summary.max_deviation_per_residue.assign(modulus, kQuietNan);
    for (const MixingReport& report : scan.reports) {
      double& cell = summary.max_deviation_per_residue[report.gap % modulus];
      if (std::isnan(cell) || report.sup_deviation > cell) {
        cell = report.sup_deviation;
      }
    }
    scan.parities.push_back(std::move(summary));
  }
  return scan;
}

EpsilonIndependence epsilon_independence(const GibbsTable& t,
                                         std::size_t past_length,
                                         std::size_t gap,
                                         std::size_t future_length) {
  if (past_length == 0 || future_length == 0) {
    throw InvalidInputError("past and future lengths must be >= 1");
  }
  if (past_length + gap + future_length != t.depth()) {
    throw InvalidInputError("split lengths must sum to the table depth");
  }
  const Symbol n_symbols = t.alphabet_size();
  const std::uint64_t pasts = word_count(n_symbols, past_length);
  const std::uint64_t futures = word_count(n_symbols, future_length);
  const std::uint64_t suffix = word_count(n_symbols, gap + future_length);

  std::vector<double> joint(pasts * futures, 0.0);
  std::vector<double> past_mass(pasts, 0.0);
  std::vector<double> future_mass(futures, 0.0);
  for (std::uint64_t rank = 0; rank < t.log_values().size(); ++rank) {
    const std::uint64_t qi = rank / suffix;
    const std::uint64_t pi = rank % futures;
    const double m = t.mass_by_rank(rank);
    joint[qi * futures + pi] += m;
    past_mass[qi] += m;
    future_mass[pi] += m;
  }

  EpsilonIndependence result;
  std::vector<double> score(pasts, 0.0);
  for (std::uint64_t qi = 0; qi < pasts; ++qi) {
    if (!(past_mass[qi] > 0.0)) continue;
    for (std::uint64_t pi = 0; pi < futures; ++pi) {
      const double deviation =
          std::abs(joint[qi * futures + pi] / past_mass[qi] - future_mass[pi]);
      if (deviation > score[qi]) score[qi] = deviation;
      if (deviation > result.full_max || !result.worst_past.has_value()) {
        result.full_max = std::max(result.full_max, deviation);
        result.worst_past = lex_inverse(qi + 1, n_symbols, past_length);
        result.worst_future = lex_inverse(pi + 1, n_symbols, future_length);
      }
    }
  }

  // Sweep the retained set: discard the worst-scoring cells first and charge
  // their mass against the threshold.
  std::vector<std::uint64_t> order(pasts);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint64_t x, std::uint64_t y) {
    return score[x] > score[y];
  });
  result.epsilon_hat = result.full_max;
  double discarded = 0.0;
  for (std::uint64_t cut = 0; cut <= pasts; ++cut) {
    const double retained = cut < pasts ? score[order[cut]] : 0.0;
    result.epsilon_hat = std::min(result.epsilon_hat, std::max(retained, discarded));
    if (cut < pasts) discarded += past_mass[order[cut]];
  }
  return result;
}

TotalErgodicityReport total_ergodicity_diagnostic(
    std::shared_ptr<const MatrixSystem> system,
    const TotalErgodicityConfig& config) {
  if (!system) throw InvalidInputError("null system");
  std::vector<int> dims = config.dims;
  if (dims.empty()) dims.assign(system->factor_count(), 1);

  TotalErgodicityReport report;
  ClassSearchResult found = find_finite_orbit_classes(*system, dims, config.search);

  std::string obstructions;
  for (SubspaceClass& cls : found.classes) {
    ClassSummary summary;
    summary.report = classify(cls, *system);
    summary.cls = std::move(cls);
    if (summary.report.transitive && summary.report.period > 1) {
      report.verdict = ErgodicityVerdict::kPeriodObstruction;
      if (!obstructions.empty()) obstructions += "; ";
      obstructions += "class of size " + std::to_string(summary.cls.size()) +
                      " has period " + std::to_string(summary.report.period);
    }
    report.classes.push_back(std::move(summary));
  }

  if (!config.gaps.empty()) {
    GeneralisedPotential potential(system);
    report.scan = correlation_ratio_scan(potential, config.gaps, config.window,
                                         config.budget);
  }

  if (report.verdict == ErgodicityVerdict::kPeriodObstruction) {
    report.note = "period obstruction: " + obstructions;
  } else {
    report.note =
        "no period obstruction among the classes found at this search depth; "
        "this does not certify total ergodicity";
  }
  return report;
}

MarginalConsistency marginal_consistency(const Potential& p,
                                         const GibbsTable& fine,
                                         const GibbsTable& coarse) {
  if (fine.alphabet_size() != coarse.alphabet_size() ||
      fine.alphabet_size() != p.alphabet_size()) {
    throw InvalidInputError("tables and potential must share one alphabet");
  }
  if (fine.depth() != coarse.depth() + 1) {
    throw InvalidInputError("fine table must be one level deeper");
  }
  const std::uint64_t n_symbols = fine.alphabet_size();

  MarginalConsistency result;
  result.max_log_ratio = -std::numeric_limits<double>::infinity();
  for (std::uint64_t rank = 0; rank < coarse.log_values().size(); ++rank) {
    double marginal = 0.0;
    for (std::uint64_t s = 0; s < n_symbols; ++s) {
      marginal += fine.mass_by_rank(rank * n_symbols + s);
    }
    result.max_log_ratio = std::max(
        result.max_log_ratio, std::log(marginal / coarse.mass_by_rank(rank)));
  }
  result.log_bound = coarse.log_normaliser() + partition_sum(p, 1) -
                     fine.log_normaliser();
  return result;
}

}  // namespace thermoform
