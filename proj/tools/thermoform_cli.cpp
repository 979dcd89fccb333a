// Command line front end: loads a matrix system from a description file or
// the built-in catalog, runs one analysis, and emits a text or records
// report. Records mode prints unique key<TAB>value lines and omits wall
// time so identical flags reproduce identical bytes.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thermoform/catalog.hpp"
#include "thermoform/classes.hpp"
#include "thermoform/gibbs.hpp"
#include "thermoform/pressure.hpp"
#include "thermoform/system_io.hpp"

namespace {

using namespace thermoform;

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

class Report {
 public:
  explicit Report(bool records) : records_(records) {}

  void add(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
  }
  void add(const std::string& key, const char* value) {
    rows_.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, std::size_t value) {
    add(key, std::to_string(value));
  }
  void add(const std::string& key, bool value) {
    add(key, std::string(value ? "yes" : "no"));
  }
  bool records() const { return records_; }

  void print() const {
    for (const auto& [key, value] : rows_) {
      if (records_) {
        std::cout << key << "\t" << value << "\n";
      } else {
        std::cout << key << ": " << value << "\n";
      }
    }
  }

 private:
  bool records_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

struct SourceOptions {
  std::string system_path;
  std::string catalog_key;
  long long seed = -1;  // overrides the seed parameter of random entries
};

struct LoadedSystem {
  std::string name;
  std::shared_ptr<const MatrixSystem> system;
  std::vector<SubspaceTuple> seeds;
  std::vector<std::string> notes;
};

LoadedSystem load_system(const SourceOptions& source) {
  if (source.system_path.empty() == source.catalog_key.empty()) {
    throw InvalidInputError("pass exactly one of --system and --catalog");
  }
  LoadedSystem loaded;
  if (!source.system_path.empty()) {
    ParsedSystem parsed = parse_system_file(source.system_path);
    loaded.name = source.system_path;
    loaded.system = parsed.system;
    loaded.seeds = seed_tuples(parsed);
    loaded.notes = std::move(parsed.notes);
    return loaded;
  }
  std::string key = source.catalog_key;
  if (source.seed >= 0) {
    if (key.substr(0, 6) != "random") {
      throw InvalidInputError("--seed only applies to the random catalog entry");
    }
    if (key.find('(') == std::string::npos) {
      key += "(seed=" + std::to_string(source.seed) + ")";
    } else {
      key.insert(key.size() - 1, ",seed=" + std::to_string(source.seed));
    }
  }
  CatalogEntry entry = build_catalog_entry(key);
  loaded.name = entry.name;
  loaded.system = entry.system;
  for (const KnownFact& fact : entry.facts) {
    loaded.notes.push_back(fact.statement + " [" + fact.basis + "]");
  }
  return loaded;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInputError(std::string("cannot parse ") + what + " entry \"" +
                              item + "\"");
    }
  }
  if (values.empty()) {
    throw InvalidInputError(std::string(what) + " list is empty");
  }
  return values;
}

struct PotentialOptions {
  double sv_exponent = -1.0;  // >= 0 selects the singular value potential
  int factor = 1;
  int restrict_class = 0;  // 1-based index into the sorted class search output
  std::string class_dims;
  std::size_t cap = 256;
  std::size_t product_length = 3;
};

void add_potential_flags(CLI::App* cmd, PotentialOptions* options) {
  cmd->add_option("--s", options->sv_exponent,
                  "singular value profile exponent; selects the one-factor "
                  "singular value potential");
  cmd->add_option("--factor", options->factor,
                  "factor used by --s (default 1)");
  cmd->add_option("--restrict", options->restrict_class,
                  "restrict the potential to the k-th discovered orbit class "
                  "(1-based)");
  cmd->add_option("--class-dims", options->class_dims,
                  "comma list of member dimensions per factor for --restrict "
                  "(default all 1)");
  cmd->add_option("--cap", options->cap, "orbit size cap for --restrict");
}

std::vector<int> class_dims_or_default(const std::string& text,
                                       const MatrixSystem& system) {
  if (text.empty()) {
    return std::vector<int>(system.factor_count(), 1);
  }
  return parse_int_list(text, "--class-dims");
}

SubspaceClass find_class(const LoadedSystem& loaded,
                         const PotentialOptions& options, Report& report) {
  ClassSearchConfig config;
  config.cap = options.cap;
  config.product_length = options.product_length;
  config.extra_seeds = loaded.seeds;
  const std::vector<int> dims =
      class_dims_or_default(options.class_dims, *loaded.system);
  ClassSearchResult found = find_finite_orbit_classes(*loaded.system, dims, config);
  report.add("classes-found", found.classes.size());
  if (options.restrict_class < 1 ||
      static_cast<std::size_t>(options.restrict_class) > found.classes.size()) {
    throw InvalidInputError("--restrict index " +
                            std::to_string(options.restrict_class) +
                            " outside the " +
                            std::to_string(found.classes.size()) +
                            " classes found");
  }
  return found.classes[static_cast<std::size_t>(options.restrict_class) - 1];
}

std::unique_ptr<Potential> make_potential(const LoadedSystem& loaded,
                                          const PotentialOptions& options,
                                          Report& report) {
  if (options.sv_exponent >= 0.0) {
    const auto j = static_cast<std::size_t>(options.factor - 1);
    if (options.factor < 1 || j >= loaded.system->factor_count()) {
      throw InvalidInputError("--factor outside the system's factor count");
    }
    report.add("potential", "singular-value(s=" + format_double(options.sv_exponent) +
                                ") on factor " + std::to_string(options.factor));
    return std::make_unique<SingularValuePotential>(
        loaded.system->factor(j).generators, options.sv_exponent);
  }
  if (options.restrict_class > 0) {
    SubspaceClass cls = find_class(loaded, options, report);
    report.add("potential", "restricted to class " +
                                std::to_string(options.restrict_class) +
                                " of size " + std::to_string(cls.size()));
    return std::make_unique<RestrictedPotential>(loaded.system, std::move(cls));
  }
  report.add("potential", "generalised");
  return std::make_unique<GeneralisedPotential>(loaded.system);
}

std::string proximality_name(Proximality status) {
  switch (status) {
    case Proximality::kProximal:
      return "proximal";
    case Proximality::kNotProximal:
      return "not-proximal";
    default:
      return "undetermined";
  }
}

void emit_notes(const LoadedSystem& loaded, Report& report) {
  std::size_t counter = 0;
  for (const std::string& note : loaded.notes) {
    report.add("note." + std::to_string(++counter), note);
  }
}

int run_pressure(const LoadedSystem& loaded, const PotentialOptions& popts,
                 std::size_t depth, std::size_t connector, std::size_t window,
                 Report& report) {
  auto potential = make_potential(loaded, popts, report);
  const PressureEstimate estimate =
      pressure(*potential, depth, connector, window);
  for (std::size_t n = 1; n <= estimate.log_partition_sums.size(); ++n) {
    report.add("log-partition-sum." + std::to_string(n),
               estimate.log_partition_sums[n - 1]);
  }
  report.add("upper", estimate.upper);
  report.add("upper-kind", std::string("certified-bound"));
  if (estimate.lower.has_value()) {
    report.add("lower", *estimate.lower);
    report.add("lower-kind", std::string(estimate.lower_is_heuristic
                                             ? "heuristic"
                                             : "certified-bound"));
  } else {
    report.add("lower", std::string("none"));
    report.add("lower-kind", std::string("heuristic"));
  }
  report.add("point", estimate.point);
  report.add("point-kind", std::string("point-estimate"));
  report.add("bracket-width", estimate.width());
  report.add("log-delta", estimate.log_delta);
  report.add("growth-drop", estimate.growth_drop);
  return 0;
}

int run_dimension(const LoadedSystem& loaded, int factor, std::size_t depth,
                  double tol, std::size_t connector, std::size_t window,
                  Report& report) {
  const auto j = static_cast<std::size_t>(factor - 1);
  if (factor < 1 || j >= loaded.system->factor_count()) {
    throw InvalidInputError("--factor outside the system's factor count");
  }
  const DimensionEstimate estimate =
      affinity_dimension(loaded.system->factor(j).generators, depth, tol,
                         connector, window);
  report.add("dimension", estimate.value);
  report.add("dimension-kind", std::string("point-estimate"));
  report.add("bracket-low", estimate.bracket_low);
  report.add("bracket-high", estimate.bracket_high);
  report.add("iterations", estimate.iterations);
  report.add("certified", estimate.certified);
  report.add("pressure-at-bracket-low", estimate.pressure_low);
  report.add("pressure-at-bracket-high", estimate.pressure_high);
  return 0;
}

int run_classes(const LoadedSystem& loaded, const std::string& class_dims,
                std::size_t cap, std::size_t product_length, std::size_t depth,
                Report& report) {
  ClassSearchConfig config;
  config.cap = cap;
  config.product_length = product_length;
  config.extra_seeds = loaded.seeds;
  const std::vector<int> dims = class_dims_or_default(class_dims, *loaded.system);
  ClassSearchResult found = find_finite_orbit_classes(*loaded.system, dims, config);
  report.add("classes-found", found.classes.size());
  report.add("seeds-tried", found.seeds_tried);
  report.add("orbit-overflows", found.overflows);
  report.add("artifact-rejects", found.artifact_rejects);

  // Rank classes by the depth-n point estimate of their restricted pressure.
  std::vector<std::pair<double, std::size_t>> ranking;
  for (std::size_t c = 0; c < found.classes.size(); ++c) {
    const std::string prefix = "class." + std::to_string(c + 1) + ".";
    const SubspaceClass& cls = found.classes[c];
    const ClassificationReport classified = classify(cls, *loaded.system);
    report.add(prefix + "size", cls.size());
    report.add(prefix + "equivariant", classified.equivariant);
    report.add(prefix + "transitive", classified.transitive);
    report.add(prefix + "period", classified.period);
    report.add(prefix + "primitive", classified.primitive);
    if (classified.primitive) {
      report.add(prefix + "primitivity-exponent", classified.primitivity_exponent);
    }
    RestrictedPotential restricted(loaded.system, cls);
    const double point =
        partition_sum(restricted, depth) / static_cast<double>(depth);
    report.add(prefix + "restricted-pressure-point", point);
    ranking.emplace_back(point, c + 1);
  }
  std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::string order;
  for (const auto& [point, index] : ranking) {
    if (!order.empty()) order += " > ";
    order += std::to_string(index);
  }
  if (!order.empty()) {
    report.add("ranking-by-restricted-point", order);
    report.add("ranking-kind",
               std::string("point-estimate ranking, not a certified ordering"));
  }
  return 0;
}

int run_proximal(const LoadedSystem& loaded, const PotentialOptions& popts,
                 std::size_t max_length, double tol, Report& report) {
  std::optional<SubspaceClass> within;
  if (popts.restrict_class > 0) {
    within = find_class(loaded, popts, report);
    report.add("restricted-to-class-size", within->size());
  }
  const ProximalWordSearch search = find_simultaneous_proximal_word(
      *loaded.system, max_length, within ? &*within : nullptr, tol);
  report.add("searched-to-length", search.searched_to);
  if (!search.word.has_value()) {
    report.add("word", std::string("not-found"));
    return 0;
  }
  report.add("word", to_string(*search.word));
  for (std::size_t j = 0; j < search.factor_reports.size(); ++j) {
    const ProximalityReport& factor_report = search.factor_reports[j];
    const std::string prefix = "factor." + std::to_string(j + 1) + ".";
    report.add(prefix + "status", proximality_name(factor_report.status));
    report.add(prefix + "modulus-ratio", factor_report.modulus_ratio);
    report.add(prefix + "gap-ratio", factor_report.gap_ratio);
    report.add(prefix + "leading-modulus", factor_report.leading_modulus);
    report.add(prefix + "certificate",
               factor_report.certified_by == ProximalityCertificate::kSpectralGap
                   ? std::string("norm-vs-square-norm gap")
                   : std::string("eigen-decomposition"));
  }
  return 0;
}

int run_mixing(const LoadedSystem& loaded, const PotentialOptions& popts,
               const std::string& gaps_text, std::size_t window,
               std::size_t connector, const std::string& split_text,
               Report& report) {
  auto potential = make_potential(loaded, popts, report);

  const std::vector<int> gap_ints = parse_int_list(gaps_text, "--gaps");
  std::vector<std::size_t> gaps;
  for (int g : gap_ints) {
    if (g < 0) throw InvalidInputError("gaps must be >= 0");
    gaps.push_back(static_cast<std::size_t>(g));
  }
  const CorrelationScan scan = correlation_ratio_scan(*potential, gaps, window);
  for (const MixingReport& mixing : scan.reports) {
    const std::string prefix = "gap." + std::to_string(mixing.gap) + ".";
    report.add(prefix + "sup-deviation", mixing.sup_deviation);
    if (mixing.witness_left.has_value()) {
      report.add(prefix + "witness-left", to_string(*mixing.witness_left));
      report.add(prefix + "witness-right", to_string(*mixing.witness_right));
    }
  }
  for (const ParitySummary& parity : scan.parities) {
    for (std::size_t residue = 0; residue < parity.modulus; ++residue) {
      const double value = parity.max_deviation_per_residue[residue];
      if (std::isnan(value)) continue;
      report.add("parity.mod" + std::to_string(parity.modulus) + ".residue" +
                     std::to_string(residue),
                 value);
    }
  }

  if (connector >= 1) {
    const QuasimultiplicativityEstimate estimate =
        psi_mixing_precondition(*potential, connector, window);
    report.add("psi-precondition.delta", estimate.delta);
    report.add("psi-precondition.log-delta", estimate.log_delta);
    report.add("psi-precondition.connector-length", estimate.connector_bound);
    if (estimate.worst_left.has_value()) {
      report.add("psi-precondition.witness-left", to_string(*estimate.worst_left));
      report.add("psi-precondition.witness-right", to_string(*estimate.worst_right));
    }
  }

  if (!split_text.empty()) {
    const std::vector<int> split = parse_int_list(split_text, "--split");
    if (split.size() != 3 || split[0] < 1 || split[1] < 0 || split[2] < 1) {
      throw InvalidInputError("--split needs past,gap,future with past,future >= 1");
    }
    const auto a = static_cast<std::size_t>(split[0]);
    const auto g = static_cast<std::size_t>(split[1]);
    const auto b = static_cast<std::size_t>(split[2]);
    const GibbsTable table(*potential, a + g + b);
    const EpsilonIndependence eps = epsilon_independence(table, a, g, b);
    report.add("independence.full-max", eps.full_max);
    report.add("independence.epsilon-hat", eps.epsilon_hat);
    if (eps.worst_past.has_value()) {
      report.add("independence.worst-past", to_string(*eps.worst_past));
      report.add("independence.worst-future", to_string(*eps.worst_future));
    }
  }
  return 0;
}

int run_gibbs(const LoadedSystem& loaded, const PotentialOptions& popts,
              std::size_t depth, Report& report) {
  auto potential = make_potential(loaded, popts, report);
  const GibbsTable table(*potential, depth);
  report.add("depth", table.depth());
  report.add("log-normaliser", table.log_normaliser());
  report.add("entropy", entropy_estimate(table));
  const ErgodicAverage average = ergodic_average(table, *potential);
  report.add("ergodic-average", average.value);
  report.add("variational-residual", average.variational_residual);
  report.add("mass-kind",
             std::string("Gibbs-normalized approximation (point-estimate)"));

  const LyapunovSpectrum spectrum = lyapunov_spectrum(*loaded.system, table);
  for (std::size_t j = 0; j < spectrum.exponents.size(); ++j) {
    const std::string prefix = "factor." + std::to_string(j + 1) + ".";
    for (std::size_t i = 0; i < spectrum.exponents[j].size(); ++i) {
      report.add(prefix + "lyapunov." + std::to_string(i + 1),
                 spectrum.exponents[j][i]);
    }
    report.add(prefix + "spectral-radius-average",
               spectrum.spectral_radius_variant[j]);
  }
  const std::vector<int> blocks = leading_block_sizes(spectrum);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    report.add("factor." + std::to_string(j + 1) + ".leading-block",
               std::to_string(blocks[j]));
  }

  if (depth >= 2) {
    const GibbsTable coarse(*potential, depth - 1);
    const MarginalConsistency marginal =
        marginal_consistency(*potential, table, coarse);
    report.add("marginal.max-log-ratio", marginal.max_log_ratio);
    report.add("marginal.log-bound", marginal.log_bound);
  }
  return 0;
}

int run_recode(const LoadedSystem& loaded, std::size_t blocks) {
  const MatrixSystem recoded = recode_system(*loaded.system, blocks);
  std::cout << export_system_text(recoded);
  return 0;
}

int run_reduce(const LoadedSystem& loaded, const std::string& ells_text,
               std::size_t depth) {
  std::vector<int> ells;
  if (!ells_text.empty()) {
    ells = parse_int_list(ells_text, "--ells");
  } else {
    GeneralisedPotential potential(loaded.system);
    const GibbsTable table(potential, depth);
    ells = leading_block_sizes(lyapunov_spectrum(*loaded.system, table));
    for (std::size_t j = 0; j < ells.size(); ++j) {
      if (ells[j] == 0) {
        throw InvalidInputError(
            "no leading Lyapunov block found for factor " +
            std::to_string(j + 1) + " at depth " + std::to_string(depth) +
            "; pass --ells explicitly");
      }
    }
  }
  const MatrixSystem reduced = simple_top_reduction(*loaded.system, ells);
  std::cout << export_system_text(reduced);
  return 0;
}

int run_catalog(const std::string& action, const std::string& key) {
  if (action == "list") {
    for (const std::string& name : catalog_keys()) std::cout << name << "\n";
    return 0;
  }
  if (action == "export") {
    if (key.empty()) throw InvalidInputError("catalog export needs a key");
    const CatalogEntry entry = build_catalog_entry(key);
    std::cout << "# " << entry.name << "\n";
    for (const KnownFact& fact : entry.facts) {
      std::cout << "# " << fact.statement << " [" << fact.basis << "]\n";
    }
    std::cout << export_system_text(*entry.system);
    return 0;
  }
  throw InvalidInputError("catalog action must be list or export");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite-depth pressure, dimension, orbit-class, proximality, and "
      "mixing computations for families of invertible matrix tuples"};
  app.require_subcommand(1);

  SourceOptions source;
  PotentialOptions popts;
  std::string format = "text";
  std::size_t depth = 8;
  std::size_t connector = 2;
  std::size_t window = 2;
  double tol = 1e-8;
  std::size_t blocks = 2;
  std::string gaps = "1,2,3,4,5,6";
  std::string split;
  std::string ells;
  std::string class_dims;
  std::size_t cap = 256;
  std::size_t product_length = 3;
  std::string catalog_action;
  std::string catalog_key;

  auto add_common = [&](CLI::App* cmd, bool needs_system) {
    if (needs_system) {
      cmd->add_option("--system", source.system_path,
                      "system description file");
      cmd->add_option("--catalog", source.catalog_key,
                      "built-in catalog key, e.g. nottot or similarity(n=3,r=0.5)");
      cmd->add_option("--seed", source.seed,
                      "seed override for the random catalog entry");
    }
    cmd->add_option("--format", format, "text or records")
        ->check(CLI::IsMember({"text", "records"}));
  };

  CLI::App* cmd_pressure =
      app.add_subcommand("pressure", "partition sums and a pressure bracket");
  add_common(cmd_pressure, true);
  add_potential_flags(cmd_pressure, &popts);
  cmd_pressure->add_option("--depth", depth, "max word length (default 8)");
  cmd_pressure->add_option("--connector", connector,
                           "connector length bound in the lower bound");
  cmd_pressure->add_option("--window", window, "pair window for the delta scan");

  CLI::App* cmd_dimension = app.add_subcommand(
      "dimension", "affinity dimension of one factor's generators");
  add_common(cmd_dimension, true);
  cmd_dimension->add_option("--factor", popts.factor, "factor index (default 1)");
  cmd_dimension->add_option("--depth", depth, "pressure depth per probe");
  cmd_dimension->add_option("--tol", tol, "bisection width target");
  cmd_dimension->add_option("--connector", connector,
                            "connector bound for endpoint certification");
  cmd_dimension->add_option("--window", window, "pair window for the delta scan");

  CLI::App* cmd_classes = app.add_subcommand(
      "classes", "finite orbit classes, classification, and ranking");
  add_common(cmd_classes, true);
  cmd_classes->add_option("--class-dims", class_dims,
                          "comma list of member dimensions (default all 1)");
  cmd_classes->add_option("--cap", cap, "orbit size cap (default 256)");
  cmd_classes->add_option("--product-length", product_length,
                          "eigenvector seed product length (default 3)");
  cmd_classes->add_option("--depth", depth,
                          "depth of the restricted pressure point estimates");

  CLI::App* cmd_proximal = app.add_subcommand(
      "proximal", "shortest word proximal in every factor at once");
  add_common(cmd_proximal, true);
  add_potential_flags(cmd_proximal, &popts);
  cmd_proximal->add_option("--depth", depth, "max word length to search");
  cmd_proximal->add_option("--tol", tol, "spectral gap tolerance");

  CLI::App* cmd_mixing = app.add_subcommand(
      "mixing", "correlation ratio scan, mixing pre-condition, independence");
  add_common(cmd_mixing, true);
  add_potential_flags(cmd_mixing, &popts);
  cmd_mixing->add_option("--gaps", gaps, "comma list of gaps (default 1..6)");
  cmd_mixing->add_option("--window", window, "max word length per side");
  cmd_mixing->add_option("--connector", connector,
                         "fixed connector length for the pre-condition; 0 skips");
  cmd_mixing->add_option("--split", split,
                         "past,gap,future lengths for the independence check");

  CLI::App* cmd_gibbs = app.add_subcommand(
      "gibbs", "cylinder table, entropy, ergodic average, Lyapunov spectrum");
  add_common(cmd_gibbs, true);
  add_potential_flags(cmd_gibbs, &popts);
  cmd_gibbs->add_option("--depth", depth, "table depth (default 8)");

  CLI::App* cmd_recode = app.add_subcommand(
      "recode", "emit the block recoding as a description file");
  add_common(cmd_recode, true);
  cmd_recode->add_option("--blocks", blocks, "block length (default 2)");

  CLI::App* cmd_reduce = app.add_subcommand(
      "reduce", "emit the exterior power reduction as a description file");
  add_common(cmd_reduce, true);
  cmd_reduce->add_option("--ells", ells,
                         "comma list of leading block sizes per factor");
  cmd_reduce->add_option("--depth", depth,
                         "table depth for the automatic block estimate");

  CLI::App* cmd_catalog =
      app.add_subcommand("catalog", "list or export built-in systems");
  cmd_catalog->add_option("action", catalog_action, "list or export")
      ->required();
  cmd_catalog->add_option("key", catalog_key, "catalog key for export");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  Report report(format == "records");
  try {
    int status = 0;
    if (cmd_catalog->parsed()) {
      return run_catalog(catalog_action, catalog_key);
    }
    const LoadedSystem loaded = load_system(source);
    if (cmd_recode->parsed()) return run_recode(loaded, blocks);
    if (cmd_reduce->parsed()) return run_reduce(loaded, ells, depth);

    report.add("command", app.get_subcommands().front()->get_name());
    report.add("system", loaded.name);
    emit_notes(loaded, report);
    if (cmd_pressure->parsed()) {
      status = run_pressure(loaded, popts, depth, connector, window, report);
    } else if (cmd_dimension->parsed()) {
      status = run_dimension(loaded, popts.factor, depth, tol, connector,
                             window, report);
    } else if (cmd_classes->parsed()) {
      status = run_classes(loaded, class_dims, cap, product_length, depth, report);
    } else if (cmd_proximal->parsed()) {
      status = run_proximal(loaded, popts, depth, tol, report);
    } else if (cmd_mixing->parsed()) {
      status = run_mixing(loaded, popts, gaps, window, connector, split, report);
    } else if (cmd_gibbs->parsed()) {
      status = run_gibbs(loaded, popts, depth, report);
    }
    if (!report.records()) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - started);
      report.add("wall-time-ms", static_cast<std::size_t>(elapsed.count()));
    }
    report.print();
    return status;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const thermoform::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
