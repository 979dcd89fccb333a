#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "thermoform/gibbs.hpp"

using namespace thermoform;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::shared_ptr<const MatrixSystem> nottot_system() {
  Factor first;
  first.dim = 2;
  first.beta = 1.0;
  first.generators = {mat2(2, 0, 0, 1), mat2(0, 1, 1, 0)};
  Factor second;
  second.dim = 2;
  second.beta = 1.0;
  second.generators = {mat2(0, 1, 1, 0), mat2(1, 0, 0, 2)};
  return std::make_shared<MatrixSystem>(2, std::vector<Factor>{first, second});
}

std::shared_ptr<const MatrixSystem> recoded_system() {
  Factor first;
  first.dim = 2;
  first.beta = 1.0;
  first.generators = {mat2(4, 0, 0, 1), mat2(0, 2, 1, 0), mat2(0, 1, 2, 0),
                      mat2(1, 0, 0, 1)};
  Factor second;
  second.dim = 2;
  second.beta = 1.0;
  second.generators = {mat2(1, 0, 0, 1), mat2(0, 2, 1, 0), mat2(0, 1, 2, 0),
                       mat2(1, 0, 0, 4)};
  return std::make_shared<MatrixSystem>(4, std::vector<Factor>{first, second});
}

double total_mass(const GibbsTable& t) {
  double sum = 0.0;
  for (std::uint64_t rank = 0; rank < t.log_values().size(); ++rank) {
    sum += t.mass_by_rank(rank);
  }
  return sum;
}

// Joint cylinder mass of (left, right) separated by the gap, summed straight
// from the table: an independent route to the scanned correlation ratios.
double joint_mass(const GibbsTable& t, const Word& left, std::size_t gap,
                  const Word& right) {
  double sum = 0.0;
  const std::size_t tail = gap + right.length();
  REQUIRE(t.depth() == left.length() + tail);
  for_each_word(t.alphabet_size(), t.depth(), [&](const std::vector<Symbol>& s) {
    for (std::size_t q = 0; q < left.length(); ++q) {
      if (s[q] != left.at(q)) return;
    }
    const std::size_t offset = left.length() + gap;
    for (std::size_t q = 0; q < right.length(); ++q) {
      if (s[offset + q] != right.at(q)) return;
    }
    sum += t.mass(Word(s, t.alphabet_size()));
  });
  return sum;
}

double prefix_mass(const GibbsTable& t, const Word& prefix) {
  double sum = 0.0;
  for_each_word(t.alphabet_size(), t.depth(), [&](const std::vector<Symbol>& s) {
    for (std::size_t q = 0; q < prefix.length(); ++q) {
      if (s[q] != prefix.at(q)) return;
    }
    sum += t.mass(Word(s, t.alphabet_size()));
  });
  return sum;
}

double suffix_mass(const GibbsTable& t, const Word& suffix) {
  double sum = 0.0;
  const std::size_t offset = t.depth() - suffix.length();
  for_each_word(t.alphabet_size(), t.depth(), [&](const std::vector<Symbol>& s) {
    for (std::size_t q = 0; q < suffix.length(); ++q) {
      if (s[offset + q] != suffix.at(q)) return;
    }
    sum += t.mass(Word(s, t.alphabet_size()));
  });
  return sum;
}

}  // namespace

TEST_CASE("uniform weights give uniform cylinder masses") {
  ScalarWeightPotential ones({1.0, 1.0});
  GibbsTable t(ones, 3);
  CHECK(t.alphabet_size() == 2);
  CHECK(t.depth() == 3);
  for (std::uint64_t rank = 0; rank < 8; ++rank) {
    CHECK(t.mass_by_rank(rank) == doctest::Approx(0.125).epsilon(1e-14));
  }
  CHECK(total_mass(t) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("product weights give product masses in rank order") {
  const double p = 0.3;
  ScalarWeightPotential bernoulli({p, 1.0 - p});
  GibbsTable t(bernoulli, 2);
  CHECK(t.mass_by_rank(0) == doctest::Approx(p * p).epsilon(1e-14));
  CHECK(t.mass_by_rank(1) == doctest::Approx(p * (1 - p)).epsilon(1e-14));
  CHECK(t.mass_by_rank(2) == doctest::Approx((1 - p) * p).epsilon(1e-14));
  CHECK(t.mass_by_rank(3) == doctest::Approx((1 - p) * (1 - p)).epsilon(1e-14));
  CHECK(t.mass(parse_word("12", 2)) ==
        doctest::Approx(p * (1 - p)).epsilon(1e-14));
  CHECK(t.log_mass(parse_word("11", 2)) ==
        doctest::Approx(2.0 * std::log(p)).epsilon(1e-12));
}

TEST_CASE("matrix potential masses normalise") {
  GeneralisedPotential phi(nottot_system());
  GibbsTable depth1(phi, 1);
  CHECK(depth1.mass(parse_word("1", 2)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(depth1.mass(parse_word("2", 2)) == doctest::Approx(0.5).epsilon(1e-14));

  GibbsTable depth6(phi, 6);
  CHECK(total_mass(depth6) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::uint64_t rank = 0; rank < 64; ++rank) {
    CHECK(depth6.mass_by_rank(rank) > 0.0);
  }

  CHECK_THROWS_AS(GibbsTable(phi, 0), InvalidInputError);
  CHECK_THROWS_AS(GibbsTable(phi, 26, EnumerationBudget{1000}),
                  ResourceLimitError);
  CHECK_THROWS_AS(depth6.mass(parse_word("11", 2)), InvalidInputError);
}

TEST_CASE("entropy closed forms") {
  ScalarWeightPotential ones({1.0, 1.0});
  CHECK(entropy_estimate(GibbsTable(ones, 5)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Scaling all weights shifts the normaliser, not the distribution.
  ScalarWeightPotential scaled({5.0, 5.0});
  CHECK(entropy_estimate(GibbsTable(scaled, 5)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const double p = 0.3;
  ScalarWeightPotential bernoulli({p, 1.0 - p});
  const double binary = -p * std::log(p) - (1 - p) * std::log(1 - p);
  CHECK(entropy_estimate(GibbsTable(bernoulli, 4)) ==
        doctest::Approx(binary).epsilon(1e-12));

  ScalarWeightPotential lopsided({1.0, 1e-9});
  const double tiny = entropy_estimate(GibbsTable(lopsided, 3));
  CHECK(tiny >= 0.0);
  CHECK(tiny < 1e-6);
}

TEST_CASE("ergodic averages and the variational identity") {
  ScalarWeightPotential ones({1.0, 1.0});
  GibbsTable uniform(ones, 4);
  ScalarWeightPotential doubled({2.0, 2.0});
  CHECK(ergodic_average(uniform, doubled).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Against the table's own potential the residual vanishes identically:
  // entropy + average = log normaliser / depth.
  const double p = 0.3;
  ScalarWeightPotential bernoulli({p, 1.0 - p});
  GibbsTable bt(bernoulli, 5);
  CHECK(std::abs(ergodic_average(bt, bernoulli).variational_residual) <=
        1e-12);

  GeneralisedPotential phi(nottot_system());
  GibbsTable mt(phi, 6);
  CHECK(std::abs(ergodic_average(mt, phi).variational_residual) <= 1e-12);
}

TEST_CASE("exponents of a shared diagonal family") {
  Factor f;
  f.dim = 2;
  f.beta = 1.0;
  f.generators = {mat2(2, 0, 0, 1), mat2(2, 0, 0, 1)};
  const MatrixSystem system(2, {f});
  GeneralisedPotential phi(std::make_shared<MatrixSystem>(system));
  GibbsTable t(phi, 5);
  const auto spectrum = lyapunov_spectrum(system, t);
  REQUIRE(spectrum.exponents.size() == 1);
  REQUIRE(spectrum.exponents[0].size() == 2);
  CHECK(spectrum.exponents[0][0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(spectrum.exponents[0][1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spectrum.spectral_radius_variant[0] ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(leading_block_sizes(spectrum) == std::vector<int>{1});
}

TEST_CASE("conformal factors have flat spectra") {
  const double c = 3.0;
  const auto rot = [&](double t) {
    return mat2(c * std::cos(t), -c * std::sin(t), c * std::sin(t),
                c * std::cos(t));
  };
  Factor f;
  f.dim = 2;
  f.beta = 1.0;
  f.generators = {rot(1.0), rot(std::sqrt(2.0))};
  const auto system = std::make_shared<MatrixSystem>(2, std::vector<Factor>{f});
  GeneralisedPotential phi(system);
  GibbsTable t(phi, 4);
  const auto spectrum = lyapunov_spectrum(*system, t);
  CHECK(spectrum.exponents[0][0] == doctest::Approx(std::log(c)).epsilon(1e-12));
  CHECK(spectrum.exponents[0][1] == doctest::Approx(std::log(c)).epsilon(1e-12));
  // No gap anywhere: the block size comes back 0.
  CHECK(leading_block_sizes(spectrum) == std::vector<int>{0});
}

TEST_CASE("spectrum shape on the swap system") {
  const auto system = nottot_system();
  GeneralisedPotential phi(system);
  GibbsTable t(phi, 8);
  const auto spectrum = lyapunov_spectrum(*system, t);
  REQUIRE(spectrum.exponents.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    REQUIRE(spectrum.exponents[j].size() == 2);
    CHECK(spectrum.exponents[j][0] >= spectrum.exponents[j][1]);
    CHECK(spectrum.spectral_radius_variant[j] <=
          spectrum.exponents[j][0] + 1e-12);
  }
}

TEST_CASE("conjugation moves finite-depth exponents by at most the condition") {
  const auto system = nottot_system();
  const Matrix m = mat2(1.0, 0.3, 0.0, 1.0);
  const Matrix m_inv = mat2(1.0, -0.3, 0.0, 1.0);
  Factor conj;
  conj.dim = 2;
  conj.beta = 1.0;
  for (const Matrix& g : system->factor(0).generators) {
    conj.generators.push_back(m * g * m_inv);
  }
  const auto conj_system =
      std::make_shared<MatrixSystem>(2, std::vector<Factor>{conj});
  Factor plain;
  plain.dim = 2;
  plain.beta = 1.0;
  plain.generators = system->factor(0).generators;
  const auto plain_system =
      std::make_shared<MatrixSystem>(2, std::vector<Factor>{plain});

  const double log_cond = std::log(operator_norm(m) * operator_norm(m_inv));
  for (std::size_t n : {4, 8}) {
    GeneralisedPotential phi(plain_system);
    GibbsTable t(phi, n);
    const double top = lyapunov_spectrum(*plain_system, t).exponents[0][0];
    // Weighting by the conjugated system's own table keeps the comparison
    // within one distortion constant of the original exponent.
    GeneralisedPotential psi(conj_system);
    GibbsTable s(psi, n);
    const double conj_top = lyapunov_spectrum(*conj_system, s).exponents[0][0];
    CHECK(std::abs(conj_top - top) <=
          2.0 * log_cond / static_cast<double>(n) + 1e-12);
  }
}

TEST_CASE("fixed-length connectors on exactly multiplicative weights") {
  ScalarWeightPotential ones({1.0, 1.0});
  const auto estimate = psi_mixing_precondition(ones, 2, 2);
  CHECK(estimate.log_delta == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(estimate.connectors_exact_length);
  CHECK(estimate.connector_bound == 2);
  CHECK_THROWS_AS(psi_mixing_precondition(ones, 0, 2), InvalidInputError);
}

TEST_CASE("fixed-length connectors on the swap system stay positive") {
  GeneralisedPotential phi(nottot_system());
  for (std::size_t m : {1, 2, 3}) {
    const auto estimate = psi_mixing_precondition(phi, m, 2);
    CHECK(estimate.delta > 0.0);
    // The witnesses reproduce the reported ratio.
    REQUIRE(estimate.worst_left.has_value());
    REQUIRE(estimate.worst_right.has_value());
    REQUIRE(estimate.worst_connector.has_value());
    const Word glued = concat(concat(*estimate.worst_left, *estimate.worst_connector),
                              *estimate.worst_right);
    const double ratio = phi.log_value(glued) -
                         phi.log_value(*estimate.worst_left) -
                         phi.log_value(*estimate.worst_right);
    CHECK(std::abs(ratio - estimate.log_delta) <= 1e-12);
  }
}

TEST_CASE("product measures show no correlation at any gap") {
  ScalarWeightPotential bernoulli({0.3, 0.7});
  const auto scan = correlation_ratio_scan(bernoulli, {1, 2, 3}, 2);
  REQUIRE(scan.reports.size() == 3);
  for (const auto& report : scan.reports) {
    CHECK(report.sup_deviation <= 1e-12);
  }
}

TEST_CASE("the swap system correlates more strongly at odd gaps") {
  GeneralisedPotential phi(nottot_system());
  const auto scan = correlation_ratio_scan(phi, {1, 2, 3, 4, 5, 6}, 2);
  REQUIRE(scan.reports.size() == 6);
  const auto dev = [&](std::size_t gap) {
    return scan.reports[gap - 1].sup_deviation;
  };
  CHECK(dev(1) == doctest::Approx(0.2708).epsilon(2e-3));
  CHECK(dev(1) > dev(2));
  CHECK(dev(3) > dev(4));
  CHECK(dev(5) > dev(6));

  // Independent recomputation of the reported worst pair at gap 1.
  const auto& worst = scan.reports[0];
  REQUIRE(worst.witness_left.has_value());
  REQUIRE(worst.witness_right.has_value());
  const Word& left = *worst.witness_left;
  const Word& right = *worst.witness_right;
  GibbsTable table(phi, left.length() + 1 + right.length());
  const double joint = joint_mass(table, left, 1, right);
  const double product =
      prefix_mass(table, left) * suffix_mass(table, right);
  CHECK(std::abs(joint / product - 1.0) ==
        doctest::Approx(worst.sup_deviation).epsilon(1e-9));

  // Parity summaries fold the same numbers by residue.
  REQUIRE_FALSE(scan.parities.empty());
  const auto& mod2 = scan.parities[0];
  CHECK(mod2.modulus == 2);
  REQUIRE(mod2.max_deviation_per_residue.size() == 2);
  CHECK(mod2.max_deviation_per_residue[1] == doctest::Approx(dev(1)));
  CHECK(mod2.max_deviation_per_residue[0] == doctest::Approx(dev(2)));
}

TEST_CASE("parity residues without scanned gaps come back NaN") {
  ScalarWeightPotential ones({1.0, 1.0});
  const auto scan = correlation_ratio_scan(ones, {1, 2}, 1);
  const ParitySummary* mod5 = nullptr;
  for (const auto& parity : scan.parities) {
    if (parity.modulus == 5) mod5 = &parity;
  }
  REQUIRE(mod5 != nullptr);
  CHECK(std::isnan(mod5->max_deviation_per_residue[3]));
  CHECK_FALSE(std::isnan(mod5->max_deviation_per_residue[1]));
}

TEST_CASE("independence splits on a product measure are flat") {
  ScalarWeightPotential bernoulli({0.3, 0.7});
  GibbsTable t(bernoulli, 6);
  const auto report = epsilon_independence(t, 2, 2, 2);
  CHECK(report.full_max <= 1e-12);
  CHECK(report.epsilon_hat <= 1e-12);
}

TEST_CASE("independence defect of the swap system is witnessed") {
  GeneralisedPotential phi(nottot_system());
  GibbsTable t(phi, 8);
  const auto report = epsilon_independence(t, 3, 2, 3);
  CHECK(report.full_max > 0.01);
  CHECK(report.epsilon_hat <= report.full_max + 1e-15);
  REQUIRE(report.worst_past.has_value());
  REQUIRE(report.worst_future.has_value());

  // Recompute the worst cell's score straight from the table.
  const Word& past = *report.worst_past;
  const Word& future = *report.worst_future;
  const double joint = joint_mass(t, past, 2, future);
  const double past_mass = prefix_mass(t, past);
  const double future_mass = suffix_mass(t, future);
  CHECK(std::abs(joint / past_mass - future_mass) ==
        doctest::Approx(report.full_max).epsilon(1e-9));

  CHECK_THROWS_AS(epsilon_independence(t, 3, 2, 4), InvalidInputError);
  CHECK_THROWS_AS(epsilon_independence(t, 0, 4, 4), InvalidInputError);
}

TEST_CASE("marginals respect the submultiplicative envelope") {
  GeneralisedPotential phi(nottot_system());
  GibbsTable fine(phi, 7);
  GibbsTable coarse(phi, 6);
  const auto report = marginal_consistency(phi, fine, coarse);
  CHECK(report.log_bound >= -1e-12);
  CHECK(report.max_log_ratio <= report.log_bound + 1e-9);
  // Constant-symbol words extend multiplicatively here, so the envelope is
  // attained exactly.
  CHECK(report.max_log_ratio == doctest::Approx(report.log_bound).epsilon(1e-9));

  CHECK_THROWS_AS(marginal_consistency(phi, coarse, fine), InvalidInputError);
}

TEST_CASE("diagnostic flags the period two obstruction") {
  const auto report = total_ergodicity_diagnostic(nottot_system());
  CHECK(report.verdict == ErgodicityVerdict::kPeriodObstruction);
  REQUIRE_FALSE(report.classes.empty());
  CHECK(report.classes[0].report.period == 2);
  CHECK_FALSE(report.note.empty());
  CHECK_FALSE(report.scan.has_value());
}

TEST_CASE("diagnostic passes the recoded system with a caveat") {
  TotalErgodicityConfig config;
  config.gaps = {1, 2};
  const auto report = total_ergodicity_diagnostic(recoded_system(), config);
  CHECK(report.verdict == ErgodicityVerdict::kNoObstructionFound);
  CHECK(report.classes.size() == 2);
  REQUIRE(report.scan.has_value());
  CHECK(report.scan->reports.size() == 2);
  CHECK_FALSE(report.note.empty());
}

TEST_CASE("one dimensional systems carry no subspace obstruction") {
  Factor f;
  f.dim = 1;
  f.beta = 1.0;
  f.generators = {2.0 * Matrix::Identity(1, 1), 3.0 * Matrix::Identity(1, 1)};
  const auto system = std::make_shared<MatrixSystem>(2, std::vector<Factor>{f});
  const auto report = total_ergodicity_diagnostic(system);
  CHECK(report.verdict == ErgodicityVerdict::kNoObstructionFound);
}
