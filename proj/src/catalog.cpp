#include "thermoform/catalog.hpp"

#include <cmath>
#include <random>

#include "thermoform/multilinear.hpp"

namespace thermoform {

namespace {

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known,
                    const std::string& name) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw InvalidInputError("catalog entry \"" + name +
                              "\" does not take parameter \"" + key + "\"");
    }
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

int int_param(const std::map<std::string, double>& params,
              const std::string& key, int fallback, int lo, int hi,
              const std::string& name) {
  const double raw = param_or(params, key, fallback);
  const int value = static_cast<int>(std::llround(raw));
  if (static_cast<double>(value) != raw || value < lo || value > hi) {
    throw InvalidInputError("catalog entry \"" + name + "\": parameter \"" +
                            key + "\" must be an integer in [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            "]");
  }
  return value;
}

CatalogEntry build_nottot(const std::map<std::string, double>& params) {
  reject_unknown(params, {"alpha", "beta"}, "nottot");
  const double alpha = param_or(params, "alpha", 1.0);
  const double beta = param_or(params, "beta", 1.0);
  const Matrix swap = mat2(0, 1, 1, 0);

  Factor a{2, alpha, {mat2(2, 0, 0, 1), swap}};
  Factor b{2, beta, {swap, mat2(1, 0, 0, 2)}};
  CatalogEntry entry;
  entry.name = "nottot(alpha=" + std::to_string(alpha) +
               ",beta=" + std::to_string(beta) + ")";
  entry.system = std::make_shared<const MatrixSystem>(
      Symbol{2}, std::vector<Factor>{std::move(a), std::move(b)});
  entry.facts = {
      {"both factor pairs are irreducible", "algebra span check"},
      {"the coordinate-axis pairs form one orbit class of size 4, transitive "
       "with period 2, not primitive",
       "orbit enumeration"},
      {"the shortest word proximal in both factors is 1122",
       "exhaustive search to length 4"},
      {"the induced word distribution is not mixing across odd gaps",
       "correlation scan"},
  };
  return entry;
}

CatalogEntry build_nottot_recoded(const std::map<std::string, double>& params) {
  reject_unknown(params, {"alpha", "beta"}, "nottot-recoded");
  const double alpha = param_or(params, "alpha", 1.0);
  const double beta = param_or(params, "beta", 1.0);

  Factor a{2,
           alpha,
           {mat2(4, 0, 0, 1), mat2(0, 2, 1, 0), mat2(0, 1, 2, 0),
            mat2(1, 0, 0, 1)}};
  Factor b{2,
           beta,
           {mat2(1, 0, 0, 1), mat2(0, 2, 1, 0), mat2(0, 1, 2, 0),
            mat2(1, 0, 0, 4)}};
  CatalogEntry entry;
  entry.name = "nottot-recoded(alpha=" + std::to_string(alpha) +
               ",beta=" + std::to_string(beta) + ")";
  entry.system = std::make_shared<const MatrixSystem>(
      Symbol{4}, std::vector<Factor>{std::move(a), std::move(b)});
  entry.facts = {
      {"equals the two-block recoding of nottot, generator by generator",
       "construction"},
      {"the size-4 axis-pair class splits into two invariant classes of size "
       "2, each transitive and primitive with exponent 1",
       "orbit enumeration"},
  };
  return entry;
}

CatalogEntry build_similarity(const std::map<std::string, double>& params) {
  reject_unknown(params, {"n", "r", "d"}, "similarity");
  const int n = int_param(params, "n", 3, 2, 64, "similarity");
  const int d = int_param(params, "d", 2, 1, 8, "similarity");
  const double r = param_or(params, "r", 0.5);
  if (!(r > 0.0) || !(r < 1.0)) {
    throw InvalidInputError("similarity ratio must lie in (0, 1)");
  }

  Factor f{d, 1.0, std::vector<Matrix>(static_cast<std::size_t>(n),
                                       r * Matrix::Identity(d, d))};
  CatalogEntry entry;
  entry.name = "similarity(n=" + std::to_string(n) + ",r=" + std::to_string(r) +
               ",d=" + std::to_string(d) + ")";
  entry.system = std::make_shared<const MatrixSystem>(
      static_cast<Symbol>(n), std::vector<Factor>{std::move(f)});
  entry.facts = {
      {"affinity dimension is min(d, log n / -log r)", "closed form"},
  };
  return entry;
}

CatalogEntry build_kink(const std::map<std::string, double>& params) {
  reject_unknown(params, {}, "kink");
  Factor f{2, 1.0, {mat2(0.5, 0, 0, 1.0 / 3.0), mat2(0.5, 0, 0, 1.0 / 3.0)}};
  CatalogEntry entry;
  entry.name = "kink";
  entry.system = std::make_shared<const MatrixSystem>(
      Symbol{2}, std::vector<Factor>{std::move(f)});
  entry.facts = {
      {"affinity dimension is exactly 1: the singular value profile has a "
       "kink there and the two branch pressures change sign at 1",
       "closed form"},
  };
  return entry;
}

CatalogEntry build_bernoulli(const std::map<std::string, double>& params) {
  reject_unknown(params, {"p"}, "bernoulli");
  const double p = param_or(params, "p", 0.5);
  if (!(p > 0.0) || !(p < 1.0)) {
    throw InvalidInputError("bernoulli weight must lie in (0, 1)");
  }
  Matrix w1(1, 1), w2(1, 1);
  w1 << p;
  w2 << 1.0 - p;
  Factor f{1, 1.0, {w1, w2}};
  CatalogEntry entry;
  entry.name = "bernoulli(p=" + std::to_string(p) + ")";
  entry.system = std::make_shared<const MatrixSystem>(
      Symbol{2}, std::vector<Factor>{std::move(f)});
  entry.facts = {
      {"the depth-n table is the product measure with weights (p, 1-p)",
       "construction"},
      {"correlation deviations vanish at every gap", "product measure"},
  };
  return entry;
}

CatalogEntry build_rotations(const std::map<std::string, double>& params) {
  reject_unknown(params, {"theta1", "theta2"}, "rotations");
  const double t1 = param_or(params, "theta1", 1.0);
  const double t2 = param_or(params, "theta2", std::sqrt(2.0));
  auto rot = [](double t) {
    return mat2(std::cos(t), -std::sin(t), std::sin(t), std::cos(t));
  };
  Factor f{2, 1.0, {rot(t1), rot(t2)}};
  CatalogEntry entry;
  entry.name = "rotations(theta1=" + std::to_string(t1) +
               ",theta2=" + std::to_string(t2) + ")";
  entry.system = std::make_shared<const MatrixSystem>(
      Symbol{2}, std::vector<Factor>{std::move(f)});
  entry.facts = {
      {"every word product is a planar rotation, so no word is proximal",
       "construction"},
  };
  return entry;
}

CatalogEntry build_random(const std::map<std::string, double>& params) {
  reject_unknown(params, {"seed", "n", "d", "k", "scale"}, "random");
  const int n = int_param(params, "n", 2, 2, 16, "random");
  const int d = int_param(params, "d", 2, 1, 6, "random");
  const int k = int_param(params, "k", 1, 1, 4, "random");
  const auto seed = static_cast<std::uint64_t>(
      int_param(params, "seed", 1, 0, 1 << 30, "random"));
  const double scale = param_or(params, "scale", 0.0);
  if (scale < 0.0) throw InvalidInputError("random scale must be >= 0");

  // Reproducible recipe: one mt19937_64 stream seeded as given; factors in
  // order, symbols in order, entries row-major from uniform(-1, 1); a draw
  // with |det| < 1e-2 is discarded and redrawn; scale > 0 rescales each
  // matrix to that operator norm.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<Factor> factors;
  for (int j = 0; j < k; ++j) {
    Factor f{d, 1.0, {}};
    for (int i = 0; i < n; ++i) {
      Matrix m(d, d);
      do {
        for (int r = 0; r < d; ++r) {
          for (int c = 0; c < d; ++c) m(r, c) = uniform(rng);
        }
      } while (std::abs(m.determinant()) < 1e-2);
      if (scale > 0.0) m *= scale / operator_norm(m);
      f.generators.push_back(std::move(m));
    }
    factors.push_back(std::move(f));
  }
  CatalogEntry entry;
  entry.name = "random(seed=" + std::to_string(seed) + ",n=" + std::to_string(n) +
               ",d=" + std::to_string(d) + ",k=" + std::to_string(k) +
               ",scale=" + std::to_string(scale) + ")";
  entry.system = std::make_shared<const MatrixSystem>(
      static_cast<Symbol>(n), std::move(factors));
  entry.facts = {
      {"entries are reproducible from the seed via the documented recipe",
       "construction"},
  };
  return entry;
}

}  // namespace

std::vector<std::string> catalog_keys() {
  return {"bernoulli", "kink",      "nottot", "nottot-recoded",
          "random",    "rotations", "similarity"};
}

CatalogEntry build_catalog_entry(const std::string& name,
                                 const std::map<std::string, double>& params) {
  if (name == "nottot") return build_nottot(params);
  if (name == "nottot-recoded") return build_nottot_recoded(params);
  if (name == "similarity") return build_similarity(params);
  if (name == "kink") return build_kink(params);
  if (name == "bernoulli") return build_bernoulli(params);
  if (name == "rotations") return build_rotations(params);
  if (name == "random") return build_random(params);
  throw InvalidInputError("unknown catalog entry \"" + name + "\"");
}

CatalogEntry build_catalog_entry(const std::string& key) {
  const auto open = key.find('(');
  if (open == std::string::npos) return build_catalog_entry(trim(key), {});
  if (key.back() != ')') {
    throw InvalidInputError("catalog key \"" + key + "\" has unbalanced parentheses");
  }
  const std::string name = trim(key.substr(0, open));
  const std::string body = key.substr(open + 1, key.size() - open - 2);

  std::map<std::string, double> params;
  std::size_t at = 0;
  while (at < body.size()) {
    auto comma = body.find(',', at);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = trim(body.substr(at, comma - at));
    at = comma + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw InvalidInputError("catalog parameter \"" + item +
                              "\" is not key=value");
    }
    const std::string pkey = trim(item.substr(0, eq));
    const std::string pvalue = trim(item.substr(eq + 1));
    try {
      std::size_t used = 0;
      const double value = std::stod(pvalue, &used);
      if (used != pvalue.size()) throw std::invalid_argument(pvalue);
      params[pkey] = value;
    } catch (const std::exception&) {
      throw InvalidInputError("catalog parameter \"" + pkey +
                              "\" has non-numeric value \"" + pvalue + "\"");
    }
  }
  return build_catalog_entry(name, params);
}

MatrixSystem recode_system(const MatrixSystem& system, std::size_t block_length,
                           std::uint64_t alphabet_budget) {
  if (block_length == 0) throw InvalidInputError("block length must be >= 1");
  const std::uint64_t new_alphabet =
      word_count(system.alphabet_size(), block_length);
  if (new_alphabet > alphabet_budget) {
    throw ResourceLimitError("recoded alphabet of " +
                             std::to_string(new_alphabet) +
                             " symbols exceeds budget of " +
                             std::to_string(alphabet_budget));
  }

  std::vector<Factor> factors;
  factors.reserve(system.factor_count());
  for (std::size_t j = 0; j < system.factor_count(); ++j) {
    Factor f{system.factor(j).dim, system.factor(j).beta, {}};
    f.generators.reserve(new_alphabet);
    for (std::uint64_t i = 1; i <= new_alphabet; ++i) {
      const Word w = lex_inverse(i, system.alphabet_size(), block_length);
      f.generators.push_back(system.word_product(j, w));
    }
    factors.push_back(std::move(f));
  }
  return MatrixSystem(static_cast<Symbol>(new_alphabet), std::move(factors));
}

}  // namespace thermoform
