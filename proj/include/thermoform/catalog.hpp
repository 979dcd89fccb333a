#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thermoform/potentials.hpp"

namespace thermoform {

// A reference fact about a built-in system, with a note on how it is
// established (closed form, construction, or exhaustive enumeration).
struct KnownFact {
  std::string statement;
  std::string basis;
};

struct CatalogEntry {
  std::string name;  // canonical key including resolved parameters
  std::shared_ptr<const MatrixSystem> system;
  std::vector<KnownFact> facts;
};

// Built-in keys, sorted. Parameterised entries take name(key=value, ...).
std::vector<std::string> catalog_keys();

// Builds an entry from its name and explicit parameters. Unknown names or
// parameters are invalid-input errors.
CatalogEntry build_catalog_entry(const std::string& name,
                                 const std::map<std::string, double>& params);

// Parses "name" or "name(key=value,key=value)" and builds the entry.
CatalogEntry build_catalog_entry(const std::string& key);

// Alphabet blow-up: the new system runs over words of the old one in blocks
// of the given length, so generator i of each factor is the product along
// the i-th length-n word. Values satisfy
// log new(recode_word(w, n)) = log old(w) for every w with n dividing |w|.
MatrixSystem recode_system(const MatrixSystem& system, std::size_t block_length,
                           std::uint64_t alphabet_budget = 4096);

}  // namespace thermoform
