#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "thermoform/potentials.hpp"
#include "thermoform/subspace.hpp"

namespace thermoform {

// Result of reading a system description. Notes record lossy or ignored
// input: rational-to-double conversions and skipped translation blocks.
struct ParsedSystem {
  std::shared_ptr<const MatrixSystem> system;
  std::vector<std::pair<std::size_t, Subspace>> seeds;  // (factor index, span)
  std::vector<std::string> notes;
};

// Line-oriented text format:
//   alphabet N
//   factors k
//   factor j dim d beta b          (one per factor, in order)
//   matrix j i                     (then d lines of d numbers)
//   seed-subspace j dim l          (optional; then l spanning rows of d numbers)
//   translations n                 (optional; n lines, ignored with a note)
// Numbers are decimals or p/q rationals; blank lines and #-comments are
// skipped. Errors carry 1-based line numbers.
ParsedSystem parse_system_text(const std::string& text);
ParsedSystem parse_system_file(const std::string& path);

// Deterministic export; numbers print with enough digits that parsing the
// output reproduces every double bit for bit, and re-exporting reproduces
// the text byte for byte.
std::string export_system_text(const MatrixSystem& system);

// Groups parsed seed blocks into complete per-factor tuples; blocks must
// appear in factor order 1..k, repeated once per tuple.
std::vector<SubspaceTuple> seed_tuples(const ParsedSystem& parsed);

}  // namespace thermoform
