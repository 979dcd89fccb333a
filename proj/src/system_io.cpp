#include "thermoform/system_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "thermoform/multilinear.hpp"

namespace thermoform {

namespace {

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

struct Line {
  std::string text;
  std::size_t number = 0;  // 1-based
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(stream, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream words(line);
      Line parsed{line, number, {}};
      std::string token;
      while (words >> token) parsed.tokens.push_back(token);
      if (parsed.tokens.empty() || parsed.tokens.front().front() == '#') continue;
      lines_.push_back(std::move(parsed));
    }
  }

  bool done() const { return at_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) throw ParseError("unexpected end of input", last_number());
    return lines_[at_];
  }
  Line next() {
    if (done()) throw ParseError("unexpected end of input", last_number());
    return lines_[at_++];
  }
  std::size_t last_number() const {
    return lines_.empty() ? 1 : lines_.back().number;
  }

 private:
  std::vector<Line> lines_;
  std::size_t at_ = 0;
};

long long parse_integer(const std::string& token, std::size_t line) {
  long long value = 0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw ParseError("expected an integer, got \"" + token + "\"", line);
  }
  return value;
}

double parse_number(const std::string& token, std::size_t line,
                    std::vector<std::string>* notes) {
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    const long long num = parse_integer(token.substr(0, slash), line);
    const long long den = parse_integer(token.substr(slash + 1), line);
    if (den == 0) throw ParseError("rational with zero denominator", line);
    const double value = static_cast<double>(num) / static_cast<double>(den);
    if (notes != nullptr) {
      notes->push_back("line " + std::to_string(line) + ": rational " + token +
                       " converted to " + format_double(value));
    }
    return value;
  }
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw ParseError("expected a number, got \"" + token + "\"", line);
  }
  return value;
}

Line expect_keyword(LineReader& reader, const std::string& keyword,
                    std::size_t token_count) {
  Line line = reader.next();
  if (line.tokens.front() != keyword) {
    throw ParseError("expected \"" + keyword + "\", got \"" +
                     line.tokens.front() + "\"",
                     line.number);
  }
  if (line.tokens.size() != token_count) {
    throw ParseError("\"" + keyword + "\" line needs " +
                     std::to_string(token_count - 1) + " value(s)",
                     line.number);
  }
  return line;
}

// Reads `count` rows of `width` numbers each into the rows of out.
void read_rows(LineReader& reader, Eigen::Index count, Eigen::Index width,
               Matrix& out, std::vector<std::string>* notes) {
  for (Eigen::Index r = 0; r < count; ++r) {
    const Line line = reader.next();
    if (static_cast<Eigen::Index>(line.tokens.size()) != width) {
      throw ParseError("expected " + std::to_string(width) +
                       " numbers on this row",
                       line.number);
    }
    for (Eigen::Index c = 0; c < width; ++c) {
      out(r, c) = parse_number(line.tokens[static_cast<std::size_t>(c)],
                               line.number, notes);
    }
  }
}

}  // namespace

ParsedSystem parse_system_text(const std::string& text) {
  LineReader reader(text);
  ParsedSystem parsed;

  const Line alphabet_line = expect_keyword(reader, "alphabet", 2);
  const long long alphabet = parse_integer(alphabet_line.tokens[1], alphabet_line.number);
  if (alphabet < 2 || alphabet > (1 << 24)) {
    throw ParseError("alphabet size must lie in [2, 2^24]", alphabet_line.number);
  }

  const Line factors_line = expect_keyword(reader, "factors", 2);
  const long long factor_count = parse_integer(factors_line.tokens[1], factors_line.number);
  if (factor_count < 1 || factor_count > 64) {
    throw ParseError("factor count must lie in [1, 64]", factors_line.number);
  }

  std::vector<Factor> factors(static_cast<std::size_t>(factor_count));
  for (long long j = 1; j <= factor_count; ++j) {
    const Line line = reader.next();
    if (line.tokens.front() != "factor" || line.tokens.size() != 6 ||
        line.tokens[2] != "dim" || line.tokens[4] != "beta") {
      throw ParseError("expected \"factor " + std::to_string(j) +
                       " dim <d> beta <b>\"",
                       line.number);
    }
    if (parse_integer(line.tokens[1], line.number) != j) {
      throw ParseError("factor blocks must appear in order; expected factor " +
                       std::to_string(j),
                       line.number);
    }
    const long long dim = parse_integer(line.tokens[3], line.number);
    if (dim < 1 || dim > 64) {
      throw ParseError("factor dimension must lie in [1, 64]", line.number);
    }
    Factor& factor = factors[static_cast<std::size_t>(j - 1)];
    factor.dim = static_cast<int>(dim);
    factor.beta = parse_number(line.tokens[5], line.number, &parsed.notes);
    factor.generators.assign(static_cast<std::size_t>(alphabet), Matrix());
  }

  std::vector<std::vector<bool>> seen(
      static_cast<std::size_t>(factor_count),
      std::vector<bool>(static_cast<std::size_t>(alphabet), false));

  while (!reader.done()) {
    const std::string& keyword = reader.peek().tokens.front();
    if (keyword == "matrix") {
      const Line line = expect_keyword(reader, "matrix", 3);
      const long long j = parse_integer(line.tokens[1], line.number);
      const long long i = parse_integer(line.tokens[2], line.number);
      if (j < 1 || j > factor_count) {
        throw ParseError("matrix factor index out of range", line.number);
      }
      if (i < 1 || i > alphabet) {
        throw ParseError("matrix symbol index out of range", line.number);
      }
      Factor& factor = factors[static_cast<std::size_t>(j - 1)];
      if (seen[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)]) {
        throw ParseError("duplicate matrix " + std::to_string(j) + " " +
                         std::to_string(i),
                         line.number);
      }
      Matrix m(factor.dim, factor.dim);
      read_rows(reader, factor.dim, factor.dim, m, &parsed.notes);
      if (!is_invertible(m)) {
        throw ParseError("matrix " + std::to_string(j) + " " +
                         std::to_string(i) + " is not invertible",
                         line.number);
      }
      factor.generators[static_cast<std::size_t>(i - 1)] = std::move(m);
      seen[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = true;
    } else if (keyword == "seed-subspace") {
      const Line line = expect_keyword(reader, "seed-subspace", 4);
      if (line.tokens[2] != "dim") {
        throw ParseError("expected \"seed-subspace <j> dim <l>\"", line.number);
      }
      const long long j = parse_integer(line.tokens[1], line.number);
      if (j < 1 || j > factor_count) {
        throw ParseError("seed-subspace factor index out of range", line.number);
      }
      const int dim = factors[static_cast<std::size_t>(j - 1)].dim;
      const long long l = parse_integer(line.tokens[3], line.number);
      if (l < 1 || l > dim) {
        throw ParseError("seed-subspace dimension out of range", line.number);
      }
      Matrix rows(l, dim);
      read_rows(reader, l, dim, rows, &parsed.notes);
      parsed.seeds.emplace_back(static_cast<std::size_t>(j - 1),
                                Subspace::from_spanning(rows.transpose()));
    } else if (keyword == "translations") {
      const Line line = expect_keyword(reader, "translations", 2);
      const long long count = parse_integer(line.tokens[1], line.number);
      if (count < 0) throw ParseError("translation count must be >= 0", line.number);
      for (long long t = 0; t < count; ++t) reader.next();
      parsed.notes.push_back("line " + std::to_string(line.number) +
                             ": translations are ignored; values here do not "
                             "affect any computed quantity");
    } else {
      throw ParseError("unknown section \"" + keyword + "\"",
                       reader.peek().number);
    }
  }

  for (long long j = 1; j <= factor_count; ++j) {
    for (long long i = 1; i <= alphabet; ++i) {
      if (!seen[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)]) {
        throw ParseError("matrix " + std::to_string(j) + " " +
                         std::to_string(i) + " is missing",
                         reader.last_number());
      }
    }
  }

  parsed.system = std::make_shared<const MatrixSystem>(
      static_cast<Symbol>(alphabet), std::move(factors));
  return parsed;
}

ParsedSystem parse_system_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw InvalidInputError("cannot read \"" + path + "\"");
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return parse_system_text(buffer.str());
}

std::string export_system_text(const MatrixSystem& system) {
  std::ostringstream out;
  out << "alphabet " << system.alphabet_size() << "\n";
  out << "factors " << system.factor_count() << "\n";
  for (std::size_t j = 0; j < system.factor_count(); ++j) {
    out << "factor " << j + 1 << " dim " << system.factor(j).dim << " beta "
        << format_double(system.factor(j).beta) << "\n";
  }
  for (std::size_t j = 0; j < system.factor_count(); ++j) {
    for (Symbol i = 1; i <= system.alphabet_size(); ++i) {
      out << "matrix " << j + 1 << " " << i << "\n";
      const Matrix& m =
          system.factor(j).generators[static_cast<std::size_t>(i) - 1];
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          if (c > 0) out << " ";
          out << format_double(m(r, c));
        }
        out << "\n";
      }
    }
  }
  return out.str();
}

std::vector<SubspaceTuple> seed_tuples(const ParsedSystem& parsed) {
  std::vector<SubspaceTuple> tuples;
  const std::size_t factor_count = parsed.system->factor_count();
  if (parsed.seeds.size() % factor_count != 0) {
    throw InvalidInputError(
        "seed-subspace blocks must form complete per-factor tuples");
  }
  for (std::size_t at = 0; at < parsed.seeds.size(); at += factor_count) {
    SubspaceTuple tuple;
    tuple.reserve(factor_count);
    for (std::size_t j = 0; j < factor_count; ++j) {
      if (parsed.seeds[at + j].first != j) {
        throw InvalidInputError(
            "seed-subspace blocks must appear in factor order 1..k");
      }
      tuple.push_back(parsed.seeds[at + j].second);
    }
    tuples.push_back(std::move(tuple));
  }
  return tuples;
}

}  // namespace thermoform
