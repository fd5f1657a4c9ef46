#include "lowrank/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "lowrank/error.hpp"

namespace lowrank {

namespace {

// Whitespace tokenizer that remembers where each token started.
class Tokenizer {
 public:
  explicit Tokenizer(const std::string& text) : text_(text) {}

  struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
  };

  bool next(Token& tok) {
    skip_space();
    if (pos_ >= text_.size()) return false;
    tok.line = line_;
    tok.column = column_;
    tok.text.clear();
    while (pos_ < text_.size() && !is_space(text_[pos_])) {
      tok.text.push_back(text_[pos_]);
      advance();
    }
    return true;
  }

  Token expect(const char* what) {
    Token tok;
    if (!next(tok)) throw FormatError(std::string("unexpected end of input, expected ") + what, line_, column_);
    return tok;
  }

  /// Position at the end of input or of the line, for "expected more" errors.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) advance();
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::size_t parse_count(const Tokenizer::Token& tok, const char* what) {
  if (tok.text.empty() || tok.text.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError(std::string("expected a nonnegative integer for ") + what + ", got '" +
                          tok.text + "'",
                      tok.line, tok.column);
  }
  errno = 0;
  const unsigned long long v = std::strtoull(tok.text.c_str(), nullptr, 10);
  if (errno == ERANGE) throw FormatError(std::string(what) + " is out of range", tok.line, tok.column);
  return static_cast<std::size_t>(v);
}

double parse_real(const Tokenizer::Token& tok) {
  const char* begin = tok.text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw FormatError("expected a decimal number, got '" + tok.text + "'", tok.line, tok.column);
  }
  return v;
}

void expect_end(Tokenizer& tz) {
  if (!tz.at_end()) {
    Tokenizer::Token tok;
    tz.next(tok);
    throw FormatError("unexpected trailing content '" + tok.text + "'", tok.line, tok.column);
  }
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SignMatrix parse_matrix(const std::string& text) {
  Tokenizer tz(text);
  const auto rows_tok = tz.expect("row count");
  const auto cols_tok = tz.expect("column count");
  const std::size_t n = parse_count(rows_tok, "row count");
  const std::size_t m = parse_count(cols_tok, "column count");
  if (n == 0 || m == 0) throw FormatError("matrix dimensions must be positive", rows_tok.line, rows_tok.column);
  if (cols_tok.line != rows_tok.line) throw FormatError("header must be on one line", cols_tok.line, cols_tok.column);

  std::vector<std::int8_t> entries;
  entries.reserve(n * m);
  std::size_t last_line = rows_tok.line;
  for (std::size_t x = 0; x < n; ++x) {
    Tokenizer::Token tok;
    if (!tz.next(tok)) {
      throw FormatError("expected " + std::to_string(n) + " matrix rows, found " + std::to_string(x),
                        tz.line(), tz.column());
    }
    if (tok.line == last_line) throw FormatError("each matrix row must start a new line", tok.line, tok.column);
    last_line = tok.line;
    if (tok.text.size() != m) {
      throw FormatError("row has " + std::to_string(tok.text.size()) + " entries, expected " +
                            std::to_string(m),
                        tok.line, tok.column + std::min(tok.text.size(), m));
    }
    for (std::size_t y = 0; y < m; ++y) {
      const char c = tok.text[y];
      if (c != '+' && c != '-') {
        throw FormatError(std::string("expected '+' or '-', got '") + c + "'", tok.line, tok.column + y);
      }
      entries.push_back(c == '+' ? 1 : -1);
    }
  }
  expect_end(tz);
  return SignMatrix(n, m, std::move(entries));
}

std::string format_matrix(const SignMatrix& m) {
  std::string out = std::to_string(m.n_rows()) + " " + std::to_string(m.n_cols()) + "\n";
  for (std::size_t x = 0; x < m.n_rows(); ++x) {
    for (std::size_t y = 0; y < m.n_cols(); ++y) out.push_back(m(x, y) > 0 ? '+' : '-');
    out.push_back('\n');
  }
  return out;
}

EntryMeasure parse_measure(const std::string& text) {
  Tokenizer tz(text);
  const auto rows_tok = tz.expect("row count");
  const auto cols_tok = tz.expect("column count");
  const std::size_t n = parse_count(rows_tok, "row count");
  const std::size_t m = parse_count(cols_tok, "column count");
  if (n == 0 || m == 0) throw FormatError("measure dimensions must be positive", rows_tok.line, rows_tok.column);
  std::vector<double> w;
  w.reserve(n * m);
  for (std::size_t i = 0; i < n * m; ++i) {
    const auto tok = tz.expect("a weight");
    const double v = parse_real(tok);
    if (v < 0.0) throw FormatError("weights must be nonnegative", tok.line, tok.column);
    w.push_back(v);
  }
  expect_end(tz);
  try {
    return EntryMeasure(n, m, std::move(w));
  } catch (const DomainError& e) {
    throw FormatError(e.what(), rows_tok.line, rows_tok.column);
  }
}

std::string format_measure(const EntryMeasure& mu) {
  std::string out = std::to_string(mu.n_rows()) + " " + std::to_string(mu.n_cols()) + "\n";
  for (std::size_t x = 0; x < mu.n_rows(); ++x) {
    for (std::size_t y = 0; y < mu.n_cols(); ++y) {
      if (y) out.push_back(' ');
      out += format_real(mu(x, y));
    }
    out.push_back('\n');
  }
  return out;
}

Factorization parse_factorization(const std::string& text) {
  Tokenizer tz(text);
  const std::size_t n = parse_count(tz.expect("row count"), "row count");
  const std::size_t m = parse_count(tz.expect("column count"), "column count");
  const std::size_t r = parse_count(tz.expect("dimension"), "dimension");
  Factorization f;
  f.left.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
  f.right.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < r; ++k)
      f.left(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_real(tz.expect("a coordinate"));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < r; ++k)
      f.right(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_real(tz.expect("a coordinate"));
  expect_end(tz);
  return f;
}

std::string format_factorization(const Factorization& f) {
  std::string out = std::to_string(f.n_rows()) + " " + std::to_string(f.n_cols()) + " " +
                    std::to_string(f.dim()) + "\n";
  auto emit = [&out](const Eigen::MatrixXd& vecs) {
    for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
      for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
        if (k) out.push_back(' ');
        out += format_real(vecs(i, k));
      }
      out.push_back('\n');
    }
  };
  emit(f.left);
  emit(f.right);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace lowrank
