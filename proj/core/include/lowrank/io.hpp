#pragma once

#include <iosfwd>
#include <string>

#include "lowrank/factorize.hpp"
#include "lowrank/sign_matrix.hpp"

namespace lowrank {

// Matrix:        "<n_rows> <n_cols>" then n_rows lines of n_cols '+'/'-' characters.
// Measure:       "<n_rows> <n_cols>" then row-major whitespace-separated weights.
// Factorization: "<n_rows> <n_cols> <r>" then n_rows lines of r decimals (u)
//                and n_cols lines of r decimals (v).
// Parsers throw FormatError carrying the line and column of the problem.

SignMatrix parse_matrix(const std::string& text);
std::string format_matrix(const SignMatrix& m);

EntryMeasure parse_measure(const std::string& text);
std::string format_measure(const EntryMeasure& mu);

Factorization parse_factorization(const std::string& text);
std::string format_factorization(const Factorization& f);

/// Whole-file helpers; throw IoError when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lowrank
