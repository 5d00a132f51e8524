#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mchart/numerics.hpp"

namespace mchart {

// Text format: a `rows cols` header line followed by one whitespace-separated
// row per line. Values are written with 17 significant digits so that a
// write/read cycle reproduces every double exactly.

/// Reads one matrix block. Leading blank lines are skipped; throws ParseError
/// on malformed input or non-finite values.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& M);

/// Reads every block of a blank-line separated stream until EOF.
std::vector<Matrix> read_matrix_blocks(std::istream& in);
void write_matrix_blocks(std::ostream& out, const std::vector<Matrix>& blocks);

Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& M);

}  // namespace mchart
