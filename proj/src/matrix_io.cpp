#include "mchart/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace mchart {

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::vector<double> parse_numbers(const std::string& line, std::size_t line_no) {
  std::vector<double> values;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    double v = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("line " + std::to_string(line_no) + ": bad number '" + token + "'");
    }
    values.push_back(v);
  }
  return values;
}

// Returns false at clean EOF (only blank lines left).
bool read_block(std::istream& in, Matrix& out, std::size_t& line_no) {
  std::string line;
  do {
    if (!std::getline(in, line)) return false;
    ++line_no;
  } while (is_blank(line));

  const auto header = parse_numbers(line, line_no);
  if (header.size() != 2 || header[0] < 1 || header[1] < 1 ||
      header[0] != static_cast<double>(static_cast<Index>(header[0])) ||
      header[1] != static_cast<double>(static_cast<Index>(header[1]))) {
    throw ParseError("line " + std::to_string(line_no) + ": expected header 'rows cols'");
  }
  const auto rows = static_cast<Index>(header[0]);
  const auto cols = static_cast<Index>(header[1]);
  out.resize(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError("unexpected end of input after " + std::to_string(i) + " of " +
                       std::to_string(rows) + " rows");
    }
    ++line_no;
    const auto row = parse_numbers(line, line_no);
    if (static_cast<Index>(row.size()) != cols) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " values, got " + std::to_string(row.size()));
    }
    for (Index j = 0; j < cols; ++j) {
      if (!std::isfinite(row[j])) {
        throw ParseError("line " + std::to_string(line_no) + ": non-finite entry");
      }
      out(i, j) = row[j];
    }
  }
  return true;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  Matrix M;
  std::size_t line_no = 0;
  if (!read_block(in, M, line_no)) throw ParseError("empty input");
  return M;
}

void write_matrix(std::ostream& out, const Matrix& M) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << M.rows() << ' ' << M.cols() << '\n' << std::setprecision(17);
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j) out << ' ';
      out << M(i, j);
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

std::vector<Matrix> read_matrix_blocks(std::istream& in) {
  std::vector<Matrix> blocks;
  std::size_t line_no = 0;
  Matrix M;
  while (read_block(in, M, line_no)) blocks.push_back(M);
  return blocks;
}

void write_matrix_blocks(std::ostream& out, const std::vector<Matrix>& blocks) {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out << '\n';
    write_matrix(out, blocks[b]);
  }
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return read_matrix(in);
}

void save_matrix(const std::filesystem::path& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  write_matrix(out, M);
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

}  // namespace mchart
