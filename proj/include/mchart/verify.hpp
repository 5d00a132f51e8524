#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mchart/numerics.hpp"

namespace mchart::verify {

struct Dims {
  Index n = 20;
  Index m = 15;
  Index k = 12;
  Index r = 3;
};

enum class Bound {
  Upper,  // pass iff measured <= tolerance
  Lower,  // pass iff measured >= tolerance
  Exact,  // pass iff measured == tolerance
};

struct CaseResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Upper;
  bool pass = false;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  Dims dims;
  double wall_time_s = 0.0;
  std::vector<CaseResult> cases;

  bool passed() const noexcept;
  nlohmann::json to_json() const;
};

/// Accumulates the worst value of one property over all trials.
class Case {
 public:
  Case(std::string name, double tolerance, Bound bound = Bound::Upper);
  void observe(double value);
  CaseResult result() const;

 private:
  std::string name_;
  double tolerance_;
  Bound bound_;
  double worst_;
  bool seen_ = false;
};

Report grassmann_suite(const Dims& dims, std::uint64_t seed, int trials);
Report stiefel_suite(const Dims& dims, std::uint64_t seed, int trials);
Report fixed_rank_suite(const Dims& dims, std::uint64_t seed, int trials);
/// All three suites merged into one report; case names carry the suite prefix.
Report all_suites(const Dims& dims, std::uint64_t seed, int trials);

/// Throws DimensionMismatch unless 0 < r < k and 0 < r < min(n, m).
void validate_dims(const Dims& dims);

/// ||a - b||_F / max(1, ||b||_F).
double rel_diff(const Matrix& a, const Matrix& b);

}  // namespace mchart::verify
