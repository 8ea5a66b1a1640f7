#pragma once

// Deterministic CSV output. Doubles are printed in the shortest decimal form
// that round-trips to the same binary value, so reruns are byte-identical
// and a reader recovers every bit.

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

namespace zermelo::io {

std::string format_number(double v);

class CsvWriter {
 public:
  using Cell = std::variant<double, long long, std::string_view>;

  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(std::initializer_list<Cell> cells);
  int rows() const { return rows_; }

 private:
  std::ostream& out_;
  int rows_ = 0;
};

}  // namespace zermelo::io
