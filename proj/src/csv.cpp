#include "zermelo/io/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace zermelo::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

namespace {

void write_text(std::ostream& out, std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void CsvWriter::row(std::initializer_list<Cell> cells) {
  bool first = true;
  for (const Cell& c : cells) {
    if (!first) out_ << ',';
    first = false;
    if (const double* d = std::get_if<double>(&c)) {
      out_ << format_number(*d);
    } else if (const long long* i = std::get_if<long long>(&c)) {
      out_ << *i;
    } else {
      write_text(out_, std::get<std::string_view>(c));
    }
  }
  out_ << '\n';
  ++rows_;
}

}  // namespace zermelo::io
