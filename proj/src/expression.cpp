#include "zermelo/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numbers>

namespace zermelo {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const std::map<std::string, double>& constants)
      : text_(text), constants_(constants) {}

  Expression run() {
    Expression e;
    e.source_ = text_;
    parse_sum(e.tape_);
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (e.tape_.empty()) fail("empty expression");
    check_depth(e.tape_);
    return e;
  }

 private:
  using Tape = std::vector<Expression::Instr>;
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + text_ + "': " + msg, 1, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void parse_sum(Tape& out) {
    parse_product(out);
    for (;;) {
      if (accept('+')) {
        parse_product(out);
        out.push_back({Op::Add, 0.0});
      } else if (accept('-')) {
        parse_product(out);
        out.push_back({Op::Sub, 0.0});
      } else {
        return;
      }
    }
  }

  void parse_product(Tape& out) {
    parse_unary(out);
    for (;;) {
      if (accept('*')) {
        parse_unary(out);
        out.push_back({Op::Mul, 0.0});
      } else if (accept('/')) {
        parse_unary(out);
        out.push_back({Op::Div, 0.0});
      } else {
        return;
      }
    }
  }

  void parse_unary(Tape& out) {
    if (accept('-')) {
      parse_unary(out);
      out.push_back({Op::Neg, 0.0});
      return;
    }
    if (accept('+')) {
      parse_unary(out);
      return;
    }
    parse_power(out);
  }

  void parse_power(Tape& out) {
    parse_primary(out);
    if (!accept('^')) return;
    skip_space();
    const std::size_t at = pos_;
    Tape exponent;
    parse_unary(exponent);
    for (const auto& in : exponent) {
      if (in.op == Op::X || in.op == Op::Y) {
        pos_ = at;
        fail("exponent must not depend on x or y");
      }
    }
    check_depth(exponent);
    Expression ex;
    ex.tape_ = std::move(exponent);
    out.push_back({Op::Pow, ex.eval<double>(0.0, 0.0)});
  }

  void parse_primary(Tape& out) {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      parse_sum(out);
      if (!accept(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* first = text_.data() + pos_;
      const char* last = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc()) fail("bad number");
      pos_ += static_cast<std::size_t>(ptr - first);
      out.push_back({Op::Const, value});
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (name == "sin" || name == "cos" || name == "exp") {
        if (!accept('(')) fail("expected '(' after " + name);
        parse_sum(out);
        if (!accept(')')) fail("expected ')'");
        out.push_back({name == "sin" ? Op::Sin : name == "cos" ? Op::Cos : Op::Exp, 0.0});
        return;
      }
      if (name == "x") {
        out.push_back({Op::X, 0.0});
        return;
      }
      if (name == "y") {
        out.push_back({Op::Y, 0.0});
        return;
      }
      if (auto it = constants_.find(name); it != constants_.end()) {
        out.push_back({Op::Const, it->second});
        return;
      }
      if (name == "pi") {
        out.push_back({Op::Const, std::numbers::pi});
        return;
      }
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  void check_depth(const Tape& tape) const {
    int depth = 0;
    int max_depth = 0;
    for (const auto& in : tape) {
      switch (in.op) {
        case Op::Const:
        case Op::X:
        case Op::Y: ++depth; break;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: --depth; break;
        default: break;
      }
      max_depth = std::max(max_depth, depth);
    }
    if (max_depth > Expression::kMaxStack) throw ParseError("expression '" + text_ + "' nests too deeply", 1, 1);
  }

  const std::string& text_;
  const std::map<std::string, double>& constants_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text, const std::map<std::string, double>& constants) {
  return ExpressionParser(text, constants).run();
}

Expression Expression::constant(double value) {
  Expression e;
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  e.source_.assign(buf, ptr);
  e.tape_.push_back({Op::Const, value});
  return e;
}

bool Expression::is_constant() const {
  for (const auto& in : tape_)
    if (in.op == Op::X || in.op == Op::Y) return false;
  return true;
}

}  // namespace zermelo
