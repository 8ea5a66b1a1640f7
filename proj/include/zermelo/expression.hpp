#pragma once

// Closed-form scalar fields on the (x, y) chart.
//
// An Expression is parsed once into a postfix tape and evaluated on any
// scalar type that supports + - * /, sin, cos, exp and pow(T, double).
// Evaluating on Taylor2 gives exact gradients and Hessians.
//
// Vocabulary: decimal literals, the coordinates x and y, pi, named constants
// bound at parse time, + - * / ^ (constant exponent), sin, cos, exp, and
// parentheses.

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "zermelo/taylor.hpp"
#include "zermelo/types.hpp"

namespace zermelo {

class Expression {
 public:
  static constexpr int kMaxStack = 32;

  enum class Op : unsigned char { Const, X, Y, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp };

  struct Instr {
    Op op;
    double arg;  // literal value for Const, exponent for Pow
  };

  // Throws ParseError (line 1, column = 1-based offset) on malformed input.
  static Expression parse(const std::string& text, const std::map<std::string, double>& constants = {});
  static Expression constant(double value);

  const std::string& source() const { return source_; }
  bool is_constant() const;

  template <class T>
  T eval(const T& x, const T& y) const {
    using std::cos;
    using std::exp;
    using std::pow;
    using std::sin;
    std::array<T, kMaxStack> stack;
    int top = 0;
    for (const Instr& in : tape_) {
      switch (in.op) {
        case Op::Const: stack[top++] = T(in.arg); break;
        case Op::X: stack[top++] = x; break;
        case Op::Y: stack[top++] = y; break;
        case Op::Add: --top; stack[top - 1] = stack[top - 1] + stack[top]; break;
        case Op::Sub: --top; stack[top - 1] = stack[top - 1] - stack[top]; break;
        case Op::Mul: --top; stack[top - 1] = stack[top - 1] * stack[top]; break;
        case Op::Div: --top; stack[top - 1] = stack[top - 1] / stack[top]; break;
        case Op::Neg: stack[top - 1] = -stack[top - 1]; break;
        case Op::Pow: stack[top - 1] = power(stack[top - 1], in.arg); break;
        case Op::Sin: stack[top - 1] = sin(stack[top - 1]); break;
        case Op::Cos: stack[top - 1] = cos(stack[top - 1]); break;
        case Op::Exp: stack[top - 1] = exp(stack[top - 1]); break;
      }
    }
    return stack[0];
  }

  double operator()(const Point2& p) const { return eval<double>(p.x(), p.y()); }

  // Value and exact gradient at p.
  Taylor2<2> jet(const Point2& p) const {
    return eval(Taylor2<2>::variable(p.x(), 0), Taylor2<2>::variable(p.y(), 1));
  }

 private:
  template <class T>
  static T power(const T& base, double e) {
    using std::pow;
    if (e == 2.0) return base * base;
    return pow(base, e);
  }

  std::string source_;
  std::vector<Instr> tape_;

  friend class ExpressionParser;
};

}  // namespace zermelo
