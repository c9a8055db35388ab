#include "cohen/expr.hpp"

#include <algorithm>
#include <cctype>

namespace cohen::words {

ExprPtr make_generator(int index) {
  if (index < 1) throw std::invalid_argument("generator index must be >= 1");
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Generator;
  e->gen = index;
  return e;
}

ExprPtr make_product(std::vector<ExprPtr> factors) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Product;
  e->children = std::move(factors);
  return e;
}

ExprPtr make_identity() { return make_product({}); }

ExprPtr make_inverse(ExprPtr inner) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Inverse;
  e->children = {std::move(inner)};
  return e;
}

ExprPtr make_power(ExprPtr base, BigInt exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Power;
  e->children = {std::move(base)};
  e->exponent = std::move(exponent);
  return e;
}

ExprPtr make_bracket(ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Bracket;
  e->children = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr make_engel(ExprPtr x, ExprPtr y, int depth) {
  if (depth < 1) throw std::invalid_argument("Engel depth must be >= 1");
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Engel;
  e->children = {std::move(x), std::move(y)};
  e->depth = depth;
  return e;
}

ExprPtr engel(ExprPtr x, ExprPtr y, int depth) {
  if (depth < 1) throw std::invalid_argument("Engel depth must be >= 1");
  ExprPtr acc = make_bracket(std::move(x), y);
  for (int i = 1; i < depth; ++i) acc = make_bracket(acc, y);
  return acc;
}

namespace {

class Parser {
public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

private:
  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool atom_ahead() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == 'x' || c == '(' || c == '[' || c == 'e';
  }

  std::string read_digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  int read_small_int() {
    std::size_t at = pos_;
    std::string digits = read_digits();
    if (digits.size() > 9) throw parse_error("integer too large here", at);
    return std::stoi(digits);
  }

  BigInt read_signed_int() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    BigInt v(read_digits());
    return neg ? -v : v;
  }

  ExprPtr parse_expr() {
    std::vector<ExprPtr> factors;
    while (atom_ahead()) factors.push_back(parse_factor());
    if (factors.empty()) fail("expected an expression");
    if (factors.size() == 1) return factors[0];
    return make_product(std::move(factors));
  }

  ExprPtr parse_factor() {
    ExprPtr a = parse_atom();
    if (peek_is('^')) {
      ++pos_;
      return make_power(std::move(a), read_signed_int());
    }
    return a;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == 'e') {
      ++pos_;
      return make_identity();
    }
    if (c == 'x') {
      ++pos_;
      std::size_t at = pos_;
      int idx = read_small_int();
      if (idx < 1 || idx > n_)
        throw parse_error("generator index out of range 1.." + std::to_string(n_), at);
      return make_generator(idx);
    }
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      ExprPtr first = parse_expr();
      expect(',');
      if (pos_ < text_.size() && text_[pos_] == '_') {
        ++pos_;
        int depth = read_small_int();
        if (depth < 1) fail("Engel depth must be >= 1");
        ExprPtr second = parse_expr();
        expect(']');
        return make_engel(std::move(first), std::move(second), depth);
      }
      // left-normalized sugar: [a,b,c,...] = [[a,b],c]...
      ExprPtr acc = make_bracket(std::move(first), parse_expr());
      while (peek_is(',')) {
        ++pos_;
        acc = make_bracket(std::move(acc), parse_expr());
      }
      expect(']');
      return acc;
    }
    fail("expected an atom");
  }
};

bool needs_parens_in_product(const Expr& e) {
  return e.kind == Expr::Kind::Product && !e.children.empty();
}

std::string print_atom(const Expr& e) {
  // parenthesize anything that is not an atom of the grammar
  switch (e.kind) {
    case Expr::Kind::Generator:
    case Expr::Kind::Bracket:
    case Expr::Kind::Engel:
      return print(e);
    case Expr::Kind::Product:
      if (e.children.empty()) return "e";
      return "(" + print(e) + ")";
    default:
      return "(" + print(e) + ")";
  }
}

}  // namespace

ExprPtr parse(std::string_view text, int n) { return Parser(text, n).run(); }

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Generator:
      return "x" + std::to_string(e.gen);
    case Expr::Kind::Product: {
      if (e.children.empty()) return "e";
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ' ';
        const Expr& f = *e.children[i];
        out += needs_parens_in_product(f) ? "(" + print(f) + ")" : print(f);
      }
      return out;
    }
    case Expr::Kind::Inverse:
      return print_atom(*e.children[0]) + "^-1";
    case Expr::Kind::Power:
      return print_atom(*e.children[0]) + "^" + e.exponent.to_string();
    case Expr::Kind::Bracket:
      return "[" + print(*e.children[0]) + "," + print(*e.children[1]) + "]";
    case Expr::Kind::Engel:
      return "[" + print(*e.children[0]) + ",_" + std::to_string(e.depth) + " " +
             print(*e.children[1]) + "]";
  }
  throw std::logic_error("unreachable");
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Generator:
      return a.gen == b.gen;
    case Expr::Kind::Power:
      if (a.exponent != b.exponent) return false;
      break;
    case Expr::Kind::Engel:
      if (a.depth != b.depth) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

int max_generator(const Expr& e) {
  int m = e.kind == Expr::Kind::Generator ? e.gen : 0;
  for (const auto& c : e.children) m = std::max(m, max_generator(*c));
  return m;
}

}  // namespace cohen::words
