#ifndef COHEN_EXPR_HPP
#define COHEN_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cohen/bigint.hpp"

namespace cohen::words {

struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Group-word syntax tree. No group semantics live here: products are
/// n-ary and uninterpreted, powers carry exact integer exponents, and an
/// Engel node [a,_k b] stays folded until collection.
struct Expr {
  enum class Kind { Generator, Product, Inverse, Power, Bracket, Engel };

  Kind kind;
  int gen = 0;                    // Generator: index in 1..n
  std::vector<ExprPtr> children;  // Product factors, or operands
  BigInt exponent;                // Power
  int depth = 0;                  // Engel, >= 1
};

ExprPtr make_generator(int index);
ExprPtr make_product(std::vector<ExprPtr> factors);
ExprPtr make_identity();  // empty product
ExprPtr make_inverse(ExprPtr e);
ExprPtr make_power(ExprPtr base, BigInt exponent);
ExprPtr make_bracket(ExprPtr lhs, ExprPtr rhs);
ExprPtr make_engel(ExprPtr x, ExprPtr y, int depth);

/// [x,_k y] unfolded to depth-1 nested brackets: [[..[x,y],y..],y].
ExprPtr engel(ExprPtr x, ExprPtr y, int depth);

/// Parses the concrete syntax
///   expr := factor+ ; factor := atom ("^" signed-int)?
///   atom := "x" int | "(" expr ")" | "[" expr "," expr "]"
///         | "[" expr ",_" int expr "]" | "e"
/// Generator indices must lie in 1..n. Whitespace-insensitive.
ExprPtr parse(std::string_view text, int n);

/// Canonical concrete syntax; parse(print(e)) rebuilds e for every tree
/// the grammar can denote. Inverse nodes print as "^-1".
std::string print(const Expr& e);
inline std::string print(const ExprPtr& e) { return print(*e); }

bool structurally_equal(const Expr& a, const Expr& b);
inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  return structurally_equal(*a, *b);
}

/// Largest generator index appearing in the tree, 0 for constant trees.
int max_generator(const Expr& e);

}  // namespace cohen::words

#endif
