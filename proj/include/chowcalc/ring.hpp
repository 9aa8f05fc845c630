#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chowcalc/rational.hpp"

namespace chowcalc::ring {

/// A named generator. Degree 0 marks a scalar parameter (such as the
/// multiplicity n of nD) which never counts toward truncation.
struct Variable {
  std::string name;
  int degree = 1;

  bool operator==(const Variable&) const = default;
};

class RingContext;
using Context = std::shared_ptr<const RingContext>;

/// Variables plus the top retained degree. Immutable once built.
class RingContext {
 public:
  static Context make(std::vector<Variable> variables, int truncation);

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  std::size_t size() const noexcept { return variables_.size(); }
  int truncation() const noexcept { return truncation_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;

  bool operator==(const RingContext& other) const {
    return truncation_ == other.truncation_ && variables_ == other.variables_;
  }

 private:
  RingContext(std::vector<Variable> variables, int truncation);

  std::vector<Variable> variables_;
  int truncation_;
};

bool same_context(const Context& a, const Context& b);

/// Exponent vector with its cached weighted degree. Ordered by degree, then
/// by exponents in descending lexicographic order, so x^2 < xy < y^2 when x
/// is declared first.
struct Monomial {
  int degree = 0;
  std::vector<std::uint16_t> exps;

  bool operator==(const Monomial&) const = default;
  bool operator<(const Monomial& other) const {
    if (degree != other.degree) return degree < other.degree;
    return exps > other.exps;
  }
};

Monomial monomial_product(const Monomial& a, const Monomial& b);

using Terms = std::map<Monomial, Rational>;

/// Truncated graded polynomial with exact rational coefficients.
class GradedClass {
 public:
  explicit GradedClass(Context ctx);
  GradedClass(Context ctx, Terms terms);

  static GradedClass constant(Context ctx, const Rational& value);
  static GradedClass one(Context ctx) { return constant(std::move(ctx), 1); }
  static GradedClass variable(Context ctx, std::string_view name);
  /// Parses the text form written by to_string(), e.g. "1 - 3/2*x^2*y + n*z".
  static GradedClass parse(Context ctx, std::string_view text);
  /// Rebuilds a class from the (monomial, "p/q") pairs of canonical_terms().
  static GradedClass from_terms(Context ctx,
                                const std::vector<std::pair<std::string, std::string>>& terms);

  const Context& context() const noexcept { return ctx_; }
  const Terms& terms() const noexcept { return terms_; }
  int truncation() const noexcept;

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  /// Highest weighted degree present, -1 for the zero class.
  int top_degree() const;
  bool involves(std::string_view name) const;

  GradedClass degree_part(int d) const;
  GradedClass operator+(const GradedClass& other) const;
  GradedClass operator-(const GradedClass& other) const;
  GradedClass operator-() const;
  GradedClass operator*(const GradedClass& other) const;
  GradedClass operator*(const Rational& scalar) const;
  GradedClass& operator+=(const GradedClass& other);
  GradedClass pow(unsigned k) const;
  /// Multiplicative inverse; the degree-0 part must be a nonzero constant.
  GradedClass inverse() const;
  /// Replaces a variable by a rational constant.
  GradedClass substitute(std::string_view name, const Rational& value) const;
  /// Expansion sum_k var^k * coeff_k with var-free coefficients.
  std::map<int, GradedClass> coefficients_in(std::string_view name) const;

  bool operator==(const GradedClass& other) const;

  std::string to_string() const;
  std::vector<std::pair<std::string, std::string>> canonical_terms() const;

 private:
  void require_same(const GradedClass& other) const;
  void insert(const Monomial& m, const Rational& c);

  Context ctx_;
  Terms terms_;
};

GradedClass degree_part(const GradedClass& a, int d);
GradedClass mul(const GradedClass& a, const GradedClass& b);

std::string monomial_to_string(const Monomial& m, const RingContext& ctx);
Monomial parse_monomial(std::string_view text, const RingContext& ctx);

}  // namespace chowcalc::ring
