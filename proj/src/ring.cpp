#include "chowcalc/ring.hpp"

#include <algorithm>
#include <cctype>

#include "chowcalc/error.hpp"
#include "chowcalc/kernels.hpp"

namespace chowcalc::ring {

RingContext::RingContext(std::vector<Variable> variables, int truncation)
    : variables_(std::move(variables)), truncation_(truncation) {}

Context RingContext::make(std::vector<Variable> variables, int truncation) {
  if (truncation < 0) fail(ErrorKind::Validation, "truncation must be nonnegative");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    if (v.name.empty() || !std::isalpha(static_cast<unsigned char>(v.name[0])))
      fail(ErrorKind::Validation, "invalid variable name '" + v.name + "'");
    for (char ch : v.name)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
        fail(ErrorKind::Validation, "invalid variable name '" + v.name + "'");
    if (v.degree < 0) fail(ErrorKind::Validation, "variable '" + v.name + "' has negative degree");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[j].name == v.name)
        fail(ErrorKind::Validation, "duplicate variable '" + v.name + "'");
  }
  return Context(new RingContext(std::move(variables), truncation));
}

std::optional<std::size_t> RingContext::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i].name == name) return i;
  return std::nullopt;
}

std::size_t RingContext::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  fail(ErrorKind::Validation, "unknown variable '" + std::string(name) + "'");
}

bool same_context(const Context& a, const Context& b) {
  return a == b || (a && b && *a == *b);
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out{a.degree + b.degree, a.exps};
  for (std::size_t i = 0; i < out.exps.size(); ++i) out.exps[i] += b.exps[i];
  return out;
}

GradedClass::GradedClass(Context ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) fail(ErrorKind::ContextMismatch, "null ring context");
}

GradedClass::GradedClass(Context ctx, Terms terms) : GradedClass(std::move(ctx)) {
  for (auto& [m, c] : terms) insert(m, c);
}

GradedClass GradedClass::constant(Context ctx, const Rational& value) {
  GradedClass out(std::move(ctx));
  out.insert(Monomial{0, std::vector<std::uint16_t>(out.ctx_->size(), 0)}, value);
  return out;
}

GradedClass GradedClass::variable(Context ctx, std::string_view name) {
  GradedClass out(std::move(ctx));
  const std::size_t i = out.ctx_->index(name);
  Monomial m{out.ctx_->variables()[i].degree, std::vector<std::uint16_t>(out.ctx_->size(), 0)};
  m.exps[i] = 1;
  out.insert(m, 1);
  return out;
}

int GradedClass::truncation() const noexcept { return ctx_->truncation(); }

void GradedClass::insert(const Monomial& m, const Rational& c) {
  if (c == 0 || m.degree > ctx_->truncation()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GradedClass::require_same(const GradedClass& other) const {
  if (!same_context(ctx_, other.ctx_))
    fail(ErrorKind::ContextMismatch, "classes live in different ring contexts");
}

Rational GradedClass::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedClass::constant_term() const {
  return coefficient(Monomial{0, std::vector<std::uint16_t>(ctx_->size(), 0)});
}

int GradedClass::top_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree;
}

bool GradedClass::involves(std::string_view name) const {
  const auto i = ctx_->find(name);
  if (!i) return false;
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.exps[*i] != 0; });
}

GradedClass GradedClass::degree_part(int d) const {
  if (d < 0 || d > ctx_->truncation())
    fail(ErrorKind::OutOfRange, "degree " + std::to_string(d) + " outside [0, " +
                                    std::to_string(ctx_->truncation()) + "]");
  GradedClass out(ctx_);
  for (const auto& [m, c] : terms_)
    if (m.degree == d) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

GradedClass GradedClass::operator+(const GradedClass& other) const {
  GradedClass out = *this;
  out += other;
  return out;
}

GradedClass& GradedClass::operator+=(const GradedClass& other) {
  require_same(other);
  for (const auto& [m, c] : other.terms_) insert(m, c);
  return *this;
}

GradedClass GradedClass::operator-() const {
  GradedClass out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

GradedClass GradedClass::operator-(const GradedClass& other) const { return *this + (-other); }

GradedClass GradedClass::operator*(const Rational& scalar) const {
  if (scalar == 0) return GradedClass(ctx_);
  GradedClass out = *this;
  for (auto& t : out.terms_) t.second *= scalar;
  return out;
}

GradedClass GradedClass::operator*(const GradedClass& other) const {
  require_same(other);
  GradedClass out(ctx_);
  if (terms_.size() * other.terms_.size() >= kernels::kParallelMultiplyThreshold)
    out.terms_ = kernels::omp::multiply(terms_, other.terms_, ctx_->truncation());
  else
    out.terms_ = kernels::serial::multiply(terms_, other.terms_, ctx_->truncation());
  return out;
}

GradedClass GradedClass::pow(unsigned k) const {
  GradedClass result = one(ctx_);
  GradedClass base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

GradedClass GradedClass::inverse() const {
  const GradedClass low = degree_part(0);
  const Rational c0 = constant_term();
  if (c0 == 0 || low.size() != 1)
    fail(ErrorKind::InconsistentInput,
         "class is not invertible: degree-0 part '" + low.to_string() + "' is not a nonzero constant");
  // this = c0 (1 + x) with x nilpotent of positive degree; x^k vanishes once
  // k exceeds the truncation.
  const GradedClass x = (*this * (Rational(1) / c0)) - one(ctx_);
  GradedClass result = one(ctx_);
  GradedClass power = one(ctx_);
  for (int k = 1; k <= ctx_->truncation(); ++k) {
    power = power * (-x);
    if (power.is_zero()) break;
    result += power;
  }
  return result * (Rational(1) / c0);
}

GradedClass GradedClass::substitute(std::string_view name, const Rational& value) const {
  const std::size_t i = ctx_->index(name);
  const int deg = ctx_->variables()[i].degree;
  GradedClass out(ctx_);
  for (const auto& [m, c] : terms_) {
    const unsigned k = m.exps[i];
    if (k == 0) {
      out.insert(m, c);
      continue;
    }
    if (value == 0) continue;
    Monomial reduced = m;
    reduced.exps[i] = 0;
    reduced.degree -= deg * static_cast<int>(k);
    Rational factor = 1;
    for (unsigned j = 0; j < k; ++j) factor *= value;
    out.insert(reduced, c * factor);
  }
  return out;
}

std::map<int, GradedClass> GradedClass::coefficients_in(std::string_view name) const {
  const std::size_t i = ctx_->index(name);
  const int deg = ctx_->variables()[i].degree;
  std::map<int, GradedClass> out;
  for (const auto& [m, c] : terms_) {
    const int k = m.exps[i];
    Monomial reduced = m;
    reduced.exps[i] = 0;
    reduced.degree -= deg * k;
    out.try_emplace(k, ctx_).first->second.insert(reduced, c);
  }
  return out;
}

bool GradedClass::operator==(const GradedClass& other) const {
  return same_context(ctx_, other.ctx_) && terms_ == other.terms_;
}

std::string monomial_to_string(const Monomial& m, const RingContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ctx.variables()[i].name;
    if (m.exps[i] > 1) out += '^' + std::to_string(m.exps[i]);
  }
  return out.empty() ? "1" : out;
}

std::string GradedClass::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    const std::string mono = monomial_to_string(m, *ctx_);
    std::string body;
    if (mono == "1")
      body = format_rational(mag);
    else if (mag == 1)
      body = mono;
    else
      body = format_rational(mag) + "*" + mono;
    if (first)
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> GradedClass::canonical_terms() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.emplace_back(monomial_to_string(m, *ctx_), format_rational(c));
  return out;
}

Monomial parse_monomial(std::string_view text, const RingContext& ctx) {
  Monomial m{0, std::vector<std::uint16_t>(ctx.size(), 0)};
  if (text == "1") return m;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t star = std::min(text.find('*', pos), text.size());
    const std::string_view factor = text.substr(pos, star - pos);
    const std::size_t caret = factor.find('^');
    const std::string_view name = factor.substr(0, caret);
    unsigned power = 1;
    if (caret != std::string_view::npos) {
      const std::string_view digits = factor.substr(caret + 1);
      if (digits.empty()) fail(ErrorKind::Parse, "missing exponent in '" + std::string(text) + "'");
      power = 0;
      for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
          fail(ErrorKind::Parse, "bad exponent in '" + std::string(text) + "'");
        power = power * 10 + static_cast<unsigned>(ch - '0');
      }
    }
    const auto i = ctx.find(name);
    if (!i) fail(ErrorKind::Parse, "unknown variable '" + std::string(name) + "'");
    m.exps[*i] = static_cast<std::uint16_t>(m.exps[*i] + power);
    m.degree += ctx.variables()[*i].degree * static_cast<int>(power);
    pos = star + 1;
  }
  return m;
}

GradedClass GradedClass::parse(Context ctx, std::string_view text) {
  GradedClass out(ctx);
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  if (compact.empty()) fail(ErrorKind::Parse, "empty class expression");
  std::size_t pos = 0;
  while (pos < compact.size()) {
    bool negative = false;
    if (compact[pos] == '+' || compact[pos] == '-') {
      negative = compact[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      fail(ErrorKind::Parse, "expected '+' or '-' in '" + std::string(text) + "'");
    }
    std::size_t end = pos;
    while (end < compact.size() && compact[end] != '+' && compact[end] != '-') ++end;
    const std::string_view term = std::string_view(compact).substr(pos, end - pos);
    if (term.empty()) fail(ErrorKind::Parse, "empty term in '" + std::string(text) + "'");
    Rational coeff = negative ? -1 : 1;
    Monomial m{0, std::vector<std::uint16_t>(ctx->size(), 0)};
    std::size_t fpos = 0;
    while (fpos <= term.size()) {
      const std::size_t star = std::min(term.find('*', fpos), term.size());
      const std::string_view factor = term.substr(fpos, star - fpos);
      if (factor.empty()) fail(ErrorKind::Parse, "empty factor in '" + std::string(text) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0])))
        coeff *= parse_rational(factor);
      else
        m = monomial_product(m, parse_monomial(factor, *ctx));
      fpos = star + 1;
    }
    out.insert(m, coeff);
    pos = end;
  }
  return out;
}

GradedClass GradedClass::from_terms(Context ctx,
                                    const std::vector<std::pair<std::string, std::string>>& terms) {
  GradedClass out(ctx);
  for (const auto& [mono, coeff] : terms) out.insert(parse_monomial(mono, *ctx), parse_rational(coeff));
  return out;
}

GradedClass degree_part(const GradedClass& a, int d) { return a.degree_part(d); }
GradedClass mul(const GradedClass& a, const GradedClass& b) { return a * b; }

}  // namespace chowcalc::ring
