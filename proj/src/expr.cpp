#include "charges/expr.hpp"

#include <cctype>
#include <map>

namespace charges {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  AtomicCharge parse() {
    skip_space();
    if (done()) fail("empty measure expression");
    // Leading sign accepted as a convenience for printed charges.
    int sign = take_sign();
    term(sign);
    skip_space();
    while (!done()) {
      int s = take_sign();
      if (s == 0) fail("expected '+' or '-'");
      skip_space();
      term(s);
      skip_space();
    }
    std::vector<Atom> atoms;
    atoms.reserve(sums_.size());
    for (const auto& [value, coeff] : sums_) atoms.push_back({value, coeff});
    return from_atoms(atoms);
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw DomainError(ErrorCode::SyntaxError,
                      message + " at offset " + std::to_string(pos_), pos_);
  }

  int take_sign() {
    if (done()) return 0;
    if (peek() == '+') {
      ++pos_;
      return 1;
    }
    if (peek() == '-') {
      ++pos_;
      return -1;
    }
    return 0;
  }

  Rational rational() {
    skip_space();
    std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected a rational number");
    std::string num = text_.substr(start, pos_ - start);
    if (!done() && peek() == '/') {
      ++pos_;
      std::size_t den_start = pos_;
      while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == den_start) fail("expected a denominator");
      std::string den = text_.substr(den_start, pos_ - den_start);
      Integer d(den);
      if (d == 0) fail("zero denominator");
      Rational r(Integer(num), d);
      r.canonicalize();
      return r;
    }
    return Rational(Integer(num));
  }

  void expect(char c) {
    skip_space();
    if (done() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void term(int sign) {
    skip_space();
    if (done()) fail("expected a term");
    Rational coefficient = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coefficient = rational();
      skip_space();
      if (!done() && peek() == '*') {
        ++pos_;
        skip_space();
      }
    }
    if (done() || peek() != 'd') fail("expected 'd('");
    ++pos_;
    expect('(');
    Rational value = rational();
    expect(')');
    sums_[value] += (sign == 0 ? 1 : sign) * coefficient;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::map<Rational, Rational> sums_;
};

std::string magnitude_term(const Rational& coeff, const Rational& value) {
  Rational mag = abs(coeff);
  std::string atom = "d(" + to_string(value) + ")";
  return mag == 1 ? atom : to_string(mag) + "*" + atom;
}

}  // namespace

AtomicCharge parse_measure(const std::string& text) { return Parser(text).parse(); }

std::string print_measure(const AtomicCharge& mu) {
  if (mu.is_zero()) return "0*d(1)";
  std::string out;
  bool first = true;
  auto append = [&](const Rational& coeff, const Rational& value) {
    if (first) {
      if (coeff < 0) out += "-";
      first = false;
    } else {
      out += coeff < 0 ? " - " : " + ";
    }
    out += magnitude_term(coeff, value);
  };
  if (mu.mass_at_zero() != 0) append(mu.mass_at_zero(), 0);
  std::int64_t mod = std::int64_t{1} << mu.refinement();
  for (const auto& [k, c] : mu.terms()) {
    if (k % mod != 0)
      throw DomainError(ErrorCode::NonIntegerExponent,
                        "atom value lambda^(" + to_string(mu.exponent_of(k)) +
                            ") is irrational; no expression form");
    append(c, mu.value_of(k));
  }
  return out;
}

}  // namespace charges
