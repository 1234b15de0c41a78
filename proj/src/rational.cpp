#include "charges/rational.hpp"

#include <cctype>

namespace charges {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::size_t slash = text.find('/');
  auto check_int = [&](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("malformed rational: " + text);
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size())
      throw std::invalid_argument("malformed rational: " + text);
    for (std::size_t i = start; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw std::invalid_argument("malformed rational: " + text);
  };
  // mpz_set_str rejects a leading '+'.
  auto strip_plus = [](std::string part) {
    return part[0] == '+' ? part.substr(1) : part;
  };
  if (slash == std::string::npos) {
    check_int(text);
    return Rational(Integer(strip_plus(text)));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  check_int(num);
  check_int(den);
  num = strip_plus(num);
  den = strip_plus(den);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return 1;
  if (base == 0) {
    if (exp < 0) throw std::invalid_argument("zero to a negative power");
    return 0;
  }
  unsigned long mag = exp < 0 ? -static_cast<unsigned long>(exp) : exp;
  Integer num = int_pow(Integer(base.get_num()), mag);
  Integer den = int_pow(Integer(base.get_den()), mag);
  Rational out = exp < 0 ? Rational(den, num) : Rational(num, den);
  out.canonicalize();
  return out;
}

std::optional<Integer> exact_root(const Integer& value, unsigned long n) {
  if (value < 0) return std::nullopt;
  Integer root, rem;
  mpz_rootrem(root.get_mpz_t(), rem.get_mpz_t(), value.get_mpz_t(), n);
  if (rem != 0) return std::nullopt;
  return root;
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  Rational v = value;
  v.canonicalize();  // get_num/get_den below need lowest terms
  auto num = exact_root(Integer(v.get_num()), 2);
  if (!num) return std::nullopt;
  auto den = exact_root(Integer(v.get_den()), 2);
  if (!den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

std::pair<unsigned long, Rational> primitive_root(const Rational& value) {
  Rational v = value;
  v.canonicalize();  // get_num/get_den below need lowest terms
  if (v <= 0 || v == 1)
    throw std::invalid_argument("primitive_root requires value > 0, != 1");
  Integer num(v.get_num()), den(v.get_den());
  // Largest k with num and den both perfect k-th powers. num or den >= 2
  // here, so k is bounded by its bit length.
  unsigned long max_k =
      mpz_sizeinbase((num > den ? num : den).get_mpz_t(), 2);
  unsigned long best = 1;
  Rational root = v;
  for (unsigned long k = 2; k <= max_k; ++k) {
    auto rn = exact_root(num, k);
    if (!rn) continue;
    auto rd = exact_root(den, k);
    if (!rd) continue;
    Rational r(*rn, *rd);
    r.canonicalize();
    best = k;
    root = r;
  }
  return {best, root};
}

}  // namespace charges
