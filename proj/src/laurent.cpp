#include "twistvol/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace twistvol {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("LaurentPoly coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("LaurentPoly coefficient overflow");
  return r;
}

}  // namespace

LaurentPoly LaurentPoly::monomial(Coeff c, int exponent, Variable v) {
  LaurentPoly p(v);
  p.add_term(c, exponent);
  return p;
}

LaurentPoly::Coeff LaurentPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("degree of zero polynomial");
  return terms_.rbegin()->first;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("degree of zero polynomial");
  return terms_.begin()->first;
}

void LaurentPoly::add_term(Coeff c, int exponent) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto [e, c] : o.terms_) add_term(c, e);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto [e, c] : o.terms_) add_term(checked_mul(c, -1), e);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r(var_);
  for (auto [e1, c1] : terms_)
    for (auto [e2, c2] : o.terms_) r.add_term(checked_mul(c1, c2), e1 + e2);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(var_);
  for (auto [e, c] : terms_) r.add_term(checked_mul(c, -1), e);
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result = constant(1, var_);
  LaurentPoly base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::scale_exponents(int factor) const {
  LaurentPoly r(var_);
  for (auto [e, c] : terms_) r.add_term(c, e * factor);
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r(var_);
  for (auto [e, c] : terms_) r.terms_.emplace(e + k, c);
  return r;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  LaurentPoly remainder = *this;
  LaurentPoly quotient(var_);
  const int dtop = divisor.max_exponent();
  const Coeff lead = divisor.coeff(dtop);
  // Long division from the top; terminates once the remainder's span is
  // shorter than the divisor's.
  while (!remainder.is_zero()) {
    if (remainder.max_exponent() - remainder.min_exponent() < dtop - divisor.min_exponent())
      return std::nullopt;
    const int rtop = remainder.max_exponent();
    const Coeff rc = remainder.coeff(rtop);
    if (rc % lead != 0) return std::nullopt;
    LaurentPoly step = monomial(rc / lead, rtop - dtop, var_);
    quotient += step;
    remainder -= step * divisor;
  }
  return quotient;
}

LaurentPoly LaurentPoly::with_variable(Variable v) const {
  LaurentPoly r = *this;
  r.var_ = v;
  return r;
}

std::vector<std::pair<int, LaurentPoly::Coeff>> LaurentPoly::descending() const {
  return {terms_.rbegin(), terms_.rend()};
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  const char* name = var_ == Variable::A ? "A" : "q";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    Coeff mag = c < 0 ? -c : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << name;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

LaurentPoly loop_value() {
  LaurentPoly d(Variable::A);
  d.add_term(-1, 2);
  d.add_term(-1, -2);
  return d;
}

}  // namespace twistvol
