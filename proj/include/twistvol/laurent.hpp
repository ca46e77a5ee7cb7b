#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twistvol {

enum class Variable { A, q };

/// Sparse Laurent polynomial in one formal variable with exact int64
/// coefficients. Zero coefficients are never stored. Arithmetic throws
/// std::overflow_error rather than wrapping.
class LaurentPoly {
public:
  using Coeff = std::int64_t;

  LaurentPoly() = default;
  explicit LaurentPoly(Variable v) : var_(v) {}
  static LaurentPoly monomial(Coeff c, int exponent, Variable v = Variable::A);
  static LaurentPoly constant(Coeff c, Variable v = Variable::A) { return monomial(c, 0, v); }

  Variable variable() const { return var_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coeff(int exponent) const;
  int max_exponent() const;  // requires !is_zero()
  int min_exponent() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<int, Coeff>& terms() const { return terms_; }

  void add_term(Coeff c, int exponent);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return var_ == o.var_ && terms_ == o.terms_; }

  LaurentPoly pow(unsigned n) const;
  /// Multiply every exponent by `factor` (e.g. A -> A^-1 is factor -1).
  LaurentPoly scale_exponents(int factor) const;
  /// Shift all exponents by k (multiplication by x^k).
  LaurentPoly shifted(int k) const;
  /// Exact division; nullopt if the divisor does not divide *this.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const;
  LaurentPoly with_variable(Variable v) const;

  /// Descending list of (exponent, coefficient).
  std::vector<std::pair<int, Coeff>> descending() const;
  std::string to_string() const;

private:
  Variable var_ = Variable::A;
  std::map<int, Coeff> terms_;
};

/// The loop value -A^2 - A^-2.
LaurentPoly loop_value();

}  // namespace twistvol
