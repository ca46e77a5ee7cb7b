#pragma once

#include <optional>
#include <string>

#include "twistvol/diagram.hpp"
#include "twistvol/laurent.hpp"
#include "twistvol/states.hpp"

namespace twistvol {

struct BracketOptions {
  int crossing_limit = 24;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Sum over all 2^c states of A^(#A - #B) d^(circles - 1), d = -A^2 - A^-2.
LaurentPoly kauffman_bracket(const LinkDiagram& d, BracketOptions opts = {});
/// Crossing-by-crossing skein expansion, memoized on the connectivity of the
/// unresolved slots.
LaurentPoly kauffman_bracket_skein(const LinkDiagram& d, BracketOptions opts = {});

/// Top two and bottom two coefficients at a fixed exponent step (4 for the
/// bracket in A, 2 for Jones in q).
struct CoefficientSummary {
  LaurentPoly::Coeff alpha = 0, beta = 0, beta_prime = 0, alpha_prime = 0;
  int top = 0, bottom = 0;
};

CoefficientSummary summarize(const LaurentPoly& p, int step);

struct JonesResult {
  LaurentPoly poly;  // in q = A^-2, t = q^2
  CoefficientSummary summary;
  int writhe = 0;
};

/// (-A)^(-3w) <D>, rewritten in q = A^-2.
JonesResult jones_from_bracket(const LaurentPoly& bracket, int writhe);
JonesResult jones(const LinkDiagram& d, BracketOptions opts = {});

struct StoimenowReport {
  bool a_adequate = false, b_adequate = false;
  long long abs_beta = 0, abs_beta_prime = 0;
  int e_a = 0, e_b = 0, v_a = 0, v_b = 0;
  bool beta_matches = false;        // |beta| = e'_A - v_A + 1
  bool beta_prime_matches = false;  // |beta'| = e'_B - v_B + 1
  bool sum_matches = false;         // |beta| + |beta'| = e'_A + e'_B - v_A - v_B + 2
  bool alpha_unit = false, alpha_prime_unit = false;
  bool jones_agrees = false;  // same |beta| + |beta'| read off the Jones polynomial
};

/// Throws HypothesisError unless the diagram is connected and adequate on at
/// least one side.
StoimenowReport check_stoimenow(const LinkDiagram& d, const StateGraph& ga, const StateGraph& gb,
                                const LaurentPoly& bracket);

struct CoefficientBoundsReport {
  long long beta_sum = 0;  // |beta| + |beta'|
  int tw = 0;
  bool adequate = false;
  bool upper_gated = false, lower_gated = false;
  bool upper_holds = false;  // beta_sum <= 2 tw
  bool lower_holds = false;  // beta_sum >= tw / 3 + 1
  std::string note;
};

CoefficientBoundsReport coefficient_bounds(const LinkDiagram& d, const TwistDecomposition& t,
                                           const LaurentPoly& bracket);

}  // namespace twistvol
