// Loop isotopes and arithmetic forms of F-quasigroups.
//
// An arithmetic form (L, f, g, e) over an NK-loop L = (Q,+) describes the
// quasigroup x*y = (f(x) + e) + g(y). The construction pipeline here takes
// an F-quasigroup and a basepoint r, builds the loop isotope at
// (alpha(r), beta(r)), reads off f, g and e, and asserts every structural
// conclusion along the way. Basepoint shifts move the neutral element to any
// w = k + n with k in K(L) and n in N(L).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qf/qcore.hpp"

namespace qf {

struct ArithmeticForm {
  FiniteLoop loop;
  Permutation f;
  Permutation g;
  Element e = 0;
  // e lies in the center of the loop.
  bool strong = false;

  friend bool operator==(ArithmeticForm const&, ArithmeticForm const&) = default;
};

// (f(x) + e) + g(y) in the loop of the form.
Element form_product(ArithmeticForm const& form, Element x, Element y);

// Diagnostic data of form_at. p and q are maps, not permutations: for a
// group alpha is constant and so is p.
struct FormTrace {
  Element r = 0;
  Element a = 0;
  Element b = 0;
  Permutation h;
  Permutation k;
  Element c = 0;
  Element d = 0;
  std::vector<Element> p;
  std::vector<Element> q;
};

// x + y = (x/a)(b\y) with neutral element ba.
FiniteLoop principal_isotope(CayleyTable const& q, Element a, Element b);

struct FormAt {
  ArithmeticForm form;
  FormTrace trace;
};
// Throws not_f, or internal_assertion_failed if a conclusion of the
// construction does not hold.
FormAt form_at(CayleyTable const& q, Element r);

struct AxiomResult {
  std::string name;
  bool holds = true;
  std::vector<Element> witness;
};

struct FormReport {
  std::vector<AxiomResult> axioms;
  // Result of the named axiom; throws if it was not checked.
  bool passed(std::string const& name) const;
  bool all_passed() const;
};

// Checks each axiom independently:
//   nk_loop, automorphisms, commute, plus_in_n, minus_in_k, e_in_n,
//   association (both groupings of f(x) + e + g(y) agree),
//   reconstruction (only when target is given: x*y matches the form),
//   strong (only when strong is requested: e central, and
//   f(x) + g(y) + e agrees with f(x) + e + g(y)).
FormReport verify_form(ArithmeticForm const& form, bool strong, CayleyTable const* target = nullptr);

struct PointedTable {
  CayleyTable table;
  Element point = 0;

  friend bool operator==(PointedTable const&, PointedTable const&) = default;
};

// The quasigroup of a form, pointed at the loop's zero. Throws invalid_form.
PointedTable psi(ArithmeticForm const& form);

// The unique form of q whose loop has neutral element w. Throws not_f.
ArithmeticForm phi(CayleyTable const& q, Element w);

// tau(x) = (x + b) + a, the isomorphism from the old loop onto the shifted one.
Permutation shift_map(FiniteLoop const& loop, Element a, Element b);

// Moves the neutral element to b + a for a in K and b in N. Throws
// not_strong_input or bad_shift.
ArithmeticForm basepoint_shift(ArithmeticForm const& form, Element a, Element b);

// x o y = f(x) + g(y). Throws invalid_form unless the form is strong.
CayleyTable companion_quasigroup(ArithmeticForm const& form);

}  // namespace qf
