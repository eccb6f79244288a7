// Shared corpus for the test binaries.

#pragma once

#include <vector>

#include "qf/forms.hpp"
#include "qf/gen.hpp"
#include "qf/laws.hpp"
#include "qf/qcore.hpp"
#include "qf/structure.hpp"

namespace qf::test {

inline CayleyTable const& q5() {
  static CayleyTable const t = builtin("zlin(5,2,3,1)");
  return t;
}

inline CayleyTable const& s3() {
  static CayleyTable const t = builtin("s3");
  return t;
}

inline CayleyTable const& cml81() {
  static CayleyTable const t = builtin("cml81");
  return t;
}

inline CayleyTable const& sd81() {
  static CayleyTable const t = builtin("sd81");
  return t;
}

inline FiniteLoop loop_of(CayleyTable const& t) { return *FiniteLoop::from_quasigroup(t); }

// A non-strong linear quasigroup over S3 x Z2: x*y = (x + e) + y with e a
// transposition, so e lies in N but not in Z.
inline CayleyTable const& z2s3_linear() {
  static CayleyTable const t = [] {
    FiniteLoop loop = loop_of(builtin("product(s3,cyclic(2))"));
    // Element 2 of S3 (the transposition 102) paired with 0 of Z2.
    ArithmeticForm form{loop, Permutation::identity(12), Permutation::identity(12), 4, false};
    return psi(form).table;
  }();
  return t;
}

inline std::vector<ArithmeticForm> const& random_forms() {
  static std::vector<ArithmeticForm> const forms = [] {
    std::vector<ArithmeticForm> out;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) out.push_back(random_form(seed));
    return out;
  }();
  return forms;
}

inline std::vector<CayleyTable> const& random_quasigroups() {
  static std::vector<CayleyTable> const tables = [] {
    std::vector<CayleyTable> out;
    for (ArithmeticForm const& f : random_forms()) out.push_back(psi(f).table);
    return out;
  }();
  return tables;
}

// Q5, S3, SD81, the S3 x Z2 linear quasigroup and the random quasigroups.
inline std::vector<CayleyTable> const& f_corpus() {
  static std::vector<CayleyTable> const tables = [] {
    std::vector<CayleyTable> out{q5(), s3(), sd81(), z2s3_linear()};
    for (CayleyTable const& t : random_quasigroups()) out.push_back(t);
    return out;
  }();
  return tables;
}

// Every F-quasigroup of order 1..max_order.
inline std::vector<CayleyTable> small_f_quasigroups(std::size_t max_order) {
  std::vector<CayleyTable> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    EnumSpec spec{n, EnumMode::all, {LawId::f_left, LawId::f_right}, std::nullopt};
    enumerate(spec, [&](CayleyTable const& t) { out.push_back(t); });
  }
  return out;
}

inline std::vector<FiniteLoop> loops_of_order(std::size_t n, EnumMode mode = EnumMode::loops) {
  std::vector<FiniteLoop> out;
  enumerate(EnumSpec{n, mode, {}, std::nullopt},
            [&](CayleyTable const& t) { out.push_back(*FiniteLoop::from_quasigroup(t)); });
  return out;
}

}  // namespace qf::test

#include "oracles.hpp"

namespace qf::test {

inline oracle::Table to_oracle(CayleyTable const& q) {
  oracle::Table o{static_cast<int>(q.order()), {}};
  for (Element v : q.entries()) o.t.push_back(static_cast<int>(v));
  return o;
}

inline std::vector<Element> as_elements(std::vector<int> const& v) { return {v.begin(), v.end()}; }

}  // namespace qf::test
