// Finite quasigroups and loops given by Cayley tables.
//
// Elements are dense indices 0..n-1. A CayleyTable is immutable once
// validated; the left and right division tables are built eagerly because
// nearly every algorithm in this library divides inside its inner loop.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qf {

using Element = std::uint32_t;

// Soft limit on the order accepted by CayleyTable. Individual algorithms
// document tighter caps of their own.
inline constexpr std::size_t kMaxOrder = 4096;

enum class ErrorKind {
  not_latin,
  bad_symbol,
  bad_order,
  not_loop,
  unknown_law,
  size_cap_exceeded,
  internal_inconsistency,
  not_nk,
  not_normal,
  not_congruence,
  not_f,
  internal_assertion_failed,
  invalid_form,
  not_strong_input,
  bad_shift,
  cap_exceeded,
  example_sanity_failed,
  exhausted_attempts,
  parse_error,
  bad_example,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Side { left, right };

// A bijection of 0..n-1. Composition follows function notation:
// compose(f, g)(x) = f(g(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Element> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  Element operator()(Element x) const { return images_[x]; }
  std::span<Element const> images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;
  // Sorted cycle lengths.
  std::vector<std::size_t> cycle_type() const;
  // Smallest k > 0 with p^k = identity.
  std::uint64_t order() const;

  friend Permutation compose(Permutation const& outer, Permutation const& inner);

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const&, Permutation const&) = default;

 private:
  std::vector<Element> images_;
};

struct PermutationHash {
  std::size_t operator()(Permutation const& p) const noexcept;
};

class CayleyTable {
 public:
  // Row-major entries: entries[x * order + y] = x*y.
  static CayleyTable from_table(std::size_t order, std::span<Element const> entries);
  static CayleyTable from_rows(std::vector<std::vector<Element>> const& rows);

  template <typename Product>
  static CayleyTable from_function(std::size_t order, Product&& product) {
    std::vector<Element> entries(order * order);
    for (std::size_t x = 0; x < order; ++x) {
      for (std::size_t y = 0; y < order; ++y) {
        entries[x * order + y] = static_cast<Element>(product(static_cast<Element>(x), static_cast<Element>(y)));
      }
    }
    return from_table(order, entries);
  }

  std::size_t order() const noexcept { return order_; }

  Element mul(Element x, Element y) const { return mul_[x * order_ + y]; }
  // The unique z with x*z = y.
  Element ldiv(Element x, Element y) const { return ldiv_[x * order_ + y]; }
  // The unique z with z*y = x.
  Element rdiv(Element x, Element y) const { return rdiv_[x * order_ + y]; }

  // x\x, the local right unit of x.
  Element alpha(Element x) const { return ldiv(x, x); }
  // x/x, the local left unit of x.
  Element beta(Element x) const { return rdiv(x, x); }

  Permutation translation(Element a, Side side) const;
  std::vector<Element> row(Element x) const;
  std::vector<Element> entries() const;

  friend bool operator==(CayleyTable const& a, CayleyTable const& b) {
    return a.order_ == b.order_ && a.mul_ == b.mul_;
  }

 private:
  CayleyTable() = default;

  std::size_t order_ = 0;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> ldiv_;
  std::vector<std::uint16_t> rdiv_;
};

// A quasigroup together with its two-sided neutral element. Loop operations
// are written additively in comments; the member functions keep the
// quasigroup names.
class FiniteLoop {
 public:
  FiniteLoop(CayleyTable table, Element zero);

  // The loop structure of q, if q has a two-sided neutral element.
  static std::optional<FiniteLoop> from_quasigroup(CayleyTable const& q);

  CayleyTable const& table() const noexcept { return table_; }
  Element zero() const noexcept { return zero_; }
  std::size_t order() const noexcept { return table_.order(); }

  Element mul(Element x, Element y) const { return table_.mul(x, y); }
  Element ldiv(Element x, Element y) const { return table_.ldiv(x, y); }
  Element rdiv(Element x, Element y) const { return table_.rdiv(x, y); }
  // Right inverse: x + inv(x) = 0. Two-sided in every Moufang loop.
  Element inv(Element x) const { return table_.ldiv(x, zero_); }

  friend bool operator==(FiniteLoop const& a, FiniteLoop const& b) {
    return a.zero_ == b.zero_ && a.table_ == b.table_;
  }

 private:
  CayleyTable table_;
  Element zero_;
};

// Closure of a set of permutations under composition. Throws
// size_cap_exceeded once more than cap elements have been produced.
std::vector<Permutation> generate_group(std::vector<Permutation> const& generators, std::size_t degree,
                                        std::size_t cap);

}  // namespace qf
