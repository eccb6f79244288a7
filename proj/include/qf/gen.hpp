// Exhaustive Latin square enumeration, the example zoo, direct products and
// seeded random arithmetic forms.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qf/forms.hpp"
#include "qf/laws.hpp"
#include "qf/qcore.hpp"

namespace qf {

// all: every Latin square. reduced: first row and column in natural order.
// loops: every table with a two-sided neutral element.
enum class EnumMode { all, reduced, loops };
std::string_view to_string(EnumMode mode) noexcept;
EnumMode parse_enum_mode(std::string_view name);

inline constexpr std::size_t kEnumCapAll = 5;
inline constexpr std::size_t kEnumCapOther = 6;

struct EnumSpec {
  std::size_t order = 1;
  EnumMode mode = EnumMode::all;
  std::vector<LawId> filter;
  std::optional<std::uint64_t> limit;
};

// Receives each surviving table. May be empty for a count-only run.
using TableConsumer = std::function<void(CayleyTable const&)>;

// Streams tables in lexicographic row-major order and returns how many were
// streamed. Throws cap_exceeded when the order is above the mode's cap.
std::uint64_t enumerate(EnumSpec const& spec, TableConsumer const& consumer = {});

// Values of the first `depth` cells of every partial square in the search
// forest, in lexicographic order. Each prefix has exactly `depth` entries.
std::vector<std::vector<Element>> split_prefixes(EnumSpec const& spec, std::size_t depth);

// Completions of one prefix. Concatenating the streams of all prefixes of a
// split reproduces the full stream. The limit is applied per subtree.
std::uint64_t enumerate_subtree(EnumSpec const& spec, std::span<Element const> prefix,
                                TableConsumer const& consumer = {});

// Runs enumerate_subtree on every prefix with up to `threads` workers. The
// consumer for prefix i is make_consumer(i); it must only touch state owned
// by index i. Returns per-prefix counts in prefix order.
std::vector<std::uint64_t> enumerate_partitioned(EnumSpec const& spec, std::size_t depth, unsigned threads,
                                                 std::function<TableConsumer(std::size_t)> const& make_consumer = {});

// Example identifiers: cyclic(n), s3, zlin(n,f,g,e), chein(id), cml81, sd81,
// shifted(id,a,b), product(id,id).
struct ExampleId {
  std::string name;
  std::vector<std::int64_t> numbers;
  std::vector<ExampleId> children;

  std::string str() const;
  friend bool operator==(ExampleId const&, ExampleId const&) = default;
};
// Throws bad_example.
ExampleId parse_example(std::string_view text);

// Builds the table and runs its sanity suite; throws example_sanity_failed
// if the suite fails and bad_example on invalid parameters.
CayleyTable builtin(ExampleId const& id);
CayleyTable builtin(std::string_view text);

// Element (x1, x2) is x1 * |Q2| + x2. Throws cap_exceeded.
CayleyTable direct_product(CayleyTable const& q1, CayleyTable const& q2);

// Identity, negation when it is an automorphism, and up to `extra` further
// automorphisms from random images of a generating sequence. Sorted, no
// duplicates.
std::vector<Permutation> automorphism_pool(FiniteLoop const& loop, std::mt19937_64& rng, std::size_t extra = 8);

struct RandomFormOptions {
  // Example ids of candidate loops; empty means the default zoo.
  std::vector<std::string> components;
  std::size_t max_attempts = 500;
};
std::vector<std::string> default_form_components();

// Rejection-sampled form whose axioms 2 to 5 hold; e is drawn from the
// nucleus. Deterministic per seed. Throws exhausted_attempts.
ArithmeticForm random_form(std::uint64_t seed, RandomFormOptions const& options = {});

}  // namespace qf
