// Structural subsets, congruences and quotients, regular permutations,
// homomorphisms and isomorphism search.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qf/qcore.hpp"

namespace qf {

// Least subset containing gens that is closed under *, \ and /. Sorted.
std::vector<Element> generate_sub(CayleyTable const& q, std::span<Element const> gens);
bool is_closed(CayleyTable const& q, std::span<Element const> members);

// A closed subset re-indexed as a quasigroup: members[i] is element i of
// the subtable.
struct SubTable {
  CayleyTable table;
  std::vector<Element> members;
};
SubTable restrict_to(CayleyTable const& q, std::span<Element const> members);
FiniteLoop restrict_to(FiniteLoop const& loop, std::span<Element const> members);

enum class SubsetKind { nucleus, moufang_center, commutant, center, m_set };
std::string_view to_string(SubsetKind kind) noexcept;

struct SubsetReport {
  SubsetKind kind;
  std::vector<Element> members;
  bool is_subloop = false;
  std::optional<bool> is_normal;

  bool contains(Element x) const;
};

SubsetReport nucleus(FiniteLoop const& loop);
// Computed from both defining identities; throws internal_inconsistency if
// they disagree.
SubsetReport moufang_center(FiniteLoop const& loop);
SubsetReport commutant(FiniteLoop const& loop);
// N ∩ C, cross-checked against N ∩ K.
SubsetReport center(FiniteLoop const& loop);
// {a : xa*yx = xy*ax for all x, y}. For a quasigroup without a neutral
// element is_subloop means "closed subquasigroup".
SubsetReport m_set(CayleyTable const& q);

bool is_nk(FiniteLoop const& loop);
// Lexicographically least (n, k) with n in N, k in K and x = n + k.
// Throws not_nk.
std::pair<Element, Element> nk_decompose(FiniteLoop const& loop, Element x);

struct NkCharResult {
  // (x + A(x)) + (y + z) = (x + y) + (A(x) + z) for all x, y, z.
  bool identity_holds = false;
  // Moufang, A(x) in K and -x + A(x) in N for all x.
  bool structural_holds = false;
};
NkCharResult nk_char_holds(FiniteLoop const& loop, std::span<Element const> a_map);

struct PflugfelderResult {
  // (x + y) + (z + A(x)) = x + ((y + z) + A(x))
  bool first = false;
  // (x + y) + (z + A(x)) = (x + (y + z)) + A(x)
  bool second = false;
  // Moufang and -x + A(x) in N for all x.
  bool third = false;
};
PflugfelderResult pflugfelder_holds(FiniteLoop const& loop, std::span<Element const> a_map);

class Congruence {
 public:
  // block_of need not use canonical ids; they are renumbered by least member.
  explicit Congruence(std::vector<Element> const& block_of);

  static Congruence identity(std::size_t n);
  static Congruence universal(std::size_t n);

  std::size_t order() const noexcept { return block_of_.size(); }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  Element block_of(Element x) const { return block_of_[x]; }
  std::vector<Element> const& block_map() const noexcept { return block_of_; }
  std::vector<std::vector<Element>> const& blocks() const noexcept { return blocks_; }
  bool related(Element x, Element y) const { return block_of_[x] == block_of_[y]; }

  friend bool operator==(Congruence const& a, Congruence const& b) { return a.block_of_ == b.block_of_; }

 private:
  std::vector<Element> block_of_;
  std::vector<std::vector<Element>> blocks_;
};

bool is_congruence(CayleyTable const& q, Congruence const& c);
// Least congruence identifying every listed pair.
Congruence generate_congruence(CayleyTable const& q, std::span<std::pair<Element, Element> const> pairs);
// Least congruence with members inside one block; throws not_normal when
// that block is strictly larger than members.
Congruence congruence_from_subloop(CayleyTable const& q, std::span<Element const> members);
// Throws not_congruence.
CayleyTable quotient(CayleyTable const& q, Congruence const& c);

enum class PairFamily { a, b, c };

// a: p(xy) = q(x)y; b: p(xy) = x q(y); c: p(x)y = x q(y).
struct RegularPair {
  PairFamily family;
  Permutation p;
  Permutation q;
};
std::vector<RegularPair> regular_pairs(CayleyTable const& q, PairFamily family);

// Orbits of the regular permutations; requires an F-quasigroup (not_f).
Congruence rho_congruence(CayleyTable const& q);

// Sweeps the three identities characterising FG-quasigroups among
// F-quasigroups and throws internal_inconsistency if they disagree.
bool is_fg(CayleyTable const& q);

bool is_homomorphism(CayleyTable const& src, CayleyTable const& dst, std::span<Element const> map);
// Extends images of gens to a homomorphism src -> dst by closure; nullopt if
// the assignment is inconsistent or the generators do not generate src.
std::optional<std::vector<Element>> extend_homomorphism(CayleyTable const& src, CayleyTable const& dst,
                                                        std::span<Element const> gens,
                                                        std::span<Element const> images);
// A greedy generating sequence: each element is outside the subquasigroup
// generated by its predecessors.
std::vector<Element> generating_sequence(CayleyTable const& q);

inline constexpr std::size_t kIsomorphismCap = 128;
std::optional<Permutation> is_isomorphic(CayleyTable const& a, CayleyTable const& b);

std::vector<Permutation> multiplication_group(CayleyTable const& q, std::size_t cap);

inline constexpr std::size_t kSimpleCap = 64;
bool is_simple(CayleyTable const& q, std::size_t cap = kSimpleCap);

}  // namespace qf
