// Decidable checks for the named identities and loop classes.
//
// Every check is an exhaustive sweep over the variables of the identity in
// lexicographic order with early exit, so the reported counterexample is the
// first one in that order and is reproducible.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qf/qcore.hpp"

namespace qf {

enum class LawId {
  f_left,
  f_right,
  moufang1,
  moufang2,
  moufang3,
  moufang4,
  medial,
  distributive,
  symmetric,
  idempotent,
  unipotent,
  associative,
  commutative,
};

std::string_view law_name(LawId law) noexcept;
// Throws unknown_law.
LawId parse_law(std::string_view name);
std::span<LawId const> all_laws() noexcept;
// Number of quantified variables.
std::size_t law_arity(LawId law) noexcept;

struct LawReport {
  std::string law;
  bool holds = true;
  std::optional<std::vector<Element>> witness;
  std::string note;
};

// Default budget of law evaluations per call; QF_WORK_CAP overrides it.
std::uint64_t default_work_cap();

struct SweepOptions {
  std::uint64_t work_cap = default_work_cap();
};

LawReport check_law(CayleyTable const& q, LawId law, SweepOptions const& options = {});

// Evaluates one instance of the law. vars.size() must equal law_arity(law).
bool law_holds_at(CayleyTable const& q, LawId law, std::span<Element const> vars);

inline bool holds(CayleyTable const& q, LawId law) { return check_law(q, law).holds; }
bool is_f_quasigroup(CayleyTable const& q);
bool is_moufang(CayleyTable const& q);
bool is_group(CayleyTable const& q);

enum class KMedialMode {
  // Uses xx*yx = xy*xx for k >= 2 once q is known to be an F-quasigroup.
  automatic,
  // Generates every subquasigroup with at most k generators and sweeps
  // the medial law inside it.
  exhaustive,
};

// k = 1, 2, 3 checks monomedial, dimedial, trimedial. A failing report's
// witness is the generator tuple of a nonmedial subquasigroup.
LawReport k_medial(CayleyTable const& q, int k, KMedialMode mode = KMedialMode::automatic,
                   SweepOptions const& options = {});

// Stabilizer of zero in the multiplication group, generated by the maps
// L(x,y), R(x,y) and T(x). Sorted.
std::vector<Permutation> inner_mappings(FiniteLoop const& loop, std::size_t cap = 200000);

bool is_automorphism(FiniteLoop const& loop, Permutation const& f);
bool is_automorphism(CayleyTable const& q, std::span<Element const> f);

LawReport is_a_loop(FiniteLoop const& loop, std::size_t cap = 200000);

// Left: c + f(x+y) = (c + f(x)) + f(y). Right: f(x+y) + c = f(x) + (f(y) + c).
bool is_pseudoautomorphism(FiniteLoop const& loop, Permutation const& f, Element c, Side side);

LawReport is_diassociative(FiniteLoop const& loop, SweepOptions const& options = {});

}  // namespace qf
