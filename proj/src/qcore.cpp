#include "qf/qcore.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace qf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::not_latin: return "NotLatin";
    case ErrorKind::bad_symbol: return "BadSymbol";
    case ErrorKind::bad_order: return "BadOrder";
    case ErrorKind::not_loop: return "NotLoop";
    case ErrorKind::unknown_law: return "UnknownLaw";
    case ErrorKind::size_cap_exceeded: return "SizeCapExceeded";
    case ErrorKind::internal_inconsistency: return "InternalInconsistency";
    case ErrorKind::not_nk: return "NotNK";
    case ErrorKind::not_normal: return "NotNormal";
    case ErrorKind::not_congruence: return "NotCongruence";
    case ErrorKind::not_f: return "NotF";
    case ErrorKind::internal_assertion_failed: return "InternalAssertionFailed";
    case ErrorKind::invalid_form: return "InvalidForm";
    case ErrorKind::not_strong_input: return "NotStrongInput";
    case ErrorKind::bad_shift: return "BadShift";
    case ErrorKind::cap_exceeded: return "CapExceeded";
    case ErrorKind::example_sanity_failed: return "ExampleSanityFailed";
    case ErrorKind::exhausted_attempts: return "ExhaustedAttempts";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::bad_example: return "BadExample";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string const& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<Element> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Element x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw Error(ErrorKind::bad_symbol, "images do not form a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation result;
  result.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) {
    result.images_[images_[x]] = static_cast<Element>(x);
  }
  return result;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  for (std::size_t len : cycle_type()) {
    result = std::lcm(result, static_cast<std::uint64_t>(len));
  }
  return result;
}

Permutation compose(Permutation const& outer, Permutation const& inner) {
  Permutation result;
  result.images_.resize(inner.images_.size());
  for (std::size_t x = 0; x < inner.images_.size(); ++x) {
    result.images_[x] = outer.images_[inner.images_[x]];
  }
  return result;
}

std::size_t PermutationHash::operator()(Permutation const& p) const noexcept {
  // FNV-1a over the image list.
  std::uint64_t h = 14695981039346656037ULL;
  for (Element x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// CayleyTable
// ---------------------------------------------------------------------------

CayleyTable CayleyTable::from_table(std::size_t order, std::span<Element const> entries) {
  if (order == 0 || order > kMaxOrder) {
    throw Error(ErrorKind::bad_order, "order " + std::to_string(order) + " outside 1.." + std::to_string(kMaxOrder));
  }
  if (entries.size() != order * order) {
    throw Error(ErrorKind::bad_order, "expected " + std::to_string(order * order) + " entries, got " +
                                          std::to_string(entries.size()));
  }
  CayleyTable t;
  t.order_ = order;
  t.mul_.resize(order * order);
  t.ldiv_.assign(order * order, 0);
  t.rdiv_.assign(order * order, 0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] >= order) {
      throw Error(ErrorKind::bad_symbol, "entry " + std::to_string(entries[i]) + " at row " +
                                             std::to_string(i / order) + ", column " + std::to_string(i % order));
    }
    t.mul_[i] = static_cast<std::uint16_t>(entries[i]);
  }
  std::vector<std::uint32_t> stamp(order, 0);
  std::uint32_t round = 0;
  for (std::size_t x = 0; x < order; ++x) {
    ++round;
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t z = t.mul_[x * order + y];
      if (stamp[z] == round) {
        throw Error(ErrorKind::not_latin, "row " + std::to_string(x) + " repeats value " + std::to_string(z));
      }
      stamp[z] = round;
      t.ldiv_[x * order + z] = static_cast<std::uint16_t>(y);
    }
  }
  for (std::size_t y = 0; y < order; ++y) {
    ++round;
    for (std::size_t x = 0; x < order; ++x) {
      std::size_t z = t.mul_[x * order + y];
      if (stamp[z] == round) {
        throw Error(ErrorKind::not_latin, "column " + std::to_string(y) + " repeats value " + std::to_string(z));
      }
      stamp[z] = round;
      t.rdiv_[z * order + y] = static_cast<std::uint16_t>(x);
    }
  }
  return t;
}

CayleyTable CayleyTable::from_rows(std::vector<std::vector<Element>> const& rows) {
  std::size_t n = rows.size();
  std::vector<Element> entries;
  entries.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n) {
      throw Error(ErrorKind::bad_order, "row " + std::to_string(x) + " has " + std::to_string(rows[x].size()) +
                                            " entries, expected " + std::to_string(n));
    }
    entries.insert(entries.end(), rows[x].begin(), rows[x].end());
  }
  return from_table(n, entries);
}

Permutation CayleyTable::translation(Element a, Side side) const {
  std::vector<Element> images(order_);
  for (Element x = 0; x < order_; ++x) {
    images[x] = side == Side::left ? mul(a, x) : mul(x, a);
  }
  return Permutation(std::move(images));
}

std::vector<Element> CayleyTable::row(Element x) const {
  return {mul_.begin() + static_cast<std::ptrdiff_t>(x * order_),
          mul_.begin() + static_cast<std::ptrdiff_t>((x + 1) * order_)};
}

std::vector<Element> CayleyTable::entries() const { return {mul_.begin(), mul_.end()}; }

// ---------------------------------------------------------------------------
// FiniteLoop
// ---------------------------------------------------------------------------

FiniteLoop::FiniteLoop(CayleyTable table, Element zero) : table_(std::move(table)), zero_(zero) {
  if (zero_ >= table_.order()) {
    throw Error(ErrorKind::bad_symbol, "neutral element out of range");
  }
  for (Element x = 0; x < table_.order(); ++x) {
    if (table_.mul(zero_, x) != x || table_.mul(x, zero_) != x) {
      throw Error(ErrorKind::not_loop, std::to_string(zero_) + " is not neutral for " + std::to_string(x));
    }
  }
}

std::optional<FiniteLoop> FiniteLoop::from_quasigroup(CayleyTable const& q) {
  // A neutral element is necessarily alpha(x) = beta(x) for every x.
  Element candidate = q.alpha(0);
  for (Element x = 0; x < q.order(); ++x) {
    if (q.mul(candidate, x) != x || q.mul(x, candidate) != x) return std::nullopt;
  }
  return FiniteLoop(q, candidate);
}

// ---------------------------------------------------------------------------
// Permutation groups
// ---------------------------------------------------------------------------

std::vector<Permutation> generate_group(std::vector<Permutation> const& generators, std::size_t degree,
                                        std::size_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> elements;
  Permutation id = Permutation::identity(degree);
  seen.insert(id);
  elements.push_back(id);

  // Only generators that are not yet in the group are kept; the closure is
  // extended by multiplying every element by the kept generators.
  std::vector<Permutation> kept;
  for (Permutation const& s : generators) {
    if (s.size() != degree) {
      throw Error(ErrorKind::bad_order, "generator degree mismatch");
    }
    if (seen.contains(s)) continue;
    kept.push_back(s);
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (Permutation const& g : kept) {
        Permutation next = compose(g, elements[i]);
        if (seen.insert(next).second) {
          if (elements.size() >= cap) {
            throw Error(ErrorKind::size_cap_exceeded, "permutation group exceeds " + std::to_string(cap) + " elements");
          }
          elements.push_back(std::move(next));
        }
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

}  // namespace qf
