#include "qf/laws.hpp"

#include <array>
#include <cstdlib>
#include <unordered_map>

#include "detail/closure.hpp"
#include "qf/structure.hpp"

namespace qf {

namespace {

constexpr std::array<LawId, 13> kAllLaws = {
    LawId::f_left,   LawId::f_right,      LawId::moufang1,  LawId::moufang2,   LawId::moufang3,
    LawId::moufang4, LawId::medial,       LawId::distributive, LawId::symmetric, LawId::idempotent,
    LawId::unipotent, LawId::associative, LawId::commutative,
};

std::uint64_t power(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

// Lexicographic sweep over all arity-tuples; returns the first tuple where
// pred fails.
template <std::size_t Arity, typename Pred>
std::optional<std::vector<Element>> sweep(std::size_t n, Pred&& pred) {
  std::array<Element, Arity> v{};
  auto const m = static_cast<Element>(n);
  while (true) {
    if (!pred(v)) return std::vector<Element>(v.begin(), v.end());
    std::size_t i = Arity;
    while (i > 0) {
      --i;
      if (++v[i] < m) break;
      v[i] = 0;
      if (i == 0) return std::nullopt;
    }
    if constexpr (Arity == 0) return std::nullopt;
  }
}

template <std::size_t Arity>
std::optional<std::vector<Element>> sweep_law(CayleyTable const& q, LawId law) {
  return sweep<Arity>(q.order(), [&](std::array<Element, Arity> const& v) { return law_holds_at(q, law, v); });
}

}  // namespace

std::string_view law_name(LawId law) noexcept {
  switch (law) {
    case LawId::f_left: return "f_left";
    case LawId::f_right: return "f_right";
    case LawId::moufang1: return "moufang1";
    case LawId::moufang2: return "moufang2";
    case LawId::moufang3: return "moufang3";
    case LawId::moufang4: return "moufang4";
    case LawId::medial: return "medial";
    case LawId::distributive: return "distributive";
    case LawId::symmetric: return "symmetric";
    case LawId::idempotent: return "idempotent";
    case LawId::unipotent: return "unipotent";
    case LawId::associative: return "associative";
    case LawId::commutative: return "commutative";
  }
  return "unknown";
}

LawId parse_law(std::string_view name) {
  for (LawId law : kAllLaws) {
    if (law_name(law) == name) return law;
  }
  throw Error(ErrorKind::unknown_law, std::string(name));
}

std::span<LawId const> all_laws() noexcept { return kAllLaws; }

std::size_t law_arity(LawId law) noexcept {
  switch (law) {
    case LawId::idempotent: return 1;
    case LawId::symmetric:
    case LawId::unipotent:
    case LawId::commutative: return 2;
    case LawId::medial: return 4;
    default: return 3;
  }
}

std::uint64_t default_work_cap() {
  if (char const* env = std::getenv("QF_WORK_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 100'000'000ULL;
}

bool law_holds_at(CayleyTable const& q, LawId law, std::span<Element const> v) {
  auto m = [&q](Element a, Element b) { return q.mul(a, b); };
  switch (law) {
    case LawId::f_left: {
      Element x = v[0], y = v[1], z = v[2];
      return m(x, m(y, z)) == m(m(x, y), m(q.alpha(x), z));
    }
    case LawId::f_right: {
      Element x = v[0], y = v[1], z = v[2];
      return m(m(z, y), x) == m(m(z, q.beta(x)), m(y, x));
    }
    case LawId::moufang1: {
      Element x = v[0], y = v[1], z = v[2];
      return m(x, m(y, m(x, z))) == m(m(m(x, y), x), z);
    }
    case LawId::moufang2: {
      Element x = v[0], y = v[1], z = v[2];
      return m(x, m(m(y, z), x)) == m(m(x, y), m(z, x));
    }
    case LawId::moufang3: {
      Element x = v[0], y = v[1], z = v[2];
      return m(m(m(z, x), y), x) == m(z, m(x, m(y, x)));
    }
    case LawId::moufang4: {
      Element x = v[0], y = v[1], z = v[2];
      return m(m(x, m(y, z)), x) == m(m(x, y), m(z, x));
    }
    case LawId::medial: {
      Element x = v[0], a = v[1], b = v[2], y = v[3];
      return m(m(x, a), m(b, y)) == m(m(x, b), m(a, y));
    }
    case LawId::distributive: {
      Element x = v[0], y = v[1], z = v[2];
      return m(x, m(y, z)) == m(m(x, y), m(x, z)) && m(m(z, y), x) == m(m(z, x), m(y, x));
    }
    case LawId::symmetric: {
      Element x = v[0], y = v[1];
      return m(x, y) == m(y, x) && m(x, m(x, y)) == y;
    }
    case LawId::idempotent: return m(v[0], v[0]) == v[0];
    case LawId::unipotent: return m(v[0], v[0]) == m(v[1], v[1]);
    case LawId::associative: {
      Element x = v[0], y = v[1], z = v[2];
      return m(m(x, y), z) == m(x, m(y, z));
    }
    case LawId::commutative: return m(v[0], v[1]) == m(v[1], v[0]);
  }
  return false;
}

LawReport check_law(CayleyTable const& q, LawId law, SweepOptions const& options) {
  std::size_t arity = law_arity(law);
  if (power(q.order(), arity) > options.work_cap) {
    throw Error(ErrorKind::size_cap_exceeded, std::string(law_name(law)) + " sweep over order " +
                                                  std::to_string(q.order()) + " exceeds the work cap");
  }
  std::optional<std::vector<Element>> witness;
  switch (arity) {
    case 1: witness = sweep_law<1>(q, law); break;
    case 2: witness = sweep_law<2>(q, law); break;
    case 3: witness = sweep_law<3>(q, law); break;
    default: witness = sweep_law<4>(q, law); break;
  }
  LawReport report;
  report.law = std::string(law_name(law));
  report.holds = !witness.has_value();
  report.witness = std::move(witness);
  return report;
}

bool is_f_quasigroup(CayleyTable const& q) {
  return check_law(q, LawId::f_left).holds && check_law(q, LawId::f_right).holds;
}

bool is_moufang(CayleyTable const& q) { return check_law(q, LawId::moufang1).holds; }

bool is_group(CayleyTable const& q) {
  return FiniteLoop::from_quasigroup(q).has_value() && check_law(q, LawId::associative).holds;
}

// ---------------------------------------------------------------------------
// k-mediality
// ---------------------------------------------------------------------------

namespace {

char const* medial_name(int k) {
  switch (k) {
    case 1: return "monomedial";
    case 2: return "dimedial";
    default: return "trimedial";
  }
}

// Medial law restricted to a subset; the budget is charged by the caller.
bool medial_on(CayleyTable const& q, std::vector<Element> const& s) {
  for (Element x : s) {
    for (Element a : s) {
      Element xa = q.mul(x, a);
      for (Element b : s) {
        Element xb = q.mul(x, b);
        for (Element y : s) {
          if (q.mul(xa, q.mul(b, y)) != q.mul(xb, q.mul(a, y))) return false;
        }
      }
    }
  }
  return true;
}

class MedialCache {
 public:
  MedialCache(CayleyTable const& q, std::uint64_t cap) : q_(q), cap_(cap) {}

  bool medial(detail::SubsetClosure const& sub) {
    auto it = cache_.find(sub.mask());
    if (it != cache_.end()) return it->second;
    std::uint64_t m = sub.size();
    work_ += m * m * m * m;
    if (work_ > cap_) {
      throw Error(ErrorKind::size_cap_exceeded, "generated-subquasigroup sweeps exceed the work cap");
    }
    bool result = medial_on(q_, sub.members());
    cache_.emplace(sub.mask(), result);
    return result;
  }

 private:
  CayleyTable const& q_;
  std::uint64_t cap_;
  std::uint64_t work_ = 0;
  std::unordered_map<std::vector<std::uint64_t>, bool, detail::MaskHash> cache_;
};

LawReport k_medial_exhaustive(CayleyTable const& q, int k, SweepOptions const& options) {
  LawReport report;
  report.law = medial_name(k);
  auto const n = static_cast<Element>(q.order());
  MedialCache cache(q, options.work_cap);
  auto fail = [&](std::vector<Element> gens) {
    report.holds = false;
    report.witness = std::move(gens);
    return report;
  };
  // Multisets x <= y <= z cover every generator set of size at most k.
  for (Element x = 0; x < n; ++x) {
    detail::SubsetClosure s1(q);
    s1.add(x);
    if (k == 1) {
      if (!cache.medial(s1)) return fail({x});
      continue;
    }
    for (Element y = x; y < n; ++y) {
      detail::SubsetClosure s2 = s1;
      s2.add(y);
      if (k == 2) {
        if (!cache.medial(s2)) return fail({x, y});
        continue;
      }
      for (Element z = y; z < n; ++z) {
        if (s2.contains(z)) {
          if (!cache.medial(s2)) return fail({x, y, z});
          continue;
        }
        detail::SubsetClosure s3 = s2;
        s3.add(z);
        if (!cache.medial(s3)) return fail({x, y, z});
      }
    }
  }
  return report;
}

}  // namespace

LawReport k_medial(CayleyTable const& q, int k, KMedialMode mode, SweepOptions const& options) {
  if (k < 1 || k > 3) {
    throw Error(ErrorKind::unknown_law, "k_medial expects k in 1..3, got " + std::to_string(k));
  }
  if (mode == KMedialMode::automatic && k >= 2 && is_f_quasigroup(q)) {
    // For F-quasigroups, trimedial, dimedial and xx*yx = xy*xx coincide.
    LawReport report;
    report.law = medial_name(k);
    report.note = "F-quasigroup fast path (xx*yx = xy*xx)";
    auto const n = static_cast<Element>(q.order());
    for (Element x = 0; x < n; ++x) {
      Element xx = q.mul(x, x);
      for (Element y = 0; y < n; ++y) {
        if (q.mul(xx, q.mul(y, x)) != q.mul(q.mul(x, y), xx)) {
          report.holds = false;
          report.witness = k == 2 ? std::vector<Element>{x, y} : std::vector<Element>{x, y, y};
          return report;
        }
      }
    }
    return report;
  }
  return k_medial_exhaustive(q, k, options);
}

// ---------------------------------------------------------------------------
// Inner mappings and A-loops
// ---------------------------------------------------------------------------

namespace {

// Standard generators of the inner mapping group, deduplicated, in a
// deterministic order.
std::vector<Permutation> inner_generators(FiniteLoop const& loop) {
  CayleyTable const& q = loop.table();
  auto const n = static_cast<Element>(q.order());
  std::vector<Permutation> gens;
  std::unordered_map<Permutation, bool, PermutationHash> seen;
  auto push = [&](std::vector<Element> images) {
    Permutation p(std::move(images));
    if (!p.is_identity() && seen.emplace(p, true).second) gens.push_back(std::move(p));
  };
  std::vector<Element> images(n);
  for (Element x = 0; x < n; ++x) {
    for (Element z = 0; z < n; ++z) images[z] = q.rdiv(q.mul(x, z), x);
    push(images);
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      Element yx = q.mul(y, x);
      for (Element z = 0; z < n; ++z) images[z] = q.ldiv(yx, q.mul(y, q.mul(x, z)));
      push(images);
      Element xy = q.mul(x, y);
      for (Element z = 0; z < n; ++z) images[z] = q.rdiv(q.mul(q.mul(z, x), y), xy);
      push(images);
    }
  }
  return gens;
}

}  // namespace

std::vector<Permutation> inner_mappings(FiniteLoop const& loop, std::size_t cap) {
  std::vector<Permutation> group = generate_group(inner_generators(loop), loop.order(), cap);
  for (Permutation const& p : group) {
    if (p(loop.zero()) != loop.zero()) {
      throw Error(ErrorKind::internal_inconsistency, "inner mapping moves the neutral element");
    }
  }
  return group;
}

bool is_automorphism(CayleyTable const& q, std::span<Element const> f) {
  auto const n = static_cast<Element>(q.order());
  if (f.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Element x : f) {
    if (x >= n || hit[x]) return false;
    hit[x] = true;
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (f[q.mul(x, y)] != q.mul(f[x], f[y])) return false;
    }
  }
  return true;
}

bool is_automorphism(FiniteLoop const& loop, Permutation const& f) {
  return is_automorphism(loop.table(), f.images());
}

LawReport is_a_loop(FiniteLoop const& loop, std::size_t cap) {
  // The inner mapping group lies in Aut(Q) iff its generators do. The full
  // group is still materialized so the cap contract matches inner_mappings.
  std::vector<Permutation> gens = inner_generators(loop);
  generate_group(gens, loop.order(), cap);
  CayleyTable const& q = loop.table();
  auto const n = static_cast<Element>(q.order());
  LawReport report;
  report.law = "a_loop";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Permutation const& p = gens[i];
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (p(q.mul(x, y)) != q.mul(p(x), p(y))) {
          report.holds = false;
          report.witness = std::vector<Element>{x, y};
          report.note = "inner mapping generator " + std::to_string(i) + " is not an automorphism";
          return report;
        }
      }
    }
  }
  return report;
}

bool is_pseudoautomorphism(FiniteLoop const& loop, Permutation const& f, Element c, Side side) {
  CayleyTable const& q = loop.table();
  auto const n = static_cast<Element>(q.order());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      Element fxy = f(q.mul(x, y));
      bool ok = side == Side::left ? q.mul(c, fxy) == q.mul(q.mul(c, f(x)), f(y))
                                   : q.mul(fxy, c) == q.mul(f(x), q.mul(f(y), c));
      if (!ok) return false;
    }
  }
  return true;
}

LawReport is_diassociative(FiniteLoop const& loop, SweepOptions const& options) {
  CayleyTable const& q = loop.table();
  auto const n = static_cast<Element>(q.order());
  LawReport report;
  report.law = "diassociative";
  std::unordered_map<std::vector<std::uint64_t>, bool, detail::MaskHash> cache;
  std::uint64_t work = 0;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x; y < n; ++y) {
      detail::SubsetClosure sub(q);
      sub.add(x);
      sub.add(y);
      auto it = cache.find(sub.mask());
      bool ok;
      if (it != cache.end()) {
        ok = it->second;
      } else {
        std::uint64_t m = sub.size();
        work += m * m * m;
        if (work > options.work_cap) {
          throw Error(ErrorKind::size_cap_exceeded, "diassociativity sweeps exceed the work cap");
        }
        ok = true;
        for (Element a : sub.members()) {
          for (Element b : sub.members()) {
            Element ab = q.mul(a, b);
            for (Element c : sub.members()) {
              if (q.mul(ab, c) != q.mul(a, q.mul(b, c))) {
                ok = false;
                break;
              }
            }
            if (!ok) break;
          }
          if (!ok) break;
        }
        cache.emplace(sub.mask(), ok);
      }
      if (!ok) {
        report.holds = false;
        report.witness = std::vector<Element>{x, y};
        return report;
      }
    }
  }
  return report;
}

}  // namespace qf
