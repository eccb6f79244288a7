#include "qf/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

#include "detail/closure.hpp"
#include "qf/laws.hpp"

namespace qf {

namespace {

constexpr Element kUnset = static_cast<Element>(-1);

std::vector<Element> members_where(std::size_t n, auto&& pred) {
  std::vector<Element> out;
  for (Element a = 0; a < n; ++a) {
    if (pred(a)) out.push_back(a);
  }
  return out;
}

std::vector<bool> indicator(std::size_t n, std::span<Element const> members) {
  std::vector<bool> in(n, false);
  for (Element x : members) in[x] = true;
  return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subquasigroups
// ---------------------------------------------------------------------------

std::vector<Element> generate_sub(CayleyTable const& q, std::span<Element const> gens) {
  detail::SubsetClosure closure(q);
  for (Element g : gens) {
    if (g >= q.order()) throw Error(ErrorKind::bad_symbol, "generator out of range");
    closure.add(g);
  }
  return closure.sorted_members();
}

bool is_closed(CayleyTable const& q, std::span<Element const> members) {
  std::vector<bool> in = indicator(q.order(), members);
  for (Element x : members) {
    for (Element y : members) {
      if (!in[q.mul(x, y)] || !in[q.ldiv(x, y)] || !in[q.rdiv(x, y)]) return false;
    }
  }
  return true;
}

SubTable restrict_to(CayleyTable const& q, std::span<Element const> members) {
  std::vector<Element> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty() || !is_closed(q, sorted)) {
    throw Error(ErrorKind::bad_symbol, "subset is not a subquasigroup");
  }
  std::vector<Element> index(q.order(), kUnset);
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<Element>(i);
  CayleyTable table = CayleyTable::from_function(
      sorted.size(), [&](Element i, Element j) { return index[q.mul(sorted[i], sorted[j])]; });
  return {std::move(table), std::move(sorted)};
}

FiniteLoop restrict_to(FiniteLoop const& loop, std::span<Element const> members) {
  SubTable sub = restrict_to(loop.table(), members);
  auto it = std::lower_bound(sub.members.begin(), sub.members.end(), loop.zero());
  if (it == sub.members.end() || *it != loop.zero()) {
    throw Error(ErrorKind::not_loop, "subset does not contain the neutral element");
  }
  return FiniteLoop(std::move(sub.table), static_cast<Element>(it - sub.members.begin()));
}

// ---------------------------------------------------------------------------
// Structural subsets
// ---------------------------------------------------------------------------

std::string_view to_string(SubsetKind kind) noexcept {
  switch (kind) {
    case SubsetKind::nucleus: return "nucleus";
    case SubsetKind::moufang_center: return "moufang_center";
    case SubsetKind::commutant: return "commutant";
    case SubsetKind::center: return "center";
    case SubsetKind::m_set: return "m_set";
  }
  return "unknown";
}

bool SubsetReport::contains(Element x) const { return std::binary_search(members.begin(), members.end(), x); }

namespace {

SubsetReport finish_report(CayleyTable const& q, SubsetKind kind, std::vector<Element> members) {
  SubsetReport report{kind, std::move(members), false, std::nullopt};
  report.is_subloop = !report.members.empty() && is_closed(q, report.members);
  if (report.is_subloop) {
    try {
      congruence_from_subloop(q, report.members);
      report.is_normal = true;
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::not_normal) throw;
      report.is_normal = false;
    }
  }
  return report;
}

std::vector<Element> nucleus_members(CayleyTable const& q) {
  auto const n = static_cast<Element>(q.order());
  return members_where(n, [&](Element a) {
    for (Element x = 0; x < n; ++x) {
      Element ax = q.mul(a, x), xa = q.mul(x, a);
      for (Element y = 0; y < n; ++y) {
        if (q.mul(ax, y) != q.mul(a, q.mul(x, y))) return false;
        if (q.mul(xa, y) != q.mul(x, q.mul(a, y))) return false;
        if (q.mul(x, q.mul(y, a)) != q.mul(q.mul(x, y), a)) return false;
      }
    }
    return true;
  });
}

std::vector<Element> commutant_members(CayleyTable const& q) {
  auto const n = static_cast<Element>(q.order());
  return members_where(n, [&](Element a) {
    for (Element x = 0; x < n; ++x) {
      if (q.mul(a, x) != q.mul(x, a)) return false;
    }
    return true;
  });
}

std::vector<Element> moufang_center_members(CayleyTable const& q) {
  auto const n = static_cast<Element>(q.order());
  std::vector<Element> left = members_where(n, [&](Element a) {
    Element aa = q.mul(a, a);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (q.mul(aa, q.mul(x, y)) != q.mul(q.mul(a, x), q.mul(a, y))) return false;
      }
    }
    return true;
  });
  std::vector<Element> right = members_where(n, [&](Element a) {
    Element aa = q.mul(a, a);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (q.mul(q.mul(x, y), aa) != q.mul(q.mul(x, a), q.mul(y, a))) return false;
      }
    }
    return true;
  });
  if (left != right) {
    throw Error(ErrorKind::internal_inconsistency, "the two Moufang-center identities select different sets");
  }
  return left;
}

std::vector<Element> intersect(std::vector<Element> const& a, std::vector<Element> const& b) {
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SubsetReport nucleus(FiniteLoop const& loop) {
  return finish_report(loop.table(), SubsetKind::nucleus, nucleus_members(loop.table()));
}

SubsetReport moufang_center(FiniteLoop const& loop) {
  return finish_report(loop.table(), SubsetKind::moufang_center, moufang_center_members(loop.table()));
}

SubsetReport commutant(FiniteLoop const& loop) {
  return finish_report(loop.table(), SubsetKind::commutant, commutant_members(loop.table()));
}

SubsetReport center(FiniteLoop const& loop) {
  CayleyTable const& q = loop.table();
  std::vector<Element> n = nucleus_members(q);
  std::vector<Element> via_c = intersect(n, commutant_members(q));
  std::vector<Element> via_k = intersect(n, moufang_center_members(q));
  if (via_c != via_k) {
    throw Error(ErrorKind::internal_inconsistency, "N ∩ C differs from N ∩ K");
  }
  return finish_report(q, SubsetKind::center, std::move(via_c));
}

SubsetReport m_set(CayleyTable const& q) {
  auto const n = static_cast<Element>(q.order());
  std::vector<Element> members = members_where(n, [&](Element a) {
    for (Element x = 0; x < n; ++x) {
      Element xa = q.mul(x, a), ax = q.mul(a, x);
      for (Element y = 0; y < n; ++y) {
        if (q.mul(xa, q.mul(y, x)) != q.mul(q.mul(x, y), ax)) return false;
      }
    }
    return true;
  });
  return finish_report(q, SubsetKind::m_set, std::move(members));
}

// ---------------------------------------------------------------------------
// NK-loops
// ---------------------------------------------------------------------------

bool is_nk(FiniteLoop const& loop) {
  std::vector<Element> n = nucleus_members(loop.table());
  std::vector<Element> k = moufang_center_members(loop.table());
  std::vector<bool> hit(loop.order(), false);
  std::size_t covered = 0;
  for (Element a : n) {
    for (Element b : k) {
      Element s = loop.mul(a, b);
      if (!hit[s]) {
        hit[s] = true;
        ++covered;
      }
    }
  }
  return covered == loop.order();
}

std::pair<Element, Element> nk_decompose(FiniteLoop const& loop, Element x) {
  std::vector<Element> n = nucleus_members(loop.table());
  std::vector<Element> k = moufang_center_members(loop.table());
  for (Element a : n) {
    // a + b = x determines b uniquely.
    Element b = loop.ldiv(a, x);
    if (std::binary_search(k.begin(), k.end(), b)) return {a, b};
  }
  throw Error(ErrorKind::not_nk, std::to_string(x) + " is not a sum n + k");
}

namespace {

void check_map(FiniteLoop const& loop, std::span<Element const> a_map) {
  if (a_map.size() != loop.order()) throw Error(ErrorKind::bad_order, "map must be total");
  for (Element v : a_map) {
    if (v >= loop.order()) throw Error(ErrorKind::bad_symbol, "map value out of range");
  }
}

}  // namespace

NkCharResult nk_char_holds(FiniteLoop const& loop, std::span<Element const> a_map) {
  check_map(loop, a_map);
  CayleyTable const& q = loop.table();
  auto const n = static_cast<Element>(q.order());
  NkCharResult result;
  result.identity_holds = [&] {
    for (Element x = 0; x < n; ++x) {
      Element ax = a_map[x];
      Element lhs_head = q.mul(x, ax);
      for (Element y = 0; y < n; ++y) {
        Element xy = q.mul(x, y);
        for (Element z = 0; z < n; ++z) {
          if (q.mul(lhs_head, q.mul(y, z)) != q.mul(xy, q.mul(ax, z))) return false;
        }
      }
    }
    return true;
  }();
  result.structural_holds = [&] {
    if (!is_moufang(q)) return false;
    std::vector<Element> nuc = nucleus_members(q);
    std::vector<Element> k = moufang_center_members(q);
    for (Element x = 0; x < n; ++x) {
      if (!std::binary_search(k.begin(), k.end(), a_map[x])) return false;
      if (!std::binary_search(nuc.begin(), nuc.end(), q.mul(loop.inv(x), a_map[x]))) return false;
    }
    return true;
  }();
  return result;
}

PflugfelderResult pflugfelder_holds(FiniteLoop const& loop, std::span<Element const> a_map) {
  check_map(loop, a_map);
  CayleyTable const& q = loop.table();
  auto const n = static_cast<Element>(q.order());
  PflugfelderResult result;
  result.first = true;
  result.second = true;
  for (Element x = 0; x < n && (result.first || result.second); ++x) {
    Element ax = a_map[x];
    for (Element y = 0; y < n; ++y) {
      Element xy = q.mul(x, y);
      for (Element z = 0; z < n; ++z) {
        Element lhs = q.mul(xy, q.mul(z, ax));
        Element yz = q.mul(y, z);
        if (lhs != q.mul(x, q.mul(yz, ax))) result.first = false;
        if (lhs != q.mul(q.mul(x, yz), ax)) result.second = false;
      }
    }
  }
  result.third = [&] {
    if (!is_moufang(q)) return false;
    std::vector<Element> nuc = nucleus_members(q);
    for (Element x = 0; x < n; ++x) {
      if (!std::binary_search(nuc.begin(), nuc.end(), q.mul(loop.inv(x), a_map[x]))) return false;
    }
    return true;
  }();
  return result;
}

// ---------------------------------------------------------------------------
// Congruences
// ---------------------------------------------------------------------------

Congruence::Congruence(std::vector<Element> const& block_of) {
  std::size_t n = block_of.size();
  std::map<Element, Element> renumber;
  block_of_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto [it, inserted] = renumber.emplace(block_of[x], static_cast<Element>(renumber.size()));
    block_of_[x] = it->second;
    if (inserted) blocks_.emplace_back();
    blocks_[it->second].push_back(static_cast<Element>(x));
  }
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<Element> ids(n);
  std::iota(ids.begin(), ids.end(), Element{0});
  return Congruence(ids);
}

Congruence Congruence::universal(std::size_t n) { return Congruence(std::vector<Element>(n, 0)); }

bool is_congruence(CayleyTable const& q, Congruence const& c) {
  if (c.order() != q.order()) return false;
  auto const n = static_cast<Element>(q.order());
  for (Element x = 0; x < n; ++x) {
    Element r = c.blocks()[c.block_of(x)].front();
    if (r == x) continue;
    for (Element a = 0; a < n; ++a) {
      if (!c.related(q.mul(a, x), q.mul(a, r)) || !c.related(q.mul(x, a), q.mul(r, a)) ||
          !c.related(q.ldiv(a, x), q.ldiv(a, r)) || !c.related(q.ldiv(x, a), q.ldiv(r, a)) ||
          !c.related(q.rdiv(a, x), q.rdiv(a, r)) || !c.related(q.rdiv(x, a), q.rdiv(r, a))) {
        return false;
      }
    }
  }
  return true;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Element{0}); }
  Element find(Element x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(Element a, Element b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }
  std::vector<Element> roots() {
    std::vector<Element> out(parent_.size());
    for (std::size_t x = 0; x < parent_.size(); ++x) out[x] = find(static_cast<Element>(x));
    return out;
  }

 private:
  std::vector<Element> parent_;
};

}  // namespace

Congruence generate_congruence(CayleyTable const& q, std::span<std::pair<Element, Element> const> pairs) {
  auto const n = static_cast<Element>(q.order());
  UnionFind uf(n);
  std::vector<std::pair<Element, Element>> work;
  auto merge = [&](Element a, Element b) {
    if (uf.unite(a, b)) work.emplace_back(a, b);
  };
  for (auto [a, b] : pairs) merge(a, b);
  // Every pair that merged two classes is pushed through the six
  // translation rules; the merged pairs span the relation.
  while (!work.empty()) {
    auto [u, v] = work.back();
    work.pop_back();
    for (Element a = 0; a < n; ++a) {
      merge(q.mul(a, u), q.mul(a, v));
      merge(q.mul(u, a), q.mul(v, a));
      merge(q.ldiv(a, u), q.ldiv(a, v));
      merge(q.ldiv(u, a), q.ldiv(v, a));
      merge(q.rdiv(a, u), q.rdiv(a, v));
      merge(q.rdiv(u, a), q.rdiv(v, a));
    }
  }
  return Congruence(uf.roots());
}

Congruence congruence_from_subloop(CayleyTable const& q, std::span<Element const> members) {
  if (members.empty()) throw Error(ErrorKind::bad_symbol, "empty subset");
  std::vector<std::pair<Element, Element>> seeds;
  for (Element m : members) seeds.emplace_back(members.front(), m);
  Congruence c = generate_congruence(q, seeds);
  std::vector<Element> block = c.blocks()[c.block_of(members.front())];
  std::vector<Element> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (block != sorted) {
    throw Error(ErrorKind::not_normal, "congruence block grows from " + std::to_string(sorted.size()) + " to " +
                                           std::to_string(block.size()) + " elements");
  }
  return c;
}

CayleyTable quotient(CayleyTable const& q, Congruence const& c) {
  if (!is_congruence(q, c)) throw Error(ErrorKind::not_congruence, "partition is not compatible");
  std::size_t m = c.block_count();
  return CayleyTable::from_function(m, [&](Element i, Element j) {
    return c.block_of(q.mul(c.blocks()[i].front(), c.blocks()[j].front()));
  });
}

// ---------------------------------------------------------------------------
// Regular permutations
// ---------------------------------------------------------------------------

namespace {

std::optional<Permutation> as_permutation(std::vector<Element> images) {
  std::vector<bool> hit(images.size(), false);
  for (Element x : images) {
    if (hit[x]) return std::nullopt;
    hit[x] = true;
  }
  return Permutation(std::move(images));
}

bool pair_holds(CayleyTable const& t, PairFamily family, Permutation const& p, Permutation const& q) {
  auto const n = static_cast<Element>(t.order());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      bool ok = false;
      switch (family) {
        case PairFamily::a: ok = p(t.mul(x, y)) == t.mul(q(x), y); break;
        case PairFamily::b: ok = p(t.mul(x, y)) == t.mul(x, q(y)); break;
        case PairFamily::c: ok = t.mul(p(x), y) == t.mul(x, q(y)); break;
      }
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<RegularPair> regular_pairs(CayleyTable const& t, PairFamily family) {
  auto const n = static_cast<Element>(t.order());
  constexpr Element base = 0;
  std::vector<RegularPair> result;
  for (Element value = 0; value < n; ++value) {
    std::vector<Element> p(n), q(n);
    switch (family) {
      case PairFamily::a:
        // q(base) = value forces p(w) = value * (base \ w), then
        // q(x) = p(x * base) / base.
        for (Element w = 0; w < n; ++w) p[w] = t.mul(value, t.ldiv(base, w));
        for (Element x = 0; x < n; ++x) q[x] = t.rdiv(p[t.mul(x, base)], base);
        break;
      case PairFamily::b:
        for (Element w = 0; w < n; ++w) p[w] = t.mul(t.rdiv(w, base), value);
        for (Element y = 0; y < n; ++y) q[y] = t.ldiv(base, p[t.mul(base, y)]);
        break;
      case PairFamily::c:
        // p(base) = value forces q(y) = base \ (value * y), then
        // p(x) = (x * q(base)) / base.
        for (Element y = 0; y < n; ++y) q[y] = t.ldiv(base, t.mul(value, y));
        for (Element x = 0; x < n; ++x) p[x] = t.rdiv(t.mul(x, q[base]), base);
        break;
    }
    auto pp = as_permutation(std::move(p));
    auto qq = as_permutation(std::move(q));
    if (!pp || !qq || !pair_holds(t, family, *pp, *qq)) continue;
    result.push_back({family, std::move(*pp), std::move(*qq)});
  }
  // Closure under composition: (p1 p2, q1 q2) for a and b, (p1 p2, q2 q1) for c.
  std::set<std::pair<Permutation, Permutation>> members;
  for (RegularPair const& r : result) members.emplace(r.p, r.q);
  for (RegularPair const& r1 : result) {
    for (RegularPair const& r2 : result) {
      Permutation p = compose(r1.p, r2.p);
      Permutation q = family == PairFamily::c ? compose(r2.q, r1.q) : compose(r1.q, r2.q);
      if (!members.contains({p, q})) {
        throw Error(ErrorKind::internal_inconsistency, "regular pairs are not closed under composition");
      }
    }
  }
  return result;
}

Congruence rho_congruence(CayleyTable const& q) {
  if (!is_f_quasigroup(q)) throw Error(ErrorKind::not_f, "rho is defined for F-quasigroups");
  UnionFind uf(q.order());
  for (PairFamily family : {PairFamily::a, PairFamily::b}) {
    for (RegularPair const& r : regular_pairs(q, family)) {
      for (Element x = 0; x < q.order(); ++x) uf.unite(x, r.p(x));
    }
  }
  Congruence c(uf.roots());
  if (!is_congruence(q, c)) {
    throw Error(ErrorKind::internal_inconsistency, "regular-permutation orbits are not a congruence");
  }
  return c;
}

bool is_fg(CayleyTable const& q) {
  if (!is_f_quasigroup(q)) throw Error(ErrorKind::not_f, "FG is defined for F-quasigroups");
  auto const n = static_cast<Element>(q.order());
  std::set<Element> alphas, betas;
  for (Element u = 0; u < n; ++u) {
    alphas.insert(q.alpha(u));
    betas.insert(q.beta(u));
  }
  // x c * yz = xy * c z for every c in the given image.
  auto sweep_middle = [&](std::set<Element> const& image) {
    for (Element c : image) {
      for (Element x = 0; x < n; ++x) {
        Element xc = q.mul(x, c);
        for (Element y = 0; y < n; ++y) {
          Element xy = q.mul(x, y);
          for (Element z = 0; z < n; ++z) {
            if (q.mul(xc, q.mul(y, z)) != q.mul(xy, q.mul(c, z))) return false;
          }
        }
      }
    }
    return true;
  };
  bool via_alpha = sweep_middle(alphas);
  bool via_beta = sweep_middle(betas);
  bool mixed = [&] {
    for (Element a : alphas) {
      for (Element b : betas) {
        for (Element x = 0; x < n; ++x) {
          Element xa = q.mul(x, a), xb = q.mul(x, b);
          for (Element z = 0; z < n; ++z) {
            if (q.mul(xa, q.mul(b, z)) != q.mul(xb, q.mul(a, z))) return false;
          }
        }
      }
    }
    return true;
  }();
  if (via_alpha != via_beta || via_alpha != mixed) {
    throw Error(ErrorKind::internal_inconsistency, "the three FG identities disagree");
  }
  return via_alpha;
}

// ---------------------------------------------------------------------------
// Homomorphisms and isomorphisms
// ---------------------------------------------------------------------------

bool is_homomorphism(CayleyTable const& src, CayleyTable const& dst, std::span<Element const> map) {
  if (map.size() != src.order()) return false;
  for (Element v : map) {
    if (v >= dst.order()) return false;
  }
  auto const n = static_cast<Element>(src.order());
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (map[src.mul(x, y)] != dst.mul(map[x], map[y])) return false;
    }
  }
  return true;
}

namespace {

// Propagates a partial assignment through *, \ and /. Returns false on a
// conflict or, when injective is set, on a collision of images.
bool propagate(CayleyTable const& src, CayleyTable const& dst, std::vector<Element>& map,
               std::vector<Element>& known, std::size_t first_new, bool injective, std::vector<bool>& used) {
  auto assign = [&](Element w, Element image) {
    if (map[w] == kUnset) {
      if (injective) {
        if (used[image]) return false;
        used[image] = true;
      }
      map[w] = image;
      known.push_back(w);
      return true;
    }
    return map[w] == image;
  };
  for (std::size_t i = first_new; i < known.size(); ++i) {
    Element u = known[i];
    for (std::size_t j = 0; j <= i; ++j) {
      Element v = known[j];
      Element fu = map[u], fv = map[v];
      if (!assign(src.mul(u, v), dst.mul(fu, fv)) || !assign(src.mul(v, u), dst.mul(fv, fu)) ||
          !assign(src.ldiv(u, v), dst.ldiv(fu, fv)) || !assign(src.ldiv(v, u), dst.ldiv(fv, fu)) ||
          !assign(src.rdiv(u, v), dst.rdiv(fu, fv)) || !assign(src.rdiv(v, u), dst.rdiv(fv, fu))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<Element>> extend_homomorphism(CayleyTable const& src, CayleyTable const& dst,
                                                        std::span<Element const> gens,
                                                        std::span<Element const> images) {
  if (gens.size() != images.size()) return std::nullopt;
  std::vector<Element> map(src.order(), kUnset);
  std::vector<Element> known;
  std::vector<bool> used(dst.order(), false);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (images[i] >= dst.order()) return std::nullopt;
    if (map[gens[i]] == kUnset) {
      map[gens[i]] = images[i];
      known.push_back(gens[i]);
    } else if (map[gens[i]] != images[i]) {
      return std::nullopt;
    }
  }
  if (!propagate(src, dst, map, known, 0, false, used)) return std::nullopt;
  if (known.size() != src.order()) return std::nullopt;
  if (!is_homomorphism(src, dst, map)) return std::nullopt;
  return map;
}

std::vector<Element> generating_sequence(CayleyTable const& q) {
  detail::SubsetClosure closure(q);
  std::vector<Element> gens;
  for (Element x = 0; x < q.order() && closure.size() < q.order(); ++x) {
    if (!closure.contains(x)) {
      gens.push_back(x);
      closure.add(x);
    }
  }
  return gens;
}

namespace {

using Signature = std::tuple<bool, bool, bool, std::vector<std::size_t>, std::vector<std::size_t>>;

std::vector<Signature> signatures(CayleyTable const& q) {
  std::vector<Signature> out;
  out.reserve(q.order());
  for (Element x = 0; x < q.order(); ++x) {
    out.emplace_back(q.mul(x, x) == x, q.alpha(x) == x, q.beta(x) == x,
                     q.translation(x, Side::left).cycle_type(), q.translation(x, Side::right).cycle_type());
  }
  return out;
}

struct IsoSearch {
  CayleyTable const& a;
  CayleyTable const& b;
  std::vector<Element> gens;
  std::vector<std::vector<Element>> candidates;

  std::optional<std::vector<Element>> run(std::size_t level, std::vector<Element> map, std::vector<Element> known,
                                          std::vector<bool> used) {
    if (level == gens.size()) {
      if (known.size() != a.order()) return std::nullopt;
      return map;
    }
    Element g = gens[level];
    for (Element image : candidates[level]) {
      if (used[image]) continue;
      std::vector<Element> m = map, k = known;
      std::vector<bool> u = used;
      std::size_t first_new = k.size();
      m[g] = image;
      u[image] = true;
      k.push_back(g);
      if (!propagate(a, b, m, k, first_new, true, u)) continue;
      if (auto found = run(level + 1, std::move(m), std::move(k), std::move(u))) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Permutation> is_isomorphic(CayleyTable const& a, CayleyTable const& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (a.order() > kIsomorphismCap) {
    throw Error(ErrorKind::size_cap_exceeded, "isomorphism search is capped at order " + std::to_string(kIsomorphismCap));
  }
  std::vector<Signature> sa = signatures(a), sb = signatures(b);
  {
    std::vector<Signature> x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }
  IsoSearch search{a, b, generating_sequence(a), {}};
  for (Element g : search.gens) {
    std::vector<Element> cands;
    for (Element y = 0; y < b.order(); ++y) {
      if (sb[y] == sa[g]) cands.push_back(y);
    }
    search.candidates.push_back(std::move(cands));
  }
  auto found = search.run(0, std::vector<Element>(a.order(), kUnset), {}, std::vector<bool>(b.order(), false));
  if (!found || !is_homomorphism(a, b, *found)) return std::nullopt;
  return Permutation(std::move(*found));
}

std::vector<Permutation> multiplication_group(CayleyTable const& q, std::size_t cap) {
  std::vector<Permutation> gens;
  for (Element a = 0; a < q.order(); ++a) {
    gens.push_back(q.translation(a, Side::left));
    gens.push_back(q.translation(a, Side::right));
  }
  return generate_group(gens, q.order(), cap);
}

bool is_simple(CayleyTable const& q, std::size_t cap) {
  if (q.order() > cap) {
    throw Error(ErrorKind::size_cap_exceeded, "simplicity check is capped at order " + std::to_string(cap));
  }
  auto const n = static_cast<Element>(q.order());
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      std::pair<Element, Element> seed{x, y};
      if (generate_congruence(q, std::span(&seed, 1)).block_count() != 1) return false;
    }
  }
  return true;
}

}  // namespace qf
