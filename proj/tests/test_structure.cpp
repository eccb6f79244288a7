#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace qf;
using namespace qf::test;

namespace {

std::vector<Element> all_elements(std::size_t n) {
  std::vector<Element> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Fixed point of closure by repeated scanning.
std::vector<Element> brute_closure(CayleyTable const& q, std::vector<Element> gens) {
  std::set<Element> s(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Element> cur(s.begin(), s.end());
    for (Element a : cur) {
      for (Element b : cur) {
        for (Element c : {q.mul(a, b), q.ldiv(a, b), q.rdiv(a, b)}) grew |= s.insert(c).second;
      }
    }
  }
  return {s.begin(), s.end()};
}

CayleyTable loop_quotient(FiniteLoop const& l, std::vector<Element> const& members) {
  return quotient(l.table(), congruence_from_subloop(l.table(), members));
}

// Members of `inner` as indices into the sorted list `outer`.
std::vector<Element> reindex(std::vector<Element> const& outer, std::vector<Element> const& inner) {
  std::vector<Element> out;
  for (Element x : inner) {
    out.push_back(static_cast<Element>(std::lower_bound(outer.begin(), outer.end(), x) - outer.begin()));
  }
  return out;
}

std::vector<FiniteLoop> nk_corpus() {
  std::vector<FiniteLoop> out{loop_of(s3()), loop_of(cml81()), loop_of(builtin("product(s3,cyclic(3))"))};
  for (CayleyTable const& q : f_corpus()) out.push_back(form_at(q, 0).form.loop);
  return out;
}

}  // namespace

TEST_CASE("generate_sub") {
  CHECK(generate_sub(builtin("cyclic(3)"), std::vector<Element>{0}) == std::vector<Element>{0});
  // 1 is a transposition and 3 a 3-cycle.
  CHECK(generate_sub(s3(), std::vector<Element>{1, 3}).size() == 6);
  for (Element x = 0; x < 5; ++x) {
    CHECK(generate_sub(q5(), std::vector<Element>{x}) == brute_closure(q5(), {x}));
  }
  for (Element x = 0; x < 81; x += 7) {
    std::vector<Element> gens{x, static_cast<Element>((x * 5 + 3) % 81)};
    CHECK(generate_sub(sd81(), gens) == brute_closure(sd81(), gens));
  }
}

TEST_CASE("subset examples") {
  FiniteLoop g = loop_of(s3());
  CHECK(nucleus(g).members.size() == 6);
  CHECK(commutant(g).members == std::vector<Element>{0});
  CHECK(center(g).members == std::vector<Element>{0});
  CHECK(m_set(s3()).members == std::vector<Element>{0});
  CHECK(m_set(q5()).members.size() == 5);

  FiniteLoop cml = loop_of(cml81());
  SubsetReport n = nucleus(cml);
  CHECK(n.members == center(cml).members);
  CHECK(n.members == as_elements(oracle::nucleus(to_oracle(cml81()))));
  CHECK(n.members.size() == 3);
  CHECK(moufang_center(cml).members.size() == 81);

  FiniteLoop chein = loop_of(builtin("chein(s3)"));
  SubsetReport nc = nucleus(chein);
  CHECK(nc.is_subloop);
  CHECK(is_closed(chein.table(), nc.members));
  REQUIRE(nc.is_normal.has_value());
  CHECK(*nc.is_normal);
}

TEST_CASE("subsets agree with the oracle sweeps") {
  std::vector<FiniteLoop> loops = nk_corpus();
  loops.push_back(loop_of(builtin("chein(s3)")));
  for (FiniteLoop const& l : loops) {
    if (l.order() > 20) continue;
    oracle::Table o = to_oracle(l.table());
    CHECK(nucleus(l).members == as_elements(oracle::nucleus(o)));
    CHECK(moufang_center(l).members == as_elements(oracle::moufang_center(o)));
    CHECK(m_set(l.table()).members == as_elements(oracle::m_set(o)));
  }
  for (CayleyTable const& q : f_corpus()) {
    if (q.order() > 20) continue;
    CHECK(m_set(q).members == as_elements(oracle::m_set(to_oracle(q))));
  }
}

TEST_CASE("set relations on every loop of order <= 5") {
  std::size_t non_flexible = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (FiniteLoop const& l : loops_of_order(n)) {
      std::vector<Element> nn = nucleus(l).members, k = moufang_center(l).members, c = commutant(l).members,
                           m = m_set(l.table()).members, z = center(l).members;
      REQUIRE(std::includes(c.begin(), c.end(), k.begin(), k.end()));
      std::vector<Element> nm;
      std::set_intersection(nn.begin(), nn.end(), m.begin(), m.end(), std::back_inserter(nm));
      // N and M meet inside Z, and fill it exactly when the loop is flexible.
      REQUIRE(std::includes(z.begin(), z.end(), nm.begin(), nm.end()));
      bool flexible = true;
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) flexible = flexible && l.mul(x, l.mul(y, x)) == l.mul(l.mul(x, y), x);
      REQUIRE((nm == z) == flexible);
      if (!flexible) {
        REQUIRE(nm.empty());
        ++non_flexible;
      }
      if (holds(l.table(), LawId::moufang1)) {
        REQUIRE(k == c);
        REQUIRE(k == m);
      }
    }
  }
  // Z = N n M fails off the flexible loops.
  CHECK(non_flexible > 0);
  // Both defining displays of K agree on all reduced loops of order 6.
  for (FiniteLoop const& l : loops_of_order(6, EnumMode::reduced)) REQUIRE_NOTHROW(moufang_center(l));
}

TEST_CASE("K = C = M on Moufang corpus loops") {
  for (FiniteLoop const& l : nk_corpus()) {
    CHECK(moufang_center(l).members == commutant(l).members);
    CHECK(moufang_center(l).members == m_set(l.table()).members);
  }
  FiniteLoop chein = loop_of(builtin("chein(s3)"));
  CHECK(moufang_center(chein).members == commutant(chein).members);
}

TEST_CASE("NK loops") {
  CHECK(is_nk(loop_of(s3())));
  FiniteLoop cml = loop_of(cml81());
  CHECK(is_nk(cml));
  for (Element x = 0; x < 81; ++x) CHECK(center(cml).contains(nk_decompose(cml, x).first));
  FiniteLoop chein = loop_of(builtin("chein(s3)"));
  CHECK_FALSE(is_nk(chein));
  bool threw = false;
  for (Element x = 0; x < 12; ++x) {
    try {
      nk_decompose(chein, x);
    } catch (Error const& e) {
      threw = e.kind() == ErrorKind::not_nk;
    }
  }
  CHECK(threw);
  FiniteLoop g = loop_of(s3());
  for (Element x = 0; x < 6; ++x) CHECK(nk_decompose(g, x) == std::pair<Element, Element>{x, 0});
}

TEST_CASE("NK characterisation examples") {
  FiniteLoop g = loop_of(s3());
  std::vector<Element> zero(6, 0);
  NkCharResult r = nk_char_holds(g, zero);
  CHECK(r.identity_holds);
  CHECK(r.structural_holds);
  FiniteLoop z3 = loop_of(builtin("cyclic(3)"));
  NkCharResult r3 = nk_char_holds(z3, all_elements(3));
  CHECK(r3.identity_holds);
  CHECK(r3.structural_holds);
  FiniteLoop chein = loop_of(builtin("chein(s3)"));
  NkCharResult rc = nk_char_holds(chein, all_elements(12));
  CHECK_FALSE(rc.identity_holds);
  CHECK_FALSE(rc.structural_holds);
}

TEST_CASE("NK characterisation over every map on reduced loops of order <= 5") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (FiniteLoop const& l : loops_of_order(n, EnumMode::reduced)) {
      std::vector<Element> a(n, 0);
      while (true) {
        NkCharResult r = nk_char_holds(l, a);
        REQUIRE(r.identity_holds == r.structural_holds);
        if (r.identity_holds) REQUIRE(is_nk(l));
        PflugfelderResult p = pflugfelder_holds(l, a);
        REQUIRE(p.first == p.second);
        REQUIRE(p.first == p.third);
        std::size_t i = n;
        while (i > 0 && ++a[i - 1] == n) a[--i] = 0;
        if (i == 0) break;
      }
    }
  }
}

TEST_CASE("NK structure on corpus loops") {
  for (FiniteLoop const& l : nk_corpus()) {
    CAPTURE(l.order());
    REQUIRE(is_nk(l));
    std::vector<Element> nn = nucleus(l).members, k = moufang_center(l).members, z = center(l).members;
    // Z(Q) = Z(N) = Z(K).
    FiniteLoop nsub = restrict_to(l, nn), ksub = restrict_to(l, k);
    std::vector<Element> zn, zk;
    for (Element i : center(nsub).members) zn.push_back(nn[i]);
    for (Element i : center(ksub).members) zk.push_back(k[i]);
    CHECK(zn == z);
    CHECK(zk == z);
    // Q/N is a commutative Moufang loop of exponent 3; Q/K is a group.
    CayleyTable qn = loop_quotient(l, nn), qk = loop_quotient(l, k);
    CHECK(holds(qn, LawId::commutative));
    CHECK(holds(qn, LawId::moufang1));
    FiniteLoop qn_loop = loop_of(qn);
    for (Element b = 0; b < qn.order(); ++b) CHECK(qn.mul(qn.mul(b, b), b) == qn_loop.zero());
    CHECK(is_group(qk));
    // Q/N = K/Z and Q/K = N/Z.
    CHECK(is_isomorphic(qn, loop_quotient(ksub, reindex(k, z))).has_value());
    CHECK(is_isomorphic(qk, loop_quotient(nsub, reindex(nn, z))).has_value());
    // N and K are normal; 3x lies in N.
    CHECK(is_a_loop(l).holds);
    CHECK(nucleus(l).is_normal.value_or(false));
    CHECK(moufang_center(l).is_normal.value_or(false));
    for (Element x = 0; x < l.order(); ++x) CHECK(nucleus(l).contains(l.mul(l.mul(x, x), x)));
    // (n, k) -> n + k is an epimorphism from N x K.
    CayleyTable prod = direct_product(nsub.table(), ksub.table());
    std::vector<Element> map(prod.order());
    std::set<Element> image;
    for (Element i = 0; i < nn.size(); ++i) {
      for (Element j = 0; j < k.size(); ++j) {
        Element v = l.mul(nn[i], k[j]);
        map[i * k.size() + j] = v;
        image.insert(v);
      }
    }
    CHECK(is_homomorphism(prod, l.table(), map));
    CHECK(image.size() == l.order());
  }
}

TEST_CASE("congruences and quotients") {
  CayleyTable g = s3();
  Congruence all = congruence_from_subloop(g, all_elements(6));
  CHECK(all.block_count() == 1);
  CHECK(quotient(g, all).order() == 1);
  Congruence id = congruence_from_subloop(g, std::vector<Element>{0});
  CHECK(id.block_count() == 6);
  CHECK(quotient(g, id) == g);
  FiniteLoop q5loop = form_at(q5(), 0).form.loop;
  CHECK(congruence_from_subloop(q5loop.table(), nucleus(q5loop).members).block_count() == 1);
  // A3 is normal in S3, a transposition subgroup is not.
  CHECK(congruence_from_subloop(g, std::vector<Element>{0, 3, 4}).block_count() == 2);
  CHECK_THROWS_AS(congruence_from_subloop(g, std::vector<Element>{0, 1}), Error);
  Congruence bad(std::vector<Element>{0, 0, 1, 1, 2, 2});
  CHECK_FALSE(is_congruence(g, bad));
  try {
    quotient(g, bad);
    FAIL("expected NotCongruence");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_congruence);
  }
  std::vector<std::pair<Element, Element>> pairs{{0, 3}};
  Congruence gen = generate_congruence(g, pairs);
  CHECK(gen.block_count() == 2);
  CHECK(is_congruence(g, gen));
  CHECK(gen.related(0, 4));
}

TEST_CASE("quotient of sd81 by rho is symmetric and distributive") {
  CayleyTable r = quotient(sd81(), rho_congruence(sd81()));
  CHECK(holds(r, LawId::symmetric));
  CHECK(holds(r, LawId::distributive));
  CHECK(r.order() == 27);
}

TEST_CASE("regular pair examples") {
  CHECK(regular_pairs(builtin("cyclic(3)"), PairFamily::a).size() == 3);
  std::vector<RegularPair> as3 = regular_pairs(s3(), PairFamily::a);
  CHECK(as3.size() == 6);
  for (RegularPair const& r : as3) {
    // p = q = a left translation.
    CHECK(r.p == r.q);
    CHECK(r.p == s3().translation(r.p(0), Side::left));
  }
  CHECK(regular_pairs(q5(), PairFamily::a).size() == 5);

  FormAt base = form_at(q5(), 0);
  FiniteLoop const& l = base.form.loop;
  Permutation gf = compose(base.form.g.inverse(), base.form.f);
  std::vector<RegularPair> c = regular_pairs(q5(), PairFamily::c);
  CHECK(c.size() == 5);
  for (RegularPair const& pair : c) {
    Element r = l.ldiv(l.zero(), pair.p(l.zero()));
    for (Element x = 0; x < 5; ++x) {
      CHECK(pair.p(x) == l.mul(x, r));
      CHECK(pair.q(x) == l.mul(gf(r), x));
    }
  }
}

TEST_CASE("regular pair families on the corpus") {
  auto lefts = [](std::vector<RegularPair> const& v) {
    std::set<Permutation> s;
    for (RegularPair const& r : v) s.insert(r.p);
    return s;
  };
  auto rights = [](std::vector<RegularPair> const& v) {
    std::set<Permutation> s;
    for (RegularPair const& r : v) s.insert(r.q);
    return s;
  };
  for (CayleyTable const& q : f_corpus()) {
    CAPTURE(q.order());
    auto a = regular_pairs(q, PairFamily::a), b = regular_pairs(q, PairFamily::b),
         c = regular_pairs(q, PairFamily::c);
    CHECK(lefts(a) == rights(a));
    CHECK(lefts(a) == rights(c));
    CHECK(lefts(b) == rights(b));
    CHECK(lefts(b) == lefts(c));
    // The two families swap sides only when N is commutative.
    FiniteLoop l = form_at(q, 0).form.loop;
    CayleyTable nt = restrict_to(l, nucleus(l).members).table();
    CHECK((lefts(a) == lefts(c)) == holds(nt, LawId::commutative));
    CHECK(lefts(a).size() == nucleus(form_at(q, 0).form.loop).members.size());
  }
}

TEST_CASE("rho") {
  CHECK(rho_congruence(s3()).block_count() == 1);
  CHECK(rho_congruence(q5()).block_count() == 1);
  CHECK_THROWS_AS(rho_congruence(builtin("chein(s3)")), Error);

  FiniteLoop l = form_at(sd81(), 0).form.loop;
  Congruence rho = rho_congruence(sd81());
  std::vector<Element> nn = nucleus(l).members;
  CHECK(rho.block_count() == 81 / nn.size());
  for (Element u : moufang_center(l).members) {
    std::vector<Element> coset;
    for (Element n : nn) coset.push_back(l.mul(n, u));
    std::sort(coset.begin(), coset.end());
    CHECK(coset == rho.blocks()[rho.block_of(u)]);
  }
}

TEST_CASE("rho blocks are FG subquasigroups isotopic to isomorphic groups") {
  for (CayleyTable const& q : f_corpus()) {
    CAPTURE(q.order());
    Congruence rho = rho_congruence(q);
    std::optional<CayleyTable> first_group;
    for (std::vector<Element> const& block : rho.blocks()) {
      REQUIRE(is_closed(q, block));
      CayleyTable b = restrict_to(q, block).table;
      CHECK(is_fg(b));
      CayleyTable group = form_at(b, 0).form.loop.table();
      CHECK(is_group(group));
      if (!first_group) {
        first_group = group;
      } else {
        CHECK(is_isomorphic(*first_group, group).has_value());
      }
    }
    CayleyTable r = quotient(q, rho);
    CHECK(holds(r, LawId::symmetric));
    CHECK(holds(r, LawId::distributive));
  }
}

TEST_CASE("M(Q) against the form loop") {
  for (CayleyTable const& q : f_corpus()) {
    CAPTURE(q.order());
    FiniteLoop l = form_at(q, 0).form.loop;
    SubsetReport m = m_set(q);
    CHECK(m.members == moufang_center(l).members);
    for (Element x = 0; x < q.order(); ++x) {
      CHECK(m.contains(q.alpha(x)));
      CHECK(m.contains(q.beta(x)));
    }
    // Q/M is a group isomorphic to N/Z of the form loop.
    CayleyTable qm = quotient(q, congruence_from_subloop(q, m.members));
    CHECK(is_group(qm));
    std::vector<Element> nn = nucleus(l).members;
    CayleyTable nz = loop_quotient(restrict_to(l, nn), reindex(nn, center(l).members));
    CHECK(is_isomorphic(qm, nz).has_value());
  }
}

TEST_CASE("is_fg") {
  CHECK(is_fg(s3()));
  CHECK(is_fg(q5()));
  CHECK_FALSE(is_fg(sd81()));
  CHECK_THROWS_AS(is_fg(builtin("chein(s3)")), Error);
  for (CayleyTable const& q : f_corpus()) CHECK(is_fg(q) == is_group(form_at(q, 0).form.loop.table()));
}

TEST_CASE("homomorphisms and isomorphisms") {
  CHECK(is_homomorphism(q5(), q5(), all_elements(5)));
  CHECK_FALSE(is_isomorphic(builtin("cyclic(4)"), builtin("product(cyclic(2),cyclic(2))")).has_value());
  CayleyTable loop = form_at(q5(), 0).form.loop.table();
  std::optional<Permutation> w = is_isomorphic(loop, builtin("cyclic(5)"));
  REQUIRE(w.has_value());
  CHECK((*w)(4) == 0);
  CHECK(is_homomorphism(loop, builtin("cyclic(5)"), w->images()));
  CHECK(is_isomorphic(builtin("product(cyclic(2),cyclic(3))"), builtin("cyclic(6)")).has_value());

  // Random relabelings are recognised.
  std::mt19937_64 rng(5);
  for (CayleyTable const& q : {s3(), builtin("chein(s3)"), z2s3_linear()}) {
    std::vector<Element> perm = all_elements(q.order());
    std::shuffle(perm.begin(), perm.end(), rng);
    CayleyTable relabeled = CayleyTable::from_function(q.order(), [&](Element x, Element y) {
      Permutation p(perm);
      Permutation inv = p.inverse();
      return p(q.mul(inv(x), inv(y)));
    });
    std::optional<Permutation> iso = is_isomorphic(q, relabeled);
    REQUIRE(iso.has_value());
    CHECK(is_homomorphism(q, relabeled, iso->images()));
  }
  CHECK_FALSE(is_isomorphic(s3(), builtin("cyclic(6)")).has_value());
}

TEST_CASE("extend_homomorphism and generating sequences") {
  CayleyTable g = s3();
  std::vector<Element> gens = generating_sequence(g);
  CHECK(generate_sub(g, gens).size() == 6);
  std::vector<Element> images(gens.begin(), gens.end());
  auto map = extend_homomorphism(g, g, gens, images);
  REQUIRE(map.has_value());
  CHECK(*map == all_elements(6));
}

TEST_CASE("multiplication groups") {
  CHECK(multiplication_group(builtin("cyclic(3)"), 100).size() == 3);
  std::vector<Permutation> mlt = multiplication_group(s3(), 1000);
  CHECK(mlt.size() == 36);
  std::set<Element> orbit;
  for (Permutation const& p : mlt) orbit.insert(p(0));
  CHECK(orbit.size() == 6);
  CHECK(multiplication_group(CayleyTable::from_rows({{0}}), 10).size() == 1);
  CHECK_THROWS_AS(multiplication_group(s3(), 10), Error);
}

TEST_CASE("simplicity") {
  CHECK(is_simple(builtin("cyclic(5)")));
  CHECK_FALSE(is_simple(builtin("cyclic(4)")));
  CHECK_FALSE(is_simple(s3()));
  CHECK(is_simple(builtin("zlin(5,2,3,1)")));
  CHECK_THROWS_AS(is_simple(sd81()), Error);
}
