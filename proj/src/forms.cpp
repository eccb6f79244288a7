#include "qf/forms.hpp"

#include <algorithm>

#include "qf/laws.hpp"
#include "qf/structure.hpp"

namespace qf {

namespace {

[[noreturn]] void assertion_failed(std::string const& what) {
  throw Error(ErrorKind::internal_assertion_failed, what);
}

bool member(std::vector<Element> const& sorted, Element x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

// Structural subsets of a loop, computed once per verification.
struct LoopSubsets {
  std::vector<Element> n;
  std::vector<Element> k;
  std::vector<Element> z;

  explicit LoopSubsets(FiniteLoop const& loop)
      : n(nucleus(loop).members), k(moufang_center(loop).members), z(center(loop).members) {}
};

}  // namespace

Element form_product(ArithmeticForm const& form, Element x, Element y) {
  FiniteLoop const& l = form.loop;
  return l.mul(l.mul(form.f(x), form.e), form.g(y));
}

FiniteLoop principal_isotope(CayleyTable const& q, Element a, Element b) {
  if (a >= q.order() || b >= q.order()) throw Error(ErrorKind::bad_symbol, "isotope parameters out of range");
  CayleyTable table = CayleyTable::from_function(
      q.order(), [&](Element x, Element y) { return q.mul(q.rdiv(x, a), q.ldiv(b, y)); });
  return FiniteLoop(std::move(table), q.mul(b, a));
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

bool FormReport::passed(std::string const& name) const {
  for (AxiomResult const& a : axioms) {
    if (a.name == name) return a.holds;
  }
  throw Error(ErrorKind::invalid_form, "axiom " + name + " was not checked");
}

bool FormReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](AxiomResult const& a) { return a.holds; });
}

FormReport verify_form(ArithmeticForm const& form, bool strong, CayleyTable const* target) {
  FiniteLoop const& l = form.loop;
  auto const n = static_cast<Element>(l.order());
  FormReport report;
  if (form.f.size() != n || form.g.size() != n || form.e >= n) {
    throw Error(ErrorKind::invalid_form, "form components do not match the loop order");
  }
  LoopSubsets sets(l);

  auto axiom = [&](std::string name, auto&& find_witness) {
    AxiomResult r;
    r.name = std::move(name);
    if (std::optional<std::vector<Element>> w = find_witness()) {
      r.holds = false;
      r.witness = std::move(*w);
    }
    report.axioms.push_back(std::move(r));
  };
  using Witness = std::optional<std::vector<Element>>;

  axiom("nk_loop", [&]() -> Witness {
    for (Element x = 0; x < n; ++x) {
      bool found = std::any_of(sets.n.begin(), sets.n.end(),
                               [&](Element a) { return member(sets.k, l.ldiv(a, x)); });
      if (!found) return std::vector<Element>{x};
    }
    return std::nullopt;
  });
  axiom("automorphisms", [&]() -> Witness {
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        Element xy = l.mul(x, y);
        if (form.f(xy) != l.mul(form.f(x), form.f(y)) || form.g(xy) != l.mul(form.g(x), form.g(y))) {
          return std::vector<Element>{x, y};
        }
      }
    }
    return std::nullopt;
  });
  axiom("commute", [&]() -> Witness {
    for (Element x = 0; x < n; ++x) {
      if (form.f(form.g(x)) != form.g(form.f(x))) return std::vector<Element>{x};
    }
    return std::nullopt;
  });
  axiom("plus_in_n", [&]() -> Witness {
    for (Element x = 0; x < n; ++x) {
      if (!member(sets.n, l.mul(x, form.f(x))) || !member(sets.n, l.mul(x, form.g(x)))) {
        return std::vector<Element>{x};
      }
    }
    return std::nullopt;
  });
  axiom("minus_in_k", [&]() -> Witness {
    for (Element x = 0; x < n; ++x) {
      Element neg = l.inv(x);
      if (!member(sets.k, l.mul(neg, form.f(x))) || !member(sets.k, l.mul(neg, form.g(x)))) {
        return std::vector<Element>{x};
      }
    }
    return std::nullopt;
  });
  axiom("e_in_n", [&]() -> Witness {
    if (!member(sets.n, form.e)) return std::vector<Element>{form.e};
    return std::nullopt;
  });
  axiom("association", [&]() -> Witness {
    for (Element x = 0; x < n; ++x) {
      Element fx = form.f(x);
      for (Element y = 0; y < n; ++y) {
        Element gy = form.g(y);
        if (l.mul(l.mul(fx, form.e), gy) != l.mul(fx, l.mul(form.e, gy))) return std::vector<Element>{x, y};
      }
    }
    return std::nullopt;
  });
  if (target != nullptr) {
    axiom("reconstruction", [&]() -> Witness {
      if (target->order() != n) return std::vector<Element>{};
      for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
          if (target->mul(x, y) != form_product(form, x, y)) return std::vector<Element>{x, y};
        }
      }
      return std::nullopt;
    });
  }
  if (strong) {
    axiom("strong", [&]() -> Witness {
      if (!member(sets.z, form.e)) return std::vector<Element>{form.e};
      for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
          if (l.mul(l.mul(form.f(x), form.g(y)), form.e) != form_product(form, x, y)) {
            return std::vector<Element>{x, y};
          }
        }
      }
      return std::nullopt;
    });
  }
  return report;
}

// ---------------------------------------------------------------------------
// Construction from a basepoint
// ---------------------------------------------------------------------------

FormAt form_at(CayleyTable const& q, Element r) {
  if (r >= q.order()) throw Error(ErrorKind::bad_symbol, "basepoint out of range");
  if (!is_f_quasigroup(q)) throw Error(ErrorKind::not_f, "form_at requires an F-quasigroup");
  auto const n = static_cast<Element>(q.order());

  FormTrace trace;
  trace.r = r;
  trace.a = q.alpha(r);
  trace.b = q.beta(r);
  Element const a = trace.a, b = trace.b;
  if (q.alpha(b) != q.beta(a)) assertion_failed("alpha(beta(r)) != beta(alpha(r))");

  FiniteLoop loop = principal_isotope(q, a, b);
  Element const zero = loop.zero();
  trace.h = q.translation(a, Side::right);
  trace.k = q.translation(b, Side::left);
  Permutation const h_inv = trace.h.inverse();
  Permutation const k_inv = trace.k.inverse();
  if (compose(trace.h, trace.k) != compose(trace.k, trace.h)) assertion_failed("R_a and L_b do not commute");

  Permutation f = compose(trace.h, compose(q.translation(q.beta(a), Side::right), h_inv));
  Permutation g = compose(trace.k, compose(q.translation(q.alpha(b), Side::left), k_inv));
  Element const ba = q.mul(b, a);
  Element const e = q.mul(ba, ba);

  trace.c = trace.h(zero);
  trace.d = trace.k(zero);
  trace.p.resize(n);
  trace.q.resize(n);
  for (Element x = 0; x < n; ++x) {
    trace.p[x] = trace.h(trace.k(q.alpha(h_inv(x))));
    trace.q[x] = trace.k(trace.h(q.beta(k_inv(x))));
  }

  if (loop.mul(trace.c, trace.d) != e) assertion_failed("e != c + d");
  for (Element x = 0; x < n; ++x) {
    if (loop.mul(f(x), trace.p[x]) != x) assertion_failed("x != f(x) + p(x)");
    if (loop.mul(trace.q[x], g(x)) != x) assertion_failed("x != q(x) + g(x)");
  }

  ArithmeticForm form{std::move(loop), std::move(f), std::move(g), e, true};
  FormReport report = verify_form(form, true, &q);
  for (AxiomResult const& axiom : report.axioms) {
    if (!axiom.holds) assertion_failed("form at basepoint " + std::to_string(r) + " fails " + axiom.name);
  }
  return {std::move(form), std::move(trace)};
}

// ---------------------------------------------------------------------------
// Correspondence between pointed F-quasigroups and forms
// ---------------------------------------------------------------------------

PointedTable psi(ArithmeticForm const& form) {
  FormReport report = verify_form(form, false);
  for (AxiomResult const& axiom : report.axioms) {
    if (!axiom.holds) throw Error(ErrorKind::invalid_form, "axiom " + axiom.name + " fails");
  }
  CayleyTable table =
      CayleyTable::from_function(form.loop.order(), [&](Element x, Element y) { return form_product(form, x, y); });
  if (!is_f_quasigroup(table)) assertion_failed("the quasigroup of a form is not an F-quasigroup");

  FiniteLoop const& l = form.loop;
  Permutation const f_inv = form.f.inverse();
  Permutation const g_inv = form.g.inverse();
  for (Element x = 0; x < l.order(); ++x) {
    // alpha(x) = -g^-1(e) - g^-1 f(x) + g^-1(x)
    Element alpha = l.mul(l.mul(l.inv(g_inv(form.e)), l.inv(g_inv(form.f(x)))), g_inv(x));
    // beta(x) = f^-1(x) - f^-1 g(x) - f^-1(e)
    Element beta = l.mul(l.mul(f_inv(x), l.inv(f_inv(form.g(x)))), l.inv(f_inv(form.e)));
    if (table.alpha(x) != alpha) assertion_failed("alpha differs from its closed form at " + std::to_string(x));
    if (table.beta(x) != beta) assertion_failed("beta differs from its closed form at " + std::to_string(x));
  }
  return {std::move(table), l.zero()};
}

Permutation shift_map(FiniteLoop const& loop, Element a, Element b) {
  std::vector<Element> images(loop.order());
  for (Element x = 0; x < loop.order(); ++x) images[x] = loop.mul(loop.mul(x, b), a);
  return Permutation(std::move(images));
}

ArithmeticForm basepoint_shift(ArithmeticForm const& form, Element a, Element b) {
  FiniteLoop const& l = form.loop;
  auto const n = static_cast<Element>(l.order());
  if (a >= n || b >= n) throw Error(ErrorKind::bad_shift, "shift parameters out of range");
  LoopSubsets sets(l);
  if (!form.strong || !member(sets.z, form.e)) {
    throw Error(ErrorKind::not_strong_input, "basepoint shifts start from a strong form");
  }
  if (!member(sets.k, a)) throw Error(ErrorKind::bad_shift, std::to_string(a) + " is not in K");
  if (!member(sets.n, b)) throw Error(ErrorKind::bad_shift, std::to_string(b) + " is not in N");

  Permutation tau = shift_map(l, a, b);
  Permutation tau_inv = tau.inverse();
  // x * y = ((x - b) + y) - a; subtracting an element of N or K is right
  // division in a Moufang loop.
  CayleyTable star = CayleyTable::from_function(
      n, [&](Element x, Element y) { return l.rdiv(l.mul(l.rdiv(x, b), y), a); });
  FiniteLoop shifted(std::move(star), tau(l.zero()));

  if (!is_homomorphism(l.table(), shifted.table(), tau.images())) {
    assertion_failed("tau is not an isomorphism onto the shifted loop");
  }
  LoopSubsets shifted_sets(shifted);
  auto image_of = [&](std::vector<Element> const& s) {
    std::vector<Element> out;
    for (Element x : s) out.push_back(tau(x));
    std::sort(out.begin(), out.end());
    return out;
  };
  if (shifted_sets.n != image_of(sets.n)) assertion_failed("N of the shifted loop is not tau(N)");
  if (shifted_sets.k != image_of(sets.k)) assertion_failed("K of the shifted loop is not tau(K)");

  Permutation h = compose(tau, compose(form.f, tau_inv));
  Permutation k = compose(tau, compose(form.g, tau_inv));
  if (compose(h, k) != compose(k, h)) assertion_failed("shifted automorphisms do not commute");

  // x y = (h(x) * e1) * k(y); at x = y = new zero this reads e1 = zero zero.
  Element const new_zero = shifted.zero();
  Element const e1 = form_product(form, new_zero, new_zero);
  bool const strong = member(shifted_sets.z, e1);
  ArithmeticForm result{std::move(shifted), std::move(h), std::move(k), e1, strong};

  CayleyTable product = CayleyTable::from_function(n, [&](Element x, Element y) { return form_product(form, x, y); });
  FormReport report = verify_form(result, false, &product);
  for (AxiomResult const& axiom : report.axioms) {
    if (!axiom.holds) assertion_failed("shifted form fails " + axiom.name);
  }
  if (strong != member(sets.z, b)) assertion_failed("strongness of the shifted form differs from b in Z");
  return result;
}

ArithmeticForm phi(CayleyTable const& q, Element w) {
  if (w >= q.order()) throw Error(ErrorKind::bad_symbol, "neutral element out of range");
  ArithmeticForm base = form_at(q, 0).form;
  // w = n + k; the shift by (a, b) = (k, n) has neutral element b + a = w.
  auto [nn, kk] = nk_decompose(base.loop, w);
  ArithmeticForm result = basepoint_shift(base, kk, nn);
  if (result.loop.zero() != w) assertion_failed("shifted neutral element differs from w");

  // Any other decomposition of w must give the same form.
  std::vector<Element> nuc = nucleus(base.loop).members;
  std::vector<Element> kset = moufang_center(base.loop).members;
  for (auto it = nuc.rbegin(); it != nuc.rend(); ++it) {
    Element k_alt = base.loop.ldiv(*it, w);
    if (*it == nn || !member(kset, k_alt)) continue;
    if (basepoint_shift(base, k_alt, *it) != result) {
      assertion_failed("two decompositions of " + std::to_string(w) + " give different forms");
    }
    break;
  }
  return result;
}

CayleyTable companion_quasigroup(ArithmeticForm const& form) {
  FiniteLoop const& l = form.loop;
  if (!form.strong || !member(center(l).members, form.e)) {
    throw Error(ErrorKind::invalid_form, "companion quasigroup needs a strong form");
  }
  CayleyTable table =
      CayleyTable::from_function(l.order(), [&](Element x, Element y) { return l.mul(form.f(x), form.g(y)); });
  if (!is_f_quasigroup(table)) assertion_failed("companion quasigroup is not an F-quasigroup");
  if (table.mul(l.zero(), l.zero()) != l.zero()) assertion_failed("zero is not idempotent in the companion");
  return table;
}

}  // namespace qf
