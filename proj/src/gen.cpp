#include "qf/gen.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>
#include <thread>

#include "qf/structure.hpp"

namespace qf {

std::string_view to_string(EnumMode mode) noexcept {
  switch (mode) {
    case EnumMode::all: return "all";
    case EnumMode::reduced: return "reduced";
    case EnumMode::loops: return "loops";
  }
  return "?";
}

EnumMode parse_enum_mode(std::string_view name) {
  for (EnumMode m : {EnumMode::all, EnumMode::reduced, EnumMode::loops}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::parse_error, "unknown enumeration mode " + std::string(name));
}

// ---------------------------------------------------------------------------
// Backtracking search
// ---------------------------------------------------------------------------

namespace {

constexpr int kNoNeutral = -1;

class Search {
 public:
  explicit Search(EnumSpec const& spec) : spec_(spec), n_(spec.order) {
    std::size_t cap = spec.mode == EnumMode::all ? kEnumCapAll : kEnumCapOther;
    if (n_ == 0) throw Error(ErrorKind::bad_order, "enumeration order must be positive");
    if (n_ > cap) {
      throw Error(ErrorKind::cap_exceeded, "order " + std::to_string(n_) + " exceeds the " +
                                               std::string(to_string(spec.mode)) + " cap " + std::to_string(cap));
    }
    full_ = (1u << n_) - 1;
    cells_.assign(n_ * n_, 0);
    row_used_.assign(n_, 0);
    col_used_.assign(n_, 0);
    if (spec.mode == EnumMode::reduced) neutral_ = 0;
  }

  // Candidate mask for the next cell.
  std::uint32_t candidates(std::size_t idx) const {
    std::size_t x = idx / n_, y = idx % n_;
    std::uint32_t free = full_ & ~(row_used_[x] | col_used_[y]);
    if (neutral_ != kNoNeutral) {
      auto e = static_cast<std::size_t>(neutral_);
      if (y == e) return free & (1u << x);
      if (x == e) return free & (1u << y);
    }
    return free;
  }

  void place(std::size_t idx, Element v) {
    std::size_t x = idx / n_, y = idx % n_;
    cells_[idx] = v;
    row_used_[x] |= 1u << v;
    col_used_[y] |= 1u << v;
    if (spec_.mode == EnumMode::loops && x == 0 && v == 0) neutral_ = static_cast<int>(y);
  }

  void unplace(std::size_t idx) {
    std::size_t x = idx / n_, y = idx % n_;
    Element v = cells_[idx];
    row_used_[x] &= ~(1u << v);
    col_used_[y] &= ~(1u << v);
    if (spec_.mode == EnumMode::loops && x == 0 && v == 0) neutral_ = kNoNeutral;
  }

  // Applies a prefix; false if it is not a node of the search forest.
  bool apply(std::span<Element const> prefix) {
    if (prefix.size() > n_ * n_) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (prefix[i] >= n_ || !(candidates(i) & (1u << prefix[i]))) return false;
      place(i, prefix[i]);
    }
    return true;
  }

  std::uint64_t run(std::size_t start, TableConsumer const& consumer) {
    consumer_ = &consumer;
    count_ = 0;
    dfs(start);
    return count_;
  }

  void collect_prefixes(std::size_t idx, std::size_t depth, std::vector<std::vector<Element>>& out) {
    if (idx == depth) {
      out.emplace_back(cells_.begin(), cells_.begin() + static_cast<std::ptrdiff_t>(depth));
      return;
    }
    for (std::uint32_t m = candidates(idx); m != 0; m &= m - 1) {
      place(idx, static_cast<Element>(std::countr_zero(m)));
      collect_prefixes(idx + 1, depth, out);
      unplace(idx);
    }
  }

 private:
  bool done() const { return spec_.limit && count_ >= *spec_.limit; }

  void leaf() {
    bool need_table = !spec_.filter.empty() || static_cast<bool>(*consumer_);
    if (!need_table) {
      ++count_;
      return;
    }
    CayleyTable table = CayleyTable::from_table(n_, cells_);
    for (LawId law : spec_.filter) {
      if (!check_law(table, law).holds) return;
    }
    ++count_;
    if (*consumer_) (*consumer_)(table);
  }

  void dfs(std::size_t idx) {
    if (idx == n_ * n_) {
      leaf();
      return;
    }
    for (std::uint32_t m = candidates(idx); m != 0 && !done(); m &= m - 1) {
      place(idx, static_cast<Element>(std::countr_zero(m)));
      dfs(idx + 1);
      unplace(idx);
    }
  }

  EnumSpec const& spec_;
  std::size_t n_;
  std::uint32_t full_ = 0;
  std::vector<Element> cells_;
  std::vector<std::uint32_t> row_used_;
  std::vector<std::uint32_t> col_used_;
  int neutral_ = kNoNeutral;
  TableConsumer const* consumer_ = nullptr;
  std::uint64_t count_ = 0;
};

}  // namespace

std::uint64_t enumerate(EnumSpec const& spec, TableConsumer const& consumer) {
  Search search(spec);
  return search.run(0, consumer);
}

std::vector<std::vector<Element>> split_prefixes(EnumSpec const& spec, std::size_t depth) {
  Search search(spec);
  depth = std::min(depth, spec.order * spec.order);
  std::vector<std::vector<Element>> out;
  search.collect_prefixes(0, depth, out);
  return out;
}

std::uint64_t enumerate_subtree(EnumSpec const& spec, std::span<Element const> prefix, TableConsumer const& consumer) {
  Search search(spec);
  if (!search.apply(prefix)) return 0;
  return search.run(prefix.size(), consumer);
}

std::vector<std::uint64_t> enumerate_partitioned(EnumSpec const& spec, std::size_t depth, unsigned threads,
                                                 std::function<TableConsumer(std::size_t)> const& make_consumer) {
  std::vector<std::vector<Element>> prefixes = split_prefixes(spec, depth);
  std::vector<std::uint64_t> counts(prefixes.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < prefixes.size(); i = next++) {
      TableConsumer consumer = make_consumer ? make_consumer(i) : TableConsumer{};
      counts[i] = enumerate_subtree(spec, prefixes[i], consumer);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
    return counts;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return counts;
}

// ---------------------------------------------------------------------------
// Example identifiers
// ---------------------------------------------------------------------------

std::string ExampleId::str() const {
  std::string out = name;
  if (children.empty() && numbers.empty()) return out;
  out += '(';
  bool first = true;
  for (ExampleId const& c : children) {
    if (!first) out += ',';
    out += c.str();
    first = false;
  }
  for (std::int64_t v : numbers) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  out += ')';
  return out;
}

namespace {

class IdParser {
 public:
  explicit IdParser(std::string_view text) : text_(text) {}

  ExampleId parse() {
    ExampleId id = parse_id();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return id;
  }

 private:
  [[noreturn]] void fail(std::string const& what) const {
    throw Error(ErrorKind::bad_example,
                "cannot parse example id '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  ExampleId parse_id() {
    skip_space();
    ExampleId id;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      id.name += text_[pos_++];
    }
    if (id.name.empty() || !std::isalpha(static_cast<unsigned char>(id.name[0]))) fail("expected a name");
    if (!peek('(')) return id;
    ++pos_;
    while (true) {
      skip_space();
      if (pos_ < text_.size() && (text_[pos_] == '-' || std::isdigit(static_cast<unsigned char>(text_[pos_])))) {
        std::size_t start = pos_++;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string digits(text_.substr(start, pos_ - start));
        if (digits == "-") fail("expected a number");
        try {
          id.numbers.push_back(std::stoll(digits));
        } catch (std::exception const&) {
          fail("number out of range");
        }
      } else {
        if (!id.numbers.empty()) fail("identifiers must precede numbers");
        id.children.push_back(parse_id());
      }
      if (peek(',')) {
        ++pos_;
        continue;
      }
      if (peek(')')) {
        ++pos_;
        return id;
      }
      fail("expected ',' or ')'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExampleId parse_example(std::string_view text) { return IdParser(text).parse(); }

// ---------------------------------------------------------------------------
// Builtins
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void bad_example(ExampleId const& id, std::string const& what) {
  throw Error(ErrorKind::bad_example, id.str() + ": " + what);
}

void require(bool ok, ExampleId const& id, std::string const& what) {
  if (!ok) throw Error(ErrorKind::example_sanity_failed, id.str() + ": " + what);
}

void expect_arity(ExampleId const& id, std::size_t children, std::size_t numbers) {
  if (id.children.size() != children || id.numbers.size() != numbers) {
    bad_example(id, "expects " + std::to_string(children) + " example argument(s) and " + std::to_string(numbers) +
                        " number(s)");
  }
}

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

CayleyTable make_cyclic(ExampleId const& id) {
  expect_arity(id, 0, 1);
  std::int64_t n = id.numbers[0];
  if (n < 1 || n > static_cast<std::int64_t>(kMaxOrder)) bad_example(id, "order out of range");
  CayleyTable t = CayleyTable::from_function(static_cast<std::size_t>(n), [&](Element x, Element y) {
    return static_cast<Element>((x + y) % static_cast<Element>(n));
  });
  require(is_group(t) && holds(t, LawId::commutative), id, "not an abelian group");
  return t;
}

CayleyTable make_s3(ExampleId const& id) {
  expect_arity(id, 0, 0);
  std::vector<std::array<Element, 3>> perms;
  std::array<Element, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](std::array<Element, 3> const& v) {
    return static_cast<Element>(std::find(perms.begin(), perms.end(), v) - perms.begin());
  };
  CayleyTable t = CayleyTable::from_function(6, [&](Element x, Element y) {
    std::array<Element, 3> r{};
    for (std::size_t i = 0; i < 3; ++i) r[i] = perms[x][perms[y][i]];
    return index_of(r);
  });
  require(is_group(t), id, "not a group");
  require(!holds(t, LawId::commutative), id, "unexpectedly commutative");
  return t;
}

CayleyTable make_zlin(ExampleId const& id) {
  expect_arity(id, 0, 4);
  std::int64_t n = id.numbers[0];
  if (n < 1 || n > static_cast<std::int64_t>(kMaxOrder)) bad_example(id, "order out of range");
  std::int64_t f = mod(id.numbers[1], n), g = mod(id.numbers[2], n), e = mod(id.numbers[3], n);
  if (std::gcd(f, n) != 1 || std::gcd(g, n) != 1) bad_example(id, "f and g must be invertible modulo n");
  CayleyTable t = CayleyTable::from_function(static_cast<std::size_t>(n), [&](Element x, Element y) {
    return static_cast<Element>(mod(f * x + g * y + e, n));
  });
  require(holds(t, LawId::medial), id, "not medial");
  return t;
}

CayleyTable make_chein(ExampleId const& id) {
  expect_arity(id, 1, 0);
  CayleyTable g = builtin(id.children[0]);
  if (!is_group(g)) bad_example(id, "the base must be a group");
  auto m = static_cast<Element>(g.order());
  if (2 * static_cast<std::size_t>(m) > kMaxOrder) throw Error(ErrorKind::cap_exceeded, id.str() + ": too large");
  Element unit = FiniteLoop::from_quasigroup(g)->zero();
  auto inv = [&](Element a) { return g.ldiv(a, unit); };
  CayleyTable t = CayleyTable::from_function(2 * m, [&](Element x, Element y) {
    Element a = x % m, b = y % m;
    bool xs = x >= m, ys = y >= m;
    if (!xs && !ys) return g.mul(a, b);
    if (!xs && ys) return static_cast<Element>(g.mul(b, a) + m);
    if (xs && !ys) return static_cast<Element>(g.mul(a, inv(b)) + m);
    return g.mul(inv(b), a);
  });
  for (LawId law : {LawId::moufang1, LawId::moufang2, LawId::moufang3, LawId::moufang4}) {
    require(holds(t, law), id, std::string(law_name(law)) + " fails");
  }
  if (!holds(g, LawId::commutative)) require(!holds(t, LawId::associative), id, "unexpectedly associative");
  return t;
}

// (x1..x4) + (y1..y4) = (x1+y1, x2+y2, x3+y3, x4+y4+(x3-y3)(x1y2-x2y1)) over GF(3).
CayleyTable cml81_formula() {
  auto coords = [](Element v) {
    return std::array<int, 4>{static_cast<int>(v % 3), static_cast<int>(v / 3 % 3), static_cast<int>(v / 9 % 3),
                              static_cast<int>(v / 27)};
  };
  return CayleyTable::from_function(81, [&](Element x, Element y) {
    auto a = coords(x), b = coords(y);
    int twist = (a[2] - b[2]) * (a[0] * b[1] - a[1] * b[0]);
    int c[4] = {(a[0] + b[0]) % 3, (a[1] + b[1]) % 3, (a[2] + b[2]) % 3,
                static_cast<int>(mod(a[3] + b[3] + twist, 3))};
    return static_cast<Element>(c[0] + 3 * c[1] + 9 * c[2] + 27 * c[3]);
  });
}

void cml_sanity(CayleyTable const& t, ExampleId const& id) {
  require(holds(t, LawId::commutative), id, "not commutative");
  for (LawId law : {LawId::moufang1, LawId::moufang2, LawId::moufang3, LawId::moufang4}) {
    require(holds(t, law), id, std::string(law_name(law)) + " fails");
  }
  std::optional<FiniteLoop> loop = FiniteLoop::from_quasigroup(t);
  require(loop.has_value() && loop->zero() == 0, id, "0 is not neutral");
  for (Element x = 0; x < t.order(); ++x) {
    require(t.mul(t.mul(x, x), x) == 0, id, "exponent 3 fails at " + std::to_string(x));
  }
  require(!holds(t, LawId::associative), id, "no nonassociativity witness");
}

CayleyTable make_cml81(ExampleId const& id) {
  expect_arity(id, 0, 0);
  CayleyTable t = cml81_formula();
  cml_sanity(t, id);
  return t;
}

CayleyTable make_sd81(ExampleId const& id) {
  expect_arity(id, 0, 0);
  ExampleId base{"cml81", {}, {}};
  CayleyTable cml = make_cml81(base);
  CayleyTable t = CayleyTable::from_function(81, [&](Element x, Element y) { return cml.ldiv(cml.mul(x, y), 0); });
  require(holds(t, LawId::symmetric), id, "not symmetric");
  require(holds(t, LawId::distributive), id, "not distributive");
  return t;
}

CayleyTable make_shifted(ExampleId const& id) {
  expect_arity(id, 1, 2);
  CayleyTable base = builtin(id.children[0]);
  std::int64_t a = id.numbers[0], b = id.numbers[1];
  auto n = static_cast<std::int64_t>(base.order());
  if (a < 0 || a >= n || b < 0 || b >= n) bad_example(id, "isotope parameters out of range");
  FiniteLoop loop = principal_isotope(base, static_cast<Element>(a), static_cast<Element>(b));
  require(loop.mul(loop.zero(), 0) == 0 && loop.mul(0, loop.zero()) == 0, id, "isotope has no neutral element");
  return loop.table();
}

CayleyTable make_product(ExampleId const& id) {
  expect_arity(id, 2, 0);
  CayleyTable a = builtin(id.children[0]);
  CayleyTable b = builtin(id.children[1]);
  CayleyTable t = direct_product(a, b);
  for (LawId law : all_laws()) {
    if (law_arity(law) > 3) continue;
    if (holds(a, law) && holds(b, law)) require(holds(t, law), id, std::string(law_name(law)) + " not inherited");
  }
  return t;
}

}  // namespace

CayleyTable builtin(ExampleId const& id) {
  if (id.name == "cyclic") return make_cyclic(id);
  if (id.name == "s3") return make_s3(id);
  if (id.name == "zlin") return make_zlin(id);
  if (id.name == "chein") return make_chein(id);
  if (id.name == "cml81") return make_cml81(id);
  if (id.name == "sd81") return make_sd81(id);
  if (id.name == "shifted") return make_shifted(id);
  if (id.name == "product") return make_product(id);
  bad_example(id, "unknown example");
}

CayleyTable builtin(std::string_view text) { return builtin(parse_example(text)); }

CayleyTable direct_product(CayleyTable const& q1, CayleyTable const& q2) {
  std::size_t n1 = q1.order(), n2 = q2.order();
  if (n1 * n2 > kMaxOrder) {
    throw Error(ErrorKind::cap_exceeded, "product order " + std::to_string(n1 * n2) + " exceeds the table cap");
  }
  auto m = static_cast<Element>(n2);
  return CayleyTable::from_function(n1 * n2, [&](Element x, Element y) {
    return static_cast<Element>(q1.mul(x / m, y / m) * m + q2.mul(x % m, y % m));
  });
}

// ---------------------------------------------------------------------------
// Random forms
// ---------------------------------------------------------------------------

std::vector<Permutation> automorphism_pool(FiniteLoop const& loop, std::mt19937_64& rng, std::size_t extra) {
  CayleyTable const& t = loop.table();
  auto const n = static_cast<Element>(t.order());
  std::set<Permutation> pool;
  pool.insert(Permutation::identity(n));
  std::vector<Element> neg(n);
  for (Element x = 0; x < n; ++x) neg[x] = loop.inv(x);
  if (is_automorphism(t, neg)) pool.insert(Permutation(neg));

  std::vector<Element> gens = generating_sequence(t);
  std::vector<Element> images(gens.size());
  std::size_t found = 0;
  for (std::size_t attempt = 0; attempt < 40 * extra && found < extra; ++attempt) {
    for (Element& im : images) im = static_cast<Element>(rng() % n);
    std::optional<std::vector<Element>> map = extend_homomorphism(t, t, gens, images);
    if (!map) continue;
    std::vector<Element> sorted = *map;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    if (pool.insert(Permutation(std::move(*map))).second) ++found;
  }
  return {pool.begin(), pool.end()};
}

std::vector<std::string> default_form_components() {
  return {"cyclic(2)",
          "cyclic(3)",
          "cyclic(4)",
          "cyclic(5)",
          "cyclic(6)",
          "cyclic(7)",
          "product(cyclic(2),cyclic(2))",
          "product(cyclic(3),cyclic(3))",
          "s3",
          "product(s3,cyclic(2))",
          "product(s3,cyclic(3))",
          "cml81"};
}

ArithmeticForm random_form(std::uint64_t seed, RandomFormOptions const& options) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> components = options.components.empty() ? default_form_components() : options.components;
  std::string const& choice = components[rng() % components.size()];
  CayleyTable table = builtin(choice);
  std::optional<FiniteLoop> maybe_loop = FiniteLoop::from_quasigroup(table);
  if (!maybe_loop) throw Error(ErrorKind::bad_example, choice + " is not a loop");
  FiniteLoop loop = std::move(*maybe_loop);

  std::vector<Element> nuc = nucleus(loop).members;
  std::vector<Element> zen = center(loop).members;
  std::vector<Permutation> pool = automorphism_pool(loop, rng);
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    Permutation const& f = pool[rng() % pool.size()];
    Permutation const& g = pool[rng() % pool.size()];
    Element e = nuc[rng() % nuc.size()];
    bool strong = std::binary_search(zen.begin(), zen.end(), e);
    ArithmeticForm form{loop, f, g, e, strong};
    if (verify_form(form, false).all_passed()) return form;
  }
  throw Error(ErrorKind::exhausted_attempts,
              "no valid form over " + choice + " after " + std::to_string(options.max_attempts) + " attempts");
}

}  // namespace qf
