#include "qf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qf/forms.hpp"
#include "qf/gen.hpp"
#include "qf/io.hpp"
#include "qf/laws.hpp"
#include "qf/structure.hpp"

namespace qf {

namespace {

using nlohmann::json;

std::string read_file(std::string const& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CayleyTable load_table(std::string const& path) { return parse_table(read_file(path)); }

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_latin:
    case ErrorKind::bad_symbol:
    case ErrorKind::bad_order:
    case ErrorKind::not_loop:
    case ErrorKind::unknown_law:
    case ErrorKind::size_cap_exceeded:
    case ErrorKind::cap_exceeded:
    case ErrorKind::parse_error:
    case ErrorKind::bad_example:
    case ErrorKind::bad_shift:
    case ErrorKind::invalid_form:
    case ErrorKind::not_strong_input: return true;
    default: return false;
  }
}

void emit(std::ostream& out, json const& j) { out << j.dump(2) << '\n'; }

json subset_json(SubsetReport const& s) {
  json j;
  j["is_normal"] = s.is_normal ? json(*s.is_normal) : json(nullptr);
  j["is_subloop"] = s.is_subloop;
  j["members"] = s.members;
  j["size"] = s.members.size();
  return j;
}

json law_report_json(LawReport const& r) {
  json j;
  j["holds"] = r.holds;
  j["law"] = r.law;
  j["note"] = r.note;
  j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_check(std::string const& path, std::vector<std::string> const& names, std::ostream& out) {
  std::vector<LawId> laws;
  for (std::string const& name : names) laws.push_back(parse_law(name));
  CayleyTable q = load_table(path);
  json reports = json::array();
  bool all = true;
  for (LawId law : laws) {
    LawReport r = check_law(q, law);
    all = all && r.holds;
    reports.push_back(law_report_json(r));
  }
  json j;
  j["all_hold"] = all;
  j["laws"] = std::move(reports);
  emit(out, j);
  return all ? kExitOk : kExitFails;
}

json analyze_f(CayleyTable const& q, json& tags) {
  json j;
  std::size_t const n = q.order();

  FormAt base = form_at(q, 0);
  FiniteLoop const& loop = base.form.loop;
  json loop_j;
  loop_j["center"] = subset_json(center(loop));
  loop_j["commutant"] = subset_json(commutant(loop));
  loop_j["e"] = base.form.e;
  loop_j["m_set"] = subset_json(m_set(loop.table()));
  loop_j["moufang_center"] = subset_json(moufang_center(loop));
  loop_j["nucleus"] = subset_json(nucleus(loop));
  loop_j["strong"] = base.form.strong;
  loop_j["zero"] = loop.zero();
  j["form_loop"] = std::move(loop_j);

  json forms = json::array();
  for (Element r = 0; r < n; ++r) {
    FormAt at = r == 0 ? base : form_at(q, r);
    json f;
    f["a"] = at.trace.a;
    f["b"] = at.trace.b;
    f["e"] = at.form.e;
    f["r"] = r;
    f["strong"] = at.form.strong;
    f["zero"] = at.form.loop.zero();
    forms.push_back(std::move(f));
  }
  j["forms"] = std::move(forms);

  SubsetReport m = m_set(q);
  Congruence by_m = congruence_from_subloop(q, m.members);
  CayleyTable q_over_m = quotient(q, by_m);
  json qm;
  qm["is_group"] = is_group(q_over_m);
  qm["order"] = q_over_m.order();
  j["quotient_by_m"] = std::move(qm);

  Congruence rho = rho_congruence(q);
  bool blocks_fg = true;
  for (std::vector<Element> const& block : rho.blocks()) {
    blocks_fg = blocks_fg && is_closed(q, block) && is_fg(restrict_to(q, block).table);
  }
  CayleyTable q_over_rho = quotient(q, rho);
  json rj;
  rj["block_count"] = rho.block_count();
  rj["block_size"] = rho.blocks().front().size();
  rj["blocks_fg"] = blocks_fg;
  rj["quotient_distributive"] = holds(q_over_rho, LawId::distributive);
  rj["quotient_order"] = q_over_rho.order();
  rj["quotient_symmetric"] = holds(q_over_rho, LawId::symmetric);
  j["rho"] = std::move(rj);

  if (is_fg(q)) tags.push_back("FG");
  return j;
}

int cmd_analyze(std::string const& path, std::ostream& out) {
  CayleyTable q = load_table(path);
  json j;
  j["digest"] = table_digest(q);
  j["order"] = q.order();

  json laws = json::object();
  std::map<LawId, std::optional<bool>> results;
  for (LawId law : all_laws()) {
    try {
      bool h = check_law(q, law).holds;
      results[law] = h;
      laws[std::string(law_name(law))] = h;
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::size_cap_exceeded) throw;
      results[law] = std::nullopt;
      laws[std::string(law_name(law))] = nullptr;
    }
  }
  j["laws"] = laws;
  auto holds_law = [&](LawId law) { return results[law].value_or(false); };

  bool const is_f = holds_law(LawId::f_left) && holds_law(LawId::f_right);
  json tags = json::array();
  if (is_f) tags.push_back("F");
  if (is_group(q)) tags.push_back("group");
  if (holds_law(LawId::medial)) tags.push_back("medial");
  bool trimedial = holds_law(LawId::medial);
  if (!trimedial) {
    try {
      trimedial = k_medial(q, 3).holds;
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::size_cap_exceeded) throw;
    }
  }
  if (trimedial) tags.push_back("trimedial");
  if (holds_law(LawId::distributive)) tags.push_back("distributive");
  if (holds_law(LawId::symmetric)) tags.push_back("symmetric");
  if (q.order() <= kSimpleCap && is_simple(q)) tags.push_back("simple");

  j["m_set"] = subset_json(m_set(q));
  if (is_f) {
    j["f_sections"] = analyze_f(q, tags);
    j["notice"] = nullptr;
  } else {
    j["f_sections"] = nullptr;
    j["notice"] = "not an F-quasigroup; form sections skipped";
  }
  std::vector<std::string> sorted_tags = tags.get<std::vector<std::string>>();
  std::sort(sorted_tags.begin(), sorted_tags.end());
  j["tags"] = sorted_tags;
  emit(out, j);
  return kExitOk;
}

int cmd_form(std::string const& path, Element at, std::string const& shift, std::ostream& out) {
  CayleyTable q = load_table(path);
  ArithmeticForm form = form_at(q, at).form;
  if (!shift.empty()) {
    std::size_t comma = shift.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::parse_error, "--shift expects a,b");
    Element a = 0, b = 0;
    try {
      a = static_cast<Element>(std::stoul(shift.substr(0, comma)));
      b = static_cast<Element>(std::stoul(shift.substr(comma + 1)));
    } catch (std::exception const&) {
      throw Error(ErrorKind::parse_error, "--shift expects two non-negative integers");
    }
    form = basepoint_shift(form, a, b);
  }
  out << form_to_json(form) << '\n';
  return kExitOk;
}

int cmd_enumerate(EnumSpec const& spec, bool count_only, unsigned threads, std::ostream& out) {
  if (count_only) {
    std::uint64_t count = 0;
    if (threads > 1 && !spec.limit) {
      for (std::uint64_t c : enumerate_partitioned(spec, spec.order, threads)) count += c;
    } else {
      count = enumerate(spec);
    }
    json j;
    j["count"] = count;
    j["mode"] = std::string(to_string(spec.mode));
    j["order"] = spec.order;
    emit(out, j);
    return kExitOk;
  }
  enumerate(spec, [&](CayleyTable const& t) { out << render_table(t); });
  return kExitOk;
}

int cmd_quotient(std::string const& path, std::string const& by, std::ostream& out) {
  CayleyTable q = load_table(path);
  Congruence c = Congruence::identity(q.order());
  if (by == "m") {
    if (!is_f_quasigroup(q)) throw Error(ErrorKind::not_f, "quotient by M requires an F-quasigroup");
    c = congruence_from_subloop(q, m_set(q).members);
  } else if (by == "rho") {
    c = rho_congruence(q);
  } else {
    throw Error(ErrorKind::parse_error, "--by expects m or rho");
  }
  out << render_table(quotient(q, c));
  return kExitOk;
}

int cmd_iso(std::string const& a, std::string const& b, std::ostream& out) {
  CayleyTable qa = load_table(a);
  CayleyTable qb = load_table(b);
  std::optional<Permutation> w = is_isomorphic(qa, qb);
  json j;
  j["isomorphic"] = w.has_value();
  j["witness"] = w ? json(std::vector<Element>(w->images().begin(), w->images().end())) : json(nullptr);
  emit(out, j);
  return w ? kExitOk : kExitFails;
}

}  // namespace

int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite quasigroup and loop analysis", "qf"};
  app.require_subcommand(1);

  std::string file, file2, shift, by, example;
  std::vector<std::string> laws;
  Element at = 0;
  EnumSpec spec;
  std::string mode = "all";
  std::uint64_t limit = 0;
  bool count_only = false;
  unsigned threads = 1;

  CLI::App* check = app.add_subcommand("check", "Check laws on a table");
  check->add_option("file", file, "Table file")->required();
  check->add_option("--law", laws, "Law names")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "Full structural report");
  analyze->add_option("file", file, "Table file")->required();

  CLI::App* form = app.add_subcommand("form", "Arithmetic form at a basepoint");
  form->add_option("file", file, "Table file")->required();
  form->add_option("--at", at, "Basepoint");
  form->add_option("--shift", shift, "Basepoint shift a,b with a in K and b in N");

  CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate Latin squares");
  enumerate_cmd->add_option("--order", spec.order, "Order")->required();
  enumerate_cmd->add_option("--mode", mode, "all, reduced or loops");
  enumerate_cmd->add_option("--law", laws, "Filter laws");
  enumerate_cmd->add_option("--limit", limit, "Stop after this many tables");
  enumerate_cmd->add_flag("--count", count_only, "Print only the count");
  enumerate_cmd->add_option("--threads", threads, "Workers for counting");

  CLI::App* gen = app.add_subcommand("gen", "Emit a builtin example");
  gen->add_option("id", example, "Example id, e.g. zlin(5,2,3,1)")->required();

  CLI::App* quotient_cmd = app.add_subcommand("quotient", "Quotient by M or rho");
  quotient_cmd->add_option("file", file, "Table file")->required();
  quotient_cmd->add_option("--by", by, "m or rho")->required();

  CLI::App* iso = app.add_subcommand("iso", "Isomorphism test");
  iso->add_option("file1", file, "First table")->required();
  iso->add_option("file2", file2, "Second table")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (CLI::ParseError const& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (check->parsed()) return cmd_check(file, laws, out);
    if (analyze->parsed()) return cmd_analyze(file, out);
    if (form->parsed()) return cmd_form(file, at, shift, out);
    if (enumerate_cmd->parsed()) {
      spec.mode = parse_enum_mode(mode);
      for (std::string const& name : laws) spec.filter.push_back(parse_law(name));
      if (enumerate_cmd->count("--limit") > 0) spec.limit = limit;
      return cmd_enumerate(spec, count_only, threads, out);
    }
    if (gen->parsed()) {
      out << render_table(builtin(example));
      return kExitOk;
    }
    if (quotient_cmd->parsed()) return cmd_quotient(file, by, out);
    if (iso->parsed()) return cmd_iso(file, file2, out);
  } catch (Error const& e) {
    json j;
    j["error"] = std::string(to_string(e.kind()));
    j["message"] = e.what();
    err << j.dump() << '\n';
    return is_input_error(e.kind()) ? kExitInput : kExitFails;
  }
  return kExitInput;
}

}  // namespace qf
