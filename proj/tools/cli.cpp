#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "CLI11.hpp"
#include "cig/catalog.hpp"
#include "cig/ci.hpp"
#include "cig/digraph.hpp"
#include "cig/error.hpp"
#include "cig/finite_group.hpp"
#include "cig/iso.hpp"
#include "cig/serialize.hpp"

#ifndef CIG_VERSION
#define CIG_VERSION "0.0.0"
#endif

namespace cig::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Config {
  std::string format = "human";
  unsigned threads = 1;
  std::size_t group_order_cap = kDefaultGroupOrderCap;
  std::size_t automorphism_cap = kDefaultAutomorphismOrderCap;
  std::size_t search_cap = kDefaultSearchOrderCap;
  std::size_t block_search_cap = kDefaultBlockSearchDegreeCap;

  Limits limits() const { return Limits{automorphism_cap, search_cap, block_search_cap}; }

  Json to_json() const {
    return Json{{"format", format},
                {"threads", threads},
                {"caps",
                 Json{{"group_order", group_order_cap},
                      {"automorphism_group_order", automorphism_cap},
                      {"search_order", search_cap},
                      {"block_search_degree", block_search_cap}}}};
  }
};

std::vector<Element> parse_list(const std::string& text, const char* flag) {
  std::vector<Element> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::size_t first = pos, last = end;
    while (first < last && text[first] == ' ') ++first;
    while (last > first && text[last - 1] == ' ') --last;
    Element value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + first, text.data() + last, value);
    if (first == last || ec != std::errc() || ptr != text.data() + last)
      throw ParseError(std::string(flag) + " expects comma-separated element indices", first);
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

ElementSet parse_set(const FiniteGroup& g, const std::string& text, const char* flag) {
  auto list = parse_list(text, flag);
  for (Element x : list)
    if (x >= g.order())
      throw InvalidInput(std::string(flag) + ": element " + std::to_string(x) +
                         " is outside a group of order " + std::to_string(g.order()));
  return make_element_set(std::move(list));
}

std::string element_text(const FiniteGroup& g, Element x) {
  const std::string& l = g.label(x);
  return l == std::to_string(x) ? l : std::to_string(x) + ":" + l;
}

std::string set_text(const FiniteGroup& g, std::span<const Element> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + element_text(g, s[i]);
  return out + "}";
}

std::string map_text(std::span<const Element> map) {
  std::string out;
  for (std::size_t i = 0; i < map.size(); ++i)
    out += (i ? " " : "") + std::to_string(i) + "->" + std::to_string(map[i]);
  return out;
}

class Runner {
 public:
  Runner(const Config& config, std::ostream& out) : config_(config), out_(out) {}

  bool json() const { return config_.format == "json"; }

  void emit(const std::string& command, Json arguments, Json result) {
    Json config = config_.to_json();
    config["command"] = command;
    config["arguments"] = std::move(arguments);
    Json envelope{{"tool", "cig"}, {"version", CIG_VERSION}, {"config", std::move(config)},
                  {"result", std::move(result)}};
    out_ << envelope.dump(2) << "\n";
  }

  FiniteGroup group(const std::string& spec) const {
    return parse_group_spec(spec, config_.group_order_cap);
  }

  const Config& config_;
  std::ostream& out_;
};

int catalog_list(Runner& run, std::size_t max_order) {
  const auto entries = catalog(max_order);
  if (run.json()) {
    Json list = Json::array();
    for (const auto& e : entries)
      list.push_back(Json{{"spec", e.spec}, {"order", e.order}, {"description", e.description}});
    run.emit("catalog list", Json{{"max_order", max_order}}, std::move(list));
    return kOk;
  }
  std::size_t width = 4;
  for (const auto& e : entries) width = std::max(width, e.spec.size());
  for (const auto& e : entries) {
    std::string spec = e.spec;
    spec.resize(width + 2, ' ');
    run.out_ << spec << e.order << "\t" << e.description << "\n";
  }
  return kOk;
}

int cayley_command(Runner& run, const std::string& spec, const std::string& set_arg,
                   const std::string& emit) {
  const FiniteGroup g = run.group(spec);
  const ElementSet s = parse_set(g, set_arg, "--set");
  const Digraph d = cayley(g, s);
  const std::string dot = emit == "dot" ? to_dot(d, g.labels()) : std::string();
  if (run.json()) {
    Json result{{"digraph", to_json(d)}, {"undirected", d.is_undirected()}};
    if (!dot.empty()) result["dot"] = dot;
    run.emit("cayley", Json{{"group", spec}, {"set", s}, {"emit", emit}}, std::move(result));
    return kOk;
  }
  if (emit == "dot") {
    run.out_ << dot;
  } else if (emit == "json") {
    run.out_ << to_json(d).dump() << "\n";
  } else {
    run.out_ << "Cay(" << spec << ", " << set_text(g, s) << "): " << d.order() << " vertices, "
             << d.arc_count() << " arcs, " << d.loop_count() << " loops, "
             << (d.is_undirected() ? "undirected" : "directed") << "\n";
    for (auto [u, v] : d.arcs()) run.out_ << "  " << element_text(g, u) << " -> " << element_text(g, v) << "\n";
  }
  return kOk;
}

int iso_command(Runner& run, const std::string& spec, const std::string& a1,
                const std::string& a2) {
  const FiniteGroup g = run.group(spec);
  const ElementSet s1 = parse_set(g, a1, "--set1"), s2 = parse_set(g, a2, "--set2");
  const auto map = find_isomorphism(cayley(g, s1), cayley(g, s2), run.config_.search_cap);
  if (run.json()) {
    run.emit("iso", Json{{"group", spec}, {"set1", s1}, {"set2", s2}},
             Json{{"isomorphic", map.has_value()}, {"iso", map ? Json(*map) : Json(nullptr)}});
    return kOk;
  }
  run.out_ << "Cay(" << spec << ", " << set_text(g, s1) << ") and Cay(" << spec << ", "
           << set_text(g, s2) << ") are " << (map ? "isomorphic" : "not isomorphic") << "\n";
  if (map) run.out_ << "  map: " << map_text(*map) << "\n";
  return kOk;
}

int ci_pair_command(Runner& run, const std::string& spec, const std::string& a1,
                    const std::string& a2, Mode mode) {
  const FiniteGroup g = run.group(spec);
  const ElementSet s1 = parse_set(g, a1, "--set1"), s2 = parse_set(g, a2, "--set2");
  const CIPairResult r = ci_pair(g, s1, s2, mode, run.config_.limits());
  const int status = r.verdict == PairVerdict::non_ci_witness ? kNegative : kOk;
  if (run.json()) {
    run.emit("ci pair", Json{{"group", spec}, {"set1", s1}, {"set2", s2}, {"mode", to_string(mode)}},
             to_json(r));
    return status;
  }
  run.out_ << to_string(r.verdict) << "\n";
  if (r.alpha) run.out_ << "  alpha: " << map_text(r.alpha->images) << "\n";
  if (r.verdict == PairVerdict::non_ci_witness)
    run.out_ << "  isomorphism without a group automorphism: " << map_text(*r.iso) << "\n";
  return status;
}

int ci_group_command(Runner& run, const std::string& spec, Mode mode,
                     std::optional<std::uint64_t> budget) {
  const FiniteGroup g = run.group(spec);
  CIGroupOptions options;
  options.limits = run.config_.limits();
  options.budget = budget;
  options.threads = run.config_.threads;
  const CIGroupVerdict v = is_ci_group(g, mode, options);
  const int status = v.is_ci ? kOk : kNegative;
  if (run.json()) {
    Json arguments{{"group", spec}, {"mode", to_string(mode)}};
    arguments["budget"] = budget ? Json(*budget) : Json(nullptr);
    run.emit("ci group", std::move(arguments), to_json(v));
    return status;
  }
  run.out_ << spec << " (order " << g.order() << "), " << to_string(mode) << " mode\n"
           << "  connection sets: " << v.sets_enumerated << ", Aut-orbits: " << v.orbit_count
           << ", pairs checked: " << v.pairs_checked << " of " << v.pairs_total << "\n";
  if (!v.is_ci)
    run.out_ << "  verdict: not CI (" << v.witnesses.size() << " witness pair(s))\n";
  else if (v.exhaustive)
    run.out_ << "  verdict: CI (exhaustive)\n";
  else
    run.out_ << "  verdict: inconclusive, budget exhausted with no witness\n";
  for (const NonCIWitness& w : v.witnesses)
    run.out_ << "  witness: " << set_text(g, w.s) << " ~ " << set_text(g, w.s_prime)
             << " via " << map_text(w.iso) << "\n";
  return status;
}

int quotient_verify_command(Runner& run, const std::string& spec, const std::string& normal,
                            const std::string& a1, const std::string& a2, Mode mode) {
  const FiniteGroup g = run.group(spec);
  const ElementSet h = subgroup_generated(g, parse_set(g, normal, "--normal"));
  if (!is_normal(g, h)) throw InvalidInput("--normal: generated subgroup " + set_text(g, h) + " is not normal");
  const QuotientMap q = quotient(g, h);
  auto to_cosets = [&](const std::string& text, const char* flag) {
    std::vector<Element> cs;
    for (Element x : parse_set(g, text, flag)) cs.push_back(q.projection[x]);
    return make_element_set(std::move(cs));
  };
  const ElementSet s1 = to_cosets(a1, "--set1"), s2 = to_cosets(a2, "--set2");
  const QuotientCICertificate cert = quotient_ci_certificate(
      g, q, automorphism_group(g, run.config_.automorphism_cap), s1, s2, mode,
      run.config_.limits());
  const int status = cert.status == CertificateStatus::accepted ||
                             cert.status == CertificateStatus::quotients_not_isomorphic
                         ? kOk
                         : kNegative;
  if (run.json()) {
    run.emit("quotient verify",
             Json{{"group", spec}, {"normal", h}, {"set1", parse_set(g, a1, "--set1")},
                  {"set2", parse_set(g, a2, "--set2")}, {"mode", to_string(mode)}},
             to_json(cert));
    return status;
  }
  auto cosets_text = [&](const ElementSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + q.target.label(s[i]);
    return out + "}";
  };
  run.out_ << spec << ", H = " << set_text(g, h) << ", S1 = " << cosets_text(s1)
           << ", S2 = " << cosets_text(s2) << " (" << to_string(mode) << " mode)\n";
  for (const LiftResult* lift : {cert.lift1 ? &*cert.lift1 : nullptr, cert.lift2 ? &*cert.lift2 : nullptr})
    if (lift) run.out_ << "  lift: " << to_string(lift->lift_case) << ", T = " << set_text(g, lift->t) << "\n";
  if (cert.alpha) run.out_ << "  alpha: " << map_text(cert.alpha->images) << "\n";
  if (cert.alpha_bar) run.out_ << "  alpha_bar: " << map_text(cert.alpha_bar->images) << "\n";
  for (const NamedCheck& c : cert.checks) {
    run.out_ << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) run.out_ << "  (" << c.detail << ")";
    run.out_ << "\n";
  }
  run.out_ << "certificate: " << to_string(cert.status) << "\n";
  return status;
}

int wreath_aut_command(Runner& run, const std::string& spec1, const std::string& a1,
                       const std::string& spec2, const std::string& a2) {
  const FiniteGroup g1 = run.group(spec1), g2 = run.group(spec2);
  const ElementSet s1 = parse_set(g1, a1, "--g1-set"), s2 = parse_set(g2, a2, "--g2-set");
  const WreathAutReport r =
      verify_wreath_aut_dichotomy(cayley(g1, s1), cayley(g2, s2), run.config_.limits());
  const int status = r.consistent ? kOk : kNegative;
  if (run.json()) {
    run.emit("wreath aut",
             Json{{"g1_group", spec1}, {"g1_set", s1}, {"g2_group", spec2}, {"g2_set", s2}},
             to_json(r));
    return status;
  }
  run.out_ << "|Aut(G1)| = " << r.aut1_order << ", |Aut(G2)| = " << r.aut2_order
           << ", |Aut(G1 wr G2)| = " << r.product_aut_order
           << ", |Aut(G1) wr Aut(G2)| = " << r.wreath_group_order << "\n";
  if (r.equal) {
    run.out_ << "equal\n";
  } else if (r.dichotomy) {
    const WreathDichotomy& d = *r.dichotomy;
    run.out_ << "unequal; " << (d.inner_kind == InnerKind::complete ? "case 1" : "case 2")
             << " with r = " << d.r << ", s = " << d.s << ", predicted order "
             << d.predicted_order << (r.consistent ? " (matches)" : " (MISMATCH)") << "\n";
  } else {
    run.out_ << "unequal and no decomposition explains it\n";
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cayley digraphs, CI-groups and quotient certificates", "cig"};
  app.fallthrough();
  app.require_subcommand(1);
  Config config;
  app.add_option("--format", config.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();
  app.add_option("--threads", config.threads, "Worker threads for CI sweeps")
      ->envname("CIG_THREADS")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--group-order-cap", config.group_order_cap)->envname("CIG_GROUP_ORDER_CAP")->capture_default_str();
  app.add_option("--automorphism-cap", config.automorphism_cap, "Largest group whose automorphisms are enumerated")
      ->envname("CIG_AUTOMORPHISM_CAP")
      ->capture_default_str();
  app.add_option("--search-cap", config.search_cap, "Largest digraph order for isomorphism search")
      ->envname("CIG_SEARCH_CAP")
      ->capture_default_str();
  app.add_option("--block-search-cap", config.block_search_cap)->envname("CIG_BLOCK_SEARCH_CAP")->capture_default_str();

  std::string group, group2, set, set1, set2, normal, emit = "text", mode_text = "digraph";
  std::size_t max_order = 12;
  std::optional<std::uint64_t> budget;

  auto* catalog_cmd = app.add_subcommand("catalog", "Group catalog");
  catalog_cmd->require_subcommand(1);
  auto* catalog_list_cmd = catalog_cmd->add_subcommand("list", "List catalog groups");
  catalog_list_cmd->add_option("--max-order", max_order)->capture_default_str();

  auto* cayley_cmd = app.add_subcommand("cayley", "Build a Cayley digraph");
  cayley_cmd->add_option("--group", group)->required();
  cayley_cmd->add_option("--set", set)->required();
  cayley_cmd->add_option("--emit", emit)->check(CLI::IsMember({"text", "dot", "json"}))->capture_default_str();

  auto* iso_cmd = app.add_subcommand("iso", "Test two Cayley digraphs for isomorphism");
  iso_cmd->add_option("--group", group)->required();
  iso_cmd->add_option("--set1", set1)->required();
  iso_cmd->add_option("--set2", set2)->required();

  auto* ci_cmd = app.add_subcommand("ci", "CI testing");
  ci_cmd->require_subcommand(1);
  auto* ci_pair_cmd = ci_cmd->add_subcommand("pair", "Classify one pair of connection sets");
  ci_pair_cmd->add_option("--group", group)->required();
  ci_pair_cmd->add_option("--set1", set1)->required();
  ci_pair_cmd->add_option("--set2", set2)->required();
  ci_pair_cmd->add_option("--mode", mode_text)->capture_default_str();
  auto* ci_group_cmd = ci_cmd->add_subcommand("group", "Decide whether a group is a CI-group");
  ci_group_cmd->add_option("--group", group)->required();
  ci_group_cmd->add_option("--mode", mode_text)->capture_default_str();
  ci_group_cmd->add_option("--budget", budget, "Maximum representative pairs to test");

  auto* quotient_cmd = app.add_subcommand("quotient", "Quotient certificates");
  quotient_cmd->require_subcommand(1);
  auto* verify_cmd = quotient_cmd->add_subcommand("verify", "Certify one quotient instance");
  verify_cmd->add_option("--group", group)->required();
  verify_cmd->add_option("--normal", normal, "Generators of the normal subgroup")->required();
  verify_cmd->add_option("--set1", set1, "Coset representatives")->required();
  verify_cmd->add_option("--set2", set2, "Coset representatives")->required();
  verify_cmd->add_option("--mode", mode_text)->capture_default_str();

  auto* wreath_cmd = app.add_subcommand("wreath", "Wreath products of Cayley digraphs");
  wreath_cmd->require_subcommand(1);
  auto* aut_cmd = wreath_cmd->add_subcommand("aut", "Check the automorphism group of a wreath product");
  aut_cmd->add_option("--g1-group", group)->required();
  aut_cmd->add_option("--g1-set", set1)->required();
  aut_cmd->add_option("--g2-group", group2)->required();
  aut_cmd->add_option("--g2-set", set2)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Runner run(config, out);
  try {
    if (catalog_list_cmd->parsed()) return catalog_list(run, max_order);
    if (cayley_cmd->parsed()) return cayley_command(run, group, set, emit);
    if (iso_cmd->parsed()) return iso_command(run, group, set1, set2);
    if (ci_pair_cmd->parsed()) return ci_pair_command(run, group, set1, set2, parse_mode(mode_text));
    if (ci_group_cmd->parsed()) return ci_group_command(run, group, parse_mode(mode_text), budget);
    if (verify_cmd->parsed())
      return quotient_verify_command(run, group, normal, set1, set2, parse_mode(mode_text));
    if (aut_cmd->parsed()) return wreath_aut_command(run, group, set1, group2, set2);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace cig::cli
