// Copyright 2026 The pec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pec/cli.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "pec/analysis.h"
#include "pec/bench.h"
#include "pec/element_text.h"
#include "pec/ingest.h"
#include "pec/lattice.h"
#include "pec/oracle.h"
#include "pec/query.h"
#include "pec/selftest.h"
#include "spdlog/sinks/stdout_sinks.h"
#include "spdlog/spdlog.h"

namespace pec {
namespace {

using Json = nlohmann::ordered_json;

// Carries a failure out of a command together with its exit code.
struct CommandError {
  int code;
  std::string message;
};

void Check(const absl::Status& s) {
  if (!s.ok()) throw CommandError{kExitInputError, std::string(s.message())};
}

template <typename T>
T Must(absl::StatusOr<T> v) {
  Check(v.status());
  return *std::move(v);
}

std::string Read(const std::string& path) { return Must(ReadFile(path)); }

void SetUpLogging() {
  auto logger = spdlog::get("pec");
  if (logger == nullptr) logger = spdlog::stderr_logger_st("pec");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[pec %l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("PEC_LOG"); env != nullptr && *env) {
    level = spdlog::level::from_str(env);
  }
  spdlog::set_level(level);
}

// Flags shared by the commands that read a rule table or a topology.
struct InputFlags {
  std::string schema;
  std::string rules;
  std::string topology;

  void Add(CLI::App* cmd) {
    cmd->add_option("--schema", schema, "schema JSON")->check(CLI::ExistingFile);
    auto* r = cmd->add_option("--rules", rules, "rule table JSON")
                  ->check(CLI::ExistingFile);
    auto* t = cmd->add_option("--topology", topology, "topology JSON")
                  ->check(CLI::ExistingFile);
    r->excludes(t);
  }

  bool given() const { return !rules.empty() || !topology.empty(); }

  Workspace Load(const std::vector<const QueryExpr*>& queries = {}) const {
    if (schema.empty()) {
      throw CommandError{kExitInputError, "--schema is required"};
    }
    if (!given()) {
      throw CommandError{kExitInputError, "one of --rules, --topology is required"};
    }
    RawTopology raw = rules.empty() ? Must(ParseTopologyJson(Read(topology)))
                                    : Must(ParseRuleTableJson(Read(rules)));
    return Must(LoadWorkspace(Read(schema), raw, queries));
  }
};

struct CommonFlags {
  bool json = false;
  bool amortized = false;
  bool invert = false;
  bool keep_empty = false;
  std::string out;
};

void Emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json ReportJson(const PecReport& r, bool dump_nodes) {
  Json j = {{"insertions", r.insertions},
            {"pecs", r.pecs},
            {"empty_pecs", r.empty_pecs},
            {"atomic_predicates", r.atomic_predicates}};
  if (dump_nodes) {
    Json nodes = Json::array();
    for (const NodeDump& n : r.nodes) {
      nodes.push_back({{"id", n.id},
                       {"element", n.element},
                       {"pec_cardinality", ToString(n.pec_cardinality)},
                       {"children", n.children}});
    }
    j["nodes"] = std::move(nodes);
  }
  return j;
}

std::string Summary(const PecReport& r) {
  return absl::StrCat("insertions=", r.insertions, " pecs=", r.pecs,
                      " empty_pecs=", r.empty_pecs,
                      " atomic_predicates=", r.atomic_predicates);
}

// Qualified names of the rules whose match is the element of each node.
std::map<NodeId, std::vector<std::string>> NodeNames(const Lattice& lattice,
                                                     const Topology& topology) {
  std::map<NodeId, std::vector<std::string>> names;
  for (const Device& d : topology.devices()) {
    for (const Rule& r : d.table.rules()) {
      if (std::optional<NodeId> id = lattice.Find(r.match); id.has_value()) {
        names[*id].push_back(absl::StrCat(d.name, ".", r.name));
      }
    }
  }
  return names;
}

std::string Describe(const Lattice& lattice, NodeId id) {
  return FormatElement(lattice.schema(), lattice.node(id).elem);
}

int RunBuild(const InputFlags& in, const std::string& prefixes,
             const std::string& tbvs, bool dump_nodes, const CommonFlags& f,
             std::ostream& out) {
  const int sources = in.given() + !prefixes.empty() + !tbvs.empty();
  if (sources != 1) {
    throw CommandError{kExitInputError,
                       "give exactly one of --rules, --topology, --prefixes, "
                       "--tbvs"};
  }
  std::shared_ptr<const Schema> schema;
  std::vector<Element> elements;
  if (in.given()) {
    Workspace ws = in.Load();
    Dataset d = MatchDataset(ws.topology, ws.schema);
    schema = d.schema;
    elements = std::move(d.elements);
  } else {
    Dataset d = prefixes.empty() ? Must(ParseTbvList(Read(tbvs)))
                                 : Must(ParsePrefixList(Read(prefixes)));
    spdlog::info("{} duplicate elements skipped", d.duplicates);
    schema = d.schema;
    elements = std::move(d.elements);
  }
  Lattice lattice(schema, f.amortized ? Lattice::Mode::kAmortized
                                      : Lattice::Mode::kEager);
  for (const Element& e : elements) Must(lattice.Insert(e));
  lattice.Settle();
  spdlog::info("lattice has {} nodes", lattice.size());
  PecReport report = Must(lattice.Report(dump_nodes));
  Json j = ReportJson(report, dump_nodes);
  if (!f.out.empty()) {
    std::ofstream file(f.out);
    file << j.dump(2) << "\n";
    if (!file) throw CommandError{kExitInputError, "cannot write " + f.out};
  }
  if (f.json) {
    Emit(out, j);
  } else {
    out << Summary(report) << "\n";
  }
  return kExitOk;
}

int RunQuery(const InputFlags& in, const std::string& text,
             const CommonFlags& f, std::ostream& out) {
  QueryExpr expr = Must(ParseQueryText(text));
  Workspace ws = in.Load({&expr});
  Query q = Must(BindQuery(expr, *ws.schema, ws.names));
  Lattice lattice(ws.schema, f.amortized ? Lattice::Mode::kAmortized
                                         : Lattice::Mode::kEager);
  Check(PrepareTopology(lattice, ws.topology));
  Check(Prepare(lattice, q));
  lattice.Settle();
  PecSet pecs = Must(ConvertToPecs(lattice, q));
  PecSet live = Must(NonEmpty(lattice, pecs));
  auto names = NodeNames(lattice, ws.topology);
  const char* verdict = live.empty() ? "empty" : "nonempty";
  if (f.json) {
    Json list = Json::array();
    for (NodeId id : pecs) {
      const BigInt card = lattice.node(id).cardinality;
      list.push_back({{"id", id},
                      {"cardinality", ToString(card)},
                      {"empty", card == 0},
                      {"element", Describe(lattice, id)},
                      {"rules", names[id]}});
    }
    Emit(out, {{"query", text},
               {"pecs", std::move(list)},
               {"nonempty", live},
               {"verdict", verdict}});
    return kExitOk;
  }
  out << "pecs: " << absl::StrJoin(pecs, " ") << "\n";
  out << "nonempty: " << absl::StrJoin(live, " ") << "\n";
  for (NodeId id : pecs) {
    out << "  pec " << id << " cardinality=" << ToString(lattice.node(id).cardinality)
        << " element=" << Describe(lattice, id);
    if (!names[id].empty()) out << " rules=" << absl::StrJoin(names[id], ",");
    out << "\n";
  }
  out << "verdict: " << verdict << "\n";
  return kExitOk;
}

int FindingsExit(bool found, const CommonFlags& f) {
  return found != f.invert ? kExitFindings : kExitOk;
}

int RunShadowed(const InputFlags& in, const CommonFlags& f, std::ostream& out) {
  Workspace ws = in.Load();
  Lattice lattice(ws.schema, Lattice::Mode::kAmortized);
  Check(PrepareTopology(lattice, ws.topology));
  Json list = Json::array();
  std::vector<std::string> lines;
  for (const Device& d : ws.topology.devices()) {
    for (size_t i : Must(ShadowedRules(lattice, d.table))) {
      const Rule& r = d.table.rules()[i];
      list.push_back({{"device", d.name}, {"rule", r.name},
                      {"priority", r.priority},
                      {"match", FormatElement(*ws.schema, r.match)}});
      lines.push_back(absl::StrCat("  ", d.name, ".", r.name, " priority=",
                                   r.priority, " match=",
                                   FormatElement(*ws.schema, r.match)));
    }
  }
  if (f.json) {
    Emit(out, {{"shadowed", list}});
  } else {
    out << "shadowed: " << lines.size() << "\n";
    for (const std::string& l : lines) out << l << "\n";
  }
  return FindingsExit(!lines.empty(), f);
}

int RunLoops(const InputFlags& in, const CommonFlags& f, std::ostream& out) {
  Workspace ws = in.Load();
  Lattice lattice(ws.schema, Lattice::Mode::kAmortized);
  Check(PrepareTopology(lattice, ws.topology));
  ForwardingGraph graph = Must(
      BuildForwardingGraph(lattice, ws.topology, {!f.keep_empty}));
  std::vector<LoopWitness> loops = DetectLoops(graph);
  if (f.json) {
    Json list = Json::array();
    for (const LoopWitness& w : loops) {
      list.push_back({{"pec", w.pec},
                      {"element", Describe(lattice, w.pec)},
                      {"cardinality", ToString(lattice.node(w.pec).cardinality)},
                      {"cycle", w.cycle}});
    }
    Emit(out, {{"loops", list}});
  } else if (loops.empty()) {
    out << "loops: none\n";
  } else {
    out << "loops: " << loops.size() << "\n";
    for (const LoopWitness& w : loops) {
      out << "  pec " << w.pec << " (" << Describe(lattice, w.pec)
          << "): " << absl::StrJoin(w.cycle, " -> ") << "\n";
    }
  }
  return FindingsExit(!loops.empty(), f);
}

int RunVerify(const InputFlags& in, const std::string& text,
              std::string ingress, const std::string& expect,
              const CommonFlags& f, std::ostream& out) {
  QueryExpr expr = Must(ParseQueryText(text));
  Workspace ws = in.Load({&expr});
  Query q = Must(BindQuery(expr, *ws.schema, ws.names));
  if (ingress.empty()) {
    if (ws.topology.devices().size() != 1) {
      throw CommandError{kExitInputError,
                         "--ingress is required with several devices"};
    }
    ingress = ws.topology.devices()[0].name;
  }
  Lattice lattice(ws.schema, Lattice::Mode::kAmortized);
  Check(PrepareTopology(lattice, ws.topology));
  Check(Prepare(lattice, q));
  lattice.Settle();
  const GraphOptions options{!f.keep_empty};
  ForwardingGraph graph =
      Must(BuildForwardingGraph(lattice, ws.topology, options));
  PecSet pecs = Must(ConvertToPecs(lattice, q));
  VerifyResult result =
      Must(Verify(lattice, graph, pecs, ingress, expect, options));
  if (f.json) {
    Json witnesses = Json::array();
    for (const VerifyWitness& w : result.witnesses) {
      witnesses.push_back({{"pec", w.pec},
                           {"element", Describe(lattice, w.pec)},
                           {"cardinality",
                            ToString(lattice.node(w.pec).cardinality)},
                           {"path", w.path}});
    }
    Emit(out, {{"query", text},
               {"ingress", ingress},
               {"expect", expect},
               {"result", result.pass ? "pass" : "fail"},
               {"checked", result.checked},
               {"witnesses", std::move(witnesses)}});
  } else {
    out << "verify: " << (result.pass ? "PASS" : "FAIL") << " ("
        << result.checked.size() << " PECs checked)\n";
    for (const VerifyWitness& w : result.witnesses) {
      out << "  pec " << w.pec << " (" << Describe(lattice, w.pec)
          << "): " << absl::StrJoin(w.path, " -> ") << "\n";
    }
  }
  return FindingsExit(!result.pass, f);
}

int RunSelftestCommand(const SelftestOptions& options, const CommonFlags& f,
                       std::ostream& out) {
  SelftestReport report = Must(RunSelftest(options));
  const bool pass = !report.failure.has_value();
  if (f.json) {
    Json j = {{"result", pass ? "pass" : "fail"},
              {"seed", options.seed},
              {"iterations", report.iterations},
              {"suites", report.suites}};
    if (!pass) {
      j["failure"] = {{"suite", report.failure->suite},
                      {"seed", report.failure->seed},
                      {"detail", report.failure->detail}};
    }
    Emit(out, j);
  } else if (pass) {
    out << "selftest: PASS iterations=" << report.iterations
        << " suites=" << absl::StrJoin(report.suites, ",") << "\n";
  } else {
    const SelftestFailure& e = *report.failure;
    out << "selftest: FAIL suite=" << e.suite << " seed=" << e.seed << ": "
        << e.detail << "\n";
    out << "replay: pec selftest --seed " << e.seed << " --iterations 1"
        << " --width " << options.width << " --rule-count "
        << options.rule_count << "\n";
  }
  return pass ? kExitOk : kExitInternal;
}

int RunBenchCommand(const BenchOptions& options, const CommonFlags& f,
                    std::ostream& out) {
  BenchReport r = Must(RunBench(options));
  std::optional<double> speedup;
  if (r.oracle_seconds.has_value() && r.settle_seconds > 0) {
    speedup = *r.oracle_seconds / r.settle_seconds;
  }
  if (f.json) {
    Json j = {{"note", "synthetic workload; not comparable to published timings"},
              {"seed", options.seed},
              {"width", options.width},
              {"count", options.count},
              {"star_percent", options.star_percent},
              {"distinct", r.distinct},
              {"nodes", r.nodes},
              {"empty_pecs", r.empty_pecs},
              {"build_seconds", r.build_seconds},
              {"settle_seconds", r.settle_seconds}};
    if (r.oracle_seconds.has_value()) {
      j["oracle_seconds"] = *r.oracle_seconds;
      j["oracle_agrees"] = *r.oracle_agrees;
      if (speedup.has_value()) j["speedup"] = *speedup;
    }
    Emit(out, j);
  } else {
    out << "bench: synthetic workload; not comparable to published timings\n";
    out << "seed=" << options.seed << " width=" << options.width
        << " count=" << options.count
        << " star_percent=" << options.star_percent
        << " distinct=" << r.distinct << " nodes=" << r.nodes
        << " empty_pecs=" << r.empty_pecs << "\n";
    out << "build_seconds=" << r.build_seconds
        << " settle_seconds=" << r.settle_seconds;
    if (r.oracle_seconds.has_value()) {
      out << " oracle_seconds=" << *r.oracle_seconds
          << " oracle_agrees=" << (*r.oracle_agrees ? "true" : "false");
      if (speedup.has_value()) out << " speedup=" << *speedup;
    }
    out << "\n";
  }
  return r.oracle_agrees.value_or(true) ? kExitOk : kExitInternal;
}

int RunDnf(const std::string& path, const CommonFlags& f, std::ostream& out) {
  DnfFormula formula = Must(ParseDnf(Read(path)));
  size_t skipped = 0;
  DnfToElements(formula, &skipped);
  const bool tautology = Must(IsTautology(formula));
  const BigInt models = Must(CountDnfModels(formula));
  if (f.json) {
    Emit(out, {{"vars", formula.num_vars},
               {"clauses", formula.clauses.size()},
               {"contradictory_clauses", skipped},
               {"tautology", tautology},
               {"models", ToString(models)}});
  } else {
    out << "vars=" << formula.num_vars << " clauses=" << formula.clauses.size()
        << " contradictory_clauses=" << skipped
        << " tautology=" << (tautology ? "true" : "false")
        << " models=" << ToString(models) << "\n";
  }
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  SetUpLogging();
  CLI::App app{"Packet equivalence classes over a meet-semilattice of match "
               "conditions."};
  app.name("pec");
  app.require_subcommand(1);

  CommonFlags common;
  auto add_json = [&common](CLI::App* cmd) {
    cmd->add_flag("--json", common.json, "print JSON");
  };
  auto add_invert = [&common](CLI::App* cmd) {
    cmd->add_flag("--invert", common.invert,
                  "exit 3 when there are no findings instead");
  };
  auto add_keep_empty = [&common](CLI::App* cmd) {
    cmd->add_flag("--keep-empty", common.keep_empty,
                  "keep empty PECs on graph edges");
  };

  InputFlags input;
  std::string prefixes, tbvs, query_text, ingress, expect, dnf_path;
  bool dump_nodes = false;

  CLI::App* build = app.add_subcommand("build", "build the lattice, report PECs");
  input.Add(build);
  build->add_option("--prefixes", prefixes, "IPv4 prefix list")
      ->check(CLI::ExistingFile);
  build->add_option("--tbvs", tbvs, "ternary bit vector list")
      ->check(CLI::ExistingFile);
  build->add_option("--out", common.out, "write the JSON report here");
  build->add_flag("--amortized", common.amortized, "defer recomputation");
  build->add_flag("--dump-nodes", dump_nodes, "include every node");
  add_json(build);

  CLI::App* query = app.add_subcommand("query", "convert a query to PECs");
  input.Add(query);
  query->add_option("--query", query_text, "query text")->required();
  query->add_flag("--amortized", common.amortized, "defer recomputation");
  add_json(query);

  CLI::App* shadowed = app.add_subcommand("shadowed", "list shadowed rules");
  input.Add(shadowed);
  add_json(shadowed);
  add_invert(shadowed);

  CLI::App* loops = app.add_subcommand("loops", "detect forwarding loops");
  input.Add(loops);
  add_json(loops);
  add_invert(loops);
  add_keep_empty(loops);

  CLI::App* verify = app.add_subcommand(
      "verify", "check that every PEC of a query reaches a target");
  input.Add(verify);
  verify->add_option("--query", query_text, "query text")->required();
  verify->add_option("--ingress", ingress, "device where headers enter");
  verify->add_option("--expect", expect,
                     "target vertex: device, drop, controller, "
                     "<device>:<port> or a unique port")
      ->required();
  add_json(verify);
  add_invert(verify);
  add_keep_empty(verify);

  SelftestOptions st;
  CLI::App* selftest =
      app.add_subcommand("selftest", "randomized checks against oracles");
  selftest->add_option("--seed", st.seed, "first instance seed");
  selftest->add_option("--width", st.width, "tbv width (1-16)");
  selftest->add_option("--rule-count", st.rule_count, "maximum elements");
  selftest->add_option("--iterations", st.iterations, "instances");
  selftest->add_option("--enum-cap", st.enum_cap, "header enumeration cap");
  add_json(selftest);

  BenchOptions bo;
  CLI::App* bench = app.add_subcommand("bench", "time a synthetic build");
  bench->add_option("--seed", bo.seed, "generator seed");
  bench->add_option("--width", bo.width, "tbv width");
  bench->add_option("--count", bo.count, "number of tbvs");
  bench->add_option("--star-percent", bo.star_percent, "wildcard digits (%)")
      ->check(CLI::Range(0, 100));
  bench->add_flag("--oracle", bo.oracle, "also time brute-force emptiness");
  bench->add_option("--enum-cap", bo.enum_cap, "header enumeration cap");
  add_json(bench);

  CLI::App* dnf = app.add_subcommand("dnf", "tautology and model count");
  dnf->add_option("--file", dnf_path, "DNF file")
      ->required()
      ->check(CLI::ExistingFile);
  add_json(dnf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*build) return RunBuild(input, prefixes, tbvs, dump_nodes, common, out);
    if (*query) return RunQuery(input, query_text, common, out);
    if (*shadowed) return RunShadowed(input, common, out);
    if (*loops) return RunLoops(input, common, out);
    if (*verify) {
      return RunVerify(input, query_text, ingress, expect, common, out);
    }
    if (*selftest) return RunSelftestCommand(st, common, out);
    if (*bench) return RunBenchCommand(bo, common, out);
    if (*dnf) return RunDnf(dnf_path, common, out);
  } catch (const CommandError& e) {
    err << "pec: " << e.message << "\n";
    return e.code;
  } catch (const InvariantViolation& e) {
    err << "pec: internal invariant violated: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInputError;
}

}  // namespace pec
