// oalat: command-line front end.
//
// Exit status: 0 success or pass, 1 the checked property fails (equation
// violated, hypergraph not colourable, vectors rejected), 2 bad usage or
// unreadable input.  Reductions chain in shell pipelines on that basis.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "oalat/analyze.hpp"
#include "oalat/equation.hpp"
#include "oalat/fixtures.hpp"
#include "oalat/hilbert.hpp"
#include "oalat/lattice.hpp"
#include "oalat/mmp.hpp"
#include "oalat/search.hpp"

namespace {

using namespace oalat;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A path on disk, else the name of an embedded fixture.
std::string read_input(const std::string& where) {
  if (std::ifstream f{where}) {
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }
  if (auto text = find_fixture(where)) return std::string(*text);
  if (auto slash = where.find_last_of('/'); slash != std::string::npos) {
    if (auto text = find_fixture(where.substr(slash + 1))) return std::string(*text);
  }
  throw UsageError("cannot read '" + where + "' (not a file or an embedded fixture)");
}

class Printer {
public:
  explicit Printer(bool machine) : machine_(machine) {}
  template <class T>
  void field(const std::string& key, const T& value) {
    std::cout << key << ": " << value << '\n';
  }
  void text(const std::string& line) {
    if (!machine_) std::cout << line << '\n';
  }

private:
  bool machine_;
};

std::string join_names(const OmlLattice& l, const std::vector<NodeId>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ',';
    out += l.node_name(nodes[i]);
  }
  return out;
}

std::string describe_assignment(const OmlLattice& l, const Equation& e,
                                const std::vector<NodeId>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ' ';
    out += e.var_names[i] + "=" + l.node_name(nodes[i]);
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Also accepts the MMP string itself, e.g. --lattice "123,345,561."
Hypergraph load_hypergraph(const std::string& where) {
  try {
    return parse_mmp(read_input(where));
  } catch (const UsageError&) {
    if (where.empty() || where.back() != '.') throw;
    return parse_mmp(where);
  }
}

struct EquationSource {
  int noa = 0;
  std::string form = "compact";
  std::string equation;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--noa", noa, "Generate the nOA equation for this n (>= 3)");
    cmd->add_option("--form", form, "nOA form")->check(CLI::IsMember({"standard", "compact"}));
    cmd->add_option("--equation", equation, "Equation file, fixture name or literal text");
  }

  Equation load() const {
    if ((noa != 0) == !equation.empty()) {
      throw UsageError("give exactly one of --noa and --equation");
    }
    if (noa != 0) return gen_noa(noa, form == "standard" ? NoaForm::standard : NoaForm::compact);
    std::string text;
    try {
      text = read_input(equation);
    } catch (const UsageError&) {
      text = equation;
    }
    return parse_equation(text);
  }
};

struct ScanFlags {
  std::string algo = "partial";
  std::string outer, inner;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool fast = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--algo", algo, "Evaluation algorithm")
        ->check(CLI::IsMember({"naive", "partial"}));
    cmd->add_option("--outer", outer, "Node range A..B for the first variable");
    cmd->add_option("--inner", inner, "Node range A..B for the second variable");
    cmd->add_option("--workers", workers, "Worker threads; 1 runs the sequential reference path")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--fast", fast, "Stop at the first counterexample any worker finds");
    cmd->add_flag("--deterministic,!--no-deterministic", deterministic_flag,
                  "Full deterministic scan (default)");
  }

  ScanOptions options(std::size_t node_count) const {
    ScanOptions o;
    o.algorithm = algo == "naive" ? Algorithm::naive : Algorithm::partial_eval;
    o.workers = workers;
    o.deterministic = !fast && deterministic_flag;
    if (!outer.empty() || !inner.empty()) {
      const IndexRange full{0, node_count - 1};
      o.partition = Partition{outer.empty() ? full : parse_index_range(outer),
                              inner.empty() ? full : parse_index_range(inner)};
    }
    return o;
  }

  bool deterministic_flag = true;
};

void print_stats(Printer& p, const ScanStats& s) {
  p.field("evaluations", s.evaluations);
  p.field("skipped", s.skipped);
  p.field("vacuous", s.vacuous);
  p.field("failures", s.failures);
  p.field("operations", s.operations);
  p.field("wall_ms", s.wall_ms);
}

int cmd_parse(const std::string& lattice, bool canonical, Printer& p) {
  const Hypergraph h = load_hypergraph(lattice);
  p.field("atoms", h.atom_count());
  p.field("blocks", h.block_count());
  const auto problems = validate(h);
  for (const MmpViolation& v : problems) p.field("violation", v.message);
  p.field("valid", problems.empty() ? "yes" : "no");
  if (canonical) p.field("canonical", serialize_mmp(canonical_rename(h)));
  return problems.empty() ? 0 : 1;
}

int cmd_hasse(const std::string& lattice, bool dump, Printer& p) {
  const Hypergraph h = load_hypergraph(lattice);
  const OmlLattice l = build_hasse(h);
  p.field("atoms", l.atom_count());
  p.field("nodes", l.node_count());
  const auto bad = check_oml(l);
  if (bad) {
    p.field("oml", "violated (" + bad->law + " at " + l.node_name(bad->x) + "," +
                       l.node_name(bad->y) + "," + l.node_name(bad->z) + ")");
  } else {
    p.field("oml", "ok");
  }
  if (dump) std::cout << l.dump();
  return bad ? 1 : 0;
}

int cmd_gen(const EquationSource& src, bool stats, Printer& p) {
  const Equation e = src.load();
  if (!stats) {
    std::cout << print_equation(e) << '\n';
    return 0;
  }
  const OperationCount ops = count_operations(e);
  p.field("variables", e.var_count());
  p.field("occurrences", count_var_occurrences(e));
  p.field("binary_operations", ops.binary);
  p.field("orthocomplements", ops.ortho);
  p.field("operations", ops.total());
  return 0;
}

struct TestArgs {
  std::string lattice;
  EquationSource eq;
  ScanFlags scan;
  std::string pool;
  std::string assign;
  std::string split;
  std::string plan;
  bool cost = false;
};

std::pair<std::size_t, std::size_t> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw UsageError("grid must look like RxC, got '" + s + "'");
  return {std::stoul(s.substr(0, x)), std::stoul(s.substr(x + 1))};
}

int report_outcome(const OmlLattice& l, const Equation& e, const ScanOutcome& o, Printer& p) {
  p.field("verdict", o.verdict == Verdict::pass ? "pass" : "fail");
  if (o.counterexample) {
    p.field("counterexample", join_names(l, *o.counterexample));
    p.text("assignment: " + describe_assignment(l, e, *o.counterexample));
  }
  print_stats(p, o.stats);
  return o.verdict == Verdict::pass ? 0 : 1;
}

int cmd_test(const TestArgs& a, Printer& p) {
  const OmlLattice l = build_hasse(load_hypergraph(a.lattice));
  const Equation e = a.eq.load();
  ScanOptions opt = a.scan.options(l.node_count());
  p.field("nodes", l.node_count());
  p.field("variables", e.var_count());

  if (a.cost) {
    p.field("cost", cost_model(l, e));
    return 0;
  }
  if (!a.plan.empty()) {
    const auto [rows, cols] = parse_grid(a.plan);
    for (const Partition& part : grid_partitions(l.node_count(), rows, cols)) {
      std::cout << "--outer " << part.outer.first << ".." << part.outer.last << " --inner "
                << part.inner.first << ".." << part.inner.last << '\n';
    }
    return 0;
  }
  if (!a.assign.empty()) {
    std::vector<NodeId> nodes;
    for (const std::string& name : split_list(a.assign)) nodes.push_back(l.parse_node(name));
    const bool holds = verify_assignment(l, e, nodes);
    p.field("verdict", holds ? "pass" : "fail");
    if (!holds) p.field("counterexample", join_names(l, nodes));
    return holds ? 0 : 1;
  }
  if (!a.pool.empty()) {
    std::vector<NodeId> pool;
    for (const std::string& name : split_list(a.pool)) pool.push_back(l.parse_node(name));
    const std::vector<NodeId> candidates = expand_pool(l, pool);
    p.field("pool", join_names(l, candidates));
    std::vector<std::vector<NodeId>> domains(e.var_count(), candidates);
    return report_outcome(l, e, scan_domains(l, e, domains, opt), p);
  }
  if (!a.split.empty()) {
    if (!opt.deterministic) throw UsageError("--split needs a deterministic scan");
    if (opt.partition) throw UsageError("--split covers the whole rectangle; drop --outer/--inner");
    const auto [rows, cols] = parse_grid(a.split);
    std::vector<ScanOutcome> parts;
    for (const Partition& part : grid_partitions(l.node_count(), rows, cols)) {
      opt.partition = part;
      parts.push_back(scan(l, e, opt));
    }
    p.field("partitions", parts.size());
    return report_outcome(l, e, merge_partitions(parts), p);
  }
  const ScanOutcome o = scan(l, e, opt);
  p.field("outer", std::to_string(o.region.outer.first) + ".." + std::to_string(o.region.outer.last));
  if (e.var_count() >= 2) {
    p.field("inner", std::to_string(o.region.inner.first) + ".." + std::to_string(o.region.inner.last));
  }
  return report_outcome(l, e, o, p);
}

int cmd_reduce(const TestArgs& a, const std::string& out_path, Printer& p) {
  const Hypergraph h = load_hypergraph(a.lattice);
  const Equation e = a.eq.load();
  ReduceOptions opt;
  opt.pool = split_list(a.pool);
  opt.scan = a.scan.options(2 + 2 * h.atom_count());
  opt.scan.partition.reset();
  opt.scan.deterministic = true;
  const Reduction r = reduce_loop(h, e, opt);
  for (const ReductionStep& s : r.steps) {
    p.text(std::to_string(s.atoms) + "-" + std::to_string(s.blocks) + ": " +
           std::to_string(s.non_affecting_blocks.size()) + " non-affecting, pruned " +
           std::to_string(s.pruned_blocks.size()));
  }
  p.field("atoms", r.graph.atom_count());
  p.field("blocks", r.graph.block_count());
  p.field("iterations", r.steps.size());
  p.field("mmp", serialize_mmp(r.graph));
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << serialize_mmp(r.graph) << '\n';
  }
  return 0;
}

int cmd_color(const std::string& lattice, std::uint64_t count_limit, Printer& p) {
  const Hypergraph h = load_hypergraph(lattice);
  if (count_limit > 0) p.field("colorings", count_colorings(h, count_limit));
  const auto c = ks_colorable(h);
  if (!c) {
    p.field("colorable", "no");
    p.text("not colorable");
    return 1;
  }
  p.field("colorable", "yes");
  std::string ones;
  for (AtomIndex a = 0; a < c->size(); ++a) {
    if ((*c)[a]) ones += (ones.empty() ? "" : ",") + h.atoms[a].str();
  }
  p.field("ones", ones);
  return 0;
}

int cmd_vectors(const std::string& lattice, const std::string& vectors, Printer& p) {
  const Hypergraph h = load_hypergraph(lattice);
  const VectorCheck c = verify_vectors(h, parse_vector_file(read_input(vectors)));
  p.field("vectors", c.ok ? "ok" : "rejected");
  if (!c.ok) p.field("problem", c.problem);
  return c.ok ? 0 : 1;
}

int cmd_noacheck(std::size_t dim, std::size_t n, const std::string& file, Printer& p) {
  const SubspaceFamilies f = parse_subspace_file(read_input(file), dim);
  if (f.M.size() != n + 1) {
    throw UsageError("expected M0..M" + std::to_string(n) + ", file has " +
                     std::to_string(f.M.size()) + " subspaces per family");
  }
  const bool holds = check_noa_subspace(n, f.M, f.N);
  p.field("holds", holds ? "yes" : "no");
  return holds ? 0 : 1;
}

int cmd_fixtures(const std::string& emit) {
  if (emit.empty()) {
    for (const Fixture& f : fixtures()) std::cout << f.name << '\n';
    return 0;
  }
  const auto text = find_fixture(emit);
  if (!text) throw UsageError("no fixture named '" + emit + "'");
  std::cout << *text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for orthoarguesian equations on Greechie lattices.\n"
               "Exit status: 0 pass, 1 property fails, 2 usage or input error."};
  app.require_subcommand(1);
  app.fallthrough();
  bool machine = false;
  app.add_flag("--machine", machine, "Emit 'key: value' lines only");

  std::string lattice, out_path, vectors, emit, subspaces;
  bool canonical = false, dump = false, stats = false;
  std::uint64_t count_limit = 0;
  std::size_t dim = 3, n = 1;
  TestArgs targs;

  auto* parse = app.add_subcommand("parse", "Parse and validate an MMP hypergraph");
  parse->add_option("--lattice", lattice, "MMP file or fixture name")->required();
  parse->add_flag("--canonical", canonical, "Print the canonically relabelled string");

  auto* hasse = app.add_subcommand("hasse", "Build the lattice and check the OML laws");
  hasse->add_option("--lattice", lattice, "MMP file or fixture name")->required();
  hasse->add_flag("--dump", dump, "Print every node");

  auto* gen = app.add_subcommand("gen", "Print an nOA equation");
  targs.eq.add_to(gen);
  gen->add_flag("--stats", stats, "Print occurrence and operation counts instead");

  auto* test = app.add_subcommand("test", "Check an equation on a lattice");
  test->add_option("--lattice", targs.lattice, "MMP file or fixture name")->required();
  targs.eq.add_to(test);
  targs.scan.add_to(test);
  test->add_option("--pool", targs.pool, "Restrict every variable to these nodes and their complements");
  test->add_option("--assign", targs.assign, "Evaluate one assignment (node names, comma separated)");
  test->add_option("--split", targs.split, "Scan as RxC partitions and merge");
  test->add_option("--plan", targs.plan, "Print --outer/--inner arguments for RxC partitions");
  test->add_flag("--cost", targs.cost, "Print the full-scan operation count and exit");

  auto* reduce = app.add_subcommand("reduce", "Prune blocks that do not affect a failure");
  reduce->add_option("--lattice", targs.lattice, "MMP file or fixture name")->required();
  targs.eq.add_to(reduce);
  targs.scan.add_to(reduce);
  reduce->add_option("--pool", targs.pool, "Find counterexamples in this node pool");
  reduce->add_option("--out", out_path, "Write the reduced MMP string here");

  auto* color = app.add_subcommand("color", "Decide Kochen-Specker 0-1 colourability");
  color->add_option("--lattice", lattice, "MMP file or fixture name")->required();
  color->add_option("--count", count_limit, "Also count colourings up to this limit");

  auto* vec = app.add_subcommand("vectors", "Verify a vector realization");
  vec->add_option("--lattice", lattice, "MMP file or fixture name")->required();
  vec->add_option("--vectors", vectors, "'LABEL: a,b,c' lines")->required();

  auto* noa = app.add_subcommand("noacheck", "Check the subspace form of nOA");
  noa->add_option("--dim", dim, "Ambient dimension")->check(CLI::PositiveNumber);
  noa->add_option("--n", n, "Order n >= 1")->check(CLI::PositiveNumber);
  noa->add_option("--subspaces", subspaces, "'M0: v; v' and 'N0: v' lines")->required();

  auto* fx = app.add_subcommand("fixtures", "List or print the embedded data files");
  fx->add_option("--emit", emit, "Print this fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Printer p(machine);
  try {
    if (*parse) return cmd_parse(lattice, canonical, p);
    if (*hasse) return cmd_hasse(lattice, dump, p);
    if (*gen) return cmd_gen(targs.eq, stats, p);
    if (*test) return cmd_test(targs, p);
    if (*reduce) return cmd_reduce(targs, out_path, p);
    if (*color) return cmd_color(lattice, count_limit, p);
    if (*vec) return cmd_vectors(lattice, vectors, p);
    if (*noa) return cmd_noacheck(dim, n, subspaces, p);
    if (*fx) return cmd_fixtures(emit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
