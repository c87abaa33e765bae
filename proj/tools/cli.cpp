#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "matrixcode/codegen.hpp"
#include "matrixcode/dsl.hpp"
#include "matrixcode/interpreter.hpp"
#include "matrixcode/kleene.hpp"
#include "matrixcode/verifier.hpp"
#include "merge_sources.hpp"

namespace mxc::cli {

const char* emerge_source() { return kEmergeSource; }
const char* mmerge_source() { return kMmergeSource; }

StreamPair random_stream_pair(std::mt19937_64& rng) {
  StreamPair p;
  for (Stream* s : {&p.left, &p.right}) {
    const auto len = uniform(rng, 0, 50);
    std::int64_t value = 0;
    for (std::uint64_t i = 0; i < len; ++i) {
      value += static_cast<std::int64_t>(uniform(rng, 1, 9));
      s->items.push_back(value);
    }
  }
  return p;
}

MergeCounts run_merge(const CodeMatrix& m, const StreamPair& input) {
  const DataState d0 = make_state(m.schema, {{"left", input.left}, {"right", input.right}, {"out", Stream{}}});
  const Outcome o = run(m, d0);
  MergeCounts c;
  const auto count = [&](const char* key) {
    const auto it = o.trace.counters.find(key);
    return it == o.trace.counters.end() ? std::int64_t{0} : it->second;
  };
  c.getL = count("getL");
  c.getR = count("getR");
  c.putL = count("putL");
  c.putR = count("putR");
  c.halted = o.status == Outcome::Status::Success;
  const auto slot = m.schema.slot_of("out");
  if (slot) {
    if (const auto* s = std::get_if<Stream>(&o.last().data[*slot])) c.output.assign(s->items.begin(), s->items.end());
  }
  return c;
}

namespace {

/// Reported by command bodies for problems that end the invocation with
/// exit code 3 (unreadable or invalid input, bad flags).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path);
  ParseResult r = parse_program(text);
  for (const auto& d : r.diagnostics) err << d.format(path) << "\n";
  if (!r.ok()) throw UsageError(path + ": not a valid code matrix");
  return std::move(*r.program);
}

/// `name=lo..hi`, `name[]=lo..hi` (array elements) or `name=literal`.
void apply_domain_overrides(DomainSpec& dom, const Schema& schema, const std::vector<std::string>& items) {
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("domain override '" + item + "' is not name=value");
    std::string name = item.substr(0, eq);
    const std::string rhs = item.substr(eq + 1);
    VarDomain vd;
    const bool elements = name.size() > 2 && name.ends_with("[]");
    if (elements) name.resize(name.size() - 2);
    const auto slot = schema.slot_of(name);
    if (!slot) throw UsageError("domain override names undeclared variable '" + name + "'");
    vd.name = name;
    const auto dots = rhs.find("..");
    try {
      if (dots != std::string::npos && rhs.find('"') == std::string::npos) {
        vd.kind = elements ? VarDomain::Kind::Elements : VarDomain::Kind::Range;
        vd.lo = std::stoll(rhs.substr(0, dots));
        vd.hi = std::stoll(rhs.substr(dots + 2));
      } else {
        if (elements) throw UsageError("array element override needs a range: '" + item + "'");
        vd.kind = VarDomain::Kind::Fixed;
        vd.fixed = literal_for(schema[*slot].kind, parse_literal(rhs), name);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad domain override '" + item + "'");
    } catch (const ParseError& e) {
      throw UsageError("bad domain override '" + item + "': " + e.what());
    } catch (const EvalError& e) {
      throw UsageError("bad domain override '" + item + "': " + e.what());
    }
    dom.set(std::move(vd));
  }
}

DataState initial_state(const Program& p, const std::vector<std::string>& inputs) {
  try {
    if (inputs.empty() && p.samples) {
      DataState first;
      bool found = false;
      for_each_state(p.matrix.schema, *p.samples, [&](const DataState& d) {
        first = d;
        found = true;
        return false;
      });
      if (found) return first;
    }
    return make_state(p.matrix.schema, parse_bindings(inputs, p.matrix.schema));
  } catch (const ParseError& e) {
    throw UsageError(std::string("bad input: ") + e.what());
  } catch (const EvalError& e) {
    throw UsageError(std::string("bad input: ") + e.what());
  }
}

std::string control_path(const CodeMatrix& m, const Trace& t) {
  std::string s;
  for (const auto& c : t.configs) {
    if (!s.empty()) s += ' ';
    s += m.states[c.control];
  }
  return s;
}

int exit_for(Outcome::Status s) {
  switch (s) {
    case Outcome::Status::Success: return kExitOk;
    case Outcome::Status::Failure: return kExitFailure;
    case Outcome::Status::StepLimit: return kExitStepLimit;
  }
  return kExitError;
}

int print_enumeration(const Program& p, const DataState& d0, std::size_t depth, std::ostream& out) {
  const auto outcomes = enumerate(p.matrix, d0, depth);
  std::size_t successes = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.status == Outcome::Status::Success) ++successes;
    out << "computation " << (i + 1) << ": " << status_name(o.status) << ": "
        << control_path(p.matrix, o.trace) << "\n";
    out << "  final " << format_state(p.matrix.schema, o.last().data) << "\n";
  }
  out << successes << " successful of " << outcomes.size() << " computations found\n";
  return successes > 0 ? kExitOk : kExitFailure;
}

int cmd_run(const std::string& file, const std::vector<std::string>& inputs, const std::string& mode,
            std::uint64_t steps, std::ostream& out, std::ostream& err) {
  const Program p = load(file, err);
  const DataState d0 = initial_state(p, inputs);
  if (mode == "all") return print_enumeration(p, d0, steps, out);
  try {
    const Outcome o = run(p.matrix, d0, Policy::Deterministic, steps);
    out << format_trace(p.matrix, o.trace);
    out << "\n" << status_name(o.status) << " after " << (o.trace.configs.size() - 1) << " transitions\n";
    return exit_for(o.status);
  } catch (const RunError& e) {
    out << format_trace(p.matrix, e.partial());
    err << file << ": " << e.what() << " (in column " << e.control() << ")\n";
    return kExitError;
  }
}

int cmd_enumerate(const std::string& file, const std::vector<std::string>& inputs, std::size_t depth,
                  std::ostream& out, std::ostream& err) {
  const Program p = load(file, err);
  return print_enumeration(p, initial_state(p, inputs), depth, out);
}

int cmd_verify(const std::string& file, const std::vector<std::string>& overrides, std::ostream& out,
               std::ostream& err) {
  const Program p = load(file, err);
  if (!p.conditions) {
    err << file << ": no condition vector to verify\n";
    return kExitError;
  }
  DomainSpec dom = p.domain.value_or(DomainSpec{});
  apply_domain_overrides(dom, p.matrix.schema, overrides);
  if (!p.domain && overrides.empty()) {
    err << file << ": no domain to verify over\n";
    return kExitError;
  }
  const VectorReport vr = check_vector(*p.conditions, p.matrix, dom);
  out << format_vector_report(p.matrix, *p.conditions, vr);
  const CompletenessReport cr = completeness(p.matrix, *p.conditions, dom);
  out << format_completeness(p.matrix, cr);
  bool complete = cr.complete();
  if (p.samples) {
    const auto starts = enumerate_states(p.matrix.schema, *p.samples);
    const CompletenessReport sr = completeness_from_samples(p.matrix, *p.conditions, starts);
    out << "sample runs (" << starts.size() << " starts):\n" << format_completeness(p.matrix, sr);
    complete = complete && sr.complete();
  }
  return vr.holds() && complete ? kExitOk : kExitFailure;
}

int cmd_compile(const std::string& file, const std::string& out_path, const std::string& name,
                std::ostream& out, std::ostream& err) {
  const Program p = load(file, err);
  const auto report = check_translatable(p.matrix);
  if (!report.translatable()) {
    err << format_findings(report);
    return kExitFailure;
  }
  const std::string code = emit(p.matrix, name.empty() ? p.matrix.name : name);
  if (out_path.empty()) {
    out << code;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << code;
  }
  return kExitOk;
}

int cmd_identities(std::uint64_t seed, std::size_t trials, std::ostream& out) {
  const IdentityReport r = check_identities(seed, trials);
  out << format_identity_report(r);
  return r.as_expected() ? kExitOk : kExitFailure;
}

int cmd_closure(const std::string& file, const std::vector<std::string>& overrides, std::size_t max_states,
                std::ostream& out, std::ostream& err) {
  const Program p = load(file, err);
  DomainSpec dom = p.domain.value_or(DomainSpec{});
  apply_domain_overrides(dom, p.matrix.schema, overrides);
  DsmRelation r;
  try {
    r = finite_dsm_relation(p.matrix, dom, max_states);
  } catch (const std::length_error& e) {
    err << file << ": " << e.what() << "\n";
    return kExitError;
  } catch (const EvalError& e) {
    err << file << ": " << e.what() << "\n";
    return kExitError;
  }
  out << "universe: " << r.universe.size() << " data states (" << r.domain_size << " in the domain)\n";
  const auto pairs = r.pairs();
  for (const auto& [a, b] : pairs)
    out << "  " << format_state(p.matrix.schema, r.universe[a]) << " -> "
        << format_state(p.matrix.schema, r.universe[b]) << "\n";
  if (r.agree()) {
    out << "both paths agree: " << pairs.size() << (pairs.size() == 1 ? " pair" : " pairs") << "\n";
    return kExitOk;
  }
  out << "paths disagree\n  closure: " << to_string(r.by_closure) << "\n  search:  " << to_string(r.by_search)
      << "\n";
  return kExitFailure;
}

int cmd_bench_merge(std::uint64_t seed, std::size_t pairs, std::ostream& out, std::ostream& err) {
  const auto e = parse_program(emerge_source());
  const auto m = parse_program(mmerge_source());
  if (!e.ok() || !m.ok()) {
    err << "built-in merge programs do not parse\n";
    return kExitError;
  }
  std::mt19937_64 rng(seed);
  out << std::left << std::setw(6) << "pair" << std::setw(8) << "program" << std::right;
  for (const char* h : {"len(L)", "len(R)", "getL", "getR", "putL", "putR"}) out << std::setw(8) << h;
  out << "\n";
  bool ok = true;
  for (std::size_t i = 1; i <= pairs; ++i) {
    const StreamPair sp = random_stream_pair(rng);
    std::vector<std::int64_t> expected;
    std::merge(sp.left.items.begin(), sp.left.items.end(), sp.right.items.begin(), sp.right.items.end(),
               std::back_inserter(expected));
    for (const auto& [label, prog] : {std::pair{"eMerge", &e}, std::pair{"mMerge", &m}}) {
      const MergeCounts c = run_merge(prog->program->matrix, sp);
      ok = ok && c.halted && c.output == expected;
      out << std::left << std::setw(6) << i << std::setw(8) << label << std::right << std::setw(8)
          << sp.left.items.size() << std::setw(8) << sp.right.items.size() << std::setw(8) << c.getL
          << std::setw(8) << c.getR << std::setw(8) << c.putL << std::setw(8) << c.putR << "\n";
    }
  }
  if (!ok) err << "a merge produced output different from the merged inputs\n";
  return ok ? kExitOk : kExitFailure;
}

int cmd_render(const std::string& file, bool source, std::ostream& out, std::ostream& err) {
  const Program p = load(file, err);
  out << (source ? render_source(p) : render_tabular(p.matrix, p.conditions ? &*p.conditions : nullptr));
  return kExitOk;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Run, verify and translate code matrices", "matrixcode"};
  app.require_subcommand(1);

  std::string file, mode = "det", out_path, name;
  std::vector<std::string> inputs, domain;
  std::uint64_t steps = kDefaultStepBound, seed = 7;
  std::size_t depth = 1000, trials = 500, max_states = 4096, pairs = 4;
  bool source = false;

  auto* run_cmd = app.add_subcommand("run", "Run from an initial state and print the trace");
  run_cmd->add_option("file", file, "Code matrix file")->required();
  run_cmd->add_option("--input,-i", inputs, "Initial binding name=value (repeatable)");
  run_cmd->add_option("--mode", mode, "det: first applicable rule; all: every computation")
      ->check(CLI::IsMember({"det", "all"}));
  run_cmd->add_option("--steps", steps, "Transition bound (depth bound with --mode all)");

  auto* enum_cmd = app.add_subcommand("enumerate", "List every computation from an initial state");
  enum_cmd->add_option("file", file, "Code matrix file")->required();
  enum_cmd->add_option("--input,-i", inputs, "Initial binding name=value (repeatable)");
  enum_cmd->add_option("--depth", depth, "Depth bound");

  auto* verify_cmd = app.add_subcommand("verify", "Check the condition vector and column completeness");
  verify_cmd->add_option("file", file, "Code matrix file")->required();
  verify_cmd->add_option("--domain,-d", domain, "Domain override name=lo..hi, name[]=lo..hi or name=value");

  auto* compile_cmd = app.add_subcommand("compile", "Translate to C");
  compile_cmd->add_option("file", file, "Code matrix file")->required();
  compile_cmd->add_option("--out,-o", out_path, "Output file (default: standard output)");
  compile_cmd->add_option("--name", name, "Function name (default: the matrix name)");

  auto* ident_cmd = app.add_subcommand("identities", "Test the Kleene-algebra laws on random instances");
  ident_cmd->add_option("--seed", seed, "Random seed");
  ident_cmd->add_option("--trials", trials, "Trials per law and semantics");

  auto* closure_cmd = app.add_subcommand("closure", "Compute the input-output relation two ways");
  closure_cmd->add_option("file", file, "Code matrix file")->required();
  closure_cmd->add_option("--domain,-d", domain, "Domain override name=lo..hi, name[]=lo..hi or name=value");
  closure_cmd->add_option("--max-states", max_states, "Bound on the closed data-state universe");

  auto* bench_cmd = app.add_subcommand("bench-merge", "Count stream calls of the two merge programs");
  bench_cmd->add_option("--seed", seed, "Random seed")->default_val(1);
  bench_cmd->add_option("--pairs", pairs, "Number of random stream pairs");

  auto* render_cmd = app.add_subcommand("render", "Print the matrix as a table");
  render_cmd->add_option("file", file, "Code matrix file")->required();
  render_cmd->add_flag("--source", source, "Print the canonical source instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run_cmd) return cmd_run(file, inputs, mode, steps, out, err);
    if (*enum_cmd) return cmd_enumerate(file, inputs, depth, out, err);
    if (*verify_cmd) return cmd_verify(file, domain, out, err);
    if (*compile_cmd) return cmd_compile(file, out_path, name, out, err);
    if (*ident_cmd) return cmd_identities(seed, trials, out);
    if (*closure_cmd) return cmd_closure(file, domain, max_states, out, err);
    if (*bench_cmd) return cmd_bench_merge(seed, pairs, out, err);
    if (*render_cmd) return cmd_render(file, source, out, err);
  } catch (const UsageError& e) {
    err << "matrixcode: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "matrixcode: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace mxc::cli
