#include "icalc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "icalc/analysis.hpp"
#include "icalc/core.hpp"
#include "icalc/lab.hpp"
#include "icalc/report.hpp"
#include "icalc/textio.hpp"

namespace icalc {

namespace {

struct Options {
  std::string system;
  std::string config;
  bool json = false;
  std::string strategy = "interaction-first";
  std::size_t fuel = 10000;
  bool trace = false;
  std::string kind = "all";
  std::string mode = "one";
  std::size_t depth = 2;
  std::size_t samples = 100;
  std::size_t size = 4;
  std::uint64_t seed = 0;
};

// Thrown for input problems; carries the exit code.
struct Failure {
  int code;
  std::string message;
};

std::string builtin_list() {
  std::string out;
  for (const auto& n : builtin_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

SourceFile load_system(const std::string& spec) {
  namespace fs = std::filesystem;
  SourceFile src;
  if (fs::exists(spec)) {
    std::ifstream in(spec);
    if (!in) throw Failure{kExitUsage, spec + ": cannot read"};
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      src = parse_system(buf.str());
    } catch (const ParseError& e) {
      throw Failure{kExitUsage, spec + ":" + e.what()};
    }
  } else if (auto s = find_builtin(spec)) {
    src.system = std::move(*s);
  } else {
    throw Failure{kExitUsage,
                  "'" + spec + "' is neither a file nor a builtin system (" + builtin_list() + ")"};
  }
  Validation v = validate_system(src.system);
  if (!v.ok()) throw Failure{kExitInvalid, "invalid system:\n" + v.to_string()};
  for (const auto& [name, c] : src.configs) {
    Validation vc = validate_config(src.system, c);
    if (!vc.ok()) throw Failure{kExitInvalid, "invalid config " + name + ":\n" + vc.to_string()};
  }
  return src;
}

Configuration load_config(const SourceFile& src, const std::string& text) {
  if (text.empty()) throw Failure{kExitUsage, "a configuration is required (-c NAME or -c '< ... >')"};
  Configuration c;
  if (const Configuration* named = src.find_config(text)) {
    c = *named;
  } else {
    try {
      c = parse_config(text, src.system);
    } catch (const ParseError& e) {
      throw Failure{kExitUsage, std::string("config:") + e.what()};
    }
  }
  Validation v = validate_config(src.system, c);
  if (!v.ok()) throw Failure{kExitInvalid, "invalid configuration:\n" + v.to_string()};
  return c;
}

void warn(const System& s, std::ostream& err) {
  for (const auto& d : validate_system(s).warnings())
    err << "warning: " << d.location << ": " << d.message << "\n";
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  SourceFile src = load_system(o.system);
  warn(src.system, err);
  ReversibilityReport r = reversibility_report(src.system);
  out << print_report(src.system, r, o.json);
  return r.reversible ? kExitOk : kExitNegative;
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream&) {
  SourceFile src = load_system(o.system);
  Configuration c = load_config(src, o.config);
  auto strategy = parse_strategy(o.strategy);
  if (!strategy) throw Failure{kExitUsage, "unknown strategy '" + o.strategy + "'"};
  NameSupply fresh;
  Trace t = normalize(src.system, c, *strategy, o.fuel, fresh);
  out << print_trace(t, o.trace, o.json);
  return t.stop == StopReason::fuel_exhausted ? kExitInconclusive : kExitOk;
}

int cmd_expand(const Options& o, std::ostream& out, std::ostream&) {
  SourceFile src = load_system(o.system);
  Configuration c = load_config(src, o.config);
  ExpansionKind kind;
  if (o.kind == "interaction")
    kind = ExpansionKind::interaction;
  else if (o.kind == "indirection")
    kind = ExpansionKind::indirection;
  else if (o.kind == "all")
    kind = ExpansionKind::all;
  else
    throw Failure{kExitUsage, "unknown kind '" + o.kind + "'"};
  out << print_expansions(c, expansions(src.system, c, kind), o.json);
  return kExitOk;
}

int cmd_diamond(const Options& o, std::ostream& out, std::ostream&) {
  SourceFile src = load_system(o.system);
  Configuration c = load_config(src, o.config);
  auto mode = parse_diamond_mode(o.mode);
  if (!mode) throw Failure{kExitUsage, "unknown mode '" + o.mode + "'"};
  DiamondReport r = diamond_check(src.system, c, *mode, o.depth);
  out << print_diamond(c, r, o.json);
  if (r.failures.empty()) return kExitOk;
  return *mode == DiamondMode::plus ? kExitInconclusive : kExitNegative;
}

int cmd_witness(const Options& o, std::ostream& out, std::ostream&) {
  SourceFile src = load_system(o.system);
  auto t = strong_failure_witness(src.system);
  out << print_witness(t, o.json);
  return t ? kExitNegative : kExitOk;
}

int cmd_search(const Options& o, std::ostream& out, std::ostream&) {
  SourceFile src = load_system(o.system);
  SearchReport r = counterexample_search(src.system, o.size, o.samples, o.depth, o.seed);
  out << print_search(r, o.json);
  if (!r.one_failures.empty()) return kExitNegative;
  if (!r.plus_failures.empty()) return kExitInconclusive;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interaction calculus: reduction, predecessors and reversibility analysis",
               "icalc"};
  app.require_subcommand(1);
  Options o;

  auto system_arg = [&](CLI::App* sub) {
    sub->add_option("system", o.system, "a .ins file or a builtin (" + builtin_list() + ")")
        ->required();
    sub->add_flag("--json", o.json, "machine-readable output");
  };
  auto config_arg = [&](CLI::App* sub) {
    sub->add_option("-c,--config", o.config, "config name from the file, or '< ... | ... >'")
        ->required();
  };

  CLI::App* check = app.add_subcommand("check", "reversibility report");
  system_arg(check);

  CLI::App* reduce = app.add_subcommand("reduce", "normalize a configuration");
  system_arg(reduce);
  config_arg(reduce);
  reduce->add_option("--strategy", o.strategy, "interaction-first, indirection-first or leftmost");
  reduce->add_option("--fuel", o.fuel, "maximum number of steps");
  reduce->add_flag("--trace", o.trace, "print every step");

  CLI::App* expand = app.add_subcommand("expand", "one-step predecessors");
  system_arg(expand);
  config_arg(expand);
  expand->add_option("--kind", o.kind, "interaction, indirection or all");

  CLI::App* diamond = app.add_subcommand("diamond", "upward diamond check");
  system_arg(diamond);
  config_arg(diamond);
  diamond->add_option("--mode", o.mode, "one or plus");
  diamond->add_option("--depth", o.depth, "plus mode: indirections searched after the interaction");

  CLI::App* witness = app.add_subcommand("witness", "peak without a common predecessor");
  system_arg(witness);

  CLI::App* search = app.add_subcommand("search", "diamond checks on random configurations");
  system_arg(search);
  search->add_option("--samples", o.samples, "number of configurations");
  search->add_option("--size", o.size, "maximum body equations");
  search->add_option("--depth", o.depth, "plus mode search depth");
  search->add_option("--seed", o.seed, "random seed");

  std::vector<std::string> argv_store{"icalc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(o, out, err);
    if (reduce->parsed()) return cmd_reduce(o, out, err);
    if (expand->parsed()) return cmd_expand(o, out, err);
    if (diamond->parsed()) return cmd_diamond(o, out, err);
    if (witness->parsed()) return cmd_witness(o, out, err);
    if (search->parsed()) return cmd_search(o, out, err);
  } catch (const Failure& f) {
    err << "icalc: " << f.message << (f.message.ends_with('\n') ? "" : "\n");
    return f.code;
  } catch (const Error& e) {
    err << "icalc: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace icalc
