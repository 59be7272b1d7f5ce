#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "canon/embeddings.hpp"
#include "canon/errors.hpp"
#include "canon/graph_io.hpp"
#include "canon/invariant.hpp"
#include "canon/oracles.hpp"
#include "canon/report.hpp"
#include "canon/rigidity.hpp"
#include "canon/separator.hpp"

namespace canon::cli {

std::size_t depth_bound(std::size_t n) {
  std::size_t log = 0;
  while ((std::size_t{1} << log) < n) ++log;
  return log + 1;
}

namespace {

struct Common {
  int workers = 1;
  std::size_t oracle_cap = default_oracle_cap();
};

struct CanonFlags {
  std::string input;
  std::string format = "cg";
  std::string method = "separator";
  std::string invariant = "bf";
  std::size_t r = 3;
  std::optional<std::size_t> r_max;
  bool check = false;
  bool report = false;
};

struct FamilyFlags {
  std::string family;
  std::size_t n = 0;
  std::size_t k = 2;
  std::optional<double> p;
  std::string name;
  std::uint64_t seed = 1;

  FamilyParams params() const { return FamilyParams{n, k, p, name}; }
};

ColoredGraph load_graph(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  if (format == "graph6") {
    std::string_view body = text;
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);
    return parse_graph6(body);
  }
  return parse_cg(text);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string yes_no(const std::optional<bool>& b) { return b ? yes_no(*b) : "unchecked"; }

std::string vertex_list(std::span<const Vertex> vs) {
  std::string out;
  for (Vertex v : vs) {
    out += ' ';
    out += std::to_string(v + 1);
  }
  return out;
}

void print_labeling(std::ostream& out, const Labeling& sigma) {
  for (Vertex v = 0; v < sigma.size(); ++v) out << v + 1 << " -> " << sigma[v] + 1 << '\n';
}

void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) err << "diagnostic: " << diagnostic_kind_name(d.kind) << ": " << d.message << '\n';
}

CanonOptions canon_options(const Common& common, bool check, InvariantStats* stats) {
  CanonOptions options;
  options.exec = Exec{common.workers};
  options.cross_check = check;
  options.oracle_cap = common.oracle_cap;
  options.stats = stats;
  return options;
}

InvariantBackend backend(const std::string& selector, const Common& common) {
  InvariantBackend f = InvariantBackend::parse(selector);
  f.with_oracle_cap(common.oracle_cap);
  return f;
}

struct Canonized {
  Labeling labeling;
  std::size_t depth = 0;
  std::size_t r = 0;
  std::vector<Diagnostic> diagnostics;
};

// With r_max set, the smallest r in 1..r_max that runs without a fallback
// wins; if every r falls back, r_max is used.
Canonized canonize(const ColoredGraph& g, const CanonFlags& flags, const Common& common, InvariantStats* stats) {
  const CanonOptions options = canon_options(common, flags.check, stats);
  Canonized out;
  if (flags.method == "bf") {
    out.labeling = bf_canonical(g, common.oracle_cap).labeling;
    return out;
  }
  const InvariantBackend f = backend(flags.invariant, common);
  std::size_t first = flags.r_max ? 1 : flags.r;
  std::size_t last = flags.r_max ? *flags.r_max : flags.r;
  if (last < 1) throw ContractViolation("r must be at least 1");
  for (std::size_t r = first; r <= last; ++r) {
    out.r = r;
    if (flags.method == "separator") {
      CanonResult result = canon_separator(g, r, f, options);
      out.labeling = std::move(result.labeling);
      out.depth = result.depth;
      out.diagnostics = std::move(result.diagnostics);
      if (result.found_separators_everywhere()) break;
    } else {
      RigidityResult result = canon_rigidity(g, r, f, options);
      out.labeling = std::move(result.labeling);
      out.diagnostics = std::move(result.diagnostics);
      if (!result.sequence.empty() || g.order() == 0) break;
    }
  }
  return out;
}

int cmd_canon(const CanonFlags& flags, const Common& common, std::ostream& out, std::ostream& err) {
  const ColoredGraph g = load_graph(flags.input, flags.format);
  InvariantStats stats;
  const auto started = std::chrono::steady_clock::now();
  Canonized result = canonize(g, flags, common, &stats);
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - started;

  print_labeling(out, result.labeling);
  out << write_cg(apply_permutation(g, result.labeling));
  print_diagnostics(err, result.diagnostics);
  if (flags.report) {
    RunReport report;
    report.wall_ms = elapsed.count();
    report.workers = common.workers;
    report.depth = result.depth;
    report.invariant_calls = stats.calls;
    report.wl_rounds = stats.wl_rounds;
    report.diagnostics = result.diagnostics;
    err << "report: r=" << result.r << " depth=" << report.depth << " bound=" << depth_bound(g.order())
        << " invariant_calls=" << report.invariant_calls << " rounds_per_call=" << std::fixed << std::setprecision(2)
        << report.rounds_per_wl_call() << " wall_ms=" << report.wall_ms << " workers=" << report.workers
        << " diagnostics=" << report.diagnostics_column() << '\n';
  }
  return exit_ok;
}

int cmd_iso(const CanonFlags& flags, const std::string& path_a, const std::string& path_b, const Common& common,
            std::ostream& out, std::ostream& err) {
  const ColoredGraph g = load_graph(path_a, flags.format);
  const ColoredGraph h = load_graph(path_b, flags.format);
  std::optional<Labeling> mapping;
  std::vector<Diagnostic> diagnostics;
  if (flags.method == "separator" && !flags.r_max) {
    IsoResult result = find_isomorphism(g, h, flags.r, backend(flags.invariant, common),
                                        canon_options(common, flags.check, nullptr));
    mapping = std::move(result.mapping);
    diagnostics = std::move(result.diagnostics);
  } else if (g.order() == h.order()) {
    Canonized cg = canonize(g, flags, common, nullptr);
    Canonized ch = canonize(h, flags, common, nullptr);
    diagnostics = cg.diagnostics;
    diagnostics.insert(diagnostics.end(), ch.diagnostics.begin(), ch.diagnostics.end());
    Labeling candidate = ch.labeling.inverse().after(cg.labeling);
    if (apply_permutation(g, candidate) == h) mapping = std::move(candidate);
  }
  print_diagnostics(err, diagnostics);
  if (!mapping) {
    out << "non-isomorphic\n";
    return exit_negative;
  }
  out << "isomorphic\n";
  print_labeling(out, *mapping);
  return exit_ok;
}

int cmd_rigidity(const std::string& input, const std::string& format, const Common& common, std::ostream& out) {
  const RigidityIndex rig = rigidity_index(load_graph(input, format), common.oracle_cap);
  out << "rig = " << rig.index << '\n' << "witness =" << vertex_list(rig.witness) << '\n';
  return exit_ok;
}

int cmd_aut(const std::string& input, const std::string& format, bool elements, const Common& common,
            std::ostream& out) {
  const AutomorphismGroup group = automorphisms(load_graph(input, format), common.oracle_cap);
  out << "order = " << group.order() << '\n';
  if (elements) {
    for (const auto& alpha : group.elements) out << "aut" << vertex_list(alpha.mapping()) << '\n';
  }
  return exit_ok;
}

int cmd_orbits(const std::string& input, const std::string& format, const Common& common, std::ostream& out) {
  for (const auto& orbit : orbits(load_graph(input, format), common.oracle_cap)) {
    out << "orbit" << vertex_list(orbit) << '\n';
  }
  return exit_ok;
}

int cmd_embed(const std::string& action, const std::string& input, std::optional<std::size_t> genus,
              const Common& common, std::ostream& out) {
  if (action == "planar") {
    out << write_rs(planar_rotation_system(parse_cg(read_file(input))));
    return exit_ok;
  }
  if (action == "fixing-set") {
    const ColoredGraph g = parse_cg(read_file(input));
    const auto embeddings = polyhedral_embeddings(g, genus);
    if (embeddings.empty()) throw NoPolyhedralEmbedding("graph has no polyhedral embedding of the requested genus");
    const PolyhedralFixingSet set = polyhedral_fixing_set(g, embeddings, common.oracle_cap);
    out << "genus = " << euler_genus(embeddings.front()) << '\n'
        << "c = " << set.c << '\n'
        << "base-edge = " << set.base_edge.first + 1 << ' ' << set.base_edge.second + 1 << '\n';
    for (auto [x, y, z] : set.witnesses) out << "witness = " << x + 1 << ' ' << y + 1 << ' ' << z + 1 << '\n';
    out << "set =" << vertex_list(set.vertices) << '\n'
        << "size = " << set.vertices.size() << " (bound " << 4 * set.c << ")\n"
        << "verified = " << yes_no(set.verified) << '\n';
    return exit_ok;
  }

  const RotationSystem r = parse_rs(read_file(input));
  if (action == "faces") {
    for (const auto& walk : trace_faces(r)) out << "face" << vertex_list(walk.vertices) << '\n';
    out << "genus = " << euler_genus(r) << '\n';
  } else if (action == "genus") {
    out << "genus = " << euler_genus(r) << '\n';
  } else if (action == "polyhedral") {
    out << "polyhedral = " << yes_no(is_polyhedral(r)) << '\n';
  } else {
    const FixingTriple triple = fixing_triple(r, common.oracle_cap);
    out << "triple =" << vertex_list(triple.vertices) << '\n'
        << "degenerate = " << yes_no(triple.degenerate) << '\n'
        << "faithful = " << yes_no(triple.faithful) << '\n'
        << "verified = " << yes_no(triple.verified) << '\n';
    if (!triple.warning.empty()) out << "warning = " << triple.warning << '\n';
  }
  return exit_ok;
}

int cmd_gen(const FamilyFlags& flags, const std::string& format, const std::string& out_path, std::size_t count,
            const std::string& out_dir, std::ostream& out) {
  const Family family = parse_family(flags.family);
  auto serialize = [&](const ColoredGraph& g) {
    return format == "graph6" ? write_graph6(g) + "\n" : write_cg(g);
  };
  if (out_dir.empty()) {
    const std::string text = serialize(gen_family(family, flags.params(), flags.seed));
    if (out_path.empty()) {
      out << text;
    } else {
      write_file(out_path, text);
    }
    return exit_ok;
  }
  std::filesystem::create_directories(out_dir);
  std::vector<ManifestEntry> entries;
  const std::string extension = format == "graph6" ? ".g6" : ".cg";
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = flags.seed + i;
    const std::string file = flags.family + "-" + std::to_string(seed) + extension;
    write_file((std::filesystem::path(out_dir) / file).string(), serialize(gen_family(family, flags.params(), seed)));
    entries.push_back({family, flags.params(), seed, file});
  }
  const std::string manifest = write_manifest(entries);
  write_file((std::filesystem::path(out_dir) / "manifest.txt").string(), manifest);
  out << manifest;
  return exit_ok;
}

int cmd_bench(const FamilyFlags& family_flags, const CanonFlags& flags, std::size_t trials, bool timing,
              const Common& common, std::ostream& out, std::ostream& err) {
  const Family family = parse_family(family_flags.family);
  const std::string invariant = flags.method == "bf" ? "bf" : flags.invariant;
  out << "family,n,seed,method,invariant,depth,invariant_calls,wall_ms,workers,diagnostics\n";
  std::size_t max_depth = 0;
  std::size_t bound = 0;
  std::size_t clean_runs = 0;
  bool within = true;
  std::uint64_t calls = 0;
  std::uint64_t rounds = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = family_flags.seed + t;
    const ColoredGraph g = gen_family(family, family_flags.params(), seed);
    InvariantStats stats;
    const auto started = std::chrono::steady_clock::now();
    Canonized result = canonize(g, flags, common, &stats);
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - started;

    RunReport report;
    report.wall_ms = timing ? elapsed.count() : 0.0;
    report.workers = common.workers;
    report.depth = result.depth;
    report.invariant_calls = stats.calls;
    report.wl_rounds = stats.wl_rounds;
    report.diagnostics = result.diagnostics;
    calls += report.invariant_calls;
    rounds += report.wl_rounds;

    const bool clean = std::none_of(report.diagnostics.begin(), report.diagnostics.end(), [](const Diagnostic& d) {
      return d.kind == Diagnostic::Kind::no_separator;
    });
    bound = std::max(bound, depth_bound(g.order()));
    if (flags.method == "separator" && clean) {
      ++clean_runs;
      max_depth = std::max(max_depth, report.depth);
      if (report.depth > depth_bound(g.order())) within = false;
    }
    std::ostringstream wall;
    wall << std::fixed << std::setprecision(3) << report.wall_ms;
    out << family_name(family) << ',' << g.order() << ',' << seed << ',' << flags.method << ',' << invariant << ','
        << report.depth << ',' << report.invariant_calls << ',' << wall.str() << ',' << report.workers << ','
        << report.diagnostics_column() << '\n';
    print_diagnostics(err, report.diagnostics);
  }
  err << "summary: trials=" << trials << " invariant_calls=" << calls;
  if (calls > 0) {
    err << " rounds_per_call=" << std::fixed << std::setprecision(2)
        << static_cast<double>(rounds) / static_cast<double>(calls);
  }
  if (flags.method == "separator") {
    err << " runs_with_separators=" << clean_runs << " max_depth=" << max_depth << " bound=" << bound
        << " within_bound=" << yes_no(within);
  }
  err << '\n';
  return exit_ok;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--workers", common.workers, "Worker threads (1 = serial reference path)")
      ->check(CLI::Range(1, 1024));
  cmd->add_option("--oracle-cap", common.oracle_cap, "Largest n accepted by brute-force oracles");
}

void add_method_flags(CLI::App* cmd, CanonFlags& flags, bool with_input) {
  if (with_input) cmd->add_option("--input", flags.input, "Graph file")->required();
  cmd->add_option("--format", flags.format, "Input format")->check(CLI::IsMember({"cg", "graph6"}));
  cmd->add_option("--method", flags.method, "Canonizer")->check(CLI::IsMember({"separator", "rigidity", "bf"}));
  cmd->add_option("--invariant", flags.invariant, "Invariant backend: wl1, wlk:<k> or bf");
  cmd->add_option("--r", flags.r, "Separator size or fixing-sequence length")->check(CLI::Range(1, 40));
  cmd->add_option("--r-max", flags.r_max, "Try r = 1..r-max and keep the first without fallback")
      ->check(CLI::Range(1, 40));
  cmd->add_flag("--check", flags.check, "Brute-force cross-checks within the oracle cap");
}

void add_family_flags(CLI::App* cmd, FamilyFlags& flags) {
  cmd->add_option("--family", flags.family, "Graph family")->required();
  cmd->add_option("--n", flags.n, "Vertex count");
  cmd->add_option("--k", flags.k, "Width parameter for k_tree families");
  cmd->add_option("--p", flags.p, "Edge (random_gnp) or deletion (partial_k_tree) probability")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--name", flags.name, "Platonic solid: k4, cube, octahedron");
  cmd->add_option("--seed", flags.seed, "Generator seed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph canonization toolkit", "canon"};
  app.require_subcommand(1);
  Common common;
  CanonFlags canon_flags;
  FamilyFlags family_flags;
  std::string input;
  std::string format = "cg";
  std::string path_a;
  std::string path_b;
  bool elements = false;
  std::string embed_action;
  std::optional<std::size_t> genus;
  std::string out_path;
  std::string out_dir;
  std::size_t count = 1;
  std::size_t trials = 10;
  bool no_timing = false;

  auto* canon_cmd = app.add_subcommand("canon", "Canonical labeling and canonical form");
  add_method_flags(canon_cmd, canon_flags, true);
  canon_cmd->add_flag("--report", canon_flags.report, "Print a run report to stderr");
  add_common(canon_cmd, common);

  auto* iso_cmd = app.add_subcommand("iso", "Isomorphism test via canonical labelings");
  iso_cmd->add_option("a", path_a, "First graph")->required();
  iso_cmd->add_option("b", path_b, "Second graph")->required();
  add_method_flags(iso_cmd, canon_flags, false);
  add_common(iso_cmd, common);

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Graph file")->required();
    cmd->add_option("--format", format, "Input format")->check(CLI::IsMember({"cg", "graph6"}));
    add_common(cmd, common);
  };
  auto* rigidity_cmd = app.add_subcommand("rigidity", "Rigidity index by exhaustive search");
  add_input(rigidity_cmd);
  auto* aut_cmd = app.add_subcommand("aut", "Automorphism group order");
  add_input(aut_cmd);
  aut_cmd->add_flag("--elements", elements, "List every automorphism as its image vector");
  auto* orbits_cmd = app.add_subcommand("orbits", "Vertex orbits");
  add_input(orbits_cmd);

  auto* embed_cmd = app.add_subcommand("embed", "Rotation systems and fixing sets");
  embed_cmd->require_subcommand(1);
  for (const char* action : {"faces", "genus", "polyhedral", "fixing-triple"}) {
    auto* sub = embed_cmd->add_subcommand(action, std::string("rs input: ") + action);
    sub->add_option("--input", input, "Rotation system file (rs)")->required();
    add_common(sub, common);
    sub->callback([&embed_action, action] { embed_action = action; });
  }
  auto* planar_cmd = embed_cmd->add_subcommand("planar", "cg input: first planar rotation system");
  planar_cmd->add_option("--input", input, "Graph file (cg)")->required();
  planar_cmd->callback([&] { embed_action = "planar"; });
  auto* set_cmd = embed_cmd->add_subcommand("fixing-set", "cg input: fixing set from all polyhedral embeddings");
  set_cmd->add_option("--input", input, "Graph file (cg)")->required();
  set_cmd->add_option("--genus", genus, "Surface genus (default: smallest polyhedral genus)");
  add_common(set_cmd, common);
  set_cmd->callback([&] { embed_action = "fixing-set"; });

  auto* gen_cmd = app.add_subcommand("gen", "Seeded graph families");
  add_family_flags(gen_cmd, family_flags);
  gen_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"cg", "graph6"}));
  gen_cmd->add_option("--out", out_path, "Output file (default stdout)");
  gen_cmd->add_option("--count", count, "Number of graphs (seeds seed..seed+count-1)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out-dir", out_dir, "Directory for a multi-graph corpus and manifest.txt");

  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded corpus and emit a CSV run report");
  add_family_flags(bench_cmd, family_flags);
  add_method_flags(bench_cmd, canon_flags, false);
  bench_cmd->add_option("--trials", trials, "Number of seeds (seed, seed+1, ...)");
  bench_cmd->add_flag("--no-timing", no_timing, "Write 0 in the wall_ms column");
  add_common(bench_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*canon_cmd) return cmd_canon(canon_flags, common, out, err);
    if (*iso_cmd) return cmd_iso(canon_flags, path_a, path_b, common, out, err);
    if (*rigidity_cmd) return cmd_rigidity(input, format, common, out);
    if (*aut_cmd) return cmd_aut(input, format, elements, common, out);
    if (*orbits_cmd) return cmd_orbits(input, format, common, out);
    if (*embed_cmd) return cmd_embed(embed_action, input, genus, common, out);
    if (*gen_cmd) {
      if (count > 1 && out_dir.empty()) throw ParseError("--count needs --out-dir");
      return cmd_gen(family_flags, format, out_path, count, out_dir, out);
    }
    if (*bench_cmd) return cmd_bench(family_flags, canon_flags, trials, !no_timing, common, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const OracleCapacityError& e) {
    err << "error: " << e.what() << '\n';
    return exit_capacity;
  } catch (const BackendCapacityError& e) {
    err << "error: " << e.what() << '\n';
    return exit_capacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}

}  // namespace canon::cli
