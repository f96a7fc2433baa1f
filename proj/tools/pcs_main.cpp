// Command-line surface over the precubical analysis library. One
// command per invocation; exit codes: 0 = all checks pass, 1 = a check
// failed (certificate printed), 2 = usage/parse/domain error,
// 3 = budget-limited result (not certified). Every non-zero exit prints
// a machine-parsable first line `<status>: <op>: <reason>`.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcs/pcs.hpp"

namespace {

struct InstanceSpec {
  std::string in_file;
  std::vector<std::string> gen;
  std::vector<int> forbid;
};

void add_instance_options(CLI::App* cmd, InstanceSpec& spec) {
  cmd->add_option("--in", spec.in_file, "instance file in pcs v1 format");
  cmd->add_option("--gen", spec.gen,
                  "generator with parameters: circle | wedge k | torus | grid m n | cube n")
      ->expected(-1);
  cmd->add_option("--forbid", spec.forbid,
                  "forbidden grid cells x1 y1 x2 y2 (inclusive, 0-indexed; repeatable)");
}

std::string basename_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

struct LoadedInstance {
  pcs::PrecubicalSet x;
  std::string origin;
};

LoadedInstance load_instance(const InstanceSpec& spec) {
  if (spec.in_file.empty() == spec.gen.empty())
    throw pcs::DomainError("give exactly one of --in <file> or --gen <name> [params]");

  if (!spec.in_file.empty()) {
    if (!spec.forbid.empty()) throw pcs::DomainError("--forbid applies only to --gen grid");
    std::ifstream in(spec.in_file);
    if (!in) throw pcs::ParseError("cannot open '" + spec.in_file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return {pcs::parse_pcs(text.str()), "file:" + basename_of(spec.in_file)};
  }

  std::vector<int> params;
  for (std::size_t i = 1; i < spec.gen.size(); ++i) {
    try {
      params.push_back(std::stoi(spec.gen[i]));
    } catch (...) {
      throw pcs::DomainError("generator parameter '" + spec.gen[i] + "' is not an integer");
    }
  }
  if (spec.forbid.size() % 4 != 0)
    throw pcs::DomainError("--forbid needs groups of four integers: x1 y1 x2 y2");
  std::vector<pcs::CellRect> rects;
  for (std::size_t i = 0; i + 3 < spec.forbid.size(); i += 4)
    rects.push_back({spec.forbid[i], spec.forbid[i + 1], spec.forbid[i + 2], spec.forbid[i + 3]});

  std::string origin = "gen:" + spec.gen[0];
  for (std::size_t i = 1; i < spec.gen.size(); ++i) origin += " " + spec.gen[i];
  for (std::size_t i = 0; i + 3 < spec.forbid.size(); i += 4)
    origin += " forbid " + std::to_string(spec.forbid[i]) + " " +
              std::to_string(spec.forbid[i + 1]) + " " + std::to_string(spec.forbid[i + 2]) +
              " " + std::to_string(spec.forbid[i + 3]);
  return {pcs::generate(spec.gen[0], params, rects), origin};
}

/// Commands other than `validate` refuse broken instances outright.
void require_valid(const pcs::PrecubicalSet& x, const std::string& cmd) {
  pcs::ValidationReport report = pcs::validate(x);
  if (!report.ok())
    throw pcs::DomainError("instance fails validation (" +
                           std::to_string(report.violations.size()) +
                           " violations); run the validate command for the list");
  (void)cmd;
}

std::string chain_text(const pcs::PrecubicalSet& x, const pcs::Chain& c) {
  if (c.coef.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [cube, k] : c.coef) {
    if (!first) out << " + ";
    first = false;
    if (k != 1) out << k << "*";
    out << x.name(cube);
  }
  return out.str();
}

std::string torsion_text(const std::vector<pcs::Int>& factors) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < factors.size(); ++i) out << (i ? "," : "") << factors[i];
  out << "]";
  return out.str();
}

int emit(const pcs::Report& report) {
  std::cout << report.str();
  return 0;
}

int emit_fail(const std::string& op, const std::string& reason, const pcs::Report& report) {
  std::cout << "fail: " << op << ": " << reason << "\n" << report.str();
  return 1;
}

// ---------------------------------------------------------------------------

int cmd_validate(const LoadedInstance& inst) {
  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  pcs::ValidationReport result = pcs::validate(inst.x);
  for (const pcs::Violation& v : result.violations) rep.line("violation: " + v.detail);
  rep.kv("ok", result.ok() ? 1 : 0);
  rep.kv("violations", result.violations.size());
  if (!result.ok())
    return emit_fail("validate",
                     std::to_string(result.violations.size()) + " violation(s) found", rep);
  rep.line("validate: ok");
  return emit(rep);
}

int cmd_homology(const LoadedInstance& inst) {
  pcs::HomologyResult h = pcs::homology(inst.x);
  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  rep.line("homology: h0=" + std::to_string(h.h0_rank) +
           " h1_free=" + std::to_string(h.h1_free_rank) +
           " torsion=" + torsion_text(h.h1_torsion));
  rep.kv("h0", h.h0_rank);
  rep.kv("h1_free", h.h1_free_rank);
  std::ostringstream tors;
  for (std::size_t i = 0; i < h.h1_torsion.size(); ++i) tors << (i ? "," : "") << h.h1_torsion[i];
  rep.kv("torsion", tors.str());
  rep.kv("rank1", h.rank1);
  rep.kv("rank2", h.rank2);
  return emit(rep);
}

int cmd_reach(const LoadedInstance& inst) {
  pcs::VertexPreorder order = pcs::reachability(inst.x);
  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  std::size_t pairs = 0;
  for (int u = 0; u < order.vertex_count; ++u) {
    int row = 0;
    for (int v = 0; v < order.vertex_count; ++v) row += order.reaches(u, v) ? 1 : 0;
    pairs += static_cast<std::size_t>(row);
    rep.line("reach: " + inst.x.name(pcs::CubeId{0, u}) + " -> " + std::to_string(row) +
             " vertices");
  }
  rep.line("reach: pairs=" + std::to_string(pairs) + " vertices=" +
           std::to_string(order.vertex_count));
  rep.kv("pairs", pairs);
  rep.kv("vertices", order.vertex_count);
  return emit(rep);
}

int cmd_loops(const LoadedInstance& inst, int max_len) {
  if (max_len < 0) throw pcs::DomainError("--max-len must be nonnegative");
  const pcs::PrecubicalSet& x = inst.x;
  std::vector<std::vector<std::pair<int, int>>> out_edges(x.count(0));
  for (int e = 0; e < x.count(1); ++e) {
    pcs::CubeId edge{1, e};
    out_edges[x.face(edge, pcs::Sign::Minus, 1).index].push_back(
        {e, x.face(edge, pcs::Sign::Plus, 1).index});
  }

  pcs::HomologyResult h = pcs::homology(x);
  unsigned long long found = 0, essential = 0;
  std::vector<pcs::CubeId> current;
  std::function<void(int, int)> dfs = [&](int start, int at) {
    if (at == start && !current.empty()) {
      ++found;
      pcs::EdgePath loop{&x, pcs::CubeId{0, start}, current};
      pcs::Chain cert = pcs::cycle_chain(loop);
      if (pcs::is_nullhomologous(x, cert, h))
        throw pcs::Error("loops: nonempty directed loop has nullhomologous cycle chain; "
                         "the chain machinery is broken");
      ++essential;
    }
    if (static_cast<int>(current.size()) == max_len) return;
    for (auto [e, head] : out_edges[at]) {
      current.push_back(pcs::CubeId{1, e});
      dfs(start, head);
      current.pop_back();
    }
  };
  for (int v = 0; v < x.count(0); ++v) dfs(v, v);

  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  rep.line("loops: max_len=" + std::to_string(max_len) + " found=" + std::to_string(found) +
           " essential=" + std::to_string(essential));
  rep.kv("max_len", max_len);
  rep.kv("loops", found);
  rep.kv("essential", essential);
  return emit(rep);
}

int cmd_essential(const LoadedInstance& inst, const std::string& literal) {
  pcs::EdgePath gamma = pcs::parse_path(inst.x, literal);
  pcs::IsEssentialResult result = pcs::is_essential(inst.x, gamma);
  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  rep.line("essential: loop=" + pcs::format_path(inst.x, gamma));
  rep.kv("loop", pcs::format_path(inst.x, gamma));
  rep.kv("essential", result.essential ? 1 : 0);
  if (!result.essential) {
    rep.line("essential: no (constant loop)");
    return emit_fail("essential", "loop is constant", rep);
  }
  rep.line("essential: yes");
  rep.line("certificate: c = " + chain_text(inst.x, result.certificate) +
           " is a nonzero nonnegative cycle outside im(boundary2)");
  rep.kv("certificate", chain_text(inst.x, result.certificate));
  return emit(rep);
}

int cmd_approx(const LoadedInstance& inst, const std::string& track_file) {
  std::ifstream in(track_file);
  if (!in) throw pcs::ParseError("cannot open '" + track_file + "'");
  std::ostringstream text;
  text << in.rdbuf();
  pcs::PLDipath track = pcs::parse_track(inst.x, text.str());
  pcs::EdgePath path = pcs::cellular_approximate(inst.x, track);

  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  rep.line("approx: track=" + basename_of(track_file) + " segments=" +
           std::to_string(track.segments.size()));
  rep.line("approx: " + pcs::format_path(inst.x, path));
  rep.kv("segments", track.segments.size());
  rep.kv("path", pcs::format_path(inst.x, path));
  rep.kv("edges", path.edges.size());
  rep.kv("start", inst.x.name(path.start));
  rep.kv("end", inst.x.name(pcs::path_end(path)));
  return emit(rep);
}

int cmd_cover(const LoadedInstance& inst, int radius, long long budget,
              const std::string& base_name) {
  pcs::CubeId base{0, 0};
  if (!base_name.empty()) {
    auto c = inst.x.find(base_name);
    if (!c || c->dim != 0)
      throw pcs::DomainError("--base '" + base_name + "' is not a vertex of the instance");
    base = *c;
  } else if (inst.x.count(0) == 0) {
    throw pcs::DomainError("instance has no vertices");
  }
  if (budget <= 0) throw pcs::DomainError("--budget must be positive");

  pcs::CoverBall ball =
      pcs::build_cover_ball(inst.x, base, radius, static_cast<unsigned long long>(budget));

  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  rep.line("cover: base=" + inst.x.name(base) + " radius=" + std::to_string(radius) +
           " budget=" + std::to_string(budget));
  for (int l = 0; l <= radius; ++l)
    rep.line("layer " + std::to_string(l) + ": " + std::to_string(ball.nodes_at_layer(l)) +
             " nodes");
  rep.line("nodes: total=" + std::to_string(ball.nodes.size()) +
           " darts=" + std::to_string(ball.dart_count()));
  const pcs::BudgetReport& b = ball.budget_report;
  rep.line("budget: normalize_calls=" + std::to_string(b.normalize_calls) +
           " rewrites_total=" + std::to_string(b.total_rewrites) +
           " rewrites_max=" + std::to_string(b.max_rewrites) +
           " unknown=" + std::to_string(b.unknown_count));
  rep.line(std::string("certified: ") + (ball.certified ? "yes" : "no"));
  rep.kv("radius", radius);
  rep.kv("budget", budget);
  rep.kv("base", inst.x.name(base));
  rep.kv("nodes", ball.nodes.size());
  rep.kv("darts", ball.dart_count());
  rep.kv("normalize_calls", b.normalize_calls);
  rep.kv("rewrites_total", b.total_rewrites);
  rep.kv("rewrites_max", b.max_rewrites);
  rep.kv("unknown", b.unknown_count);
  rep.kv("certified", ball.certified ? 1 : 0);

  if (!ball.certified) {
    std::cout << "unknown: cover: " << b.unknown_count
              << " normalization(s) exceeded budget " << budget
              << "; ball not certified (raise --budget)\n"
              << rep.str();
    return 3;
  }

  pcs::AntisymmetryVerdict verdict = pcs::check_antisymmetry(ball);
  rep.kv("antisymmetry", verdict.pass ? "PASS" : "FAIL");
  if (verdict.pass) {
    rep.line("antisymmetry: PASS (radius=" + std::to_string(radius) +
             ", budget=" + std::to_string(budget) + ")");
    return emit(rep);
  }
  rep.line("antisymmetry: FAIL (radius=" + std::to_string(radius) +
           ", budget=" + std::to_string(budget) + ")");
  std::ostringstream cyc;
  for (std::size_t i = 0; i < verdict.cycle_nodes.size(); ++i)
    cyc << (i ? " -> " : "") << verdict.cycle_nodes[i];
  rep.line("cycle: nodes " + cyc.str());
  rep.line("cycle: projects to " + pcs::format_path(inst.x, verdict.projected_cycle));
  rep.line(std::string("cycle: projection essential=") +
           (verdict.cross_check_essential ? "yes (covering construction is buggy)" : "no"));
  return emit_fail("cover", "directed cycle among cover nodes", rep);
}

int cmd_audit(const LoadedInstance& inst, int bound) {
  if (bound < 0) throw pcs::DomainError("--bound must be nonnegative");
  pcs::AuditReport audit = pcs::nonnegative_cycle_audit(inst.x, bound);

  pcs::Report rep;
  rep.instance_summary(inst.x, inst.origin);
  rep.line("audit: bound=" + std::to_string(bound) +
           " cycles=" + std::to_string(audit.cycles_found) +
           " nonzero=" + std::to_string(audit.nonzero_cycles) +
           " violations=" + std::to_string(audit.violations.size()));
  rep.kv("bound", bound);
  rep.kv("cycles", audit.cycles_found);
  rep.kv("nonzero", audit.nonzero_cycles);
  rep.kv("violations", audit.violations.size());
  rep.kv("nodes_explored", audit.nodes_explored);
  if (!audit.violations.empty()) {
    for (const pcs::Chain& c : audit.violations)
      rep.line("violation: nullhomologous nonnegative cycle " + chain_text(inst.x, c));
    return emit_fail("audit",
                     std::to_string(audit.violations.size()) +
                         " nonzero nullhomologous nonnegative cycle(s)",
                     rep);
  }
  rep.line("audit: no nonzero nullhomologous nonnegative cycle up to bound " +
           std::to_string(bound));
  return emit(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"precubical set analysis: validation, homology, directed paths, cover balls"};
  app.require_subcommand(1);

  InstanceSpec spec;
  int max_len = 0, radius = 0, bound = 0;
  long long budget = 0;
  std::string path_literal, track_file, base_name;

  CLI::App* c_validate = app.add_subcommand("validate", "check the cubical face identities");
  CLI::App* c_homology = app.add_subcommand("homology", "integer H0 and H1");
  CLI::App* c_reach = app.add_subcommand("reach", "vertex reachability preorder");
  CLI::App* c_loops = app.add_subcommand("loops", "count directed loops up to a length");
  CLI::App* c_essential = app.add_subcommand("essential", "certify a directed loop essential");
  CLI::App* c_approx = app.add_subcommand("approx", "cellular approximation of a PL track");
  CLI::App* c_cover = app.add_subcommand("cover", "universal-cover ball and antisymmetry");
  CLI::App* c_audit = app.add_subcommand("audit", "nonnegative-cycle nullhomology audit");

  for (CLI::App* cmd : {c_validate, c_homology, c_reach, c_loops, c_essential, c_approx,
                        c_cover, c_audit})
    add_instance_options(cmd, spec);

  c_loops->add_option("--max-len", max_len, "maximum loop length")->required();
  c_essential->add_option("--path", path_literal, "loop literal: path <vertex> <edge> ...")
      ->required();
  c_approx->add_option("--track", track_file, "track file: seg <cube> <from> <to> per line")
      ->required();
  c_cover->add_option("--radius", radius, "ball radius (walk length)")->required();
  c_cover->add_option("--budget", budget, "rewrite budget per normalization")->required();
  c_cover->add_option("--base", base_name, "basepoint vertex (default: first vertex)");
  c_audit->add_option("--bound", bound, "coefficient bound")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cout << "error: usage: " << e.what() << "\n";
    return 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string op = cmd->get_name();
  try {
    LoadedInstance inst = load_instance(spec);
    if (cmd != c_validate) require_valid(inst.x, op);
    if (cmd == c_validate) return cmd_validate(inst);
    if (cmd == c_homology) return cmd_homology(inst);
    if (cmd == c_reach) return cmd_reach(inst);
    if (cmd == c_loops) return cmd_loops(inst, max_len);
    if (cmd == c_essential) return cmd_essential(inst, path_literal);
    if (cmd == c_approx) return cmd_approx(inst, track_file);
    if (cmd == c_cover) return cmd_cover(inst, radius, budget, base_name);
    if (cmd == c_audit) return cmd_audit(inst, bound);
    std::cout << "error: usage: unknown command\n";
    return 2;
  } catch (const pcs::ParseError& e) {
    std::cout << "error: parse: " << e.what() << "\n";
    return 2;
  } catch (const pcs::SearchLimitError& e) {
    std::cout << "unknown: " << op << ": " << e.what() << "\n";
    return 3;
  } catch (const pcs::PreconditionError& e) {
    std::cout << "error: " << op << ": " << e.what() << "\n";
    return 2;
  } catch (const pcs::DomainError& e) {
    std::cout << "error: " << op << ": " << e.what() << "\n";
    return 2;
  } catch (const pcs::Error& e) {
    std::cout << "error: " << op << ": internal: " << e.what() << "\n";
    return 2;
  }
}
