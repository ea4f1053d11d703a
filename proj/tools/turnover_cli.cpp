// turnover_cli: invariant queries, (s,t)-region scans, censuses, and
// Goldman-sign rasters for turnover-group representations in PU(2,1).
//
// Exit codes: 0 success, 1 infeasible query (the requested point or gauge
// does not carry a representation / quadrangle), 2 bad arguments.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <turnover/turnover.hpp>

namespace {

using namespace turnover;

// Geometry failures mean the query was well-formed but infeasible (exit 1);
// malformed values surface as DegenerateInput/EmptyEnumeration (exit 2).
int exit_code_for(Err code) {
  return code == Err::DegenerateInput || code == Err::EmptyEnumeration ? 2 : 1;
}

struct TripleFlag {
  int a = 0, b = 0, c = 0;
};

TripleFlag parse_triple(const std::string& text, const std::string& flag) {
  TripleFlag t;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d,%d,%d%c", &t.a, &t.b, &t.c, &extra) != 3)
    raise(Err::DegenerateInput,
          flag + " expects three comma-separated integers, got '" + text + "'");
  return t;
}

struct RangeFlag {
  double lo = 0.0, hi = 4.0;
  int n = 200;
};

RangeFlag parse_range(const std::string& text, const std::string& flag) {
  RangeFlag r;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.n, &extra) !=
      3)
    raise(Err::DegenerateInput,
          flag + " expects lo:hi:count, got '" + text + "'");
  return r;
}

struct CommonQuery {
  std::string signature;
  std::string selection;
  std::string case_name = "regular";
  std::string branch_name = "plus";
  double tol = kDefaultTol;
};

void add_query_flags(CLI::App* cmd, CommonQuery& q, bool with_branch = true) {
  cmd->add_option("--signature", q.signature,
                  "cone orders n1,n2,n3 (e.g. 3,3,4)")
      ->required();
  cmd->add_option("--selection", q.selection,
                  "rotation numbers l1,l2,l3 (e.g. 1,1,1)")
      ->required();
  cmd->add_option("--case", q.case_name,
                  "conjugacy case: regular | special-point | special-line");
  if (with_branch)
    cmd->add_option("--branch", q.branch_name, "square-root branch: plus | minus");
  cmd->add_option("--tol", q.tol, "numerical tolerance");
}

EigenvalueSelection selection_from(const CommonQuery& q) {
  const TripleFlag n = parse_triple(q.signature, "--signature");
  const TripleFlag l = parse_triple(q.selection, "--selection");
  return make_selection(make_signature(n.a, n.b, n.c),
                        case_from_string(q.case_name), l.a, l.b, l.c);
}

json solver_error_json(const SolveOutcome& out) {
  json j;
  j["error"] = std::string(to_string(out.error));
  j["detail"] = out.detail;
  j["margins"] = {out.margins[0], out.margins[1], out.margins[2]};
  j["delta"] = out.delta;
  return j;
}

json error_json(const Error& e) {
  json j;
  j["error"] = std::string(to_string(e.code()));
  j["detail"] = e.what();
  return j;
}

void emit(const json& j) { std::printf("%s\n", j.dump(2).c_str()); }

// ---- invariants ----

int run_invariants(const CommonQuery& q, double s, double t) {
  const EigenvalueSelection sel = selection_from(q);
  const Branch branch = branch_from_string(q.branch_name);

  SolveOutcome out;
  switch (sel.tag) {
    case CaseTag::Regular:
      out = try_solve_regular(sel, CharVarPoint{s, t, branch}, q.tol);
      break;
    case CaseTag::SpecialPoint:
      out = try_solve_special_point(sel, q.tol);
      break;
    case CaseTag::SpecialLine:
      out = try_solve_special_line(sel, q.tol);
      break;
  }
  if (!out.ok()) {
    emit(solver_error_json(out));
    return exit_code_for(out.error);
  }

  RepresentationTriple rep = *out.triple;
  QuadrangleOutcome quad;
  if (sel.tag == CaseTag::SpecialPoint) {
    // The special-point solution leaves a gauge circle free; search it.
    const SpecialPointQuadrangle found = special_point_quadrangle(rep, q.tol);
    rep = found.rep;
    quad = found.outcome;
  } else {
    quad = try_quadrangle(rep, q.tol);
  }
  if (!quad.ok()) {
    json j;
    j["error"] = std::string(to_string(quad.error));
    j["detail"] = quad.detail;
    emit(j);
    return exit_code_for(quad.error);
  }

  json j;
  try {
    j = report_to_json(invariant_report(sel, *quad.data, rep, q.tol));
  } catch (const Error& e) {
    emit(error_json(e));
    return exit_code_for(e.code());
  }
  j["quadrangle_pass"] = quad.report.pass;
  j["min_slack"] = quad.report.min_slack;
  j["goldman"] = commutator_goldman(rep);
  emit(j);
  return 0;
}

// ---- scan / goldman ----

struct ScanConfig {
  CommonQuery q;
  std::string s_range = "0:4:200";
  std::string t_range = "0:4:200";
  bool auto_window = false;
  std::string out_pgm, out_csv, out_jsonl;
  int workers = 0;
  Budget budget;
};

void add_scan_flags(CLI::App* cmd, ScanConfig& cfg, bool with_artifacts) {
  add_query_flags(cmd, cfg.q);
  cmd->add_option("--s-range", cfg.s_range, "s window as lo:hi:count");
  cmd->add_option("--t-range", cfg.t_range, "t window as lo:hi:count");
  cmd->add_flag("--auto-extent", cfg.auto_window,
                "derive the window from the feasible region (count kept)");
  cmd->add_option("--out", cfg.out_pgm, "stage raster output path (PGM P2)");
  if (with_artifacts) {
    cmd->add_option("--csv", cfg.out_csv, "per-cell CSV output path");
    cmd->add_option("--jsonl", cfg.out_jsonl, "per-cell JSON-lines output path");
  }
  cmd->add_option("--workers", cfg.workers,
                  "worker threads (0 = TURNOVER_WORKERS or hardware)");
  cmd->add_option("--max-cells", cfg.budget.max_cells, "cell budget (0 = off)");
  cmd->add_option("--max-seconds", cfg.budget.max_seconds,
                  "wall-clock budget (0 = off)");
}

GridSpec grid_from(const ScanConfig& cfg, const EigenvalueSelection& sel) {
  const RangeFlag sr = parse_range(cfg.s_range, "--s-range");
  const RangeFlag tr = parse_range(cfg.t_range, "--t-range");
  if (cfg.auto_window) return auto_extent(sel, sr.n, tr.n);
  GridSpec grid;
  grid.s_min = sr.lo; grid.s_max = sr.hi; grid.ns = sr.n;
  grid.t_min = tr.lo; grid.t_max = tr.hi; grid.nt = tr.n;
  validate_grid(grid);
  return grid;
}

json scan_summary(const std::vector<CellResult>& cells, const GridSpec& grid) {
  long outside = 0, charvar = 0, pass = 0, goldman_neg = 0;
  for (const CellResult& cell : cells) {
    switch (cell.stage) {
      case CellStage::OutsideCharVar: ++outside; break;
      case CellStage::CharVar: ++charvar; break;
      case CellStage::QuadranglePass: ++pass; break;
    }
    if (cell.goldman_sign < 0) ++goldman_neg;
  }
  json j;
  j["grid"] = {{"s_min", grid.s_min}, {"s_max", grid.s_max},
               {"t_min", grid.t_min}, {"t_max", grid.t_max},
               {"ns", grid.ns},       {"nt", grid.nt}};
  j["cells"] = cells.size();
  j["outside"] = outside;
  j["charvar"] = charvar;
  j["pass"] = pass;
  j["goldman_negative"] = goldman_neg;
  return j;
}

int run_scan(const ScanConfig& cfg, bool goldman_raster) {
  const EigenvalueSelection sel = selection_from(cfg.q);
  const Branch branch = branch_from_string(cfg.q.branch_name);
  const GridSpec grid = grid_from(cfg, sel);
  const std::vector<CellResult> cells =
      scan_grid(sel, branch, grid, cfg.q.tol, cfg.budget, cfg.workers);

  json summary = scan_summary(cells, grid);
  if (!cfg.out_pgm.empty()) {
    const std::vector<int> codes = goldman_raster ? goldman_codes(cells, grid)
                                                  : raster_codes(cells, grid);
    write_text_file(cfg.out_pgm,
                    pgm_p2(grid.ns, grid.nt, goldman_raster ? 2 : 3, codes));
    summary["pgm"] = cfg.out_pgm;
  }
  if (!cfg.out_csv.empty()) {
    write_text_file(cfg.out_csv, scan_csv(cells));
    summary["csv"] = cfg.out_csv;
  }
  if (!cfg.out_jsonl.empty()) {
    write_text_file(cfg.out_jsonl, scan_jsonl(cells));
    summary["jsonl"] = cfg.out_jsonl;
  }
  emit(summary);
  return 0;
}

// ---- census ----

struct CensusConfig {
  std::string case_name = "regular";
  int n_max = 6;
  int grid = 64;
  std::string out_csv, out_jsonl;
  int workers = 0;
  double tol = kDefaultTol;
  Budget budget;
};

int run_census_cmd(const CensusConfig& cfg) {
  const CaseTag tag = case_from_string(cfg.case_name);
  const CensusResult result = run_census(tag, cfg.n_max, cfg.grid, cfg.grid,
                                         cfg.tol, cfg.budget, cfg.workers);
  json j;
  j["case"] = cfg.case_name;
  j["n_max"] = cfg.n_max;
  j["signatures_scanned"] = result.stats.signatures_scanned;
  j["selections_scanned"] = result.stats.selections_scanned;
  j["records"] = result.records.size();
  j["passing_triples"] = result.stats.passing_signatures.size();
  j["passing_groups_closure"] = result.stats.passing_closure.size();
  j["anomalies"] = result.stats.anomalies;
  j["consistency_pass"] = result.stats.consistency_pass;
  j["consistency_fail"] = result.stats.consistency_fail;
  j["max_mod2_residual"] = result.stats.max_mod2_residual;
  if (result.stats.any) {
    j["e_over_chi_min"] = result.stats.e_over_chi_min.str();
    j["e_over_chi_max"] = result.stats.e_over_chi_max.str();
  }
  if (!cfg.out_csv.empty()) {
    write_text_file(cfg.out_csv, census_csv(result.records));
    j["csv"] = cfg.out_csv;
  }
  if (!cfg.out_jsonl.empty()) {
    write_text_file(cfg.out_jsonl, census_jsonl(result.records));
    j["jsonl"] = cfg.out_jsonl;
  }
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "turnover: representations of hyperbolic turnover groups in PU(2,1) —\n"
      "discreteness certificates and disc-orbibundle invariants"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML config file");

  CommonQuery inv_q;
  double inv_s = 0.0, inv_t = 0.0;
  CLI::App* inv = app.add_subcommand(
      "invariants", "solve one character-variety point and print its report");
  inv->configurable();
  add_query_flags(inv, inv_q);
  inv->add_option("--s", inv_s, "s coordinate (regular case)");
  inv->add_option("--t", inv_t, "t coordinate (regular case)");

  ScanConfig scan_cfg;
  CLI::App* scan = app.add_subcommand(
      "scan", "raster a rectangle of the (s,t) plane for one selection");
  scan->configurable();
  add_scan_flags(scan, scan_cfg, /*with_artifacts=*/true);

  ScanConfig goldman_cfg;
  CLI::App* goldman = app.add_subcommand(
      "goldman", "raster the sign of the Goldman discriminant of tr [I1,I2]");
  goldman->configurable();
  add_scan_flags(goldman, goldman_cfg, /*with_artifacts=*/false);

  CensusConfig census_cfg;
  CLI::App* census = app.add_subcommand(
      "census", "sweep all signatures and selections of a case");
  census->configurable();
  census->add_option("--case", census_cfg.case_name,
                     "regular | special-point | special-line");
  census->add_option("--n-max", census_cfg.n_max, "largest cone order");
  census->add_option("--grid", census_cfg.grid,
                     "cells per axis for regular-case scans");
  census->add_option("--out", census_cfg.out_csv, "census CSV output path");
  census->add_option("--jsonl", census_cfg.out_jsonl,
                     "census JSON-lines output path");
  census->add_option("--workers", census_cfg.workers,
                     "worker threads (0 = TURNOVER_WORKERS or hardware)");
  census->add_option("--tol", census_cfg.tol, "numerical tolerance");
  census->add_option("--max-cells", census_cfg.budget.max_cells,
                     "cell budget (0 = off)");
  census->add_option("--max-seconds", census_cfg.budget.max_seconds,
                     "wall-clock budget (0 = off)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;  // help/version exit 0, usage errors 2
  }

  try {
    if (inv->parsed()) {
      if (case_from_string(inv_q.case_name) == CaseTag::Regular &&
          (inv->count("--s") == 0 || inv->count("--t") == 0))
        raise(Err::DegenerateInput,
              "--s and --t are required for the regular case");
      return run_invariants(inv_q, inv_s, inv_t);
    }
    if (scan->parsed()) return run_scan(scan_cfg, /*goldman_raster=*/false);
    if (goldman->parsed()) return run_scan(goldman_cfg, /*goldman_raster=*/true);
    if (census->parsed()) return run_census_cmd(census_cfg);
  } catch (const Error& e) {
    emit(error_json(e));
    return exit_code_for(e.code());
  }
  return 2;
}
