#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "turnover/io.hpp"

namespace turnover {

struct GridSpec {
  double s_min = 0.0, s_max = 4.0, t_min = 0.0, t_max = 4.0;
  int ns = 200, nt = 200;

  // Cell centers; the half-cell offset keeps s = 0 and t = 0 (the
  // non-generic boundary strata) out of the sample set.
  double s_center(int is) const { return s_min + (is + 0.5) * (s_max - s_min) / ns; }
  double t_center(int it) const { return t_min + (it + 0.5) * (t_max - t_min) / nt; }
};

inline void validate_grid(const GridSpec& g) {
  if (g.ns < 1 || g.nt < 1 || g.s_min < 0.0 || g.t_min < 0.0 ||
      !(g.s_max > g.s_min) || !(g.t_max > g.t_min))
    raise(Err::DegenerateInput, "invalid grid specification");
}

enum class CellStage { OutsideCharVar = 0, CharVar = 1, QuadranglePass = 2 };

struct CellResult {
  int is = 0, it = 0;
  double s = 0.0, t = 0.0;
  CellStage stage = CellStage::OutsideCharVar;
  double goldman = 0.0;   // G(s,t) = Goldman discriminant of tr [I1, I2]
  int goldman_sign = 0;   // -1 / +1 when the triple exists, 0 otherwise
  double min_margin = 0.0;
  Err note = Err::None;   // anomaly on the invariant path of a passing cell
  std::optional<InvariantReport> invariants;  // iff QuadranglePass && no note
};

// One grid cell, evaluated through the full pipeline:
// C1 margins -> solve -> Goldman sign -> quadrangle -> invariants.
inline CellResult evaluate_cell(const EigenvalueSelection& sel,
                                const RegularSystem& sys, Branch branch,
                                int is, int it, double s, double t,
                                double tol = kDefaultTol) {
  CellResult cell;
  cell.is = is; cell.it = it; cell.s = s; cell.t = t;
  const C1Margins m = c1_margins(sys, s, t);
  cell.min_margin = std::min({m.m1, m.m2, m.m3});
  SolveOutcome sol = try_solve_regular(sel, CharVarPoint{s, t, branch});
  if (!sol.ok()) {
    if (sol.error == Err::DeltaNegative) cell.min_margin = sol.delta;
    return cell;
  }
  cell.stage = CellStage::CharVar;
  const RepresentationTriple& rep = *sol.triple;
  cell.goldman = commutator_goldman(rep);
  cell.goldman_sign = cell.goldman < 0.0 ? -1 : 1;
  QuadrangleOutcome q = try_quadrangle(rep, tol);
  if (q.ok()) cell.min_margin = q.report.min_slack;
  if (!q.pass()) return cell;
  cell.stage = CellStage::QuadranglePass;
  try {
    cell.invariants = invariant_report(sel, *q.data, rep, tol);
  } catch (const Error& e) {
    // Reportable finding (e.g. non-elliptic holonomy), not a crash.
    cell.note = e.code();
    cell.invariants.reset();
  }
  return cell;
}

struct Budget {
  std::uint64_t max_cells = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
};

inline int worker_count_from_env() {
  if (const char* env = std::getenv("TURNOVER_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Parallel map over cells.  Output is indexed by cell (it * ns + is), so the
// result is byte-identical for any worker count.
inline std::vector<CellResult> scan_grid(const EigenvalueSelection& sel,
                                         Branch branch, const GridSpec& grid,
                                         double tol = kDefaultTol,
                                         const Budget& budget = {},
                                         int workers = 0) {
  validate_grid(grid);
  const std::uint64_t total =
      static_cast<std::uint64_t>(grid.ns) * static_cast<std::uint64_t>(grid.nt);
  if (budget.max_cells && total > budget.max_cells)
    raise(Err::BudgetExceeded, "grid has " + std::to_string(total) +
                                   " cells, budget allows " +
                                   std::to_string(budget.max_cells));
  const RegularSystem sys = regular_system(sel);
  std::vector<CellResult> out(total);
  int nworkers = workers > 0 ? workers : worker_count_from_env();
  nworkers = std::max(1, std::min<int>(nworkers, static_cast<int>(
                                                     std::min<std::uint64_t>(total, 64))));
  const auto start = std::chrono::steady_clock::now();
  std::atomic<bool> timed_out{false};
  auto work = [&](int w) {
    for (std::uint64_t idx = w; idx < total; idx += nworkers) {
      if (budget.max_seconds > 0.0 && (idx % 256 == static_cast<std::uint64_t>(w))) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > budget.max_seconds) {
          timed_out.store(true);
          return;
        }
      }
      const int is = static_cast<int>(idx % grid.ns);
      const int it = static_cast<int>(idx / grid.ns);
      out[idx] = evaluate_cell(sel, sys, branch, is, it, grid.s_center(is),
                               grid.t_center(it), tol);
    }
  };
  if (nworkers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (timed_out.load())
    raise(Err::BudgetExceeded, "scan exceeded the wall-clock budget");
  return out;
}

// Raster code per cell: 0 outside, 1 on the character variety (G >= 0),
// 2 quadrangle passes (G >= 0), 3 on the character variety with G < 0.
// On a certified-discrete (pass) cell the commutator trace varies
// continuously, so a regular elliptic commutator of finite order is only
// possible on a null set: pass cells carry G >= 0 in practice, and the
// Goldman-negative stratum is a feature of the non-certified part of the
// variety.  Folding every G < 0 cell into code 3 renders all three strata
// (variety, pass subregion, Goldman-negative subregion) in a single raster.
inline int palette_code(const CellResult& cell) {
  if (cell.stage == CellStage::OutsideCharVar) return 0;
  if (cell.goldman < 0.0) return 3;
  return cell.stage == CellStage::QuadranglePass ? 2 : 1;
}

// Row-major raster with the TOP row at t = t_max.
inline std::vector<int> raster_codes(const std::vector<CellResult>& cells,
                                     const GridSpec& grid) {
  std::vector<int> codes(cells.size(), 0);
  for (const CellResult& cell : cells) {
    const int row = grid.nt - 1 - cell.it;
    codes[static_cast<size_t>(row) * grid.ns + cell.is] = palette_code(cell);
  }
  return codes;
}

// Goldman-sign raster (independent of quadrangle status): 0 outside CharVar,
// 1 where G >= 0, 2 where G < 0.
inline std::vector<int> goldman_codes(const std::vector<CellResult>& cells,
                                      const GridSpec& grid) {
  std::vector<int> codes(cells.size(), 0);
  for (const CellResult& cell : cells) {
    const int row = grid.nt - 1 - cell.it;
    int code = 0;
    if (cell.stage != CellStage::OutsideCharVar)
      code = cell.goldman < 0.0 ? 2 : 1;
    codes[static_cast<size_t>(row) * grid.ns + cell.is] = code;
  }
  return codes;
}

// Window selection for a regular selection, in two passes.
//
// Expansion: enlarge [0,L]x[0,L] by doubling until the outer probe ring no
// longer meets the character variety (C1 margins positive and Delta >= 0),
// so the window encloses the bounded component.  The variety often has an
// unbounded tail that no window can enclose: if the ring is still feasible
// at the cap, fall back to the default window — the quadrangle physics
// lives at unit scale near the origin.
//
// Tightening: the variety is frequently a small island inside the expanded
// window; probe the window on a fine grid of the cheap feasibility test and
// shrink to the padded bounding box of the feasible probes, so the ns x nt
// scan cells concentrate on the variety instead of empty space.
inline GridSpec auto_extent(const EigenvalueSelection& sel, int ns = 200,
                            int nt = 200, double initial = 4.0,
                            double cap = 64.0) {
  const RegularSystem sys = regular_system(sel);
  auto feasible = [&](double s, double t) {
    const C1Margins m = c1_margins(sys, s, t);
    return m.all_positive() && c2_delta(m, s, t) >= 0.0;
  };
  const int G = 128;
  auto ring_feasible = [&](double L) {
    for (int i = 0; i < G; ++i)
      for (int j = 0; j < G; ++j) {
        if (i != 0 && i != G - 1 && j != 0 && j != G - 1) continue;
        if (feasible((i + 0.5) * L / G, (j + 0.5) * L / G)) return true;
      }
    return false;
  };
  double L = initial;
  while (L < cap && ring_feasible(L)) L *= 2.0;
  if (L >= cap && ring_feasible(L)) L = initial;

  const int P = std::max({128, ns, nt});
  const double ds = L / P, dt = L / P;
  int i_lo = P, i_hi = -1, j_lo = P, j_hi = -1;
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < P; ++j)
      if (feasible((i + 0.5) * ds, (j + 0.5) * dt)) {
        i_lo = std::min(i_lo, i); i_hi = std::max(i_hi, i);
        j_lo = std::min(j_lo, j); j_hi = std::max(j_hi, j);
      }
  GridSpec grid;
  grid.ns = ns; grid.nt = nt;
  if (i_hi < 0) {  // no probe hit: keep the whole window
    grid.s_min = 0.0; grid.t_min = 0.0;
    grid.s_max = L; grid.t_max = L;
    return grid;
  }
  grid.s_min = std::max(0.0, (i_lo - 1) * ds);
  grid.s_max = std::min(L, (i_hi + 2) * ds);
  grid.t_min = std::max(0.0, (j_lo - 1) * dt);
  grid.t_max = std::min(L, (j_hi + 2) * dt);
  return grid;
}

struct CensusRecord {
  TurnoverSignature sig;
  CaseTag tag = CaseTag::Regular;
  int l1 = 0, l2 = 0, l3 = 0;
  Branch branch = Branch::Plus;
  int rep_is = -1, rep_it = -1;
  double rep_s = 0.0, rep_t = 0.0;
  long outside_count = 0, charvar_count = 0, pass_count = 0;
  InvariantReport invariants;  // of the representative (first passing) cell
  Rational e_min, e_max;       // over passing cells
};

struct CensusStats {
  long signatures_scanned = 0;
  long selections_scanned = 0;
  long anomalies = 0;  // passing cells whose invariant path errored
  std::map<Rational, long> e_over_chi_counts;
  bool any = false;
  Rational e_over_chi_min, e_over_chi_max;
  long consistency_pass = 0, consistency_fail = 0;
  double max_mod2_residual = 0.0;
  // Histogram of the mod-2 residual between tau = 2(e+chi)/3 and the closed
  // form: < 1e-9, < 1e-6, < 1e-3, >= 1e-3.
  long residual_hist[4] = {0, 0, 0, 0};
  std::vector<TurnoverSignature> passing_signatures;  // distinct, sorted
  // Permutation closure of passing_signatures: the turnover group of a
  // signature is canonically isomorphic to that of any reordering (cyclic
  // relabelings preserve the product relation, and reversal corresponds to
  // inverting the generators), so a certificate for one ordering certifies a
  // discrete representation for every ordering of the same orders.
  std::vector<TurnoverSignature> passing_closure;
};

inline std::vector<TurnoverSignature> signature_closure(
    const std::vector<TurnoverSignature>& sigs) {
  std::set<std::array<int, 3>> seen;
  for (const TurnoverSignature& s : sigs) {
    std::array<int, 3> a{s.n1, s.n2, s.n3};
    std::sort(a.begin(), a.end());
    do seen.insert(a);
    while (std::next_permutation(a.begin(), a.end()));
  }
  std::vector<TurnoverSignature> out;
  out.reserve(seen.size());
  for (const auto& a : seen) out.push_back({a[0], a[1], a[2]});
  return out;  // std::set iteration order is already lexicographic
}

namespace detail {

inline void stats_absorb(CensusStats& stats, const InvariantReport& r) {
  stats.e_over_chi_counts[r.e_over_chi] += 1;
  if (!stats.any) {
    stats.any = true;
    stats.e_over_chi_min = stats.e_over_chi_max = r.e_over_chi;
  } else {
    if (r.e_over_chi < stats.e_over_chi_min) stats.e_over_chi_min = r.e_over_chi;
    if (stats.e_over_chi_max < r.e_over_chi) stats.e_over_chi_max = r.e_over_chi;
  }
  (r.consistency ? stats.consistency_pass : stats.consistency_fail) += 1;
  const double d = detail::mod2_distance(r.tau.to_double(), r.tau_mod2_closed);
  stats.max_mod2_residual = std::max(stats.max_mod2_residual, d);
  const int bucket = d < 1e-9 ? 0 : d < 1e-6 ? 1 : d < 1e-3 ? 2 : 3;
  stats.residual_hist[bucket] += 1;
}

inline void note_passing_signature(CensusStats& stats, const TurnoverSignature& sig) {
  for (const auto& s : stats.passing_signatures)
    if (s.n1 == sig.n1 && s.n2 == sig.n2 && s.n3 == sig.n3) return;
  stats.passing_signatures.push_back(sig);
}

// Fold the pass cells of one scanned selection into a CensusRecord.
inline std::optional<CensusRecord> record_from_cells(
    const EigenvalueSelection& sel, Branch branch,
    const std::vector<CellResult>& cells, CensusStats& stats) {
  CensusRecord rec;
  rec.sig = sel.sig;
  rec.tag = sel.tag;
  rec.l1 = sel.l1; rec.l2 = sel.l2; rec.l3 = sel.l3;
  rec.branch = branch;
  bool have_rep = false;
  for (const CellResult& cell : cells) {
    switch (cell.stage) {
      case CellStage::OutsideCharVar: rec.outside_count++; break;
      case CellStage::CharVar: rec.charvar_count++; break;
      case CellStage::QuadranglePass: rec.pass_count++; break;
    }
    if (cell.stage != CellStage::QuadranglePass) continue;
    if (!cell.invariants) {
      stats.anomalies++;
      continue;
    }
    stats_absorb(stats, *cell.invariants);
    if (!have_rep) {
      have_rep = true;
      rec.rep_is = cell.is; rec.rep_it = cell.it;
      rec.rep_s = cell.s; rec.rep_t = cell.t;
      rec.invariants = *cell.invariants;
      rec.e_min = rec.e_max = cell.invariants->e;
    } else {
      if (cell.invariants->e < rec.e_min) rec.e_min = cell.invariants->e;
      if (rec.e_max < cell.invariants->e) rec.e_max = cell.invariants->e;
    }
  }
  if (!have_rep) return std::nullopt;
  return rec;
}

}  // namespace detail

struct CensusResult {
  std::vector<CensusRecord> records;
  CensusStats stats;
};

// Signature sweep bounds per case: cone orders run up to n_max; the middle
// order may drop to 2 in the special cases (the alpha and gamma triples must
// stay regular, so n1, n3 >= 3 always).
inline std::vector<TurnoverSignature> census_signatures(CaseTag tag, int n_max) {
  std::vector<TurnoverSignature> sigs;
  const int n2_lo = tag == CaseTag::Regular ? 3 : 2;
  for (int n1 = 3; n1 <= n_max; ++n1)
    for (int n2 = n2_lo; n2 <= n_max; ++n2)
      for (int n3 = 3; n3 <= n_max; ++n3) {
        TurnoverSignature sig{n1, n2, n3};
        if (sig.chi() < Rational(0)) sigs.push_back(sig);
      }
  return sigs;
}

// Census over all signatures and selections of a case.  Regular selections
// scan an auto-extent grid on both branches; the rigid special cases solve a
// single point per selection.  One record per (signature, selection, branch)
// with a nonempty pass set.
inline CensusResult run_census(CaseTag tag, int n_max, int grid_ns = 64,
                               int grid_nt = 64, double tol = kDefaultTol,
                               const Budget& budget = {}, int workers = 0) {
  CensusResult result;
  const auto start = std::chrono::steady_clock::now();
  auto check_wall = [&]() {
    if (budget.max_seconds <= 0.0) return;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > budget.max_seconds)
      raise(Err::BudgetExceeded, "census exceeded the wall-clock budget");
  };
  for (const TurnoverSignature& sig : census_signatures(tag, n_max)) {
    result.stats.signatures_scanned++;
    std::vector<EigenvalueSelection> sels;
    try {
      sels = enumerate_selections(sig, tag);
    } catch (const Error& e) {
      if (e.code() == Err::EmptyEnumeration) continue;
      throw;
    }
    for (const EigenvalueSelection& sel : sels) {
      result.stats.selections_scanned++;
      check_wall();
      if (tag == CaseTag::Regular) {
        const GridSpec grid = auto_extent(sel, grid_ns, grid_nt);
        for (Branch branch : {Branch::Plus, Branch::Minus}) {
          const std::vector<CellResult> cells =
              scan_grid(sel, branch, grid, tol, budget, workers);
          auto rec = detail::record_from_cells(sel, branch, cells, result.stats);
          if (rec) {
            detail::note_passing_signature(result.stats, sig);
            result.records.push_back(std::move(*rec));
          }
        }
      } else {
        SolveOutcome sol = tag == CaseTag::SpecialPoint
                               ? try_solve_special_point(sel)
                               : try_solve_special_line(sel);
        if (!sol.ok()) continue;
        QuadrangleOutcome out;
        RepresentationTriple rep = *sol.triple;
        if (tag == CaseTag::SpecialPoint) {
          SpecialPointQuadrangle found = special_point_quadrangle(rep, tol);
          if (!found.found) continue;
          rep = found.rep;
          out = found.outcome;
        } else {
          out = try_quadrangle(rep, tol);
          if (!out.pass()) continue;
        }
        CensusRecord rec;
        rec.sig = sig;
        rec.tag = tag;
        rec.l1 = sel.l1; rec.l2 = sel.l2; rec.l3 = sel.l3;
        rec.branch = Branch::Plus;
        rec.pass_count = 1;
        try {
          rec.invariants = invariant_report(sel, *out.data, rep, tol);
        } catch (const Error&) {
          result.stats.anomalies++;
          continue;
        }
        rec.e_min = rec.e_max = rec.invariants.e;
        detail::stats_absorb(result.stats, rec.invariants);
        detail::note_passing_signature(result.stats, sig);
        result.records.push_back(std::move(rec));
      }
    }
  }
  std::sort(result.stats.passing_signatures.begin(),
            result.stats.passing_signatures.end(),
            [](const TurnoverSignature& a, const TurnoverSignature& b) {
              return std::tie(a.n1, a.n2, a.n3) < std::tie(b.n1, b.n2, b.n3);
            });
  result.stats.passing_closure =
      signature_closure(result.stats.passing_signatures);
  return result;
}

// ---- serialization ----

inline std::vector<std::string> cell_csv_header() {
  return {"is", "it", "s", "t", "stage", "goldman", "min_margin",
          "f", "e", "e_over_chi", "tau", "tau_mod2_closed",
          "tau_mod2_numeric", "consistency", "note"};
}

inline std::vector<std::string> cell_csv_row(const CellResult& cell) {
  std::vector<std::string> row = {
      std::to_string(cell.is),
      std::to_string(cell.it),
      format_double(cell.s),
      format_double(cell.t),
      std::to_string(static_cast<int>(cell.stage)),
      cell.goldman_sign == 0 ? std::string() : format_double(cell.goldman),
      format_double(cell.min_margin)};
  if (cell.invariants) {
    const InvariantReport& r = *cell.invariants;
    row.push_back(std::to_string(r.f));
    row.push_back(r.e.str());
    row.push_back(r.e_over_chi.str());
    row.push_back(r.tau.str());
    row.push_back(format_double(r.tau_mod2_closed));
    row.push_back(format_double(r.tau_mod2_numeric));
    row.push_back(r.consistency && r.consistency_numeric ? "1" : "0");
  } else {
    for (int i = 0; i < 7; ++i) row.push_back("");
  }
  row.push_back(cell.note == Err::None ? "" : std::string(to_string(cell.note)));
  return row;
}

inline json cell_to_json(const CellResult& cell) {
  json j;
  j["is"] = cell.is;
  j["it"] = cell.it;
  j["s"] = cell.s;
  j["t"] = cell.t;
  j["stage"] = static_cast<int>(cell.stage);
  if (cell.goldman_sign != 0) {
    j["goldman"] = cell.goldman;
    j["goldman_sign"] = cell.goldman_sign;
  }
  j["min_margin"] = cell.min_margin;
  if (cell.note != Err::None) j["note"] = std::string(to_string(cell.note));
  if (cell.invariants) j["invariants"] = report_to_json(*cell.invariants);
  return j;
}

inline std::vector<std::string> census_csv_header() {
  return {"n1", "n2", "n3", "case", "l1", "l2", "l3", "branch",
          "rep_is", "rep_it", "rep_s", "rep_t",
          "outside_count", "charvar_count", "pass_count",
          "f", "e", "e_over_chi", "tau", "tau_mod2_closed",
          "tau_mod2_numeric", "consistency", "e_min", "e_max"};
}

inline std::vector<std::string> census_csv_row(const CensusRecord& rec) {
  const InvariantReport& r = rec.invariants;
  return {std::to_string(rec.sig.n1),
          std::to_string(rec.sig.n2),
          std::to_string(rec.sig.n3),
          std::string(to_string(rec.tag)),
          std::to_string(rec.l1),
          std::to_string(rec.l2),
          std::to_string(rec.l3),
          std::string(to_string(rec.branch)),
          std::to_string(rec.rep_is),
          std::to_string(rec.rep_it),
          format_double(rec.rep_s),
          format_double(rec.rep_t),
          std::to_string(rec.outside_count),
          std::to_string(rec.charvar_count),
          std::to_string(rec.pass_count),
          std::to_string(r.f),
          r.e.str(),
          r.e_over_chi.str(),
          r.tau.str(),
          format_double(r.tau_mod2_closed),
          format_double(r.tau_mod2_numeric),
          r.consistency && r.consistency_numeric ? "1" : "0",
          rec.e_min.str(),
          rec.e_max.str()};
}

inline json record_to_json(const CensusRecord& rec) {
  json j;
  j["signature"] = {rec.sig.n1, rec.sig.n2, rec.sig.n3};
  j["case"] = std::string(to_string(rec.tag));
  j["l"] = {rec.l1, rec.l2, rec.l3};
  j["branch"] = std::string(to_string(rec.branch));
  j["rep_cell"] = {rec.rep_is, rec.rep_it};
  j["rep_point"] = {rec.rep_s, rec.rep_t};
  j["counts"] = {{"outside", rec.outside_count},
                 {"charvar", rec.charvar_count},
                 {"pass", rec.pass_count}};
  j["invariants"] = report_to_json(rec.invariants);
  j["e_min"] = rec.e_min.str();
  j["e_max"] = rec.e_max.str();
  return j;
}

inline std::string scan_csv(const std::vector<CellResult>& cells) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(cells.size());
  for (const auto& cell : cells) rows.push_back(cell_csv_row(cell));
  return csv_table(cell_csv_header(), rows);
}

inline std::string scan_jsonl(const std::vector<CellResult>& cells) {
  std::string out;
  for (const auto& cell : cells) out += cell_to_json(cell).dump() + "\n";
  return out;
}

inline std::string census_csv(const std::vector<CensusRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) rows.push_back(census_csv_row(rec));
  return csv_table(census_csv_header(), rows);
}

inline std::string census_jsonl(const std::vector<CensusRecord>& records) {
  std::string out;
  for (const auto& rec : records) out += record_to_json(rec).dump() + "\n";
  return out;
}

}  // namespace turnover
