#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "turnover/invariants.hpp"

namespace turnover {

using json = nlohmann::json;

// Floats serialize with 17 significant digits (exact double round-trip),
// rationals as exact "p/q" strings.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Err::DegenerateInput, "cannot open for writing: " + path);
  out << body;
  if (!out) raise(Err::DegenerateInput, "short write: " + path);
}

// Plain-text PGM (P2).  `codes` is row-major with row 0 = TOP of the image;
// values must lie in [0, maxval].
inline std::string pgm_p2(int width, int height, int maxval,
                          const std::vector<int>& codes) {
  if (width <= 0 || height <= 0 ||
      codes.size() != static_cast<size_t>(width) * height)
    raise(Err::DegenerateInput, "pgm dimensions do not match data");
  std::string s = "P2\n" + std::to_string(width) + " " +
                  std::to_string(height) + "\n" + std::to_string(maxval) + "\n";
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (c) s += ' ';
      s += std::to_string(codes[static_cast<size_t>(r) * width + c]);
    }
    s += '\n';
  }
  return s;
}

// CSV with a documented header row; cells are pre-formatted strings.
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) {
  auto join = [](const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    return line;
  };
  std::string out = join(header) + "\n";
  for (const auto& row : rows) out += join(row) + "\n";
  return out;
}

inline json report_to_json(const InvariantReport& r) {
  json j;
  j["signature"] = {r.sig.n1, r.sig.n2, r.sig.n3};
  j["case"] = std::string(to_string(r.tag));
  j["branch"] = std::string(to_string(r.branch));
  j["s"] = r.s;
  j["t"] = r.t;
  j["chi"] = r.chi.str();
  j["l"] = {r.l1, r.l2, r.l3};
  j["f"] = r.f;
  j["e"] = r.e.str();
  j["e_over_chi"] = r.e_over_chi.str();
  j["tau"] = r.tau.str();
  j["e_cor"] = r.e_cor.str();
  j["tau_mod2_closed_exact"] = r.tau_mod2_closed_exact.str();
  j["tau_mod2_closed"] = r.tau_mod2_closed;
  j["tau_mod2_numeric"] = r.tau_mod2_numeric;
  j["consistency"] = r.consistency;
  j["consistency_numeric"] = r.consistency_numeric;
  return j;
}

inline CaseTag case_from_string(const std::string& s) {
  if (s == "regular") return CaseTag::Regular;
  if (s == "special-point") return CaseTag::SpecialPoint;
  if (s == "special-line") return CaseTag::SpecialLine;
  raise(Err::DegenerateInput, "unknown case tag: " + s);
}

inline Branch branch_from_string(const std::string& s) {
  if (s == "plus") return Branch::Plus;
  if (s == "minus") return Branch::Minus;
  raise(Err::DegenerateInput, "unknown branch: " + s);
}

inline InvariantReport report_from_json(const json& j) {
  InvariantReport r;
  r.sig = TurnoverSignature{j["signature"][0], j["signature"][1], j["signature"][2]};
  r.tag = case_from_string(j["case"]);
  r.branch = branch_from_string(j["branch"]);
  r.s = j["s"];
  r.t = j["t"];
  r.chi = Rational::parse(j["chi"]);
  r.l1 = j["l"][0];
  r.l2 = j["l"][1];
  r.l3 = j["l"][2];
  r.f = j["f"];
  r.e = Rational::parse(j["e"]);
  r.e_over_chi = Rational::parse(j["e_over_chi"]);
  r.tau = Rational::parse(j["tau"]);
  r.e_cor = Rational::parse(j["e_cor"]);
  r.tau_mod2_closed_exact = Rational::parse(j["tau_mod2_closed_exact"]);
  r.tau_mod2_closed = j["tau_mod2_closed"];
  r.tau_mod2_numeric = j["tau_mod2_numeric"];
  r.consistency = j["consistency"];
  r.consistency_numeric = j["consistency_numeric"];
  return r;
}

}  // namespace turnover
