#pragma once

#include "qcdesign/regsel.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qcdesign {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// CSV designs: one run per line, entries 1 or -1 separated by commas.
// ---------------------------------------------------------------------------

inline void write_design_csv(std::ostream& os, const SignMatrix& D, bool header = false) {
  if (header) {
    for (int c = 0; c < D.factors(); ++c) os << (c ? "," : "") << "f" << c + 1;
    os << "\n";
  }
  for (int r = 0; r < D.runs(); ++r) {
    for (int c = 0; c < D.factors(); ++c) os << (c ? "," : "") << D.entry(r, c);
    os << "\n";
  }
}

/// Parse a +-1 matrix. A leading header line of column names is skipped.
/// Errors carry one-based line numbers. The result is a generic matrix: no
/// structure is assumed, so pattern evaluation revalidates invariance.
inline SignMatrix read_design_csv(std::istream& is) {
  std::vector<std::vector<int>> rows;
  std::string line;
  long long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;
    std::vector<int> row;
    std::stringstream ss(line);
    std::string cell;
    bool header = false;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      if (cell == "1" || cell == "+1") {
        row.push_back(1);
      } else if (cell == "-1") {
        row.push_back(-1);
      } else if (rows.empty() && row.empty()) {
        header = true;  // first line, first cell is not a sign: column names
        break;
      } else {
        throw std::invalid_argument("design csv line " + std::to_string(line_no) + ": entry '" + cell +
                                    "' is not 1 or -1");
      }
    }
    if (header) continue;
    if (row.empty())
      throw std::invalid_argument("design csv line " + std::to_string(line_no) + ": no entries");
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("design csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(rows.front().size()) + " entries, found " +
                                  std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("design csv: no runs found");
  return SignMatrix::build(
      static_cast<int>(rows.size()), static_cast<int>(rows.front().size()),
      [&](int r, int c) { return rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; });
}

inline SignMatrix read_design_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open design csv: " + path);
  return read_design_csv(in);
}

/// Write a whole file atomically: temp file in the same directory, then
/// rename over the target.
inline void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// JSON views
// ---------------------------------------------------------------------------

/// Exact pattern as reduced fraction pairs ["num","den"], k = 0..k_max.
inline json wlp_json(const Wlp& w) {
  json terms = json::array();
  for (int k = 0; k <= w.k_max(); ++k) {
    auto [num, den] = w.term(k);
    terms.push_back(json::array({num.str(), den.str()}));
  }
  return json{{"runs", w.runs}, {"factors", w.factors}, {"A", std::move(terms)}};
}

// ---------------------------------------------------------------------------
// Design records: a self-describing JSON document holding the regime, the
// selection, the generator and the exact pattern. Round trips byte for byte.
// ---------------------------------------------------------------------------

struct DesignRecord {
  std::string version;
  int n = 0;
  long long runs = 0;
  int factors = 0;
  bool odd = false;
  bool halved = false;
  std::vector<std::string> b_columns;          // selection tokens, possibly empty
  std::vector<std::string> complement;         // unselected pool columns
  std::optional<std::string> odd_role;         // appended complement member
  std::vector<std::string> generator_columns;  // as constructed, appended last
  std::vector<std::pair<std::string, std::string>> wlp;         // reduced A_k fractions
  std::optional<std::pair<std::string, std::string>> resolution;  // nullopt: unbounded

  friend bool operator==(const DesignRecord&, const DesignRecord&) = default;
};

inline std::string record_filename(const DesignRecord& rec) {
  return "qc_n" + std::to_string(rec.n) + "_N" + std::to_string(rec.runs) + "_q" +
         std::to_string(rec.factors) + ".json";
}

inline DesignRecord make_record(const MaDesign& ma) {
  DesignRecord rec;
  rec.version = version_string;
  rec.n = ma.regime.n;
  rec.runs = ma.regime.runs;
  rec.factors = ma.regime.q;
  rec.odd = ma.regime.odd;
  rec.halved = ma.regime.half;
  if (ma.selection) rec.b_columns = b_tokens(ma.selection->b);
  for (const auto& g : ma.sbar.vectors) rec.complement.push_back(g.str());
  if (ma.sbar.odd_role) rec.odd_role = ma.sbar.odd_role->str();
  for (const auto& g : ma.G.columns) rec.generator_columns.push_back(g.str());
  for (int k = 0; k <= ma.wlp.k_max(); ++k) {
    auto [num, den] = ma.wlp.term(k);
    rec.wlp.emplace_back(num.str(), den.str());
  }
  const Resolution res = resolution(ma.D);
  if (!res.unbounded) {
    const Frac val = res.value();
    rec.resolution = {std::to_string(val.num), std::to_string(val.den)};
  }
  return rec;
}

inline json record_json(const DesignRecord& rec) {
  json j;
  j["format"] = "qcdesign-record";
  j["version"] = rec.version;
  j["n"] = rec.n;
  j["runs"] = rec.runs;
  j["factors"] = rec.factors;
  j["parity"] = rec.odd ? "odd" : "even";
  j["halved"] = rec.halved;
  j["b_columns"] = rec.b_columns;
  j["complement"] = rec.complement;
  j["odd_role"] = rec.odd_role ? json(*rec.odd_role) : json(nullptr);
  j["generator_columns"] = rec.generator_columns;
  json terms = json::array();
  for (const auto& [num, den] : rec.wlp) terms.push_back(json::array({num, den}));
  j["wlp"] = std::move(terms);
  j["resolution"] =
      rec.resolution ? json(json::array({rec.resolution->first, rec.resolution->second})) : json("unbounded");
  return j;
}

inline std::string record_text(const DesignRecord& rec) { return record_json(rec).dump(2) + "\n"; }

namespace detail {
inline const json& record_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("record: missing field '") + key + "'");
  return *it;
}
}  // namespace detail

inline DesignRecord parse_record(const json& j) {
  using detail::record_field;
  if (record_field(j, "format") != "qcdesign-record")
    throw std::invalid_argument("record: unrecognized format tag");
  DesignRecord rec;
  rec.version = record_field(j, "version").get<std::string>();
  rec.n = record_field(j, "n").get<int>();
  rec.runs = record_field(j, "runs").get<long long>();
  rec.factors = record_field(j, "factors").get<int>();
  const std::string parity = record_field(j, "parity").get<std::string>();
  if (parity != "even" && parity != "odd")
    throw std::invalid_argument("record: parity must be 'even' or 'odd'");
  rec.odd = parity == "odd";
  rec.halved = record_field(j, "halved").get<bool>();
  rec.b_columns = record_field(j, "b_columns").get<std::vector<std::string>>();
  rec.complement = record_field(j, "complement").get<std::vector<std::string>>();
  const json& role = record_field(j, "odd_role");
  if (!role.is_null()) rec.odd_role = role.get<std::string>();
  rec.generator_columns = record_field(j, "generator_columns").get<std::vector<std::string>>();
  for (const json& t : record_field(j, "wlp")) {
    if (!t.is_array() || t.size() != 2)
      throw std::invalid_argument("record: each wlp term must be a [num, den] pair");
    rec.wlp.emplace_back(t[0].get<std::string>(), t[1].get<std::string>());
  }
  const json& res = record_field(j, "resolution");
  if (res.is_string()) {
    if (res.get<std::string>() != "unbounded")
      throw std::invalid_argument("record: resolution must be a pair or 'unbounded'");
  } else {
    if (!res.is_array() || res.size() != 2)
      throw std::invalid_argument("record: resolution must be a pair or 'unbounded'");
    rec.resolution = {res[0].get<std::string>(), res[1].get<std::string>()};
  }
  return rec;
}

inline DesignRecord read_record_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open record: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("record " + path + ": " + e.what());
  }
  return parse_record(j);
}

/// Recompute everything a record claims from its generator and compare.
/// Returns an error message, or nothing when the record checks out.
inline std::optional<std::string> verify_record(const DesignRecord& rec) {
  try {
    if (rec.n < 2) return "dimension below 2";
    GeneratorMatrix G;
    G.n = rec.n;
    G.odd = rec.odd;
    for (const auto& s : rec.generator_columns) G.columns.push_back(Z4Vector::parse(s));
    for (const auto& g : G.columns)
      if (g.size() != rec.n) return "generator column " + g.str() + " has the wrong dimension";
    const SignMatrix full = rec.odd ? construct_odd(G) : construct_even(G);
    const SignMatrix D = rec.halved ? halve(full, G) : full;
    if (D.runs() != rec.runs)
      return "stored runs " + std::to_string(rec.runs) + " != constructed " + std::to_string(D.runs());
    if (D.factors() != rec.factors)
      return "stored factors " + std::to_string(rec.factors) + " != constructed " +
             std::to_string(D.factors());
    const Wlp w = wlp_distance(D);
    if (static_cast<int>(rec.wlp.size()) != w.k_max() + 1)
      return "stored pattern has " + std::to_string(rec.wlp.size()) + " terms, expected " +
             std::to_string(w.k_max() + 1);
    for (int k = 0; k <= w.k_max(); ++k) {
      auto [num, den] = w.term(k);
      const auto& [sn, sd] = rec.wlp[static_cast<std::size_t>(k)];
      if (sn != num.str() || sd != den.str())
        return "A_" + std::to_string(k) + " stored as " + sn + "/" + sd + ", recomputed " + num.str() +
               "/" + den.str();
    }
    const Resolution res = resolution(D);
    if (res.unbounded != !rec.resolution) return "resolution boundedness mismatch";
    if (!res.unbounded) {
      const Frac val = res.value();
      if (rec.resolution->first != std::to_string(val.num) ||
          rec.resolution->second != std::to_string(val.den))
        return "resolution stored as " + rec.resolution->first + "/" + rec.resolution->second +
               ", recomputed " + val.str();
    }
    // The complement must partition the pool together with the paired
    // generator columns, and the appended column must come from it.
    const ReferenceSet ref = enumerate_reference(rec.n, rec.halved ? RefKind::last_even : RefKind::full);
    std::vector<Z4Vector> base = G.columns;
    if (rec.odd) base.pop_back();
    const ComplementSet sbar = complement(base, ref);
    std::vector<std::string> expect;
    for (const auto& g : sbar.vectors) expect.push_back(g.str());
    if (expect != rec.complement) return "stored complement does not match the pool difference";
    if (rec.odd) {
      if (!rec.odd_role) return "odd record lacks its appended complement member";
      if (*rec.odd_role != G.columns.back().str())
        return "appended column does not match the recorded complement member";
      if (!sbar.contains(Z4Vector::parse(*rec.odd_role)))
        return "appended column is not an unselected pool member";
    } else if (rec.odd_role) {
      return "even record carries an appended complement member";
    }
    return std::nullopt;
  } catch (const std::exception& e) {
    return std::string("verification threw: ") + e.what();
  }
}

/// Metadata sidecar describing how a saved CSV design was constructed.
inline json design_meta_json(const MaDesign& ma) {
  json j;
  j["n"] = ma.regime.n;
  j["runs"] = ma.regime.runs;
  j["factors"] = ma.regime.q;
  j["parity"] = ma.regime.odd ? "odd" : "even";
  j["halved"] = ma.regime.half;
  j["reference_size"] = ma.regime.v;
  j["deficiency"] = ma.regime.deficiency;
  json cols = json::array();
  for (const auto& g : ma.G.columns) cols.push_back(g.str());
  j["generator_columns"] = std::move(cols);
  return j;
}

}  // namespace qcdesign
