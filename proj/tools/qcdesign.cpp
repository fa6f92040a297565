// Command-line front end: pool listing, design construction, pattern
// evaluation, self-verification, and the selection catalog.
//
// Exit codes: 0 success, 2 input/regime validation failure, 3 internal
// consistency failure.
#include <qcdesign/qcdesign.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qcdesign;

namespace {

std::string kind_name(RefKind kind) { return kind == RefKind::full ? "full" : "last-even"; }

std::string bracketed_tokens(const BinaryMatrix& B) {
  std::string s = "[";
  for (std::size_t i = 0; i < B.cols.size(); ++i) {
    if (i) s += ' ';
    s += b_token(B.cols[i]);
  }
  return s + "]";
}

std::string key_str(const std::vector<BigInt>& key) {
  std::string s = "(";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += ", ";
    s += key[i].str();
  }
  return s + ")";
}

std::string vector_list(const std::vector<Z4Vector>& gs) {
  std::string s;
  for (const auto& g : gs) {
    if (!s.empty()) s += ' ';
    s += g.str();
  }
  return s;
}

// One pattern term, exact first and as a decimal when it is not an integer.
std::string term_line(const Wlp& w, int k) {
  const auto [num, den] = w.term(k);
  std::ostringstream os;
  os << "A" << k << " = " << w.term_str(k);
  if (den != 1) {
    os.precision(6);
    os << " (~ " << num.convert_to<double>() / den.convert_to<double>() << ")";
  }
  return os.str();
}

int cmd_omega(int n, bool last_even, bool as_json) {
  const RefKind kind = last_even ? RefKind::last_even : RefKind::full;
  const ReferenceSet ref = enumerate_reference(n, kind);
  if (as_json) {
    json j;
    j["n"] = n;
    j["kind"] = kind_name(kind);
    j["size"] = ref.size();
    json vecs = json::array();
    for (const auto& g : ref.vectors) vecs.push_back(g.str());
    j["vectors"] = std::move(vecs);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "pool n=" << n << " kind=" << kind_name(kind) << " size=" << ref.size() << "\n";
  for (const auto& g : ref.vectors) std::cout << g.str() << "\n";
  return 0;
}

int cmd_ma(int n, long long runs, int q, const std::string& out_dir, bool header, bool as_json,
           int check_direct) {
  const MaDesign ma = ma_design(n, runs, q);
  const Regime& rg = ma.regime;

  if (check_direct > 0) {
    const int k = std::min(check_direct, q);
    const Wlp direct = wlp_direct(ma.D, k);
    for (int i = 0; i <= k; ++i)
      if (direct.num[static_cast<std::size_t>(i)] != ma.wlp.num[static_cast<std::size_t>(i)])
        throw internal_error("direct evaluation disagrees with the pipeline at A_" + std::to_string(i));
  }

  if (as_json) {
    std::cout << record_text(make_record(ma));
  } else {
    std::cout << "regime: n=" << rg.n << " runs=" << rg.runs << " q=" << rg.q
              << " parity=" << (rg.odd ? "odd" : "even") << " rows=" << (rg.half ? "half" : "full")
              << " pool=" << kind_name(rg.ref) << " v=" << rg.v << " s=" << rg.s
              << " deficiency=" << rg.deficiency << "\n";
    if (ma.selection)
      std::cout << "selection: B = " << bracketed_tokens(ma.selection->b) << " key=" << key_str(ma.selection->key)
                << " candidates=" << ma.selection->candidates << "\n";
    else
      std::cout << "selection: none needed (deficiency " << rg.deficiency << ")\n";
    std::cout << "complement: " << (ma.sbar.vectors.empty() ? std::string("(empty)") : vector_list(ma.sbar.vectors))
              << "\n";
    if (ma.sbar.odd_role) std::cout << "appended: " << ma.sbar.odd_role->str() << "\n";
    std::cout << "WLP head:";
    for (int k = 3; k <= std::min(6, q); ++k) std::cout << " A" << k << "=" << ma.wlp.term_str(k);
    std::cout << "\n";
    std::cout << "resolution: " << resolution(ma.D).str() << "\n";
    if (check_direct > 0)
      std::cout << "direct check: A_0..A_" << std::min(check_direct, q) << " agree\n";
  }

  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    const DesignRecord rec = make_record(ma);
    fs::create_directories(out_dir);
    const std::string name = record_filename(rec);
    const std::string stem = name.substr(0, name.size() - 5);  // drop ".json"
    atomic_write_text(fs::path(out_dir) / name, record_text(rec));
    std::ostringstream csv;
    write_design_csv(csv, ma.D, header);
    atomic_write_text(fs::path(out_dir) / (stem + "_design.csv"), csv.str());
    atomic_write_text(fs::path(out_dir) / (stem + "_meta.json"), design_meta_json(ma).dump(2) + "\n");
    std::cout << "wrote: " << (fs::path(out_dir) / name).string() << " (+ _design.csv, _meta.json)\n";
  }
  return 0;
}

int cmd_wlp(const std::string& file, int max_k, const std::string& method, bool as_json) {
  const SignMatrix D = read_design_csv_file(file);
  const int k = max_k > 0 ? std::min(max_k, D.factors()) : std::min(5, D.factors());

  const BigInt direct_cap = BigInt(4000000000LL);
  auto run_direct = [&]() {
    if (detail::direct_node_bound(D.factors(), k) > direct_cap)
      throw std::domain_error("direct method would visit more than 4e9 column subsets for q=" +
                              std::to_string(D.factors()) + ", k=" + std::to_string(k) +
                              "; use --method distance");
    return wlp_direct(D, k);
  };

  Wlp w;
  if (method == "direct") {
    w = run_direct();
  } else if (method == "distance") {
    w = wlp_distance(D);
  } else if (method == "both") {
    w = run_direct();
    const Wlp d = wlp_distance(D);
    for (int i = 0; i <= k; ++i)
      if (d.num[static_cast<std::size_t>(i)] != w.num[static_cast<std::size_t>(i)])
        throw internal_error("direct and distance methods disagree at A_" + std::to_string(i));
  } else {
    throw std::invalid_argument("unknown method '" + method + "': expected direct, distance, or both");
  }

  if (as_json) {
    Wlp head = w;
    if (static_cast<int>(head.num.size()) > k + 1) head.num.resize(static_cast<std::size_t>(k) + 1);
    std::cout << wlp_json(head).dump(2) << "\n";
    return 0;
  }
  std::cout << "design: " << D.runs() << " runs, " << D.factors() << " factors (method " << method << ")\n";
  for (int i = 1; i <= k; ++i) std::cout << term_line(w, i) << "\n";
  if (method != "direct") std::cout << "resolution: " << resolution(D).str() << "\n";
  return 0;
}

int cmd_verify(int n) {
  const auto claims = verify_identities(n);
  int passed = 0;
  for (const auto& c : claims) {
    if (c.pass) ++passed;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.pass && !c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << "\n";
  }
  std::cout << "claims: " << passed << "/" << claims.size() << " pass\n";
  if (passed != static_cast<int>(claims.size()))
    throw internal_error("identity verification failed for dimension " + std::to_string(n));
  return 0;
}

int cmd_table1(int n, bool as_json) {
  const auto rows = selection_catalog(n);
  if (as_json) {
    json j = json::array();
    for (const auto& row : rows) {
      json r;
      r["deficiency"] = row.deficiency;
      r["b_columns"] = b_tokens(row.selection.b);
      json key = json::array();
      for (const auto& e : row.selection.key) key.push_back(e.str());
      r["key"] = std::move(key);
      r["candidates"] = row.selection.candidates;
      j.push_back(std::move(r));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "selection catalog, dimension " << n << " (" << rows.size() << " rows)\n";
  for (const auto& row : rows)
    std::cout << "deficiency " << row.deficiency << ": B = " << bracketed_tokens(row.selection.b)
              << " key=" << key_str(row.selection.key) << " candidates=" << row.selection.candidates << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact minimum-aberration two-level designs from quaternary codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("qcdesign ") + version_string);

  int omega_n = 2;
  bool omega_last_even = false, omega_json = false;
  auto* omega = app.add_subcommand("omega", "List a column pool in canonical order");
  omega->add_option("--n", omega_n, "Code dimension (2..5 for design work)")->required();
  omega->add_flag("--last-even", omega_last_even, "Restrict to columns with an even last digit");
  omega->add_flag("--json", omega_json, "Emit JSON instead of plain text");

  int ma_n = 0, ma_q = 0, ma_check_direct = 0;
  long long ma_runs = 0;
  std::string ma_out;
  bool ma_header = false, ma_json = false;
  auto* ma = app.add_subcommand("ma", "Construct the minimum-aberration design for a regime");
  ma->add_option("--n", ma_n, "Code dimension (2..5)")->required();
  ma->add_option("--runs", ma_runs, "Run size: 4^n or 4^n/2")->required();
  ma->add_option("--q", ma_q, "Number of two-level factors")->required();
  ma->add_option("--out", ma_out, "Directory for the record, design CSV, and metadata files");
  ma->add_flag("--header", ma_header, "Write a header row in the design CSV");
  ma->add_flag("--json", ma_json, "Print the full design record as JSON");
  ma->add_option("--check-direct", ma_check_direct,
                 "Also evaluate A_1..A_k by direct subset enumeration and require agreement");

  std::string wlp_file, wlp_method = "distance";
  int wlp_max_k = 0;
  bool wlp_json_out = false;
  auto* wlp = app.add_subcommand("wlp", "Evaluate the wordlength pattern of a +-1 design CSV");
  wlp->add_option("--design", wlp_file, "Design CSV file (entries 1/-1, one run per line)")->required();
  wlp->add_option("--max-k", wlp_max_k, "Largest term to report (default min(q,5))");
  wlp->add_option("--method", wlp_method, "direct | distance | both (default distance)");
  wlp->add_flag("--json", wlp_json_out, "Emit the pattern as JSON");

  int verify_n = 2;
  auto* verify = app.add_subcommand("verify", "Run the built-in identity suite for a small dimension");
  verify->add_option("--n", verify_n, "Dimension to verify (2 or 3)")->required();

  int table_n = 0;
  bool table_json = false;
  auto* table = app.add_subcommand("table1", "Print the frozen column-selection catalog for a dimension");
  table->add_option("--n", table_n, "Dimension (3, 4, or 5)")->required();
  table->add_flag("--json", table_json, "Emit JSON instead of plain text");

  try {
    app.parse(argc, argv);
    if (omega->parsed()) return cmd_omega(omega_n, omega_last_even, omega_json);
    if (ma->parsed()) return cmd_ma(ma_n, ma_runs, ma_q, ma_out, ma_header, ma_json, ma_check_direct);
    if (wlp->parsed()) return cmd_wlp(wlp_file, wlp_max_k, wlp_method, wlp_json_out);
    if (verify->parsed()) return cmd_verify(verify_n);
    if (table->parsed()) return cmd_table1(table_n, table_json);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
