#include "kgv/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "kgv/brute_force.hpp"
#include "kgv/element_counts.hpp"
#include "kgv/kgv_bounds.hpp"
#include "kgv/orbit_bounds.hpp"

namespace kgv {

namespace {

using nlohmann::json;

struct Config {
  std::string format = "text";
  std::string out_path;
  unsigned jobs = 1;
  std::uint32_t max_q = 0;  // 0: subcommand default
  std::size_t closure_cap = default_closure_cap;
  bool extended = false;
};

// what a subcommand hands back: a json report, flat rows for csv/text, and failures
struct Result {
  json report = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> failures;
  std::string raw_csv;  // overrides the generic csv rendering
};

std::string dec(const Integer& x) { return to_dec(x); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string render(const Result& r, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json j = r.report;
    j["failures"] = r.failures;
    j["ok"] = r.failures.empty();
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    if (!r.raw_csv.empty()) return r.raw_csv;
    for (std::size_t i = 0; i < r.header.size(); ++i) os << (i ? "," : "") << csv_field(r.header[i]);
    os << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << "\n";
    }
  } else {
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size() && i < r.header.size(); ++i) os << (i ? "  " : "") << r.header[i] << "=" << row[i];
      os << "\n";
    }
    for (const auto& f : r.failures) os << "FAIL " << f << "\n";
    os << (r.failures.empty() ? "ok" : "failed") << "\n";
  }
  return os.str();
}

json bound_json(const BoundReport& b) {
  json terms = json::array();
  for (const auto& t : b.terms) terms.push_back({{"label", t.label}, {"value", dec(t.value)}});
  return {{"variant", b.variant}, {"case", b.case_label}, {"terms", terms},
          {"total", dec(b.total)}, {"target", dec(b.target)}, {"verdict", b.verdict}};
}

std::string rat_str(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(std::stoi(item));
  return v;
}

// ---- table ----

Result cmd_table(const std::vector<std::string>& overrides) {
  std::vector<TableOverride> ov;
  for (const auto& o : overrides) {
    // a,r,column=stored e.g. 2,5,3/5=650
    auto eq = o.find('=');
    if (eq == std::string::npos) throw Error("override must look like a,r,column=value");
    std::stringstream ss(o.substr(0, eq));
    std::string a, r, col;
    std::getline(ss, a, ',');
    std::getline(ss, r, ',');
    std::getline(ss, col, ',');
    ov.push_back({std::stoi(a), std::stoi(r), parse_rational(col), o.substr(eq + 1)});
  }
  CountTable t = section3_table(ov);
  Result res;
  res.raw_csv = table_csv(t);
  res.header = {"group", "column", "stored", "computed", "verdict"};
  json rows = json::array(), stars = json::array();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    auto [a, r] = t.rows[i];
    std::string g = "Sp(" + std::to_string(2 * a) + "," + std::to_string(r) + ")";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      const TableCell& c = t.cells[i][j];
      if (c.kind == TableCell::Kind::empty) continue;
      if (c.kind == TableCell::Kind::star) {
        stars.push_back({{"group", g}, {"column", rat_str(t.columns[j])}});
        continue;
      }
      json cell{{"group", g}, {"column", rat_str(t.columns[j])}, {"stored", c.stored}, {"computed", dec(c.computed)}, {"verdict", c.verdict}};
      if (c.literal) cell["literal"] = dec(*c.literal);
      rows.push_back(cell);
      res.rows.push_back({g, rat_str(t.columns[j]), c.stored, dec(c.computed), c.verdict ? "pass" : "fail"});
      if (!c.verdict) res.failures.push_back(g + " at " + rat_str(t.columns[j]) + ": computed " + dec(c.computed) + " > " + c.stored);
    }
  }
  res.report["table"] = rows;
  res.report["stars"] = stars;
  return res;
}

// ---- wall / fg ----

ClassDatum parse_datum(const json& j) {
  ClassDatum d;
  d.group.family = parse_family(j.at("group").get<std::string>());
  d.group.m = j.at("m").get<int>();
  d.group.q = j.at("q").get<unsigned long>();
  const int r = static_cast<int>(d.group.q);
  for (const auto& e : j.at("assignment")) {
    MonicPoly f(r, e.at("poly").get<std::vector<int>>());
    SignedPartition sp;
    sp.base = Partition(e.at("parts").get<std::vector<int>>());
    if (e.contains("signs"))
      for (const auto& [k, v] : e.at("signs").items()) sp.signs[std::stoi(k)] = v.get<int>();
    d.assignment[f] = sp;
  }
  return d;
}

json read_json_arg(const std::string& inline_text, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file);
    return json::parse(in);
  }
  if (inline_text.empty()) throw Error("give a datum inline (--datum) or by file (--file)");
  return json::parse(inline_text);
}

Result cmd_wall(const std::string& datum, const std::string& file, const std::string& unitary) {
  ClassDatum d = parse_datum(read_json_arg(datum, file));
  Result res;
  UnitaryArgument ua = unitary == "full" ? UnitaryArgument::full_degree : UnitaryArgument::half_degree;
  if (!validate_class_datum(d)) throw Error("invalid class datum for " + d.group.str());
  Integer c = wall_count(d, ua);
  res.report = {{"group", d.group.str()}, {"count", dec(c)}};
  res.header = {"group", "count"};
  res.rows.push_back({d.group.str(), dec(c)});
  return res;
}

Result cmd_fg(int a, int r, const std::string& mu) {
  Partition p(parse_int_list(mu));
  Integer c = fg_unipotent_count(a, r, p);
  Result res;
  res.report = {{"a", a}, {"r", r}, {"mu", p.str()}, {"count", dec(c)}};
  res.header = {"a", "r", "mu", "count"};
  res.rows.push_back({std::to_string(a), std::to_string(r), p.str(), dec(c)});
  return res;
}

// ---- orbits ----

Result cmd_orbits(unsigned long max_points) {
  Result res;
  res.header = {"r", "a", "d1", "d1_brute", "d2", "d2_brute"};
  json rows = json::array();
  for (int r : {2, 3, 5, 7}) {
    for (int a = 1; ipow(r, 2 * a) <= max_points; ++a) {
      Integer v1 = d1(r, a), v2 = d2(r, a);
      std::uint64_t b1 = cyclic_orbit_count(unipotent_jordan(r, {2 * a}));
      std::uint64_t b2 = cyclic_orbit_count(unipotent_jordan(r, {a, a}));
      rows.push_back({{"r", r}, {"a", a}, {"d1", dec(v1)}, {"d1_brute", b1}, {"d2", dec(v2)}, {"d2_brute", b2}});
      res.rows.push_back({std::to_string(r), std::to_string(a), dec(v1), std::to_string(b1), dec(v2), std::to_string(b2)});
      if (v1 != static_cast<unsigned long>(b1)) res.failures.push_back("d1(" + std::to_string(r) + "," + std::to_string(a) + ")");
      if (v2 != static_cast<unsigned long>(b2)) res.failures.push_back("d2(" + std::to_string(r) + "," + std::to_string(a) + ")");
    }
  }
  res.report["orbits"] = rows;
  return res;
}

// ---- bounds ----

Result cmd_bounds(const std::string& mode, const std::string& pair, unsigned long qK) {
  Result res;
  auto parse_pair = [&]() {
    auto v = parse_int_list(pair);
    if (v.size() != 2) throw Error("--pair wants a,r");
    return std::make_pair(v[0], v[1]);
  };
  if (mode == "pairs") {
    auto scan = exceptional_pairs_scan();
    std::set<std::pair<int, int>> got;
    json rows = json::array();
    res.header = {"r", "a", "qK", "log2_ratio", "verdict", "ratio_decreasing"};
    for (const auto& e : scan) {
      if (!e.verdict) got.insert({e.r, e.a});
      rows.push_back({{"r", e.r}, {"a", e.a}, {"qK", e.qK}, {"log2_ratio", e.log2_ratio}, {"verdict", e.verdict}, {"ratio_decreasing", e.ratio_decreasing}});
      std::ostringstream lr;
      lr.precision(6);
      lr << e.log2_ratio;
      res.rows.push_back({std::to_string(e.r), std::to_string(e.a), std::to_string(e.qK), lr.str(), e.verdict ? "pass" : "fail",
                          e.ratio_decreasing ? "yes" : "no"});
      if (e.verdict && !e.ratio_decreasing)
        res.failures.push_back("ratio not decreasing at (" + std::to_string(e.r) + "," + std::to_string(e.a) + ")");
    }
    auto printed = printed_exceptional_pairs();
    json flagged = json::array();
    for (auto [r, a] : got) flagged.push_back({r, a});
    res.report = {{"pairs", rows}, {"flagged", flagged}};
    for (auto pr : printed)
      if (!got.count(pr)) res.failures.push_back("printed pair (" + std::to_string(pr.first) + "," + std::to_string(pr.second) + ") not flagged");
    for (auto pr : got)
      if (!printed.count(pr)) res.failures.push_back("unprinted pair (" + std::to_string(pr.first) + "," + std::to_string(pr.second) + ") flagged");
    return res;
  }
  if (mode == "chain") {
    auto [a, r] = parse_pair();
    const auto& ch = printed_chain(a, r);
    unsigned long q = qK ? qK : ch.printed_threshold_qK;
    if (ch.strict_threshold && !qK) q = case_report(a, r).threshold_qK;
    BoundReport b = chain_report(ch, q);
    res.report = bound_json(b);
    res.header = {"term", "value"};
    for (const auto& t : b.terms) res.rows.push_back({t.label, dec(t.value)});
    res.rows.push_back({"total", dec(b.total)});
    res.rows.push_back({"target", dec(b.target)});
    if (!b.verdict) res.failures.push_back("chain (" + pair + ") fails at qK=" + std::to_string(q));
    return res;
  }
  // cases: one or all
  std::vector<std::pair<int, int>> which;
  if (!pair.empty()) which.push_back(parse_pair());
  else
    for (const auto& pc : printed_cases()) which.push_back({pc.a, pc.r});
  res.header = {"case", "threshold_qK", "fields", "log2_cap", "printed_cap", "verdict"};
  json rows = json::array();
  for (auto [a, r] : which) {
    CaseReport c = case_report(a, r);
    std::string label = "(" + std::to_string(a) + "," + std::to_string(r) + ")";
    std::string fields;
    for (auto f : c.exceptional_fields) fields += (fields.empty() ? "" : " ") + std::to_string(f);
    bool ok = c.cap_ok;
    for (const auto& pc : printed_cases())
      if (pc.a == a && pc.r == r && (pc.fields != c.exceptional_fields || pc.threshold_qK != c.threshold_qK)) ok = false;
    std::ostringstream lc;
    lc.precision(6);
    lc << c.log2_cap;
    json j{{"a", a}, {"r", r}, {"threshold_qK", c.threshold_qK}, {"exceptional_fields", c.exceptional_fields},
           {"cap", dec(c.cap)}, {"log2_cap", c.log2_cap}, {"cap_ok", c.cap_ok}, {"prime_set", c.prime_set}};
    if (c.printed_cap_exp) j["printed_cap_exp"] = *c.printed_cap_exp;
    rows.push_back(j);
    res.rows.push_back({label, std::to_string(c.threshold_qK), fields, lc.str(),
                        c.printed_cap_exp ? "2^" + std::to_string(*c.printed_cap_exp) : "", ok ? "pass" : "fail"});
    if (!ok) res.failures.push_back("case " + label);
  }
  res.report["cases"] = rows;
  return res;
}

// ---- section 5 ----

Result cmd_section5(unsigned n_max, unsigned long q_max, unsigned jobs) {
  Section5Scan s = scan_section5(n_max, q_max, jobs);
  Result res;
  json viol = json::array();
  for (const auto& v : s.violating) viol.push_back({{"n", v.n}, {"p", v.p}, {"k", v.k}});
  res.report = {{"n_max", s.n_max}, {"qK_max", s.qK_max}, {"points", s.points}, {"exact_points", s.exact_points},
                {"violations", viol}, {"max_total", dec(s.max_total)}, {"log2_max_total", s.log2_max_total},
                {"argmax", {{"n", s.argmax.n}, {"p", s.argmax.p}, {"k", s.argmax.k}}}};
  res.header = {"n_max", "qK_max", "points", "exact_points", "violations", "log2_max_total", "argmax"};
  std::ostringstream lm;
  lm.precision(8);
  lm << s.log2_max_total;
  res.rows.push_back({std::to_string(n_max), std::to_string(q_max), std::to_string(s.points), std::to_string(s.exact_points),
                      std::to_string(s.violations), lm.str(),
                      "n=" + std::to_string(s.argmax.n) + " p=" + std::to_string(s.argmax.p) + " k=" + std::to_string(s.argmax.k)});
  for (const auto& v : s.violating)
    res.failures.push_back("n=" + std::to_string(v.n) + " p=" + std::to_string(v.p) + " k=" + std::to_string(v.k));
  return res;
}

// ---- metacyclic ----

Result cmd_metacyclic(std::uint32_t q_max, unsigned jobs) {
  MetacyclicReport r = verify_metacyclic_theorem(q_max, jobs);
  Result res;
  json viol = json::array();
  res.header = {"p", "n", "m", "d", "k", "kGV", "V", "instances"};
  for (const auto& v : r.violations) {
    viol.push_back({{"p", v.spec.p}, {"n", v.spec.n}, {"m", v.spec.m}, {"d", v.spec.d}, {"k", v.spec.k}, {"kGV", v.kGV}, {"V", v.V}, {"instances", v.instances}});
    res.rows.push_back({std::to_string(v.spec.p), std::to_string(v.spec.n), std::to_string(v.spec.m), std::to_string(v.spec.d),
                        std::to_string(v.spec.k), std::to_string(v.kGV), std::to_string(v.V), std::to_string(v.instances)});
    res.failures.push_back(json{{"p", v.spec.p}, {"n", v.spec.n}, {"m", v.spec.m}, {"d", v.spec.d}, {"k", v.spec.k}, {"kGV", v.kGV}, {"V", v.V}}.dump());
  }
  json lemmas = json::array();
  for (const auto& l : r.lemmas) {
    lemmas.push_back({{"lemma", l.lemma}, {"checked", l.checked}, {"failures", l.failures}});
    for (const auto& f : l.failures) res.failures.push_back(l.lemma + ": " + f);
  }
  res.report = {{"q_max", q_max}, {"specs", r.specs}, {"raw_violations", r.raw_violations}, {"violations", viol},
                {"lemmas", lemmas}, {"l5_tight_2212", r.l5_tight_2212}};
  return res;
}

// ---- brute ----

Result cmd_brute(const std::string& file, const std::string& method, std::size_t cap) {
  int p = 0, n = 0;
  auto gens = load_generator_file(file, p, n);
  auto g = closure(gens, p, n, cap);
  Result res;
  res.report = {{"p", p}, {"n", n}, {"order", g.order()}, {"kG", g.class_count()}, {"V", g.ops().points()}};
  res.header = {"p", "n", "order", "kG", "method", "kGV"};
  std::optional<std::size_t> lgt, direct;
  if (method == "lgt" || method == "both") lgt = kgv_count(g, KgvMethod::lgt);
  if (method == "direct" || method == "both") direct = kgv_count(g, KgvMethod::direct);
  for (auto [name, val] : {std::pair<const char*, std::optional<std::size_t>>{"lgt", lgt}, {"direct", direct}}) {
    if (!val) continue;
    res.report[std::string("kGV_") + name] = *val;
    res.rows.push_back({std::to_string(p), std::to_string(n), std::to_string(g.order()), std::to_string(g.class_count()), name, std::to_string(*val)});
  }
  res.report["kGV"] = lgt ? *lgt : *direct;
  if (lgt && direct && *lgt != *direct) res.failures.push_back("lgt and direct disagree");
  return res;
}

// ---- lemmas ----

Result cmd_lemmas(std::uint32_t q_max) {
  SmallLemmaReport r = verify_small_lemmas(q_max);
  Result res;
  res.header = {"check", "instances", "failures"};
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"check", c.lemma}, {"instances", c.checked}, {"failures", c.failures}});
    res.rows.push_back({c.lemma, std::to_string(c.checked), std::to_string(c.failures.size())});
    for (const auto& f : c.failures) res.failures.push_back(c.lemma + ": " + f);
    if (c.checked == 0) res.failures.push_back(c.lemma + ": no instances");
  }
  res.report = {{"q_max", q_max}, {"checks", checks}};
  json a1 = json::array();
  for (const auto& rd : rederive_a1_r2()) a1.push_back({{"p", rd.p}, {"R", rd.R}, {"subgroups", rd.subgroups}, {"m", rd.max_m}});
  res.report["a1_r2"] = a1;
  return res;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k(GV) bound checks for groups of symplectic type", "kgv"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out_path, "write the report here instead of stdout");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--max-q", cfg.max_q, "largest field size for metacyclic / lemmas, |K| cap for section5-scan");
  app.add_option("--closure-cap", cfg.closure_cap, "largest group built by closure")->check(CLI::Range(std::size_t(1), std::size_t(50000000)));
  app.add_flag("--extended", cfg.extended, "q <= 1024 tier for metacyclic");

  auto* table = app.add_subcommand("table", "count table with computed values");
  std::vector<std::string> overrides;
  table->add_option("--override", overrides, "a,r,column=value replaces a stored entry")->group("");

  auto* wall = app.add_subcommand("wall", "Wall count for one class datum");
  std::string datum, datum_file, unitary = "half";
  wall->add_option("--datum", datum, "datum as json");
  wall->add_option("--file", datum_file, "datum json file");
  wall->add_option("--unitary", unitary, "half or full degree argument")->check(CLI::IsMember({"half", "full"}));

  auto* fg = app.add_subcommand("fg", "unipotent count in Sp(2a,2^k)");
  int fa = 1, fr = 2;
  std::string mu;
  fg->add_option("--a", fa)->required();
  fg->add_option("--r", fr)->required();
  fg->add_option("--mu", mu, "partition, comma separated")->required();

  auto* orbits = app.add_subcommand("orbits", "d1/d2 against brute-force orbit counts");
  unsigned long max_points = 2500;
  orbits->add_option("--max-points", max_points, "largest r^(2a)");

  auto* bounds = app.add_subcommand("bounds", "pairs scan, printed chains and cases");
  std::string mode = "cases", pair;
  unsigned long qK = 0;
  bounds->add_option("--mode", mode)->check(CLI::IsMember({"pairs", "chain", "cases"}));
  bounds->add_option("--pair", pair, "a,r");
  bounds->add_option("--qK", qK, "field size for --mode chain");

  auto* s5 = app.add_subcommand("section5-scan", "the large-n inequality over a finite grid");
  unsigned n_max = 4096;
  s5->add_option("--n-max", n_max);

  auto* meta = app.add_subcommand("metacyclic", "k(GV) <= |V| over subgroups of GL(1,p^n).n");
  auto* brute = app.add_subcommand("brute", "closure and k(GV) from a generator file");
  std::string gen_file, method = "both";
  brute->add_option("--file", gen_file)->required();
  brute->add_option("--method", method)->check(CLI::IsMember({"lgt", "direct", "both"}));
  auto* lemmas = app.add_subcommand("lemmas", "small-case lemma checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int rc = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return rc == 0 ? 0 : 2;
  }

  Result res;
  try {
    if (*table) res = cmd_table(overrides);
    else if (*wall) res = cmd_wall(datum, datum_file, unitary);
    else if (*fg) res = cmd_fg(fa, fr, mu);
    else if (*orbits) res = cmd_orbits(max_points);
    else if (*bounds) res = cmd_bounds(mode, pair, qK);
    else if (*s5) res = cmd_section5(n_max, cfg.max_q ? cfg.max_q : (1ul << 20), cfg.jobs);
    else if (*meta) res = cmd_metacyclic(cfg.max_q ? cfg.max_q : (cfg.extended ? 1024 : 512), cfg.jobs);
    else if (*brute) res = cmd_brute(gen_file, method, cfg.closure_cap);
    else if (*lemmas) res = cmd_lemmas(cfg.max_q ? cfg.max_q : 64);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::string text = render(res, cfg.format);
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "error: cannot write " << cfg.out_path << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  if (cfg.format != "text" || !cfg.out_path.empty())
    for (const auto& f : res.failures) err << "FAIL " << f << "\n";
  return res.failures.empty() ? 0 : 1;
}

}  // namespace kgv
