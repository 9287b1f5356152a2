#include "enriques/report.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace enriques::report {

using json = nlohmann::ordered_json;

namespace {

json cls(const LatticeClass& x) { return json(x.coords()); }

LatticeClass cls_from(const json& j) {
  if (!j.is_array() || j.size() != kRank) throw InvalidInput("a class needs 10 coordinates");
  LatticeClass x;
  for (std::size_t i = 0; i < kRank; ++i) x[i] = j[i].get<std::int64_t>();
  return x;
}

json opt_cls(const std::optional<LatticeClass>& x) { return x ? cls(*x) : json(nullptr); }

std::optional<LatticeClass> opt_cls_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return cls_from(j);
}

json classes(const std::vector<LatticeClass>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(cls(x));
  return a;
}

std::vector<LatticeClass> classes_from(const json& j) {
  std::vector<LatticeClass> v;
  for (const auto& x : j) v.push_back(cls_from(x));
  return v;
}

json witness(const IsotropicWitness& w) { return {{"class", cls(w.cls)}, {"value", w.value}}; }
IsotropicWitness witness_from(const json& j) { return {cls_from(j.at("class")), j.at("value").get<std::int64_t>()}; }

json mu_json(const MuResult& m) {
  json j{{"kind", to_string(m.kind)}, {"value", m.value}, {"cap_used", m.cap_used}, {"witness", nullptr}};
  if (m.witness) {
    json w{{"class", cls(m.witness->cls)}, {"value", m.witness->value}, {"splitting", nullptr}};
    if (m.witness->splitting) w["splitting"] = json::array({cls(m.witness->splitting->first), cls(m.witness->splitting->second)});
    j["witness"] = w;
  }
  return j;
}

MuResult mu_from(const json& j) {
  MuResult m;
  m.kind = mu_kind_from_string(j.at("kind").get<std::string>());
  m.value = j.at("value").get<std::int64_t>();
  m.cap_used = j.at("cap_used").get<std::int64_t>();
  const json& w = j.at("witness");
  if (!w.is_null()) {
    MuWitness mw;
    mw.cls = cls_from(w.at("class"));
    mw.value = w.at("value").get<std::int64_t>();
    const json& s = w.at("splitting");
    if (!s.is_null()) mw.splitting = std::make_pair(cls_from(s.at(0)), cls_from(s.at(1)));
    m.witness = mw;
  }
  return m;
}

json type_json(const TypeTag& t) { return {{"kind", to_string(t.kind)}, {"h", t.h}}; }
TypeTag type_from(const json& j) { return {type_kind_from_string(j.at("kind").get<std::string>()), j.at("h").get<std::int64_t>()}; }

json classification_json(const Classification& c) {
  return {{"case", to_string(c.case_tag)}, {"type", type_json(c.type)}, {"table_gengon", c.table_gengon}};
}
Classification classification_from(const json& j) {
  return {case_tag_from_string(j.at("case").get<std::string>()), type_from(j.at("type")),
          j.at("table_gengon").get<std::int64_t>()};
}

json mingon_json(const MingonBounds& m) {
  return {{"lo", m.lo}, {"hi", m.hi}, {"lower_excluded", m.lower_excluded}};
}
MingonBounds mingon_from(const json& j) {
  return {j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>(), j.at("lower_excluded").get<bool>()};
}

json gonality_json(const GonalityReport& r) {
  return {{"class", cls(r.L)},
          {"L_squared", r.L_squared},
          {"phi", witness(r.phi)},
          {"mu", mu_json(r.mu)},
          {"quarter_bound", r.quarter_bound},
          {"gengon", r.gengon},
          {"classification", classification_json(r.classification)},
          {"mingon", mingon_json(r.mingon)}};
}
GonalityReport gonality_from(const json& j) {
  GonalityReport r;
  r.L = cls_from(j.at("class"));
  r.L_squared = j.at("L_squared").get<std::int64_t>();
  r.phi = witness_from(j.at("phi"));
  r.mu = mu_from(j.at("mu"));
  r.quarter_bound = j.at("quarter_bound").get<std::int64_t>();
  r.gengon = j.at("gengon").get<std::int64_t>();
  r.classification = classification_from(j.at("classification"));
  r.mingon = mingon_from(j.at("mingon"));
  return r;
}

json decomposition_json(const Decomposition& d) {
  return {{"pattern", to_string(d.pattern)}, {"coefficients", d.coefficients}, {"classes", classes(d.classes)}};
}
Decomposition decomposition_from(const json& j) {
  Decomposition d;
  d.pattern = pattern_from_string(j.at("pattern").get<std::string>());
  d.coefficients = j.at("coefficients").get<std::vector<std::int64_t>>();
  d.classes = classes_from(j.at("classes"));
  return d;
}

json frame_json(const IsotropicFrame& f) {
  return {{"classes", classes(std::vector<LatticeClass>(f.classes.begin(), f.classes.end()))}};
}
IsotropicFrame frame_from(const json& j) {
  const auto v = classes_from(j.at("classes"));
  if (v.size() != 10) throw InvalidInput("a frame has 10 classes");
  IsotropicFrame f;
  std::copy(v.begin(), v.end(), f.classes.begin());
  return f;
}

json extremal_json(const ExtremalCase& x) {
  return {{"tag", to_string(x.tag)}, {"h", x.h}, {"E1", cls(x.E1)}, {"E2", cls(x.E2)}, {"E3", opt_cls(x.E3)}};
}
ExtremalCase extremal_from(const json& j) {
  return {extremal_tag_from_string(j.at("tag").get<std::string>()), j.at("h").get<std::int64_t>(),
          cls_from(j.at("E1")), cls_from(j.at("E2")), opt_cls_from(j.at("E3"))};
}

json checks_json(const std::vector<Check>& v) {
  json a = json::array();
  for (auto c : v) a.push_back(to_string(c));
  return a;
}
std::vector<Check> checks_from(const json& j) {
  std::vector<Check> v;
  for (const auto& c : j) v.push_back(check_from_string(c.get<std::string>()));
  return v;
}

json sweep_json(const SweepReport& r) {
  json counters = json::object();
  for (const auto& [c, k] : r.counters)
    counters[to_string(c)] = {{"tested", k.tested}, {"passed", k.passed}, {"failed", k.failed}};
  json ces = json::array();
  for (const auto& x : r.counterexamples)
    ces.push_back({{"check", to_string(x.check)}, {"class", cls(x.L)}, {"details", x.details}});
  json coverage = json::object();
  for (const auto& [k, v] : r.coverage) coverage[k] = v;
  json j{{"radius", r.radius},
         {"checks", checks_json(r.checks)},
         {"region_classes", r.region_classes},
         {"injected_classes", r.injected_classes},
         {"counters", counters},
         {"counterexamples", ces},
         {"warnings", r.warnings},
         {"coverage", coverage},
         {"threads", r.threads}};
  if (r.elapsed_seconds != 0) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}
SweepReport sweep_from(const json& j) {
  SweepReport r;
  r.radius = j.at("radius").get<std::int64_t>();
  r.checks = checks_from(j.at("checks"));
  r.region_classes = j.at("region_classes").get<std::uint64_t>();
  r.injected_classes = j.at("injected_classes").get<std::uint64_t>();
  for (const auto& [name, k] : j.at("counters").items())
    r.counters[check_from_string(name)] = {k.at("tested").get<std::uint64_t>(), k.at("passed").get<std::uint64_t>(),
                                           k.at("failed").get<std::uint64_t>()};
  for (const auto& x : j.at("counterexamples"))
    r.counterexamples.push_back(
        {cls_from(x.at("class")), check_from_string(x.at("check").get<std::string>()), x.at("details").get<std::string>()});
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& [k, v] : j.at("coverage").items()) r.coverage[k] = v.get<std::uint64_t>();
  r.threads = j.at("threads").get<unsigned>();
  r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
  return r;
}

json oracle_json(const OracleReport& r) {
  json mism = json::array();
  for (const auto& m : r.mismatches)
    mism.push_back({{"anchor", cls(m.anchor)},
                    {"s", m.s},
                    {"c", m.c},
                    {"enumerated", m.enumerated},
                    {"oracle", m.oracle},
                    {"only_enumerated", classes(m.only_enumerated)},
                    {"only_oracle", classes(m.only_oracle)},
                    {"details", m.details}});
  json j{{"radius", r.radius},
         {"seed", r.seed},
         {"anchors", classes(r.anchors)},
         {"queries", r.queries},
         {"solutions", r.solutions},
         {"mismatches", mism},
         {"phi_checked", r.phi_checked},
         {"phi_mismatches", r.phi_mismatches},
         {"mu_checked", r.mu_checked},
         {"mu_mismatches", r.mu_mismatches},
         {"threads", r.threads}};
  if (r.elapsed_seconds != 0) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}
OracleReport oracle_from(const json& j) {
  OracleReport r;
  r.radius = j.at("radius").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.anchors = classes_from(j.at("anchors"));
  r.queries = j.at("queries").get<std::uint64_t>();
  r.solutions = j.at("solutions").get<std::uint64_t>();
  for (const auto& m : j.at("mismatches"))
    r.mismatches.push_back({cls_from(m.at("anchor")), m.at("s").get<std::int64_t>(), m.at("c").get<std::int64_t>(),
                            m.at("enumerated").get<std::uint64_t>(), m.at("oracle").get<std::uint64_t>(),
                            classes_from(m.at("only_enumerated")), classes_from(m.at("only_oracle")),
                            m.at("details").get<std::string>()});
  r.phi_checked = j.at("phi_checked").get<std::uint64_t>();
  r.phi_mismatches = j.at("phi_mismatches").get<std::vector<std::string>>();
  r.mu_checked = j.at("mu_checked").get<std::uint64_t>();
  r.mu_mismatches = j.at("mu_mismatches").get<std::vector<std::string>>();
  r.threads = j.at("threads").get<unsigned>();
  r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
  return r;
}

struct ResultJson {
  json operator()(const std::monostate&) const { return {{"kind", "none"}}; }
  json operator()(const GonalityReport& r) const { return {{"kind", "invariants"}, {"data", gonality_json(r)}}; }
  json operator()(const PhiResult& r) const {
    return {{"kind", "phi"}, {"data", {{"L_squared", r.L_squared}, {"phi", witness(r.phi)}}}};
  }
  json operator()(const MuReport& r) const {
    return {{"kind", "mu"}, {"data", {{"L_squared", r.L_squared}, {"phi", r.phi}, {"mu", mu_json(r.mu)}}}};
  }
  json operator()(const GengonResult& r) const {
    return {{"kind", "gengon"},
            {"data",
             {{"L_squared", r.L_squared},
              {"phi", r.phi},
              {"gengon", r.gengon},
              {"case", to_string(r.case_tag)},
              {"mingon", mingon_json(r.mingon)}}}};
  }
  json operator()(const ClassifyResult& r) const {
    return {{"kind", "classify"},
            {"data", {{"L_squared", r.L_squared}, {"phi", r.phi}, {"classification", classification_json(r.classification)}}}};
  }
  json operator()(const Decomposition& d) const { return {{"kind", "decompose"}, {"data", decomposition_json(d)}}; }
  json operator()(const IsotropicFrame& f) const { return {{"kind", "ten-frame"}, {"data", frame_json(f)}}; }
  json operator()(const ExtremalCase& x) const { return {{"kind", "extremal"}, {"data", extremal_json(x)}}; }
  json operator()(const SweepReport& r) const { return {{"kind", "verify"}, {"data", sweep_json(r)}}; }
  json operator()(const OracleReport& r) const { return {{"kind", "oracle-check"}, {"data", oracle_json(r)}}; }
};

Result result_from(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "none") return std::monostate{};
  const json& d = j.at("data");
  if (kind == "invariants") return gonality_from(d);
  if (kind == "phi") return PhiResult{d.at("L_squared").get<std::int64_t>(), witness_from(d.at("phi"))};
  if (kind == "mu") return MuReport{d.at("L_squared").get<std::int64_t>(), d.at("phi").get<std::int64_t>(), mu_from(d.at("mu"))};
  if (kind == "gengon")
    return GengonResult{d.at("L_squared").get<std::int64_t>(), d.at("phi").get<std::int64_t>(),
                        d.at("gengon").get<std::int64_t>(), case_tag_from_string(d.at("case").get<std::string>()),
                        mingon_from(d.at("mingon"))};
  if (kind == "classify")
    return ClassifyResult{d.at("L_squared").get<std::int64_t>(), d.at("phi").get<std::int64_t>(),
                          classification_from(d.at("classification"))};
  if (kind == "decompose") return decomposition_from(d);
  if (kind == "ten-frame") return frame_from(d);
  if (kind == "extremal") return extremal_from(d);
  if (kind == "verify") return sweep_from(d);
  if (kind == "oracle-check") return oracle_from(d);
  throw InvalidInput("unknown result kind '" + kind + "'");
}

// ---- text ----

class Table {
 public:
  void row(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  template <class T>
  void row(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    rows_.emplace_back(key, os.str());
  }
  std::string str() const {
    std::size_t w = 0;
    for (const auto& [k, v] : rows_) w = std::max(w, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows_) os << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string witness_text(const IsotropicWitness& w) { return std::to_string(w.value) + "  via " + w.cls.str(); }

void mu_rows(Table& t, const MuResult& m) {
  t.row("mu", std::to_string(m.value) + (m.kind == MuKind::Exact ? "" : "  (lower bound: mu > cap - 2)"));
  t.row("mu kind", to_string(m.kind));
  t.row("mu cap", m.cap_used);
  if (m.witness) {
    t.row("mu witness B", m.witness->cls.str());
    if (m.witness->splitting) {
      t.row("B = F1 + F2, F1", m.witness->splitting->first.str());
      t.row("B = F1 + F2, F2", m.witness->splitting->second.str());
    }
  }
}

std::string mingon_text(const MingonBounds& m) {
  return "[" + std::to_string(m.lo) + ", " + std::to_string(m.hi) + "]" +
         (m.lower_excluded ? "  (gengon - 2 excluded)" : "");
}

void classification_rows(Table& t, const Classification& c) {
  t.row("case", to_string(c.case_tag));
  t.row("type", to_string(c.type));
  t.row("table gengon", c.table_gengon);
}

struct ResultText {
  Table& t;
  void operator()(const std::monostate&) const {}
  void operator()(const GonalityReport& r) const {
    t.row("L^2", r.L_squared);
    t.row("phi", witness_text(r.phi));
    mu_rows(t, r.mu);
    t.row("floor(L^2/4)+2", r.quarter_bound);
    t.row("gengon", r.gengon);
    classification_rows(t, r.classification);
    t.row("mingon", mingon_text(r.mingon));
  }
  void operator()(const PhiResult& r) const {
    t.row("L^2", r.L_squared);
    t.row("phi", witness_text(r.phi));
  }
  void operator()(const MuReport& r) const {
    t.row("L^2", r.L_squared);
    t.row("phi", r.phi);
    mu_rows(t, r.mu);
  }
  void operator()(const GengonResult& r) const {
    t.row("L^2", r.L_squared);
    t.row("phi", r.phi);
    t.row("gengon", r.gengon);
    t.row("case", to_string(r.case_tag));
    t.row("mingon", mingon_text(r.mingon));
  }
  void operator()(const ClassifyResult& r) const {
    t.row("L^2", r.L_squared);
    t.row("phi", r.phi);
    classification_rows(t, r.classification);
  }
  void operator()(const Decomposition& d) const {
    t.row("pattern", to_string(d.pattern));
    t.row("n", d.classes.size());
    for (std::size_t i = 0; i < d.classes.size(); ++i)
      t.row("E" + std::to_string(i + 1), std::to_string(d.coefficients[i]) + " * " + d.classes[i].str());
  }
  void operator()(const IsotropicFrame& f) const {
    for (std::size_t i = 0; i < f.classes.size(); ++i) t.row("F" + std::to_string(i + 1), f.classes[i].str());
  }
  void operator()(const ExtremalCase& x) const {
    t.row("tag", to_string(x.tag));
    t.row("h", x.h);
    t.row("E1", x.E1.str());
    t.row("E2", x.E2.str());
    if (x.E3) t.row("E3", x.E3->str());
  }
  void operator()(const SweepReport& r) const {
    t.row("radius", r.radius);
    t.row("region classes", r.region_classes);
    t.row("injected classes", r.injected_classes);
    t.row("tested", r.tested());
    for (const auto& [c, k] : r.counters)
      t.row(to_string(c), "tested " + std::to_string(k.tested) + "  passed " + std::to_string(k.passed) + "  failed " +
                              std::to_string(k.failed));
    t.row("counterexamples", r.counterexamples.size());
    for (const auto& x : r.counterexamples) t.row("  " + std::string(to_string(x.check)), x.L.str() + "  " + x.details);
    for (const auto& w : r.warnings) t.row("warning", w);
    for (const auto& [k, v] : r.coverage) t.row("coverage " + k, v);
    t.row("threads", r.threads);
    if (r.elapsed_seconds != 0) t.row("elapsed seconds", r.elapsed_seconds);
  }
  void operator()(const OracleReport& r) const {
    t.row("radius", r.radius);
    t.row("seed", r.seed);
    t.row("anchors", r.anchors.size());
    t.row("queries", r.queries);
    t.row("solutions", r.solutions);
    t.row("mismatches", r.mismatches.size());
    for (const auto& m : r.mismatches)
      t.row("  " + m.anchor.str(), "s=" + std::to_string(m.s) + " c=" + std::to_string(m.c) + " enumerated " +
                                        std::to_string(m.enumerated) + " oracle " + std::to_string(m.oracle) + "  " +
                                        m.details);
    t.row("phi checked", r.phi_checked);
    t.row("phi mismatches", r.phi_mismatches.size());
    for (const auto& s : r.phi_mismatches) t.row("  phi", s);
    t.row("mu checked", r.mu_checked);
    t.row("mu mismatches", r.mu_mismatches.size());
    for (const auto& s : r.mu_mismatches) t.row("  mu", s);
    t.row("threads", r.threads);
    if (r.elapsed_seconds != 0) t.row("elapsed seconds", r.elapsed_seconds);
  }
};

// Puts arrays of plain numbers on one line. String literals are copied as is.
std::string collapse_numeric_arrays(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (in_string) {
      out += ch;
      if (ch == '\\' && i + 1 < s.size()) out += s[++i];
      else if (ch == '"') in_string = false;
      continue;
    }
    if (ch == '"') in_string = true;
    if (ch == '[') {
      const std::size_t close = s.find_first_of("[]{\"", i + 1);
      if (close != std::string::npos && s[close] == ']') {
        std::string inner;
        for (std::size_t k = i + 1; k < close; ++k)
          if (!std::isspace(static_cast<unsigned char>(s[k]))) inner += s[k] == ',' ? std::string(", ") : std::string(1, s[k]);
        out += "[" + inner + "]";
        i = close;
        continue;
      }
    }
    out += ch;
  }
  return out;
}

}  // namespace

std::string to_json(const ReportDocument& doc) {
  json inputs = json::array();
  for (const auto& in : doc.inputs)
    inputs.push_back({{"expression", in.expression}, {"class", cls(in.cls)}, {"L_squared", in.L_squared}});
  json j{{"schema_version", doc.schema_version},
         {"command", doc.command},
         {"arguments", doc.arguments},
         {"inputs", inputs},
         {"result", std::visit(ResultJson{}, doc.result)},
         {"caveats",
          {{"numerical_equivalence_only", doc.caveats.numerical_equivalence_only},
           {"unnodal_model", doc.caveats.unnodal_model}}}};
  return collapse_numeric_arrays(j.dump(2)) + "\n";
}

ReportDocument from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kSchemaVersion)
      throw InvalidInput("unsupported schema_version " + std::to_string(doc.schema_version));
    doc.command = j.at("command").get<std::string>();
    doc.arguments = j.at("arguments").get<std::vector<std::string>>();
    for (const auto& in : j.at("inputs"))
      doc.inputs.push_back(
          {in.at("expression").get<std::string>(), cls_from(in.at("class")), in.at("L_squared").get<std::int64_t>()});
    doc.result = result_from(j.at("result"));
    const json& c = j.at("caveats");
    doc.caveats = {c.at("numerical_equivalence_only").get<bool>(), c.at("unnodal_model").get<bool>()};
    return doc;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed report document: ") + e.what());
  }
}

std::string to_text(const ReportDocument& doc) {
  Table t;
  t.row("command", doc.command);
  for (const auto& in : doc.inputs) {
    t.row("input", in.expression);
    t.row("class", in.cls.str());
  }
  std::visit(ResultText{t}, doc.result);
  std::string caveat = "numerical classes";
  if (doc.caveats.unnodal_model) caveat += ", unnodal surface";
  t.row("model", caveat);
  return t.str();
}

}  // namespace enriques::report
