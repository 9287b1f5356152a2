#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "enriques/errors.hpp"
#include "enriques/report.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace enriques;
using enriques::test::cls;

namespace {

const EnriquesLattice& lat() { return EnriquesLattice::standard(); }

const char* kRegression[] = {
    "let E1,E2 = isotropic(E1.E2=2); 2*(E1+E2)",
    "let E1,E2 = isotropic(E1.E2=1); 3*E1 + 5*E2",
    "let E,E1,E2 = isotropic(E.E1=1, E.E2=1, E1.E2=1); 2*E + E1 + E2",
    "let E1,E2,E3 = isotropic(E1.E2=2, E1.E3=2, E2.E3=1); 2*(E1+E2+E3)",
    "let A,B,C,D = isotropic(A.B=2, A.C=2, A.D=1, B.C=1, B.D=2, C.D=2); 2*A + B + C + D",
    "v[1,1,0,0,0,0,0,0,0,0]",
};

report::ReportDocument doc(const std::string& command, const std::string& expr, report::Result r) {
  report::ReportDocument d;
  d.command = command;
  d.arguments = {command, expr};
  const LatticeClass L = cls(expr);
  d.inputs.push_back({expr, L, lat().norm(L)});
  d.result = std::move(r);
  return d;
}

std::vector<report::ReportDocument> regression_documents() {
  std::vector<report::ReportDocument> out;
  for (const char* e : kRegression) {
    const LatticeClass L = cls(e);
    const auto g = generic_gonality(L);
    out.push_back(doc("invariants", e, g));
    out.push_back(doc("phi", e, report::PhiResult{g.L_squared, g.phi}));
    out.push_back(doc("mu", e, report::MuReport{g.L_squared, g.phi.value, g.mu}));
    out.push_back(doc("gengon", e,
                      report::GengonResult{g.L_squared, g.phi.value, g.gengon, g.classification.case_tag, g.mingon}));
    out.push_back(doc("classify", e, report::ClassifyResult{g.L_squared, g.phi.value, g.classification}));
    out.push_back(doc("decompose", e, isotropic_decompose(L)));
    const std::int64_t phi = g.phi.value, n = g.L_squared;
    if (n == phi * phi || n == phi * phi + phi - 2) out.push_back(doc("extremal", e, extremal_decompose(L)));
  }
  const std::string d = "let E1,E2,E3 = isotropic(E1.E2=2, E1.E3=2, E2.E3=1); E1 + E2 + E3";
  out.push_back(doc("ten-frame", d, ten_frame(cls(d))));

  SweepSpec s;
  s.region = oracle::Box{1};
  s.threads = 1;
  report::ReportDocument v;
  v.command = "verify";
  v.arguments = {"verify", "--radius", "1"};
  auto sweep = run_sweep(s);
  sweep.elapsed_seconds = 0;
  sweep.warnings.push_back("a \"quoted\" [warning]");
  sweep.counterexamples.push_back({cls(kRegression[0]), Check::MuIff, "synthetic"});
  v.result = sweep;
  out.push_back(v);

  OracleSpec o;
  o.anchors = 2;
  o.max_pairing = 3;
  o.threads = 1;
  report::ReportDocument w;
  w.command = "oracle-check";
  auto oc = oracle_check(o);
  oc.elapsed_seconds = 1.5;
  QueryMismatch m;
  m.anchor = oc.anchors.front();
  m.s = 4;
  m.c = 3;
  m.enumerated = 1;
  m.only_enumerated = {test::kE};
  m.details = "synthetic";
  oc.mismatches.push_back(m);
  oc.phi_mismatches.push_back("phi synthetic");
  w.result = oc;
  out.push_back(w);

  out.emplace_back();
  return out;
}

TEST(Report, JsonRoundTripEveryKind) {
  std::set<std::size_t> kinds;
  for (const auto& d : regression_documents()) {
    kinds.insert(d.result.index());
    const std::string j = report::to_json(d);
    const auto back = report::from_json(j);
    EXPECT_EQ(back, d) << j;
    EXPECT_EQ(report::to_json(back), j);
  }
  EXPECT_EQ(kinds.size(), std::variant_size_v<report::Result>);
}

TEST(Report, ElapsedOnlyWhenNonzero) {
  SweepReport s;
  s.radius = 1;
  report::ReportDocument d;
  d.result = s;
  EXPECT_EQ(report::to_json(d).find("elapsed_seconds"), std::string::npos);
  std::get<SweepReport>(d.result).elapsed_seconds = 2.25;
  EXPECT_NE(report::to_json(d).find("elapsed_seconds"), std::string::npos);
}

std::map<std::string, std::string> text_rows(const std::string& text) {
  std::map<std::string, std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    // keys may contain single spaces; values start after a run of two or more
    const auto gap = line.find("  ");
    if (gap == std::string::npos) continue;
    const auto v = line.find_first_not_of(' ', gap);
    rows[line.substr(0, gap)] = line.substr(v);
  }
  return rows;
}

std::string first_word(const std::string& s) { return s.substr(0, s.find(' ')); }

TEST(Report, TextAndJsonAgree) {
  for (const char* e : kRegression) {
    const auto d = doc("invariants", e, generic_gonality(cls(e)));
    const auto j = nlohmann::json::parse(report::to_json(d))["result"]["data"];
    const auto rows = text_rows(report::to_text(d));
    SCOPED_TRACE(e);
    EXPECT_EQ(rows.at("L^2"), std::to_string(j["L_squared"].get<std::int64_t>()));
    EXPECT_EQ(first_word(rows.at("phi")), std::to_string(j["phi"]["value"].get<std::int64_t>()));
    EXPECT_EQ(first_word(rows.at("mu")), std::to_string(j["mu"]["value"].get<std::int64_t>()));
    EXPECT_EQ(rows.at("gengon"), std::to_string(j["gengon"].get<std::int64_t>()));
    EXPECT_EQ(rows.at("case"), j["classification"]["case"].get<std::string>());
    EXPECT_EQ(rows.at("table gengon"), std::to_string(j["classification"]["table_gengon"].get<std::int64_t>()));
    const std::string mingon = "[" + std::to_string(j["mingon"]["lo"].get<std::int64_t>()) + ", " +
                               std::to_string(j["mingon"]["hi"].get<std::int64_t>()) + "]";
    EXPECT_EQ(rows.at("mingon").substr(0, mingon.size()), mingon);
  }
}

TEST(Report, MalformedInput) {
  EXPECT_THROW(report::from_json("not json"), InvalidInput);
  EXPECT_THROW(report::from_json("{}"), InvalidInput);
  EXPECT_THROW(report::from_json("[1, 2]"), InvalidInput);
  auto j = nlohmann::json::parse(report::to_json(regression_documents().front()));
  auto bad_kind = j;
  bad_kind["result"]["kind"] = "nonsense";
  EXPECT_THROW(report::from_json(bad_kind.dump()), InvalidInput);
  auto short_class = j;
  short_class["inputs"][0]["class"] = {1, 2, 3};
  EXPECT_THROW(report::from_json(short_class.dump()), InvalidInput);
  auto wrong_type = j;
  wrong_type["result"]["data"]["gengon"] = "six";
  EXPECT_THROW(report::from_json(wrong_type.dump()), InvalidInput);
}

TEST(Report, SchemaVersionMismatch) {
  auto j = nlohmann::json::parse(report::to_json(report::ReportDocument{}));
  j["schema_version"] = report::kSchemaVersion + 1;
  EXPECT_THROW(report::from_json(j.dump()), InvalidInput);
  j.erase("schema_version");
  EXPECT_THROW(report::from_json(j.dump()), InvalidInput);
}

}  // namespace
