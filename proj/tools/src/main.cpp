#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "enriques/decompose.hpp"
#include "enriques/errors.hpp"
#include "enriques/expression.hpp"
#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"
#include "enriques/report.hpp"
#include "enriques/verify.hpp"

using namespace enriques;

namespace {

enum Exit { kOk = 0, kInput = 1, kViolation = 2, kOverflow = 3 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::DecompositionNotFound:
    case ErrorKind::TheoremViolation: return kViolation;
    case ErrorKind::Overflow: return kOverflow;
    default: return kInput;
  }
}

struct Globals {
  std::string format = "text";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string output;
  bool timing = false;
};

report::InputClass resolve(const std::string& text) {
  const ClassExpression e = parse_class(text);
  return {text, e.resolved, EnriquesLattice::standard().norm(e.resolved)};
}

void certify(bool ok, const std::string& what, const std::string& why) {
  if (!ok) throw TheoremViolation(what + " failed verification: " + why);
}

int emit(const Globals& g, const report::ReportDocument& doc) {
  const std::string body = g.format == "json" ? report::to_json(doc) : report::to_text(doc);
  if (g.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(g.output);
    if (!out) {
      std::cerr << "error: cannot write " << g.output << "\n";
      return kInput;
    }
    out << body;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gonality invariants of line bundles on a generic Enriques surface"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", g.threads, "worker threads for verify and oracle-check (0 = all cores)");
  app.add_option("--seed", g.seed, "anchor sampling seed");
  app.add_option("--output", g.output, "write the report to FILE instead of stdout");
  app.add_flag("--timing", g.timing, "include elapsed seconds in the report");

  std::string expr;
  std::optional<std::int64_t> cap;
  std::int64_t radius = 2;
  std::string checks = "all";
  std::optional<std::int64_t> max_norm;
  bool no_fixtures = false;
  std::size_t anchors = 50;
  std::int64_t max_pairing = 8;

  auto with_expr = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("expr", expr, "class expression, e.g. \"let E1,E2 = isotropic(E1.E2=1); 3*E1 + 5*E2\"")
        ->required();
    sub->fallthrough();
    return sub;
  };
  auto* invariants = with_expr("invariants", "phi, mu, gengon, case, type and mingon bounds");
  auto* phi = with_expr("phi", "minimal pairing with an isotropic class");
  auto* mu = with_expr("mu", "minimal B.L - 2 over B^2 = 4, phi(B) = 2");
  mu->add_option("--cap", cap, "largest B.L examined (default 2 phi + 2)");
  auto* gengon = with_expr("gengon", "gonality of a general curve in |L|");
  auto* classify = with_expr("classify", "case and extremal type");
  auto* decompose = with_expr("decompose", "L as a combination of at most 10 isotropic classes");
  auto* frame = with_expr("ten-frame", "the ten isotropic F with F.D = 3 for D^2 = 10, phi = 3");
  auto* extremal = with_expr("extremal", "witnesses for L^2 = phi^2 or phi^2 + phi - 2");

  auto* verify = app.add_subcommand("verify", "exhaustive sweep of the gonality statements over a box");
  verify->add_option("--radius", radius, "coordinate box radius")->check(CLI::Range(1, 6));
  verify->add_option("--checks", checks, "all or a comma separated list");
  verify->add_option("--max-norm", max_norm, "skip classes with larger L^2");
  verify->add_flag("--no-fixtures", no_fixtures, "do not inject the type constructions");
  verify->fallthrough();

  auto* oracle_cmd = app.add_subcommand("oracle-check", "coset enumerator against a brute-force box scan");
  oracle_cmd->add_option("--radius", radius, "anchor coordinate radius")->check(CLI::Range(1, 6));
  oracle_cmd->add_option("--anchors", anchors, "number of random anchors")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-pairing", max_pairing, "queries c = 1..N")->check(CLI::PositiveNumber);
  oracle_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kInput;
  }

  report::ReportDocument doc;
  doc.command = app.get_subcommands().front()->get_name();
  for (int i = 1; i < argc; ++i) doc.arguments.emplace_back(argv[i]);
  const auto& lat = EnriquesLattice::standard();
  int status = kOk;

  try {
    if (verify->parsed()) {
      SweepSpec spec;
      spec.region.radius = radius;
      spec.max_norm = max_norm;
      spec.checks = parse_checks(checks);
      spec.inject_fixtures = !no_fixtures;
      spec.threads = g.threads;
      SweepReport r = run_sweep(lat, spec);
      std::cerr << "verify: " << r.tested() << " classes, " << r.failures() << " failures, " << r.elapsed_seconds
                << " s\n";
      if (!g.timing) r.elapsed_seconds = 0;
      if (!r.passed()) status = kViolation;
      doc.result = std::move(r);
    } else if (oracle_cmd->parsed()) {
      OracleSpec spec;
      spec.radius = radius;
      spec.anchors = anchors;
      spec.seed = g.seed;
      spec.max_pairing = max_pairing;
      spec.threads = g.threads;
      OracleReport r = oracle_check(lat, spec);
      std::cerr << "oracle-check: " << r.queries << " queries, " << r.solutions << " solutions, "
                << r.mismatches.size() << " mismatches, " << r.elapsed_seconds << " s\n";
      if (!g.timing) r.elapsed_seconds = 0;
      if (!r.passed()) status = kViolation;
      doc.result = std::move(r);
    } else {
      const report::InputClass in = resolve(expr);
      doc.inputs.push_back(in);
      const LatticeClass& L = in.cls;
      if (invariants->parsed()) {
        doc.result = generic_gonality(lat, L);
      } else if (phi->parsed()) {
        doc.result = report::PhiResult{in.L_squared, min_pairing_isotropic(lat, L)};
      } else if (mu->parsed()) {
        const std::int64_t p = min_pairing_isotropic(lat, L).value;
        doc.result = report::MuReport{in.L_squared, p, mu_capped(lat, L, p, cap)};
      } else if (gengon->parsed()) {
        const GonalityReport r = generic_gonality(lat, L);
        doc.result = report::GengonResult{r.L_squared, r.phi.value, r.gengon, r.classification.case_tag, r.mingon};
      } else if (classify->parsed()) {
        const std::int64_t p = min_pairing_isotropic(lat, L).value;
        doc.result = report::ClassifyResult{in.L_squared, p, classify_with_phi(lat, L, p)};
      } else if (decompose->parsed()) {
        Decomposition d = isotropic_decompose(lat, L);
        std::string why;
        certify(verify_decomposition(lat, L, d, &why), "decomposition", why);
        doc.result = std::move(d);
      } else if (frame->parsed()) {
        IsotropicFrame f = ten_frame(lat, L);
        std::string why;
        certify(verify_frame(lat, L, f, &why), "ten-frame", why);
        doc.result = std::move(f);
      } else if (extremal->parsed()) {
        ExtremalCase x = extremal_decompose(lat, L);
        std::string why;
        certify(verify_extremal(lat, L, x, &why), "extremal witness", why);
        doc.result = std::move(x);
      }
    }
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n  " << expr << "\n  " << std::string(e.position(), ' ') << "^\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kViolation;
  }

  const int written = emit(g, doc);
  return written != kOk ? written : status;
}
