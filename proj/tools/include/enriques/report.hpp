#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "enriques/decompose.hpp"
#include "enriques/invariants.hpp"
#include "enriques/isotropic_enum.hpp"
#include "enriques/lattice.hpp"
#include "enriques/verify.hpp"

namespace enriques::report {

inline constexpr int kSchemaVersion = 1;

struct InputClass {
  std::string expression;
  LatticeClass cls;
  std::int64_t L_squared = 0;
  friend bool operator==(const InputClass&, const InputClass&) = default;
};

struct PhiResult {
  std::int64_t L_squared = 0;
  IsotropicWitness phi;
  friend bool operator==(const PhiResult&, const PhiResult&) = default;
};

struct MuReport {
  std::int64_t L_squared = 0;
  std::int64_t phi = 0;
  MuResult mu;
  friend bool operator==(const MuReport&, const MuReport&) = default;
};

struct GengonResult {
  std::int64_t L_squared = 0;
  std::int64_t phi = 0;
  std::int64_t gengon = 0;
  CaseTag case_tag = CaseTag::Generic;
  MingonBounds mingon;
  friend bool operator==(const GengonResult&, const GengonResult&) = default;
};

struct ClassifyResult {
  std::int64_t L_squared = 0;
  std::int64_t phi = 0;
  Classification classification;
  friend bool operator==(const ClassifyResult&, const ClassifyResult&) = default;
};

using Result = std::variant<std::monostate, GonalityReport, PhiResult, MuReport, GengonResult, ClassifyResult,
                            Decomposition, IsotropicFrame, ExtremalCase, SweepReport, OracleReport>;

/// Scope flags carried by every document: classes are only known up to
/// numerical equivalence and the surface is assumed unnodal.
struct Caveats {
  bool numerical_equivalence_only = true;
  bool unnodal_model = true;
  friend bool operator==(const Caveats&, const Caveats&) = default;
};

struct ReportDocument {
  int schema_version = kSchemaVersion;
  std::string command;
  std::vector<std::string> arguments;
  std::vector<InputClass> inputs;
  Result result;
  Caveats caveats;
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// Pretty JSON, keys in a fixed order. elapsed_seconds is written only when
/// nonzero.
std::string to_json(const ReportDocument& doc);
/// Throws InvalidInput on malformed documents or a schema_version mismatch.
ReportDocument from_json(const std::string& text);

/// Plain aligned key/value table.
std::string to_text(const ReportDocument& doc);

}  // namespace enriques::report
