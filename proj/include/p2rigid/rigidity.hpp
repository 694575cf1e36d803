// Classification of the action on P^2, the rigidity verdict with its
// evidence, and the battery of named checks against the catalog.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "p2rigid/orbits.hpp"
#include "p2rigid/picard.hpp"
#include "p2rigid/projgroup.hpp"

namespace p2r {

using Json = nlohmann::ordered_json;

struct ActionClass {
  enum class Kind { Intransitive, Imprimitive, Primitive };
  Kind kind = Kind::Primitive;
  std::optional<ProjPoint> fixed_point;   // Intransitive
  std::vector<ProjPoint> distinguished;   // Imprimitive: the small orbit
  std::string warning;                    // set when that orbit has size 2
  std::string name() const;
};

/// Intransitive if some point is fixed, Imprimitive if there is an orbit of
/// size <= 3, otherwise Primitive.
ActionClass classify_action(const GroupData& g);

/// "A4" or "S4" when the order and element-order histogram match.
std::optional<std::string> is_A4_or_S4(const GroupData& g);

struct CheckResult {
  std::string name;
  std::string citation;
  bool pass = false;
  Json evidence;
  Json to_json() const;
};

struct Verdict {
  bool rigid = true;
  ActionClass action;
  /// "fixed point", "size-4 orbit", "link obstruction" or "" when rigid.
  std::string rule;
  std::optional<LinkDescriptor> witness;
  std::vector<ProjPoint> witness_orbit;
  /// One entry per blown-up point set; pass means no obstruction found.
  std::vector<CheckResult> reasons;
  std::string note;
  Json to_json() const;
  std::string to_text() const;
};

extern const char* const kVerdictCaveat;

/// Blows up every union of small orbits of total size <= 8 (plus a generic
/// member of each line family), and reports the links. Not rigid if a point
/// is fixed, or if some set in general position admits a conic bundle or a
/// rank-1 contraction other than P^2.
Verdict rigidity_verdict(const GroupData& g);

struct PaperReport {
  std::string header;
  std::vector<CheckResult> checks;  // sorted by name
  bool all_pass() const;
  Json to_json() const;
  std::string to_text() const;
};

const std::vector<std::string>& check_names();
/// Runs every check, or only `only`; InputError for an unknown name.
PaperReport verify_paper(const std::string& only = "");

}  // namespace p2r
