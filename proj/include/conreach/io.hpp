#pragma once

// JSON files and reports. Rationals travel as canonical strings.

#include "conreach/decide.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace conreach {

using Json = nlohmann::json;

struct Options {
  std::optional<int> cap;  ///< unset when the file does not say
  double tol = 1e-9;
};

/// Either a constrained system or a raw map given by its graph.
struct SystemFile {
  std::optional<Sigma> sys;
  std::optional<Polyhedron> y;
  std::optional<ConstrainedMap> map;
  Options options;

  bool is_system() const { return sys.has_value(); }
};

// Readers. Errors are ParseError with a JSON pointer to the offending field.

Rational rational_from_json(const Json& j, const std::string& path);
/// `cols` fills in the width of a matrix written with no rows.
RatMatrix matrix_from_json(const Json& j, const std::string& path, Index cols = 0);
RatVector vector_from_json(const Json& j, const std::string& path);
Sigma sigma_from_json(const Json& j, const std::string& path = "/sigma");
Polyhedron polyhedron_from_json(const Json& j, const std::string& path = "/constraint");

SystemFile system_from_json(const Json& j);
SystemFile parse_system_text(std::string_view text);
SystemFile parse_system(const std::filesystem::path& path);

// Writers.

Json to_json(const Rational& x);
Json to_json(const RatVector& v);
Json to_json(const RatMatrix& m);
Json to_json(const Sigma& sys);
/// {"dim", "ineq", "eq"}; with_vrep adds {"vertices", "rays", "lineality"}.
Json to_json(const Polyhedron& p, bool with_vrep = false);
Json to_json(const Subspace& s);
Json to_json(const EigenCertificate& c);
Json to_json(const Certificate& c);

Json system_to_json(const SystemFile& f);

Json case_json(const CaseTag& tag);
Json subspaces_json(const SubspaceReport& r);
Json conditions_json(const Conditions& c);
Json sequences_json(const std::vector<SequenceRecord>& seqs);
Json report_to_json(const Report& r, double tol);
Json consistency_to_json(const ConsistencyReport& r);

/// Plain text rendering of any JSON document produced above.
std::string render_text(const Json& doc);

}  // namespace conreach
