#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ghv/hvector.hpp"
#include "ghv/ihsheaf.hpp"
#include "ghv/polytope.hpp"

namespace ghv {

/// Bad input file or parameters (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// On-disk polytope: {"dim", "field", "vertices", "name"?}. Rational scalars
/// are "p/q" strings; in a quadratic file a coordinate may also be the pair
/// ["p/q", "r/s"] meaning p/q + (r/s) sqrt(d).
struct PolytopeFile {
  std::string name;
  std::size_t dim = 0;
  long radicand = 0;  // 0: rational
  std::vector<Vector> vertices;

  /// Throws InputError carrying the JSON path of the offending value.
  static PolytopeFile parse(const std::string& text);
  static PolytopeFile from_polytope(const Polytope& p, std::string name);
  nlohmann::ordered_json to_json() const;
  /// to_json() text with one line per vertex.
  std::string dump() const;
  /// Validated polytope; InputError if the points are not a valid vertex set.
  Polytope polytope() const;
};

nlohmann::ordered_json scalar_to_json(const Scalar& x, long radicand);
Scalar scalar_from_json(const nlohmann::ordered_json& j, long radicand, const std::string& where);

struct Report {
  std::string command;
  PolytopeFile input;
  std::optional<Vector> translation;
  IntPolynomial h;
  std::optional<BoundsReport> bounds;
  std::optional<IHReport> ih;
  /// Named pass/fail checks in evaluation order.
  std::vector<std::pair<std::string, bool>> checks;

  /// First failing check, empty when everything passed.
  std::string failed_check() const;
  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
};

constexpr const char* kReportSchemaId = "ghv-report/1";

/// P moved so that the origin is interior (by minus the vertex centroid) plus the shift used.
struct Prepared {
  Polytope polytope;
  std::optional<Vector> translation;
};
Prepared prepare(const PolytopeFile& file);

Report run_hvector(const PolytopeFile& file);
/// InputError when P is not centrally symmetric.
Report run_check_bounds(const PolytopeFile& file);
Report run_ih(const PolytopeFile& file, int degree_cap, int max_dim);

}  // namespace ghv
