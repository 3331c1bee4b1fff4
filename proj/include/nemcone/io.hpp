#pragma once

#include "nemcone/cone.hpp"
#include "nemcone/moduli.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nemcone {

/// Thrown by the readers; the message starts with "line N:" when a line is
/// at fault.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

enum class PortaRep { hrep, vrep };

/// PORTA text. Rows are scaled to primitive integers. The H-representation
/// is an .ieq file (INEQUALITIES_SECTION, equations as "=="); the
/// V-representation is a .poi file with a CONE_SECTION and no lineality.
std::string porta_write(const Cone& c, PortaRep which);
Cone porta_read(std::string_view text);

/// {ambient_dim, hrep:{inequalities, equations}, vrep:{rays, lineality}},
/// rows as integer arrays. Absent representations are omitted.
Json cone_to_json(const Cone& c);
Cone cone_from_json(const Json& j);

/// {"space":{"n","m"}, "basis":[...], "coords":["5/3", ...]}.
Json class_to_json(const SpaceId& s, const std::vector<std::string>& basis,
                             const RatVector& coords);
RatVector class_coords_from_json(const Json& j);

/// {source, target, source_basis, target_basis, matrix}, entries as strings.
Json map_to_json(const LinearMap& map);
LinearMap map_from_json(const Json& j);

/// Deterministic text: two-space indentation, keys in insertion order of
/// the writers above, trailing newline.
std::string dump(const Json& j);

/// LaTeX symbol for a coordinate name such as "b*3", "D2_12", "δirr" or a
/// dual name carrying a combining caron.
std::string latex_symbol(const std::string& name);

/// Aligned inequalities `row · x ≥ 0`, one per line, over `names`.
std::string latex_inequalities(const std::vector<RatVector>& rows,
                               const std::vector<std::string>& names);
/// A tabular of rays with `names` as column headers.
std::string latex_rays(const std::vector<RatVector>& rays, const std::vector<std::string>& names);

}  // namespace nemcone
