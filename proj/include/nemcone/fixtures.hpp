#pragma once

#include "nemcone/io.hpp"
#include "nemcone/moduli.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nemcone {

/// Quoted input data: nef cone rays of the example spaces and the two
/// boundary sums used by the counterexample and the L₇ class.
struct Fixtures {
  std::map<std::pair<int, int>, std::vector<RatVector>> nef;  // keyed by (n, m)
  std::map<std::string, BoundarySum> sums;
  std::map<std::string, int> distinguished;

  const std::vector<RatVector>& nef_rays(int n, int m) const;
  const BoundarySum& sum(const std::string& name) const;
};

/// Throws ParseError ("line N: ...") on malformed text.
Fixtures parse_fixtures(std::string_view text);

/// The text compiled in from data/fixtures.txt.
std::string_view builtin_fixture_text();

/// Reads `path` when given, the built-in text otherwise.
Fixtures load_fixtures(const std::optional<std::string>& path = std::nullopt);

}  // namespace nemcone
