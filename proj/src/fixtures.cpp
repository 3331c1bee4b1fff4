#include "nemcone/fixtures.hpp"

#include "nemcone/fixture_data.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nemcone {

namespace {

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

int to_int(const std::string& tok, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  fail_at(line, "expected an integer, got '" + tok + "'");
}

Rational to_rational(const std::string& tok, int line) {
  try {
    return parse_rational(tok);
  } catch (const std::exception&) {
    fail_at(line, "expected a rational, got '" + tok + "'");
  }
}

}  // namespace

const std::vector<RatVector>& Fixtures::nef_rays(int n, int m) const {
  auto it = nef.find({n, m});
  if (it == nef.end())
    throw std::out_of_range("no nef fixture for X_{" + std::to_string(n) + "," + std::to_string(m) + "}");
  return it->second;
}

const BoundarySum& Fixtures::sum(const std::string& name) const {
  auto it = sums.find(name);
  if (it == sums.end()) throw std::out_of_range("no boundary sum fixture named " + name);
  return it->second;
}

Fixtures parse_fixtures(std::string_view text) {
  enum class Block { none, nef, sum, distinguished };
  Fixtures f;
  Block block = Block::none;
  std::pair<int, int> nef_key{0, 0};
  std::string name;
  Index dim = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto toks = split(raw);
    if (toks.empty()) continue;
    if (toks[0].front() == '[') {
      std::string header = raw.substr(raw.find('[') + 1);
      size_t close = header.find(']');
      if (close == std::string::npos) fail_at(line, "unterminated block header");
      auto h = split(header.substr(0, close));
      if (h.empty()) fail_at(line, "empty block header");
      if (h[0] == "nef" && h.size() == 3) {
        nef_key = {to_int(h[1], line), to_int(h[2], line)};
        if (f.nef.count(nef_key)) fail_at(line, "duplicate nef block");
        dim = picard_number(make_space(nef_key.first, nef_key.second));
        f.nef[nef_key];
        block = Block::nef;
      } else if (h[0] == "sum" && h.size() == 3) {
        name = h[1];
        int n = to_int(h[2], line);
        if (f.sums.count(name)) fail_at(line, "duplicate sum " + name);
        f.sums.emplace(name, BoundarySum(make_space(n, n)));
        block = Block::sum;
      } else if (h[0] == "distinguished" && h.size() == 2) {
        name = h[1];
        block = Block::distinguished;
      } else {
        fail_at(line, "unknown block '" + header.substr(0, close) + "'");
      }
      continue;
    }
    switch (block) {
      case Block::none:
        fail_at(line, "data before the first block");
      case Block::nef: {
        if (static_cast<Index>(toks.size()) != dim)
          fail_at(line, "expected " + std::to_string(dim) + " entries for X_{" +
                            std::to_string(nef_key.first) + "," + std::to_string(nef_key.second) + "}");
        RatVector v(dim);
        for (Index k = 0; k < dim; ++k) v(k) = to_rational(toks[static_cast<size_t>(k)], line);
        f.nef[nef_key].push_back(v);
        break;
      }
      case Block::sum: {
        if (toks.size() < 3 || toks[1] != ":") fail_at(line, "expected 'coefficient : points'");
        BoundarySum& s = f.sums.at(name);
        PointSet side = 0;
        for (size_t k = 2; k < toks.size(); ++k) {
          int p = to_int(toks[k], line);
          if (p < 1 || p > s.space.n) fail_at(line, "point " + toks[k] + " out of range");
          side |= PointSet(1) << (p - 1);
        }
        if (cardinality(side) < 2 || cardinality(side) > s.space.n - 2)
          fail_at(line, "a side needs between 2 and n-2 points");
        try {
          s.add(label_of_side(s.space, side), to_rational(toks[0], line));
        } catch (const ParseError&) {
          throw;
        } catch (const std::exception& e) {
          fail_at(line, e.what());
        }
        break;
      }
      case Block::distinguished:
        if (toks.size() != 1) fail_at(line, "expected one point");
        if (f.distinguished.count(name)) fail_at(line, "duplicate distinguished point for " + name);
        f.distinguished[name] = to_int(toks[0], line);
        break;
    }
  }
  return f;
}

std::string_view builtin_fixture_text() { return generated::fixture_text; }

Fixtures load_fixtures(const std::optional<std::string>& path) {
  if (!path) return parse_fixtures(builtin_fixture_text());
  std::ifstream in(*path);
  if (!in) throw std::runtime_error("cannot read fixtures file " + *path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_fixtures(text.str());
  } catch (const ParseError& e) {
    throw ParseError(*path + ": " + e.what());
  }
}

}  // namespace nemcone
