#include "nemcone/io.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace nemcone {

namespace {

std::string integer_string(const Rational& q) {
  if (!is_integral(q)) throw std::logic_error("non-integer entry in primitive row");
  return to_string(q);
}

std::string porta_terms(const RatVector& row) {
  std::string out;
  for (Index k = 0; k < row.size(); ++k) {
    if (row(k) == 0) continue;
    out += row(k) > 0 ? "+" : "-";
    Rational a = abs(row(k));
    if (a != 1) out += integer_string(a);
    out += "x" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

std::string row_tag(size_t k) {
  std::string num = std::to_string(k);
  return "(" + std::string(num.size() < 3 ? 3 - num.size() : 0, ' ') + num + ") ";
}

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Drops a leading "(  k)" row tag.
std::string strip_tag(const std::string& s) {
  if (s.empty() || s[0] != '(') return s;
  size_t close = s.find(')');
  if (close == std::string::npos) return s;
  return trim(std::string_view(s).substr(close + 1));
}

bool is_keyword(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s)
    if (!std::isupper(static_cast<unsigned char>(ch)) && ch != '_' &&
        !std::isdigit(static_cast<unsigned char>(ch)))
      return false;
  return true;
}

Rational parse_integer(const std::string& tok, int line) {
  if (tok.empty()) fail_at(line, "empty coefficient");
  size_t start = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
  if (start == tok.size()) fail_at(line, "empty coefficient");
  for (size_t k = start; k < tok.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(tok[k])))
      fail_at(line, "non-integer entry '" + tok + "'");
  return parse_rational(tok);
}

RatVector parse_linear_form(const std::string& lhs, Index dim, int line) {
  RatVector row = zero_vector(dim);
  std::string s;
  for (char ch : lhs)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0") return row;
  size_t pos = 0;
  if (s.empty()) fail_at(line, "empty left-hand side");
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail_at(line, "expected '+' or '-' before term");
    }
    size_t digits = pos;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    if (digits < s.size() && s[digits] == '/') fail_at(line, "non-integer coefficient");
    Rational coef = digits > pos ? parse_integer(s.substr(pos, digits - pos), line) : Rational(1);
    if (digits >= s.size() || s[digits] != 'x') fail_at(line, "expected variable x<k>");
    size_t idx = digits + 1, end = idx;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    if (end == idx) fail_at(line, "missing variable index");
    long k = std::stol(s.substr(idx, end - idx));
    if (k < 1 || k > dim) fail_at(line, "variable x" + std::to_string(k) + " outside DIM");
    row(k - 1) += sign * coef;
    pos = end;
  }
  return row;
}

Json row_json(const RatVector& row) {
  Json out = Json::array();
  for (Index k = 0; k < row.size(); ++k) {
    const Integer z = numerator(row(k));
    if (denominator(row(k)) != 1) throw std::logic_error("non-integer entry in JSON row");
    if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
      out.push_back(z.convert_to<long long>());
    else
      out.push_back(z.str());
  }
  return out;
}

Rational json_scalar(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("expected an integer or a rational string, got " + v.dump());
}

std::vector<RatVector> rows_from_json(const Json& a, Index dim, const char* what) {
  if (!a.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<RatVector> out;
  for (const auto& r : a) {
    if (!r.is_array() || static_cast<Index>(r.size()) != dim)
      throw ParseError(std::string(what) + ": every row needs ambient_dim entries");
    RatVector v(dim);
    for (Index k = 0; k < dim; ++k) v(k) = json_scalar(r[static_cast<size_t>(k)]);
    out.push_back(v);
  }
  return out;
}

std::vector<RatVector> primitive_rows(const std::vector<RatVector>& rows) {
  std::vector<RatVector> out;
  for (const auto& r : rows) out.push_back(primitive(r));
  return out;
}

std::vector<RatVector> line_rows(const std::vector<RatVector>& rows) {
  std::vector<RatVector> out;
  for (const auto& r : rows) out.push_back(line_canonical(r));
  return out;
}

Json rows_json(const std::vector<RatVector>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(row_json(r));
  return out;
}

std::string latex_coefficient(const Rational& a) {
  if (is_integral(a)) return to_string(a);
  return "\\tfrac{" + numerator(a).str() + "}{" + denominator(a).str() + "}";
}

}  // namespace

std::string porta_write(const Cone& c, PortaRep which) {
  std::ostringstream out;
  out << "DIM = " << c.ambient_dim << "\n\n";
  if (which == PortaRep::hrep) {
    if (!c.hrep) throw std::invalid_argument("cone has no H-representation");
    out << "INEQUALITIES_SECTION\n";
    size_t k = 0;
    for (const auto& r : c.hrep->inequalities)
      out << row_tag(++k) << porta_terms(primitive(r)) << " >= 0\n";
    for (const auto& r : c.hrep->equations)
      out << row_tag(++k) << porta_terms(line_canonical(r)) << " == 0\n";
  } else {
    if (!c.vrep) throw std::invalid_argument("cone has no V-representation");
    if (!c.vrep->lineality.empty())
      throw std::invalid_argument("a PORTA CONE_SECTION cannot express lineality");
    out << "CONE_SECTION\n";
    size_t k = 0;
    for (const auto& r : c.vrep->rays) {
      RatVector p = primitive(r);
      out << row_tag(++k);
      for (Index i = 0; i < p.size(); ++i) out << (i ? " " : "") << integer_string(p(i));
      out << "\n";
    }
  }
  out << "END\n";
  return out.str();
}

Cone porta_read(std::string_view text) {
  enum class Section { none, ineq, cone, done };
  Section section = Section::none;
  Index dim = -1;
  HRep h;
  VRep v;
  bool saw_ineq = false, saw_cone = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty()) continue;
    if (section == Section::done) fail_at(line, "content after END");
    if (s.rfind("DIM", 0) == 0) {
      if (dim >= 0) fail_at(line, "duplicate DIM");
      size_t eq = s.find('=');
      if (eq == std::string::npos || trim(std::string_view(s).substr(3, eq - 3)) != "")
        fail_at(line, "malformed DIM line");
      std::string num = trim(std::string_view(s).substr(eq + 1));
      Rational d = parse_integer(num, line);
      if (d < 0) fail_at(line, "negative DIM");
      dim = static_cast<Index>(d.convert_to<long long>());
      continue;
    }
    if (is_keyword(s)) {
      if (dim < 0) throw ParseError("missing DIM");
      if (s == "INEQUALITIES_SECTION") {
        section = Section::ineq;
        saw_ineq = true;
      } else if (s == "CONE_SECTION") {
        section = Section::cone;
        saw_cone = true;
      } else if (s == "END") {
        section = Section::done;
      } else {
        fail_at(line, "unsupported keyword " + s);
      }
      continue;
    }
    if (dim < 0) throw ParseError("missing DIM");
    s = strip_tag(s);
    if (section == Section::ineq) {
      size_t op = s.find_first_of("<>=");
      if (op == std::string::npos) fail_at(line, "missing relation");
      size_t op_end = op;
      while (op_end < s.size() && (s[op_end] == '<' || s[op_end] == '>' || s[op_end] == '='))
        ++op_end;
      std::string rel = s.substr(op, op_end - op);
      std::string rhs = trim(std::string_view(s).substr(op_end));
      if (parse_integer(rhs, line) != 0) fail_at(line, "right-hand side must be 0 for a cone");
      RatVector row = parse_linear_form(s.substr(0, op), dim, line);
      if (rel == ">=")
        h.inequalities.push_back(row);
      else if (rel == "<=")
        h.inequalities.push_back(-row);
      else if (rel == "==" || rel == "=")
        h.equations.push_back(row);
      else
        fail_at(line, "unknown relation '" + rel + "'");
    } else if (section == Section::cone) {
      std::istringstream toks(s);
      std::string tok;
      RatVector row(dim);
      Index k = 0;
      while (toks >> tok) {
        if (k == dim) fail_at(line, "expected " + std::to_string(dim) + " entries");
        row(k++) = parse_integer(tok, line);
      }
      if (k != dim) fail_at(line, "expected " + std::to_string(dim) + " entries");
      v.rays.push_back(row);
    } else {
      fail_at(line, "data outside a section");
    }
  }
  if (dim < 0) throw ParseError("missing DIM");
  if (section != Section::done) throw ParseError("missing END");
  Cone c;
  c.ambient_dim = dim;
  if (saw_ineq) c.hrep = h;
  if (saw_cone) c.vrep = v;
  if (!saw_ineq && !saw_cone) throw ParseError("no INEQUALITIES_SECTION or CONE_SECTION");
  return c;
}

Json cone_to_json(const Cone& c) {
  Json j;
  j["ambient_dim"] = c.ambient_dim;
  if (c.hrep) {
    j["hrep"]["inequalities"] = rows_json(primitive_rows(c.hrep->inequalities));
    j["hrep"]["equations"] = rows_json(line_rows(c.hrep->equations));
  }
  if (c.vrep) {
    j["vrep"]["rays"] = rows_json(primitive_rows(c.vrep->rays));
    j["vrep"]["lineality"] = rows_json(line_rows(c.vrep->lineality));
  }
  return j;
}

Cone cone_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
    throw ParseError("cone JSON needs an integer ambient_dim");
  Cone c;
  c.ambient_dim = j["ambient_dim"].get<Index>();
  if (c.ambient_dim < 0) throw ParseError("negative ambient_dim");
  if (j.contains("hrep")) {
    const Json& h = j["hrep"];
    HRep rep;
    rep.inequalities = rows_from_json(h.value("inequalities", Json::array()), c.ambient_dim, "inequalities");
    rep.equations = rows_from_json(h.value("equations", Json::array()), c.ambient_dim, "equations");
    c.hrep = rep;
  }
  if (j.contains("vrep")) {
    const Json& v = j["vrep"];
    VRep rep;
    rep.rays = rows_from_json(v.value("rays", Json::array()), c.ambient_dim, "rays");
    rep.lineality = rows_from_json(v.value("lineality", Json::array()), c.ambient_dim, "lineality");
    c.vrep = rep;
  }
  if (!c.hrep && !c.vrep) throw ParseError("cone JSON needs hrep or vrep");
  return c;
}

Json class_to_json(const SpaceId& s, const std::vector<std::string>& basis, const RatVector& coords) {
  if (static_cast<Index>(basis.size()) != coords.size())
    throw std::invalid_argument("basis and coordinates differ in length");
  Json j;
  j["space"]["n"] = s.n;
  j["space"]["m"] = s.m;
  j["basis"] = basis;
  Json cs = Json::array();
  for (Index k = 0; k < coords.size(); ++k) cs.push_back(to_string(coords(k)));
  j["coords"] = cs;
  return j;
}

RatVector class_coords_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
    throw ParseError("class JSON needs a coords array");
  const Json& cs = j["coords"];
  if (j.contains("basis") && j["basis"].size() != cs.size())
    throw ParseError("basis and coords differ in length");
  RatVector v(static_cast<Index>(cs.size()));
  for (size_t k = 0; k < cs.size(); ++k) v(static_cast<Index>(k)) = json_scalar(cs[k]);
  return v;
}

Json map_to_json(const LinearMap& map) {
  Json j;
  j["source"] = map.source;
  j["target"] = map.target;
  j["source_basis"] = map.source_basis;
  j["target_basis"] = map.target_basis;
  Json rows = Json::array();
  for (Index r = 0; r < map.matrix.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < map.matrix.cols(); ++c) row.push_back(to_string(map.matrix(r, c)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

LinearMap map_from_json(const Json& j) {
  LinearMap m;
  try {
    m.source = j.at("source").get<std::string>();
    m.target = j.at("target").get<std::string>();
    m.source_basis = j.at("source_basis").get<std::vector<std::string>>();
    m.target_basis = j.at("target_basis").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("map JSON: ") + e.what());
  }
  const Json& rows = j.at("matrix");
  const Index nr = static_cast<Index>(m.target_basis.size());
  const Index nc = static_cast<Index>(m.source_basis.size());
  if (!rows.is_array() || static_cast<Index>(rows.size()) != nr)
    throw ParseError("map JSON: matrix needs one row per target basis element");
  m.matrix = RatMatrix::Constant(nr, nc, Rational(0));
  for (Index r = 0; r < nr; ++r) {
    const Json& row = rows[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != nc)
      throw ParseError("map JSON: matrix rows need one entry per source basis element");
    for (Index c = 0; c < nc; ++c) m.matrix(r, c) = json_scalar(row[static_cast<size_t>(c)]);
  }
  return m;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string latex_symbol(const std::string& name) {
  static const std::string caron = "\xcc\x8c";
  std::string s = name;
  bool check = false;
  if (size_t at = s.find(caron); at != std::string::npos) {
    s.erase(at, caron.size());
    check = true;
  }
  std::string base = s, sup, sub;
  auto starts = [&](const std::string& p) { return s.rfind(p, 0) == 0; };
  auto tail = [&](const std::string& p) { return s.substr(p.size()); };
  if (starts("b*")) {
    base = "b";
    sup = "*";
    sub = tail("b*");
  } else if (starts("b") && s.size() > 1) {
    base = "b";
    sub = tail("b");
  } else if (starts("D") && s.size() > 1 && std::isdigit(static_cast<unsigned char>(s[1]))) {
    base = "D";
    size_t us = s.find('_');
    sup = s.substr(1, us == std::string::npos ? std::string::npos : us - 1);
    if (us != std::string::npos) sub = s.substr(us + 1);
  } else if (starts("λ")) {
    base = "\\lambda";
  } else if (starts("ω")) {
    base = "\\omega";
  } else if (starts("δ") || starts("Δ")) {
    base = starts("δ") ? "\\delta" : "\\Delta";
    sub = tail("δ");
    if (sub == "irr") sub = "\\mathrm{irr}";
  }
  std::string out = check ? "\\check{" + base + "}" : base;
  if (!sup.empty()) out += "^{" + sup + "}";
  if (!sub.empty()) out += "_{" + sub + "}";
  return out;
}

std::string latex_inequalities(const std::vector<RatVector>& rows, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "\\begin{align*}\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    const RatVector& row = rows[r];
    if (row.size() != static_cast<Index>(names.size()))
      throw std::invalid_argument("row length differs from the number of names");
    std::string lhs;
    for (Index k = 0; k < row.size(); ++k) {
      if (row(k) == 0) continue;
      Rational a = abs(row(k));
      if (lhs.empty())
        lhs += row(k) < 0 ? "-" : "";
      else
        lhs += row(k) < 0 ? " - " : " + ";
      if (a != 1) lhs += latex_coefficient(a) + " ";
      lhs += latex_symbol(names[static_cast<size_t>(k)]);
    }
    if (lhs.empty()) lhs = "0";
    out << "  " << lhs << " &\\geq 0" << (r + 1 < rows.size() ? " \\\\" : "") << "\n";
  }
  out << "\\end{align*}\n";
  return out.str();
}

std::string latex_rays(const std::vector<RatVector>& rays, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "\\begin{tabular}{r|" << std::string(names.size(), 'r') << "}\n";
  out << "  ";
  for (const auto& n : names) out << " & $" << latex_symbol(n) << "$";
  out << " \\\\\n  \\hline\n";
  for (size_t r = 0; r < rays.size(); ++r) {
    if (rays[r].size() != static_cast<Index>(names.size()))
      throw std::invalid_argument("ray length differs from the number of names");
    out << "  " << r + 1;
    for (Index k = 0; k < rays[r].size(); ++k) out << " & $" << latex_coefficient(rays[r](k)) << "$";
    out << " \\\\\n";
  }
  out << "\\end{tabular}\n";
  return out.str();
}

}  // namespace nemcone
