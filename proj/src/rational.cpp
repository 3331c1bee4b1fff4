#include "nemcone/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace nemcone {

RatVector make_vector(std::initializer_list<Rational> entries) {
  RatVector v(static_cast<Index>(entries.size()));
  Index k = 0;
  for (const auto& e : entries) v(k++) = e;
  return v;
}

RatVector make_vector(const std::vector<Rational>& entries) {
  RatVector v(static_cast<Index>(entries.size()));
  for (Index k = 0; k < v.size(); ++k) v(k) = entries[static_cast<size_t>(k)];
  return v;
}

RatVector zero_vector(Index dim) { return RatVector::Constant(dim, Rational(0)); }

RatVector unit_vector(Index dim, Index k) {
  RatVector v = zero_vector(dim);
  v(k) = 1;
  return v;
}

RatMatrix stack_rows(const std::vector<RatVector>& rows, Index cols) {
  RatMatrix m = RatMatrix::Constant(static_cast<Index>(rows.size()), cols, Rational(0));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("stack_rows: ragged rows");
    m.row(static_cast<Index>(r)) = rows[r].transpose();
  }
  return m;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](std::string_view t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(Integer(num), d);
}

std::string to_string(const Rational& q) { return q.str(); }

std::string format_vector(const RatVector& v) {
  std::string out = "(";
  for (Index k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += to_string(v(k));
  }
  return out + ")";
}

bool is_zero(const RatVector& v) {
  for (Index k = 0; k < v.size(); ++k)
    if (v(k) != 0) return false;
  return true;
}

bool is_integral(const Rational& q) { return denominator(q) == 1; }

bool lex_less(const RatVector& a, const RatVector& b) {
  for (Index k = 0; k < a.size() && k < b.size(); ++k) {
    if (a(k) < b(k)) return true;
    if (b(k) < a(k)) return false;
  }
  return a.size() < b.size();
}

bool equal(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return false;
  for (Index k = 0; k < a.size(); ++k)
    if (a(k) != b(k)) return false;
  return true;
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

Rational factorial(int n) {
  Rational r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

}  // namespace nemcone
