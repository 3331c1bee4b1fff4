#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace nemcone {

// Expression templates are off so that the types compose with Eigen's own
// expression machinery.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RatVector = Vector<Rational>;
using RatMatrix = Matrix<Rational>;
using Index = Eigen::Index;

RatVector make_vector(std::initializer_list<Rational> entries);
RatVector make_vector(const std::vector<Rational>& entries);
RatVector zero_vector(Index dim);
RatVector unit_vector(Index dim, Index k);

/// Stacks `rows` into a matrix with `cols` columns; rows must all have that
/// length.
RatMatrix stack_rows(const std::vector<RatVector>& rows, Index cols);

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// "(a, b, c)" with each entry in lowest terms.
std::string format_vector(const RatVector& v);

bool is_zero(const RatVector& v);
bool is_integral(const Rational& q);

/// Lexicographic order on equal-length vectors.
bool lex_less(const RatVector& a, const RatVector& b);
bool equal(const RatVector& a, const RatVector& b);

Rational binomial(int n, int k);
Rational factorial(int n);

}  // namespace nemcone
