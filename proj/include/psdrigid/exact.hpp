#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <string>
#include <vector>

namespace psdrigid {

using Rational = boost::multiprecision::cpp_rational;

// Parses "n", "n/d" (d != 0) or a decimal literal such as "-0.25".
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);
// Exact value of a finite double.
Rational rational_from_double(double x);
double rational_to_double(const Rational& r);

int sign_of(const Rational& r);

// A real number of the form sign * sqrt(square), square >= 0. Coordinates of
// a rank-one factor's vector have this form when the factor is rational.
struct SignedRoot {
    int sign = 0;
    Rational square = 0;
};

SignedRoot root_product(const SignedRoot& x, const SignedRoot& y);
SignedRoot root_negate(SignedRoot x);
// Exact sign of x + y.
int root_sum_sign(const SignedRoot& x, const SignedRoot& y);

// Rank-one vector of a rational 2x2 psd rank-one matrix (x11, x12, x22),
// first nonzero coordinate positive.
std::array<SignedRoot, 2> exact_rank_one_vector(const std::array<Rational, 3>& upper);

int exact_det2_sign(const std::array<SignedRoot, 2>& u, const std::array<SignedRoot, 2>& v);
int exact_dot_sign(const std::array<SignedRoot, 2>& u, const std::array<SignedRoot, 2>& v);

// Rank of a rational matrix by fraction-exact Gaussian elimination.
int exact_rank(std::vector<std::vector<Rational>> rows);

}  // namespace psdrigid
