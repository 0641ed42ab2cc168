#include "psdrigid/exact.hpp"

#include "psdrigid/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace psdrigid {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(const std::string& s) {
    if (s.empty()) throw SchemaError("empty integer literal");
    std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (pos == s.size()) throw SchemaError("malformed integer literal '" + s + "'");
    for (std::size_t i = pos; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw SchemaError("malformed integer literal '" + s + "'");
    cpp_int v(s.substr(pos));
    return s[0] == '-' ? cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const cpp_int num = parse_integer(text.substr(0, slash));
        const cpp_int den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw SchemaError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_integer(text));
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
        throw SchemaError("malformed decimal literal '" + text + "'");
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::string digits = (whole == "-" || whole == "+" || whole.empty()) ? "0" : whole;
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    cpp_int magnitude = boost::multiprecision::abs(parse_integer(digits)) * scale + cpp_int(frac);
    return Rational(negative ? cpp_int(-magnitude) : magnitude, scale);
}

std::string rational_to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    // mantissa * 2^53 is an integer for every finite double
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    Rational r(scaled);
    const int shift = exponent - 53;
    cpp_int power = 1;
    power <<= std::abs(shift);
    return shift >= 0 ? Rational(r * power) : Rational(r / power);
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

int sign_of(const Rational& r) { return r.sign(); }

SignedRoot root_product(const SignedRoot& x, const SignedRoot& y) {
    SignedRoot p;
    p.sign = x.sign * y.sign;
    p.square = p.sign == 0 ? Rational(0) : Rational(x.square * y.square);
    return p;
}

SignedRoot root_negate(SignedRoot x) {
    x.sign = -x.sign;
    return x;
}

int root_sum_sign(const SignedRoot& x, const SignedRoot& y) {
    if (x.sign == 0) return y.sign;
    if (y.sign == 0) return x.sign;
    if (x.sign == y.sign) return x.sign;
    if (x.square == y.square) return 0;
    return x.square > y.square ? x.sign : y.sign;
}

std::array<SignedRoot, 2> exact_rank_one_vector(const std::array<Rational, 3>& upper) {
    const Rational& x11 = upper[0];
    const Rational& x12 = upper[1];
    const Rational& x22 = upper[2];
    if (x11 < 0 || x22 < 0 || x11 * x22 != x12 * x12 || (x11 == 0 && x22 == 0))
        throw PreconditionError("exact_rank_one_vector: factor is not psd of rank one");
    std::array<SignedRoot, 2> a;
    if (x11 > 0) {
        a[0] = {1, x11};
        a[1] = {sign_of(x12), x22};
    } else {
        a[0] = {0, 0};
        a[1] = {1, x22};
    }
    return a;
}

int exact_det2_sign(const std::array<SignedRoot, 2>& u, const std::array<SignedRoot, 2>& v) {
    return root_sum_sign(root_product(u[0], v[1]), root_negate(root_product(u[1], v[0])));
}

int exact_dot_sign(const std::array<SignedRoot, 2>& u, const std::array<SignedRoot, 2>& v) {
    return root_sum_sign(root_product(u[0], v[0]), root_product(u[1], v[1]));
}

int exact_rank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

}  // namespace psdrigid
