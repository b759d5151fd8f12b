#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "ccc/errors.hpp"

namespace ccc {

// All arithmetic is exact: arbitrary-precision integers and rationals,
// no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor division (cpp_int's operator/ truncates toward zero).
inline Int int_floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}
Int int_gcd(const Int& a, const Int& b);
Int int_lcm(const Int& a, const Int& b);

// Dense row-major integer matrix. rows/cols may be zero; such matrices are
// legitimate (rank-0 lattices occur as fan data).
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    IntMat(int r, int c, std::vector<Int> entries);

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(int n);
    static IntMat zero(int r, int c) { return IntMat(r, c); }
    static IntMat from_rows(const std::vector<IntVec>& rows, int cols);
    static IntMat from_cols(const std::vector<IntVec>& cols, int rows);

    IntVec row(int i) const;
    IntVec col(int j) const;
    std::vector<IntVec> row_list() const;
    std::vector<IntVec> col_list() const;

    bool operator==(const IntMat& o) const = default;
};

IntMat mul(const IntMat& a, const IntMat& b);
IntMat transpose(const IntMat& a);
IntMat hstack(const IntMat& a, const IntMat& b);
IntMat vstack(const IntMat& a, const IntMat& b);
IntMat neg(const IntMat& a);
IntVec mul(const IntMat& a, const IntVec& x);
RatVec mul(const IntMat& a, const RatVec& x);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const IntVec& a, const RatVec& b);
Rat dot(const RatVec& a, const RatVec& b);

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_neg(const IntVec& a);
IntVec vec_scale(const Int& c, const IntVec& a);
RatVec rat_add(const RatVec& a, const RatVec& b);
RatVec rat_sub(const RatVec& a, const RatVec& b);
RatVec rat_scale(const Rat& c, const RatVec& a);
RatVec to_rat(const IntVec& a);
bool is_zero(const IntVec& a);
bool is_zero(const RatVec& a);

// Divides by the content; zero vectors are left alone.
IntVec primitive(IntVec v);
// Clears denominators and divides by the content; exact direction of v.
IntVec primitive_of_rat(const RatVec& v);

// Strict lexicographic order, used everywhere a deterministic order of
// vectors is required.
bool lex_less(const IntVec& a, const IntVec& b);
bool lex_less(const RatVec& a, const RatVec& b);

// Fraction-free determinant (Bareiss). Square input required.
Int det(const IntMat& a);
// Rank over the rationals.
int rank(const IntMat& a);
int rank_rows(const std::vector<IntVec>& rows, int cols);

// Solves a x = b over the rationals. Returns empty vector when inconsistent.
// When the solution space is positive-dimensional an arbitrary solution is
// returned (pivot-based, deterministic).
std::vector<RatVec> solve(const IntMat& a, const RatVec& b); // 0 or 1 entries

std::string to_string(const Int& x);
std::string to_string(const Rat& x);
std::string to_string(const IntVec& v);
std::string to_string(const RatVec& v);
std::string to_string(const IntMat& m);

// Parses a decimal string; throws SchemaError on malformed input.
Int parse_int(const std::string& s);
// Parses "p" or "p/q" with q > 0; throws SchemaError on malformed input.
Rat parse_rat(const std::string& s);

} // namespace ccc
