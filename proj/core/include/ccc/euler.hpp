#pragma once

// Integer-valued constructible functions on a rational vector space or on a
// quotient torus, and the Euler-characteristic calculus on them: indicator
// combinations of locally closed polyhedral regions, chi of standard and
// costandard objects, triangle and shift operations, pushforward along
// covering projections and along surjective linear maps (fiberwise Euler
// integration), convolution, and the chi of the convolution unit attached to
// a stacky fan. All arithmetic is exact.

#include <optional>
#include <vector>

#include "ccc/arrangement.hpp"
#include "ccc/lattice.hpp"
#include "ccc/numeric.hpp"
#include "ccc/polycone.hpp"
#include "ccc/stacky.hpp"

namespace ccc {

// A locally closed region cut out by affine constraints: every equality
// functional vanishes, every strict functional is positive, every weak
// functional is nonnegative. Functionals evaluate as offset + coeffs . x.
struct LCRegion {
    int rank = 0;
    std::vector<AffineFunctional> equalities;
    std::vector<AffineFunctional> stricts;
    std::vector<AffineFunctional> weak;
};

LCRegion region_whole(int rank);
// The single point {x}; rational coordinates are cleared to integer
// constraints.
LCRegion region_point(const RatVec& x);
// The region translated by t: {x + t : x in r}.
LCRegion region_translate(const LCRegion& r, const RatVec& t);
bool region_contains(const LCRegion& r, const RatVec& x);
bool region_empty(const LCRegion& r);
// Dimension of the affine hull, or -1 for the empty region.
int region_dim(const LCRegion& r);
// Directions along which a nonempty region recedes: dot >= 0 against every
// strict and weak functional, dot == 0 against every equality.
PolyCone region_recession(const LCRegion& r);

// An integer combination of indicators of locally closed regions. With a
// deck lattice the function lives on the quotient torus: the value at x is
// the sum of every term over every deck translate, and each term must meet
// any bounded set in only finitely many translates (equivalently, no
// recession direction of a term lies in the deck span).
struct ConFunTerm {
    Int coeff;
    LCRegion region;
};

struct ConFun {
    int rank = 0;
    std::vector<ConFunTerm> terms;
    // Hermite basis (columns) of the period lattice; absent on a plain
    // vector space.
    std::optional<IntMat> deck;
};

ConFun confun_zero(int rank);
// The delta function at a rational point of the plain space; attach a deck
// with confun_pushforward to move it onto a torus.
ConFun confun_delta(const RatVec& x);
Int confun_value(const ConFun& f, const RatVec& x);
ConFun confun_add(const ConFun& f, const ConFun& g);
ConFun confun_scale(const Int& c, const ConFun& f);

// Disjoint canonical form: one term per cell of the arrangement of all term
// constraints on which the function is nonzero, each cell relatively open.
// Two functions are equal iff their canonical forms agree cell by cell,
// which confun_equal decides by sampling a common refinement. Periodic
// functions are rewritten inside the half-open fundamental domain of the
// deck; that rewrite needs representatives bounded along the deck
// directions and throws Error otherwise.
ConFun confun_canonical(const ConFun& f);
bool confun_equal(const ConFun& f, const ConFun& g);

// chi of a single standard or costandard object: chi(k_Z[s]) = (-1)^s 1_Z
// and chi(omega_U[s]) = (-1)^{dim U + s} 1_U, with dim the dimension of the
// affine hull of U. Empty regions give the zero function.
struct SheafSymbol {
    enum class Kind { standard, costandard };
    Kind kind = Kind::standard;
    LCRegion region;
    int shift = 0;
};

ConFun region_chi(const SheafSymbol& s);

// Triangle operations at the chi level, arguments in arrow order: for
// cofib[A -> B] the result is chi(B) - chi(A), for fib[A -> B] it is
// chi(A) - chi(B).
enum class CombineOp { cofib, fib };
ConFun confun_combine(CombineOp op, const ConFun& a, const ConFun& b);
// Homological shift by s: multiplies by (-1)^s.
ConFun confun_shift(const ConFun& f, int s);

// Pushforward along the covering projection that quotients by the lattice
// generated by the deck columns (added to any deck already present). The
// function is put in canonical form first; if a nonzero support cell has a
// recession direction inside the enlarged deck span, some fiber meets the
// support infinitely often and NotFiberFiniteError is thrown.
ConFun confun_pushforward(const ConFun& f, const IntMat& deck);
// Pushforward along a surjective linear map of plain spaces: the value at y
// is the compactly supported Euler characteristic of the fiber restriction,
// computed cell by cell with chi_c of a relatively open d-cell equal to
// (-1)^d. Throws NotFiberFiniteError when a support cell recedes along a
// fiber direction, Error when the map is not surjective or the function
// carries a deck.
ConFun confun_pushforward(const ConFun& f, const LatticeMap& map);

// Convolution at the chi level: pushforward of the exterior product along
// addition. Arguments must live on the same space (equal rank and equal
// decks); periodic convolution is the plain convolution of representatives
// followed by the covering pushforward. Commutative and associative where
// defined, with unit confun_delta at the origin.
ConFun confun_convolve(const ConFun& f, const ConFun& g);

// chi of the convolution unit of the torus attached to a stacky fan: the
// alternating nerve sum over strictly decreasing chains of cones, where a
// chain of k+1 cones contributes (-1)^k times chi of the costandard object
// on the interior of the dual cone of its smallest member, pushed onto the
// torus along the covering projection with deck torus_data(x).
// Complete fans give the delta at the identity; fans whose nerve sum keeps
// unbounded support throw NotFiberFiniteError from the pushforward.
ConFun unit_chi(const StackyFan& x);

} // namespace ccc
