#pragma once

// General rational polyhedral cones (lineality allowed) with exact
// facet/generator conversion via the double description method.

#include <vector>

#include "ccc/numeric.hpp"

namespace ccc {

// normal . x >= 0, or normal . x == 0 when is_equality.
struct Constraint {
    IntVec normal;
    bool is_equality = false;

    bool operator==(const Constraint&) const = default;
};

struct GeneratorSet {
    IntMat lineality;          // Hermite basis of the lineality space
    std::vector<IntVec> rays;  // primitive, lex-sorted

    GeneratorSet() : lineality(0, 0) {}
};

// Generators of {x in R^dim : all constraints hold}. Exact; deterministic in
// the constraint set (constraints are deduplicated and sorted internally).
GeneratorSet dual_description(int dim, std::vector<Constraint> constraints);

// A cone in both facet and generator form. Not necessarily strongly convex
// and not necessarily full-dimensional; both descriptions are kept
// consistent by construction.
class PolyCone {
public:
    // From facets. Normals may be redundant; they are kept as given.
    PolyCone(int dim, std::vector<IntVec> equalities, std::vector<IntVec> inequalities);

    static PolyCone from_generators(int dim, const IntMat& lineality,
                                    const std::vector<IntVec>& rays);
    static PolyCone full_space(int dim);
    static PolyCone origin(int dim);

    int ambient_dim() const { return dim_; }
    const std::vector<IntVec>& equalities() const { return eq_; }
    const std::vector<IntVec>& inequalities() const { return ineq_; }
    const GeneratorSet& generators() const { return gens_; }

    // Dimension of the linear span.
    int dim() const;
    bool is_strongly_convex() const { return gens_.lineality.cols == 0; }

    bool contains(const RatVec& x) const;
    bool contains(const IntVec& x) const;
    // other subseteq this (same ambient dimension required).
    bool contains(const PolyCone& other) const;
    bool equals(const PolyCone& other) const;

    PolyCone intersect(const PolyCone& other) const;

    // A point in the relative interior (the sum of the extreme rays; the
    // origin when the cone is a linear subspace).
    RatVec relative_interior_point() const;

private:
    int dim_;
    std::vector<IntVec> eq_, ineq_;
    GeneratorSet gens_;
};

// The dual cone {m : <m, x> >= 0 for all x in c}: generators of c become
// constraints. Involutive: dual(dual(c)) equals c.
PolyCone dual(const PolyCone& c);

} // namespace ccc
