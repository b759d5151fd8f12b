#pragma once

// Strongly convex rational polyhedral cones, identified by their canonical
// ray sets. These are the cones fans are made of; computations that need
// facet data reduce to the span of the cone so that lower-dimensional cones
// work exactly like full-dimensional ones.

#include <optional>
#include <vector>

#include "ccc/lattice.hpp"
#include "ccc/numeric.hpp"
#include "ccc/polycone.hpp"

namespace ccc {

class Cone {
public:
    // The zero cone.
    explicit Cone(int ambient_dim);

    // From generating rays; non-extreme generators are dropped. Throws
    // NotStronglyConvexError if the rays span a line.
    static Cone from_rays(int ambient_dim, const std::vector<IntVec>& rays);

    int ambient_dim() const { return dim_; }
    // Extreme rays: primitive, lex-sorted. Canonical for the cone.
    const std::vector<IntVec>& rays() const { return rays_; }
    int ray_count() const { return static_cast<int>(rays_.size()); }
    int dim() const { return span_.cols; }
    bool is_zero() const { return rays_.empty(); }
    bool is_simplicial() const { return ray_count() == dim(); }
    // Unimodular: the rays are part of a basis of the ambient lattice.
    bool is_smooth() const;
    // Index of the subgroup generated by the rays of a simplicial cone
    // inside the lattice points of its span.
    Int multiplicity() const;

    // Hermite basis of span(cone) cap Z^n, a saturated sublattice.
    const IntMat& span_lattice() const { return span_; }

    // Equality constraints cutting out the span, and inequality constraints
    // cutting the cone inside its span (lifted to the ambient space).
    const std::vector<IntVec>& span_equations() const { return perp_; }
    const std::vector<IntVec>& facet_inequalities() const { return facets_; }

    bool contains(const RatVec& x) const;
    bool contains(const IntVec& x) const;
    bool contains(const Cone& other) const;
    // Strict containment in the relative interior.
    bool interior_contains(const RatVec& x) const;

    // A rational point in the relative interior (sum of the rays).
    RatVec relative_interior_point() const;

    bool operator==(const Cone& other) const {
        return dim_ == other.dim_ && rays_ == other.rays_;
    }
    // Lexicographic on (dim, ray list); a deterministic total order.
    bool operator<(const Cone& other) const;

    // All faces, the cone itself and the zero cone included.
    std::vector<Cone> faces() const;
    // Facets only (codimension one inside the cone).
    std::vector<Cone> facets() const;
    // The smallest face containing a point of the cone.
    Cone minimal_face_containing(const RatVec& x) const;

    Cone intersect(const Cone& other) const;
    // Both descriptions as a general cone.
    PolyCone poly() const;

    // Image under a lattice map: throws NotStronglyConvexError if the image
    // is not strongly convex.
    Cone image(const IntMat& matrix) const;

    // sigma-perp: Hermite basis of the sublattice of the dual killing the
    // span.
    IntMat perp_lattice() const;

private:
    int dim_;
    std::vector<IntVec> rays_;
    IntMat span_;
    std::vector<IntVec> perp_;   // span equations
    std::vector<IntVec> facets_; // facet inequalities, ambient form
};

} // namespace ccc
