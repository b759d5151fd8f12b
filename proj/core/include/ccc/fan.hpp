#pragma once

// Fans of strongly convex cones and maps between them: the fan axioms,
// subfan/refinement relations, completeness, properness, smooth refinement,
// completion, and star/quotient constructions.

#include <optional>
#include <vector>

#include "ccc/cone.hpp"
#include "ccc/lattice.hpp"

namespace ccc {

class Fan {
public:
    explicit Fan(int ambient_dim) : dim_(ambient_dim) {}

    // Face-closes the input and verifies that pairwise intersections are
    // common faces; throws OverlappingConesError otherwise.
    static Fan from_cones(int ambient_dim, const std::vector<Cone>& cones);

    int ambient_dim() const { return dim_; }
    // All cones, zero cone included, sorted by (dim, rays).
    const std::vector<Cone>& cones() const { return cones_; }
    std::vector<Cone> maximal_cones() const;
    std::vector<Cone> cones_of_dim(int d) const;
    // Rays of the fan as primitive vectors, lex-sorted.
    std::vector<IntVec> rays() const;

    bool empty() const { return cones_.empty(); }
    bool has_cone(const Cone& c) const;
    bool support_contains(const RatVec& x) const;
    // The unique cone whose relative interior holds x, if x is in the
    // support.
    std::optional<Cone> cone_containing(const RatVec& x) const;

    bool operator==(const Fan& other) const {
        return dim_ == other.dim_ && cones_ == other.cones_;
    }

private:
    int dim_;
    std::vector<Cone> cones_;
};

enum class FanRelation {
    equal,
    first_subfan_of_second,
    second_subfan_of_first,
    first_refines_second,
    second_refines_first,
    unrelated,
};

// How two fans on the same lattice relate; fans on different lattices are
// unrelated.
FanRelation fan_relate(const Fan& a, const Fan& b);

// |fan| = R^n, decided exactly on the cells of the fan's wall arrangement.
bool is_complete(const Fan& fan);

// Supports agree as subsets of R^n.
bool support_equal(const Fan& a, const Fan& b);

// The common refinement {sigma cap tau}; defined on the intersection of the
// supports.
Fan common_refinement(const Fan& a, const Fan& b);

// The product fan {sigma x tau} on the direct sum of the two lattices.
Fan product_fan(const Fan& a, const Fan& b);

// Image fan {u(sigma)} under a unimodular map; throws if the matrix is not
// square and invertible over the integers.
Fan map_fan(const Fan& fan, const IntMat& u);

// A lattice map carrying each source cone into some target cone.
struct FanMorphism {
    LatticeMap map;
    Fan source;
    Fan target;

    // Throws ValidationError if some source cone lands in no target cone.
    FanMorphism(LatticeMap map, Fan source, Fan target);
};

struct PropernessCheck {
    bool proper;
    // The lex-smallest sample of a cell witnessing failure: a point whose
    // image lies in the target support while the point itself escapes the
    // source support.
    std::optional<RatVec> witness;
};

// Properness of the induced map: the preimage of the target support equals
// the source support.
PropernessCheck properness_check(const FanMorphism& phi);
bool is_proper(const FanMorphism& phi);

// Star subdivision at a primitive ray direction inside the support.
Fan stellar_subdivision(const Fan& fan, const IntVec& ray);

// Simplicial refinement with all multiplicities one; refines the input, adds
// no rays to cones that are already smooth, and leaves smooth cones intact.
Fan smooth_refine(const Fan& fan);

struct Completion {
    Fan fan;
    // False: the input is a subfan of the result. True: only a refinement of
    // the input is (can happen from ambient rank 3 on).
    bool refined_input;
};

// A complete fan containing the input (or a refinement of it).
Completion complete_fan(const Fan& fan);

struct StarQuotient {
    std::vector<Cone> star; // cones containing tau, sorted
    Fan closed_star;        // smallest subfan containing the star
    Fan boundary_star;      // closed star minus the star (a subfan)
    IntMat projection;      // N -> N / (Z tau), surjective
    Fan quotient;           // images of the star cones
};

// Throws ConeNotInFanError if tau is not a cone of the fan.
StarQuotient star_quotient(const Fan& fan, const Cone& tau);

} // namespace ccc
