#include "ccc/skeleton.hpp"

#include <set>

#include "ccc/arrangement.hpp"
#include "ccc/errors.hpp"

namespace ccc {

namespace {

// Rows spanning the integer annihilator of the column span of v.
IntMat annihilator_rows(const IntMat& v) { return transpose(kernel_basis(transpose(v))); }

// Does the base point lie on the subtorus cut by the columns of v, that is,
// in V + M? Equivalent to E b lying in the lattice E(M) for annihilator
// rows E of V.
bool base_on_subtorus(const IntMat& v, const RatVec& b) {
    IntMat e = annihilator_rows(v);
    if (e.rows == 0) return true;
    return lattice_contains(e, mul(e, b));
}

// The fiber cone of a fan piece: -sigma in inequality form.
PolyCone negated_fiber(const Cone& c) {
    std::vector<IntVec> ineqs;
    for (const IntVec& f : c.facet_inequalities()) ineqs.push_back(vec_neg(f));
    return PolyCone(c.ambient_dim(), c.span_equations(), ineqs);
}

// Column span containment of subspaces, over the rationals.
bool subspace_contained(const IntMat& v, const IntMat& w) {
    return rank(w) == rank(hstack(w, v));
}

// A wall normal canonicalized up to sign and scale.
IntVec canonical_normal(const IntVec& n) {
    IntVec p = primitive(n);
    for (const Int& x : p) {
        if (x > 0) break;
        if (x < 0) return vec_neg(p);
    }
    return p;
}

} // namespace

Skeleton Skeleton::full_cotangent(int rank) {
    Skeleton out;
    out.rank = rank;
    out.pieces.push_back(
        {std::nullopt, IntMat::identity(rank), PolyCone::full_space(rank), true});
    return out;
}

Skeleton fltz_skeleton(const Fan& fan) {
    Skeleton out;
    out.rank = fan.ambient_dim();
    for (const Cone& c : fan.cones())
        out.pieces.push_back({c, c.perp_lattice(), negated_fiber(c), true});
    return out;
}

Skeleton fltz_skeleton(const StackyFan& x) {
    Skeleton out = fltz_skeleton(x.fan);
    if (!x.group.trivial()) out.cover = torus_data(x);
    return out;
}

bool skeleton_member(const Skeleton& s, const CovectorPoint& pt) {
    if (static_cast<int>(pt.base_point.size()) != s.rank ||
        static_cast<int>(pt.covector.size()) != s.rank)
        throw Error("skeleton_member: dimension mismatch");
    for (const SkeletonPiece& p : s.pieces)
        if (p.fiber.contains(pt.covector) && base_on_subtorus(p.perp_basis, pt.base_point))
            return true;
    return false;
}

Skeleton pushforward_skeleton(const StackyMorphism& phi, const Skeleton& target_skeleton) {
    const IntMat& f = phi.fan_morphism.map.matrix;
    if (target_skeleton.rank != f.rows)
        throw Error("pushforward_skeleton: the skeleton does not live over the target");
    IntMat fm = transpose(f); // phi_M, from the target's M to the source's

    Skeleton out;
    out.rank = f.cols;
    if (!phi.source.group.trivial()) out.cover = torus_data(phi.source);
    for (const SkeletonPiece& p : target_skeleton.pieces) {
        IntMat subspace = image_basis(mul(fm, p.perp_basis));
        std::vector<IntVec> eqs, ineqs;
        for (const IntVec& e : p.fiber.equalities()) eqs.push_back(mul(fm, e));
        for (const IntVec& a : p.fiber.inequalities()) ineqs.push_back(mul(fm, a));
        out.pieces.push_back(
            {std::nullopt, std::move(subspace), PolyCone(out.rank, eqs, ineqs), true});
    }
    return out;
}

bool skeleton_subset(const Skeleton& a, const Skeleton& b) {
    if (a.rank != b.rank) throw Error("skeleton_subset: rank mismatch");

    // The fibers of b cut each fiber of a into cells on which membership in
    // any piece of b is constant, so one sample point decides each cell.
    std::set<IntVec> wall_set;
    for (const SkeletonPiece& p : b.pieces) {
        for (const IntVec& e : p.fiber.equalities())
            if (!is_zero(e)) wall_set.insert(canonical_normal(e));
        for (const IntVec& q : p.fiber.inequalities())
            if (!is_zero(q)) wall_set.insert(canonical_normal(q));
    }
    std::vector<AffineFunctional> walls;
    for (const IntVec& w : wall_set) walls.push_back({w, Int(0)});

    for (const SkeletonPiece& pa : a.pieces) {
        CellDomain domain;
        for (const IntVec& e : pa.fiber.equalities()) domain.equalities.push_back({e, Int(0)});
        for (const IntVec& q : pa.fiber.inequalities()) domain.weak.push_back({q, Int(0)});
        for (const ArrangementCell& cell : arrangement_cells(a.rank, walls, domain)) {
            bool covered = false;
            for (const SkeletonPiece& pb : b.pieces) {
                if (!pb.fiber.contains(cell.sample)) continue;
                if (subspace_contained(pa.perp_basis, pb.perp_basis)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) return false;
        }
    }
    return true;
}

LeftFunctorialDecision decide_left_functorial(const StackyMorphism& phi) {
    PropernessCheck prop = properness_check(phi.fan_morphism);
    bool included = skeleton_subset(pushforward_skeleton(phi, fltz_skeleton(phi.target)),
                                    fltz_skeleton(phi.source));
    if (prop.proper != included)
        throw InternalInconsistencyError(
            "properness and the skeleton inclusion criterion disagree");

    LeftFunctorialDecision out;
    out.verdict = prop.proper;
    if (!prop.proper && prop.witness)
        out.witness = CovectorPoint{RatVec(static_cast<size_t>(phi.source.rank()), Rat(0)),
                                    *prop.witness, std::nullopt};
    return out;
}

RightFunctorialDecision decide_right_functorial(const StackyMorphism& phi) {
    const IntMat& f = phi.fan_morphism.map.matrix;
    IntMat fm = transpose(f); // columns generate phi_M(M')
    for (const Cone& sigma : phi.source.fan.cones()) {
        bool image_is_cone = false;
        try {
            image_is_cone = phi.target.fan.has_cone(sigma.image(f));
        } catch (const NotStronglyConvexError&) {
            image_is_cone = false;
        }
        if (!image_is_cone) return {false, sigma, 1};

        IntMat g = hstack(sigma.perp_lattice(), fm);
        if (!lattice_equal(g, saturate(g))) return {false, sigma, 2};
    }
    return {true, std::nullopt, 0};
}

bool adj_hypothesis_check(const StackyMorphism& phi, const Skeleton& pi,
                          const Skeleton& pi_prime) {
    if (!skeleton_subset(fltz_skeleton(phi.source), pi))
        throw PrerequisiteFailedError("the source skeleton must lie inside its enlargement");
    if (!skeleton_subset(fltz_skeleton(phi.target), pi_prime))
        throw PrerequisiteFailedError("the target skeleton must lie inside its enlargement");
    return skeleton_subset(pushforward_skeleton(phi, pi_prime), pi);
}

} // namespace ccc
