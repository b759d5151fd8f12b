#pragma once

// Conic Lagrangian skeletons attached to fans and stacky fans: pointwise
// membership, exact inclusion of one skeleton in another, the pushforward
// image of a skeleton under a morphism, and the left/right functoriality
// decision procedures built on these.

#include <optional>
#include <vector>

#include "ccc/cone.hpp"
#include "ccc/fan.hpp"
#include "ccc/lattice.hpp"
#include "ccc/polycone.hpp"
#include "ccc/stacky.hpp"

namespace ccc {

// One closed conic piece V x F of a subset of the cotangent bundle of the
// base torus: V a rational subspace of M_R spanned by the columns of
// perp_basis, F a rational polyhedral cone in N_R (lineality allowed).
// Pieces cut from a fan carry the cone sigma, with V = sigma-perp and
// F = -sigma; pushforward images leave `cone` empty, since their base
// subspace is generally not an annihilator and their fiber cone may
// contain lines.
struct SkeletonPiece {
    std::optional<Cone> cone; // sigma, when the piece is sigma-perp x (-sigma)
    IntMat perp_basis;        // columns spanning V
    PolyCone fiber;           // F
    bool negated = true;      // fan pieces store F = -sigma
};

// A finite union of skeleton pieces over a fixed torus. The base is M_R/M,
// or the cover described by `cover` when the stacky group is nontrivial;
// the skeleton upstairs is the preimage of the one downstairs, so pointwise
// membership always reduces through the covering projection and the cover
// data is descriptive.
struct Skeleton {
    int rank = 0;                        // n, the rank of N
    std::optional<TorusCoverData> cover; // present over a stacky base
    std::vector<SkeletonPiece> pieces;

    // The whole cotangent bundle as a single piece.
    static Skeleton full_cotangent(int rank);
};

// A point of the cotangent bundle: a base point in M_R, with an optional
// component label on a cover (carried but ignored by membership), and a
// covector in N_R.
struct CovectorPoint {
    RatVec base_point;
    RatVec covector;
    std::optional<IntVec> component;
};

// The union of sigma-perp x (-sigma) over the cones of the fan, one piece
// per cone.
Skeleton fltz_skeleton(const Fan& fan);
// The same union read on the cover of the stacky base torus.
Skeleton fltz_skeleton(const StackyFan& x);

// True iff some piece holds the point: the base point lies on the piece
// subspace modulo M and the covector lies in the fiber cone.
bool skeleton_member(const Skeleton& s, const CovectorPoint& pt);

// The image of a skeleton over the morphism's target under the induced
// microlocal correspondence: a piece V x F maps to phi_M(V) x phi_N^{-1}(F)
// over the source torus. Fibers are carried in inequality form, so pieces
// with lines are fine.
Skeleton pushforward_skeleton(const StackyMorphism& phi, const Skeleton& target_skeleton);

// Exact containment of the underlying sets: each piece of a has its fiber
// decomposed along the walls of b's fibers, and every cell must lie in the
// fiber of some piece of b whose subspace holds the whole of the a-piece's
// subspace.
bool skeleton_subset(const Skeleton& a, const Skeleton& b);

struct LeftFunctorialDecision {
    bool verdict = false;
    // For a negative verdict: a covector direction (zero base point) whose
    // image lies in the target support while the direction itself escapes
    // the source support.
    std::optional<CovectorPoint> witness;
};

// Left functoriality is properness of the underlying fan morphism. The
// equivalent criterion - the pushforward of the target skeleton lies in the
// source skeleton - is evaluated as a cross-check, and a disagreement
// throws InternalInconsistencyError: it would mean a bug, not a verdict.
LeftFunctorialDecision decide_left_functorial(const StackyMorphism& phi);

struct RightFunctorialDecision {
    bool verdict = false;
    std::optional<Cone> failing_cone; // first failing cone in cone order
    int failing_condition = 0;        // 1 or 2 when failing_cone is set
};

// Right functoriality: every source cone must (1) map onto a cone of the
// target fan and (2) have (sigma-perp cap M) + phi_M(M') equal to its own
// saturation.
RightFunctorialDecision decide_right_functorial(const StackyMorphism& phi);

// The adjunction hypothesis for enlarged skeletons pi (over the source
// torus) and pi_prime (over the target torus): the pushforward of pi_prime
// must land inside pi. Each fltz skeleton must sit inside its enlargement;
// throws PrerequisiteFailedError otherwise.
bool adj_hypothesis_check(const StackyMorphism& phi, const Skeleton& pi,
                          const Skeleton& pi_prime);

} // namespace ccc
