#pragma once

// Stacky fans: a fan on N = Z^n together with a homomorphism beta from the
// dual lattice M into a finitely generated abelian group L. This module
// validates the data, converts to and from the covering-fan presentation,
// classifies when the quotient is a scheme or a variety, extracts the cover
// data of the stacky torus, and factors morphisms (group change and graph).

#include <optional>
#include <utility>

#include "ccc/fan.hpp"
#include "ccc/lattice.hpp"

namespace ccc {

struct StackyFan {
    Fan fan;          // on N = Z^n
    FinAbGroup group; // L
    // L-generators x n; column j is beta(e_j) on the generators of L, with
    // torsion rows reduced modulo the torsion orders.
    IntMat beta;

    int rank() const { return fan.ambient_dim(); }

    bool operator==(const StackyFan& o) const {
        return fan == o.fan && group == o.group && beta == o.beta;
    }
};

// Checks that the torsion orders are at least two and that beta has shape
// (L generators) x (fan rank), then reduces the torsion rows. Throws
// IncompatibleBetaError.
StackyFan validate_stacky(Fan fan, FinAbGroup group, IntMat beta);

// The same stack presented by a fan on a covering lattice: the fan lives on
// Z^l and projects to a smaller lattice with finite cokernel. The group data
// is implicit in the projection.
struct CoverPresentation {
    Fan fan;               // on the covering lattice Z^l
    LatticeMap projection; // Z^l -> Z^k with finite cokernel
};

// The stacky fan on the covering lattice itself: the group is the dual of
// the projection's kernel, and beta restricts covectors to that kernel.
// Throws NotConvertibleError when the cokernel is infinite.
StackyFan from_cover_presentation(const CoverPresentation& p);

// Inverse direction, defined when beta is surjective (NotConvertibleError
// otherwise): the fan is unchanged, the target lattice is the dual of
// ker beta, and the projection is the dual of its inclusion into M. When
// ker beta has finite index in M, the projection's cokernel presents the
// same finite group the stack quotients by.
CoverPresentation to_cover_presentation(const StackyFan& x);

// The stack written as a toric variety: the fan of Phi-images on the
// torsion-free quotient K of N by the dual of the free part of L.
struct VarietyPresentation {
    LatticeMap projection; // Phi: N -> K, surjective
    Fan fan;               // Phi(Sigma), a fan on K
};

struct Classification {
    // Every maximal cone's perp sublattice of M maps onto L.
    bool is_scheme = false;
    // Additionally Phi is a bijection from the fan onto a fan on K,
    // preserving inclusions both ways.
    bool is_variety = false;
    std::optional<VarietyPresentation> presentation; // set when is_variety
};

Classification classify(const StackyFan& x);

// Cover data of the stacky torus of (M -> L): the quotient of M_R x L by the
// antidiagonal copy of M.
struct TorusCoverData {
    FinAbGroup component_group; // coker beta
    IntMat deck_lattice;        // Hermite basis of ker beta inside M
    int compact_rank = 0;       // rank of ker beta
    int vector_rank = 0;        // rank of M minus compact_rank
};

TorusCoverData torus_data(const StackyFan& x);

// A map of stacky fans: a fan morphism phi_N together with a contravariant
// group map phi_L from the target group to the source group such that
// beta . phi_M = phi_L . beta' as maps of M' into L.
struct StackyMorphism {
    StackyFan source;
    StackyFan target;
    FanMorphism fan_morphism; // phi_N between the underlying fans
    // phi_L on generators: (source L generators) x (target L generators),
    // torsion rows reduced.
    IntMat group_map;

    // Validates shapes, the fan morphism, well-definedness of the group map
    // on the target relations (ValidationError), and the compatibility
    // square (IncompatibleBetaError).
    StackyMorphism(StackyFan source, StackyFan target, LatticeMap map, IntMat group_map);
};

// Factor phi as a map changing only the fan (the group map is the identity
// on the source group) followed by a pure group change over the target fan.
// The composite equals phi exactly on both components.
std::pair<StackyMorphism, StackyMorphism> factor_group_change(const StackyMorphism& phi);

// Factorization of a fan morphism with smooth complete source through its
// graph: embed = x -> (x, 0) into Sigma x 0, shear = the unipotent map
// (x, y) -> (x, phi x + y) into Sigma x Sigma', project = (x, y) -> y onto
// Sigma'. Then project . shear . embed = phi exactly, and smooth_product is
// a smooth refinement of Sigma x Sigma' containing the sheared copy of
// Sigma x 0 cone by cone.
struct GraphFactorization {
    FanMorphism embed;
    FanMorphism shear;
    FanMorphism project;
    Fan smooth_product;
};

// Throws SourceNotSmoothCompleteError when the source fan is not smooth and
// complete.
GraphFactorization graph_factorization(const FanMorphism& phi);

} // namespace ccc
