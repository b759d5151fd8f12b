#pragma once

#include <string>
#include <vector>

#include "ccc/numeric.hpp"

namespace ccc {

// Homomorphism of free lattices Z^source_rank -> Z^target_rank. The matrix
// acts on column vectors: column j is the image of the j-th source basis
// vector.
struct LatticeMap {
    int source_rank = 0;
    int target_rank = 0;
    IntMat matrix;

    LatticeMap() = default;
    LatticeMap(int source, int target, IntMat m);
    static LatticeMap identity(int n) { return LatticeMap(n, n, IntMat::identity(n)); }
    static LatticeMap zero(int source, int target) { return LatticeMap(source, target, IntMat(target, source)); }

    IntVec mul(const IntVec& x) const { return ccc::mul(matrix, x); }
    RatVec mul(const RatVec& x) const { return ccc::mul(matrix, x); }

    bool operator==(const LatticeMap& o) const = default;
};

// Composition first b, then a.
LatticeMap compose(const LatticeMap& a, const LatticeMap& b);
// Dual (transpose): a map N -> N' induces M' -> M on the dual side.
LatticeMap dual_map(const LatticeMap& a);

// u * a * v = d with u, v unimodular, d diagonal with nonnegative entries
// forming a divisibility chain d1 | d2 | ..., zeros last.
struct SmithDecomposition {
    IntMat u;
    IntMat d;
    IntMat v;
};

// Pivot selection: smallest nonzero absolute value in the remaining block,
// ties broken by lowest (row, col).
SmithDecomposition smith_normal_form(const IntMat& a);

// Nonzero diagonal entries of the Smith form, in chain order.
std::vector<Int> invariant_factors(const IntMat& a);

// Z^free_rank + sum of Z/torsion[i]; torsion entries are >= 2. Groups
// produced by cokernel_group have the torsion in a divisibility chain;
// operator== compares presentations, not isomorphism classes.
struct FinAbGroup {
    int free_rank = 0;
    std::vector<Int> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    int generator_count() const { return free_rank + static_cast<int>(torsion.size()); }

    bool operator==(const FinAbGroup& o) const = default;
};

std::string to_string(const FinAbGroup& g);

// Cokernel Z^m / im(a) of a : Z^n -> Z^m, with an explicit projection:
// the class of y is (torsion coords, free coords) where torsion coord i is
// dot(torsion_proj row i, y) mod moduli[i] and the free part is free_proj*y.
// free_proj also realizes the torsion-free quotient of the cokernel.
struct CokernelGroup {
    FinAbGroup group;
    IntMat torsion_proj;
    std::vector<Int> moduli;
    IntMat free_proj;
};

CokernelGroup cokernel_group(const IntMat& a);

// Maps Z^n -> G into a presented group G, written on the generators of G:
// column j of the matrix is the image of e_j, with torsion rows read modulo
// the torsion orders. All helpers require matrix rows == G's generator count.

// Torsion rows taken into [0, d_i).
IntMat reduce_mod_torsion(IntMat m, const FinAbGroup& g);

// Columns spanning the relations of the presentation: d_i times the i-th
// torsion generator.
IntMat relation_matrix(const FinAbGroup& g);

// Is the element with these generator coordinates zero in g?
bool is_zero_in(const IntVec& x, const FinAbGroup& g);

// Does the map hit every element of g?
bool surjects_onto(const IntMat& m, const FinAbGroup& g);

// Hermite basis of the kernel sublattice {x : m x = 0 in g} of Z^n.
IntMat kernel_into(const IntMat& m, const FinAbGroup& g);

// g / im(m), in invariant-factor form.
FinAbGroup cokernel_into(const IntMat& m, const FinAbGroup& g);

// Canonical basis of the subgroup of Z^m generated by the columns of gens:
// the column-style Hermite normal form (positive pivots on strictly
// increasing rows, earlier columns reduced below each pivot). Two generating
// sets span the same subgroup iff their Hermite bases are identical.
IntMat hermite_basis(const IntMat& gens);

// Basis (columns) of ker(a) in Z^n, in Hermite form; kernels of integer
// matrices are saturated.
IntMat kernel_basis(const IntMat& a);

// Basis (columns) of the subgroup of Z^m generated by the columns of a, in
// Hermite form.
IntMat image_basis(const IntMat& a);

// Basis (columns) of (R-span of the columns of gens) intersected with Z^m, in
// Hermite form.
IntMat saturate(const IntMat& gens);

// Exact inverse of a unimodular matrix.
IntMat unimodular_inverse(const IntMat& u);

// Integer retraction pi with pi * basis = identity, for a basis of a
// saturated sublattice (throws Error otherwise). Maps points of the
// sublattice's span to their coordinates in the basis.
IntMat left_inverse(const IntMat& basis);

// Does x lie in the subgroup of Z^m (tensored with Q for rational x)
// generated by the columns of basis? Exact.
bool lattice_contains(const IntMat& basis, const RatVec& x);
bool lattice_contains(const IntMat& basis, const IntVec& x);

// Equality of the generated subgroups.
bool lattice_equal(const IntMat& a, const IntMat& b);

// Index [super : sub] for sub of finite index in super (equal R-spans
// required; throws Error otherwise).
Int lattice_index(const IntMat& super, const IntMat& sub);

} // namespace ccc
