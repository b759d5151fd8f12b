#pragma once

// Exact enumeration of the cells of an arrangement of affine hyperplanes:
// every nonempty sign pattern of the walls, each with a rational sample
// point in its relative interior. Containment and covering questions reduce
// to finitely many sample checks because each cell is a single stratum of
// all the functionals involved.

#include <vector>

#include "ccc/numeric.hpp"

namespace ccc {

// The affine functional x -> offset + coeffs . x. Linear walls have zero
// offset.
struct AffineFunctional {
    IntVec coeffs;
    Int offset;

    bool operator==(const AffineFunctional&) const = default;
};

// Fixed constraints applied to every cell (not enumerated over): the cell
// lies in the locus where each of `equalities` vanishes, each of `stricts`
// is positive, and each of `weak` is nonnegative.
struct CellDomain {
    std::vector<AffineFunctional> equalities;
    std::vector<AffineFunctional> stricts;
    std::vector<AffineFunctional> weak;
};

struct ArrangementCell {
    std::vector<int> signs; // -1, 0, +1 per wall, in input order
    RatVec sample;          // a point with exactly these signs
    int dim;                // dimension of the cell
};

// All nonempty cells, depth-first in sign order 0, +, - per wall. The cell
// count is capped by the CCC_MAX_CELLS environment variable (default
// 1000000); exceeding it throws TooManyCellsError.
std::vector<ArrangementCell> arrangement_cells(int dim, const std::vector<AffineFunctional>& walls,
                                               const CellDomain& domain = {});

} // namespace ccc
