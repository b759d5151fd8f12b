#include "ccc/arrangement.hpp"

#include <cstdlib>
#include <optional>
#include <string>

#include "ccc/errors.hpp"
#include "ccc/polycone.hpp"

namespace ccc {

namespace {

long cell_budget() {
    if (const char* e = std::getenv("CCC_MAX_CELLS")) {
        try {
            long v = std::stol(e);
            if (v > 0) return v;
        } catch (...) {
            // fall through to the default
        }
        throw Error("CCC_MAX_CELLS: expected a positive integer");
    }
    return 1000000;
}

// Homogenized functional on (x, t): offset becomes the t-coefficient.
IntVec homogenize(const AffineFunctional& f, int dim) {
    IntVec h = f.coeffs;
    if (static_cast<int>(h.size()) != dim)
        throw Error("arrangement_cells: functional dimension mismatch");
    h.push_back(f.offset);
    return h;
}

struct Feasible {
    RatVec sample;
    int dim;
};

// Decide {x : eq = 0, strict > 0, weak >= 0} nonempty by homogenizing to a
// closed cone in (x, t), t >= 0. Each strict functional (and t itself) is
// positive somewhere on the cone iff it is positive on one of the generating
// rays; the sum of all rays then witnesses every strict inequality at once.
std::optional<Feasible> feasible_cell(int dim, const std::vector<IntVec>& eqs,
                                      const std::vector<IntVec>& stricts,
                                      const std::vector<IntVec>& weaks) {
    std::vector<Constraint> cs;
    for (const IntVec& e : eqs) cs.push_back({e, true});
    for (const IntVec& s : stricts) cs.push_back({s, false});
    for (const IntVec& w : weaks) cs.push_back({w, false});
    IntVec t(dim + 1, Int(0));
    t[dim] = 1;
    cs.push_back({t, false});
    GeneratorSet g = dual_description(dim + 1, std::move(cs));

    std::vector<IntVec> must_be_positive = stricts;
    must_be_positive.push_back(t);
    for (const IntVec& s : must_be_positive) {
        bool hit = false;
        for (const IntVec& r : g.rays)
            if (dot(s, r) > 0) { hit = true; break; }
        if (!hit) return std::nullopt;
    }

    RatVec hom(dim + 1, Rat(0));
    for (const IntVec& r : g.rays)
        for (int i = 0; i <= dim; ++i) hom[i] += Rat(r[i]);
    RatVec sample(dim);
    for (int i = 0; i < dim; ++i) sample[i] = hom[i] / hom[dim];

    IntMat span = g.lineality;
    for (const IntVec& r : g.rays) span = hstack(span, IntMat::from_cols({r}, dim + 1));
    return Feasible{std::move(sample), rank(span) - 1};
}

struct Enumeration {
    int dim;
    const std::vector<AffineFunctional>* walls;
    std::vector<IntVec> eqs, stricts, weaks; // homogenized, includes the domain
    std::vector<int> signs;
    std::vector<ArrangementCell> out;
    long budget;
};

void enumerate(Enumeration& e, size_t next, Feasible cur) {
    if (next == e.walls->size()) {
        if (static_cast<long>(e.out.size()) >= e.budget)
            throw TooManyCellsError("arrangement exceeds the cell budget");
        e.out.push_back({e.signs, std::move(cur.sample), cur.dim});
        return;
    }
    IntVec h = homogenize((*e.walls)[next], e.dim);
    for (int sign : {0, +1, -1}) {
        IntVec hs = sign >= 0 ? h : vec_neg(h);
        auto& bucket = sign == 0 ? e.eqs : e.stricts;
        bucket.push_back(hs);
        auto child = feasible_cell(e.dim, e.eqs, e.stricts, e.weaks);
        if (child) {
            e.signs.push_back(sign);
            enumerate(e, next + 1, std::move(*child));
            e.signs.pop_back();
        }
        bucket.pop_back();
    }
}

} // namespace

std::vector<ArrangementCell> arrangement_cells(int dim, const std::vector<AffineFunctional>& walls,
                                               const CellDomain& domain) {
    Enumeration e;
    e.dim = dim;
    e.walls = &walls;
    e.budget = cell_budget();
    for (const AffineFunctional& f : domain.equalities) e.eqs.push_back(homogenize(f, dim));
    for (const AffineFunctional& f : domain.stricts) e.stricts.push_back(homogenize(f, dim));
    for (const AffineFunctional& f : domain.weak) e.weaks.push_back(homogenize(f, dim));
    auto root = feasible_cell(dim, e.eqs, e.stricts, e.weaks);
    if (!root) return {};
    enumerate(e, 0, std::move(*root));
    return e.out;
}

} // namespace ccc
