#include "doctest.h"

#include <cstdlib>
#include <map>

#include "ccc/arrangement.hpp"
#include "ccc/errors.hpp"
#include "helpers.hpp"

using namespace ccc;
using namespace ccctest;

namespace {

int sign_of(const Rat& x) { return x > 0 ? 1 : x < 0 ? -1 : 0; }

Rat eval(const AffineFunctional& f, const RatVec& x) {
    return Rat(f.offset) + dot(f.coeffs, x);
}

// every declared sign must hold exactly at the sample
void check_samples(const std::vector<AffineFunctional>& walls,
                   const std::vector<ArrangementCell>& cells) {
    for (const ArrangementCell& c : cells) {
        REQUIRE(c.signs.size() == walls.size());
        for (size_t i = 0; i < walls.size(); ++i) {
            CAPTURE(i);
            CHECK(sign_of(eval(walls[i], c.sample)) == c.signs[i]);
        }
    }
    // sign vectors are pairwise distinct
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j) CHECK(cells[i].signs != cells[j].signs);
}

std::map<int, int> count_by_dim(const std::vector<ArrangementCell>& cells) {
    std::map<int, int> n;
    for (const ArrangementCell& c : cells) n[c.dim]++;
    return n;
}

} // namespace

TEST_CASE("one linear wall on the line") {
    std::vector<AffineFunctional> walls{{iv({1}), Int(0)}};
    auto cells = arrangement_cells(1, walls);
    CHECK(cells.size() == 3);
    check_samples(walls, cells);
    auto by_dim = count_by_dim(cells);
    CHECK(by_dim[0] == 1);
    CHECK(by_dim[1] == 2);
}

TEST_CASE("two affine walls on the line") {
    // x - 1 and x + 1
    std::vector<AffineFunctional> walls{{iv({1}), Int(-1)}, {iv({1}), Int(1)}};
    auto cells = arrangement_cells(1, walls);
    CHECK(cells.size() == 5);
    check_samples(walls, cells);
    auto by_dim = count_by_dim(cells);
    CHECK(by_dim[0] == 2);
    CHECK(by_dim[1] == 3);
}

TEST_CASE("coordinate cross in the plane") {
    std::vector<AffineFunctional> walls{{iv({1, 0}), Int(0)}, {iv({0, 1}), Int(0)}};
    auto cells = arrangement_cells(2, walls);
    CHECK(cells.size() == 9);
    check_samples(walls, cells);
    auto by_dim = count_by_dim(cells);
    CHECK(by_dim[0] == 1);
    CHECK(by_dim[1] == 4);
    CHECK(by_dim[2] == 4);
}

TEST_CASE("three concurrent lines make thirteen cells") {
    std::vector<AffineFunctional> walls{
        {iv({1, 0}), Int(0)}, {iv({0, 1}), Int(0)}, {iv({1, 1}), Int(0)}};
    auto cells = arrangement_cells(2, walls);
    CHECK(cells.size() == 13);
    check_samples(walls, cells);
    auto by_dim = count_by_dim(cells);
    CHECK(by_dim[0] == 1);
    CHECK(by_dim[1] == 6);
    CHECK(by_dim[2] == 6);
}

TEST_CASE("unit square grid") {
    std::vector<AffineFunctional> walls{{iv({1, 0}), Int(0)},
                                        {iv({1, 0}), Int(-1)},
                                        {iv({0, 1}), Int(0)},
                                        {iv({0, 1}), Int(-1)}};
    auto cells = arrangement_cells(2, walls);
    CHECK(cells.size() == 25);
    check_samples(walls, cells);
    auto by_dim = count_by_dim(cells);
    CHECK(by_dim[0] == 4);
    CHECK(by_dim[1] == 12);
    CHECK(by_dim[2] == 9);
}

TEST_CASE("domain restriction to a line") {
    // wall x - y restricted to the anti-diagonal x + y = 0
    std::vector<AffineFunctional> walls{{iv({1, -1}), Int(0)}};
    CellDomain dom;
    dom.equalities.push_back({iv({1, 1}), Int(0)});
    auto cells = arrangement_cells(2, walls, dom);
    CHECK(cells.size() == 3);
    check_samples(walls, cells);
    for (const ArrangementCell& c : cells) CHECK(c.sample[0] + c.sample[1] == 0);
    auto by_dim = count_by_dim(cells);
    CHECK(by_dim[0] == 1);
    CHECK(by_dim[1] == 2);
}

TEST_CASE("strict and weak domain constraints") {
    // wall y on the open right half plane intersected with y >= 0
    std::vector<AffineFunctional> walls{{iv({0, 1}), Int(0)}};
    CellDomain dom;
    dom.stricts.push_back({iv({1, 0}), Int(0)});
    dom.weak.push_back({iv({0, 1}), Int(0)});
    auto cells = arrangement_cells(2, walls, dom);
    // y = 0 and y > 0 survive; y < 0 is outside the domain
    CHECK(cells.size() == 2);
    check_samples(walls, cells);
    for (const ArrangementCell& c : cells) CHECK(c.sample[0] > 0);
}

TEST_CASE("empty domain yields no cells") {
    std::vector<AffineFunctional> walls{{iv({1}), Int(0)}};
    CellDomain dom;
    dom.stricts.push_back({iv({1}), Int(0)});
    dom.stricts.push_back({iv({-1}), Int(0)});
    CHECK(arrangement_cells(1, walls, dom).empty());
}

TEST_CASE("cells cover the plane") {
    Rng rng(90210);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<AffineFunctional> walls;
        int k = static_cast<int>(rng.pick(1, 4));
        for (int i = 0; i < k; ++i) {
            IntVec a(2);
            a[0] = Int(rng.pick(-2, 2));
            a[1] = Int(rng.pick(-2, 2));
            if (ccc::is_zero(a)) continue;
            walls.push_back({std::move(a), Int(rng.pick(-2, 2))});
        }
        auto cells = arrangement_cells(2, walls);
        check_samples(walls, cells);
        // every grid point lands in exactly one cell (matched by sign vector)
        for (long x = -3; x <= 3; ++x)
            for (long y = -3; y <= 3; ++y) {
                RatVec p = rv({x, y});
                std::vector<int> sig;
                for (const AffineFunctional& w : walls) sig.push_back(sign_of(eval(w, p)));
                int matches = 0;
                for (const ArrangementCell& c : cells)
                    if (c.signs == sig) ++matches;
                CHECK(matches == 1);
            }
    }
}

TEST_CASE("cell budget is enforced") {
    setenv("CCC_MAX_CELLS", "4", 1);
    std::vector<AffineFunctional> walls{{iv({1, 0}), Int(0)}, {iv({0, 1}), Int(0)}};
    CHECK_THROWS_AS(arrangement_cells(2, walls), TooManyCellsError);
    unsetenv("CCC_MAX_CELLS");
    CHECK(arrangement_cells(2, walls).size() == 9);
}
