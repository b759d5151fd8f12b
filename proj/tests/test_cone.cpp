#include "doctest.h"

#include <algorithm>
#include <vector>

#include "ccc/cone.hpp"
#include "ccc/errors.hpp"
#include "helpers.hpp"

using namespace ccc;
using namespace ccctest;

TEST_CASE("index-two wedge") {
    Cone c = Cone::from_rays(2, {iv({1, 0}), iv({1, 2})});
    CHECK(c.dim() == 2);
    CHECK(c.is_simplicial());
    CHECK(c.multiplicity() == 2);
    CHECK(!c.is_smooth());
    CHECK(c.rays() == std::vector<IntVec>{iv({1, 0}), iv({1, 2})});
    CHECK(c.contains(iv({1, 1})));
    CHECK(c.interior_contains(rv({1, 1})));
    CHECK(!c.contains(iv({0, 1})));
    CHECK(c.faces().size() == 4);
}

TEST_CASE("smooth quadrant") {
    Cone c = Cone::from_rays(2, {iv({0, 1}), iv({1, 0})});
    CHECK(c.is_smooth());
    CHECK(c.multiplicity() == 1);
    CHECK(c.span_lattice() == IntMat::identity(2));
    CHECK(c.span_equations().empty());
}

TEST_CASE("rays are normalized to primitive vectors") {
    Cone c = Cone::from_rays(2, {iv({2, 2})});
    CHECK(c.rays() == std::vector<IntVec>{iv({1, 1})});
    CHECK(c.dim() == 1);
    CHECK(c.is_smooth());
}

TEST_CASE("opposite rays are rejected") {
    CHECK_THROWS_AS(Cone::from_rays(2, {iv({1, 1}), iv({-1, -1})}), NotStronglyConvexError);
    CHECK_THROWS_AS(Cone::from_rays(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}),
                    NotStronglyConvexError);
}

TEST_CASE("a cone inside a hyperplane") {
    Cone c = Cone::from_rays(3, {iv({1, 0, 0}), iv({1, 2, 0})});
    CHECK(c.dim() == 2);
    CHECK(c.ambient_dim() == 3);
    CHECK(c.multiplicity() == 2);
    CHECK(c.contains(iv({1, 1, 0})));
    CHECK(!c.contains(iv({1, 1, 1})));
    // span equations pick out the hyperplane
    REQUIRE(c.span_equations().size() == 1);
    CHECK(c.span_equations()[0] == iv({0, 0, 1}));
}

TEST_CASE("zero cone") {
    Cone c(2);
    CHECK(c.is_zero());
    CHECK(c.dim() == 0);
    CHECK(c.is_smooth());
    CHECK(c.multiplicity() == 1);
    CHECK(c.contains(rv({0, 0})));
    CHECK(c.interior_contains(rv({0, 0})));
    CHECK(!c.contains(rv({1, 0})));
    CHECK(c.faces().size() == 1);
}

TEST_CASE("square cone faces") {
    Cone c = Cone::from_rays(3, {iv({0, 0, 1}), iv({1, 0, 1}), iv({0, 1, 1}), iv({1, 1, 1})});
    CHECK(c.dim() == 3);
    CHECK(!c.is_simplicial());
    CHECK_THROWS_AS(c.multiplicity(), Error);
    CHECK(c.ray_count() == 4);
    CHECK(c.facets().size() == 4);
    // 1 zero + 4 rays + 4 facets + the cone itself
    CHECK(c.faces().size() == 10);
}

TEST_CASE("non-extreme generators are dropped") {
    Cone c = Cone::from_rays(2, {iv({1, 0}), iv({1, 1}), iv({0, 1})});
    CHECK(c.rays() == std::vector<IntVec>{iv({0, 1}), iv({1, 0})});
}

TEST_CASE("minimal face containing a point") {
    Cone c = Cone::from_rays(2, {iv({0, 1}), iv({1, 0})});
    CHECK(c.minimal_face_containing(rv({1, 1})) == c);
    CHECK(c.minimal_face_containing(rv({1, 0})) == Cone::from_rays(2, {iv({1, 0})}));
    CHECK(c.minimal_face_containing(rv({0, 0})) == Cone(2));
    CHECK_THROWS_AS(c.minimal_face_containing(rv({-1, 0})), Error);
}

TEST_CASE("intersection of wedges") {
    Cone a = Cone::from_rays(2, {iv({1, 0}), iv({1, 2})});
    Cone b = Cone::from_rays(2, {iv({1, 1}), iv({0, 1})});
    Cone both = a.intersect(b);
    CHECK(both.rays() == std::vector<IntVec>{iv({1, 1}), iv({1, 2})});
    CHECK(a.contains(both));
    CHECK(b.contains(both));
}

TEST_CASE("images under lattice maps") {
    Cone quadrant = Cone::from_rays(2, {iv({1, 0}), iv({0, 1})});
    Cone wedge = quadrant.image(im({{1, 1}, {0, 2}}));
    CHECK(wedge.rays() == std::vector<IntVec>{iv({1, 0}), iv({1, 2})});
    // collapse to a ray
    Cone ray = quadrant.image(im({{1, 0}, {0, 0}}));
    CHECK(ray.rays() == std::vector<IntVec>{iv({1, 0})});
    // projection folding the cone onto a line
    CHECK_THROWS_AS(quadrant.image(im({{1, -1}})), NotStronglyConvexError);
}

TEST_CASE("multiplicity matches the ray determinant for full-dimensional simplicial cones") {
    Rng rng(808);
    int found = 0;
    while (found < 25) {
        int dim = static_cast<int>(rng.pick(2, 3));
        std::vector<IntVec> rays;
        for (int i = 0; i < dim; ++i) {
            IntVec r(dim);
            for (int j = 0; j < dim; ++j) r[j] = Int(rng.pick(-3, 3));
            rays.push_back(primitive(std::move(r)));
        }
        IntMat m = IntMat::from_cols(rays, dim);
        if (laplace_det(m) == 0) continue;
        Cone c = [&]() -> Cone {
            try {
                return Cone::from_rays(dim, rays);
            } catch (const NotStronglyConvexError&) {
                return Cone(dim);
            }
        }();
        if (c.is_zero() || c.ray_count() != dim) continue;
        ++found;
        CHECK(c.multiplicity() == int_abs(laplace_det(IntMat::from_cols(c.rays(), dim))));
    }
}

TEST_CASE("cone and polycone views agree") {
    Rng rng(1234);
    for (int iter = 0; iter < 20; ++iter) {
        int dim = static_cast<int>(rng.pick(1, 3));
        std::vector<IntVec> rays;
        int k = static_cast<int>(rng.pick(1, 3));
        for (int i = 0; i < k; ++i) {
            IntVec r(dim);
            for (int j = 0; j < dim; ++j) r[j] = Int(rng.pick(0, 2));
            if (!is_zero(r)) rays.push_back(primitive(std::move(r)));
        }
        Cone c = Cone::from_rays(dim, rays); // nonnegative rays: always strongly convex
        PolyCone p = c.poly();
        CHECK(p.generators().rays == c.rays());
        CHECK(p.is_strongly_convex());
        CHECK(p.dim() == c.dim());
        for (long x = -2; x <= 2; ++x)
            for (long y = -2; y <= 2; ++y) {
                RatVec pt;
                pt.push_back(Rat(x));
                if (dim >= 2) pt.push_back(Rat(y));
                while (static_cast<int>(pt.size()) < dim) pt.push_back(Rat(x - y));
                CHECK(c.contains(pt) == p.contains(pt));
            }
        // faces are genuine subcones on subsets of the extreme rays
        for (const Cone& f : c.faces()) {
            CHECK(c.contains(f));
            for (const IntVec& r : f.rays())
                CHECK(std::find(c.rays().begin(), c.rays().end(), r) != c.rays().end());
        }
        // the relative interior point is interior
        CHECK(c.interior_contains(c.relative_interior_point()));
    }
}

TEST_CASE("simplicial face lattices have binomial sizes") {
    Cone c = Cone::from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
    CHECK(c.faces().size() == 8); // all subsets of three rays
    CHECK(c.facets().size() == 3);
}
