#include "doctest.h"

#include <algorithm>
#include <optional>
#include <vector>

#include "ccc/cone.hpp"
#include "ccc/errors.hpp"
#include "ccc/fan.hpp"
#include "helpers.hpp"

using namespace ccc;
using namespace ccctest;

namespace {

Fan make_fan(int n, const std::vector<std::vector<IntVec>>& max_cones) {
    std::vector<Cone> cones;
    for (const auto& rays : max_cones) cones.push_back(Cone::from_rays(n, rays));
    return Fan::from_cones(n, cones);
}

Fan line_fan() { return make_fan(1, {{iv({1})}, {iv({-1})}}); }
Fan half_line_fan() { return make_fan(1, {{iv({1})}}); }
Fan quadrant_fan() { return make_fan(2, {{iv({1, 0}), iv({0, 1})}}); }
Fan blowup_fan() {
    return make_fan(2, {{iv({1, 0}), iv({1, 1})}, {iv({1, 1}), iv({0, 1})}});
}
Fan four_quadrants_fan() {
    return make_fan(2, {{iv({1, 0}), iv({0, 1})},
                        {iv({0, 1}), iv({-1, 0})},
                        {iv({-1, 0}), iv({0, -1})},
                        {iv({0, -1}), iv({1, 0})}});
}
Fan wedge_resolution_fan() {
    return make_fan(2, {{iv({1, 1}), iv({1, 0})}, {iv({1, 0}), iv({1, -1})}});
}
Fan zero_fan() { return Fan::from_cones(0, {Cone(0)}); }

Int max_multiplicity(const Fan& f) {
    Int m = 1;
    for (const Cone& c : f.cones()) m = std::max(m, c.multiplicity());
    return m;
}

} // namespace

TEST_CASE("fan construction face-closes the input") {
    Fan f = quadrant_fan();
    CHECK(f.cones().size() == 4); // zero cone, two rays, the quadrant
    CHECK(f.maximal_cones().size() == 1);
    CHECK(f.rays() == std::vector<IntVec>{iv({0, 1}), iv({1, 0})});
    CHECK(f.has_cone(Cone(2)));
    CHECK(f.has_cone(Cone::from_rays(2, {iv({1, 0})})));
    CHECK(!f.has_cone(Cone::from_rays(2, {iv({1, 1})})));
    CHECK(f.cones_of_dim(1).size() == 2);
    CHECK(std::is_sorted(f.cones().begin(), f.cones().end()));
}

TEST_CASE("overlapping cones are rejected") {
    std::vector<Cone> cones = {Cone::from_rays(2, {iv({1, 0}), iv({0, 1})}),
                               Cone::from_rays(2, {iv({1, 1}), iv({1, -1})})};
    CHECK_THROWS_AS(Fan::from_cones(2, cones), OverlappingConesError);
}

TEST_CASE("a cone buried inside another is rejected") {
    std::vector<Cone> cones = {Cone::from_rays(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}),
                               Cone::from_rays(3, {iv({1, 1, 1})})};
    CHECK_THROWS_AS(Fan::from_cones(3, cones), OverlappingConesError);
}

TEST_CASE("ambient dimension mismatch is rejected") {
    std::vector<Cone> cones = {Cone::from_rays(2, {iv({1, 0})})};
    CHECK_THROWS_AS(Fan::from_cones(3, cones), Error);
}

TEST_CASE("two wedges over a common ray form a fan") {
    Fan f = wedge_resolution_fan();
    CHECK(f.cones().size() == 6);
    CHECK(f.rays() == std::vector<IntVec>{iv({1, -1}), iv({1, 0}), iv({1, 1})});
    CHECK(f.maximal_cones().size() == 2);
}

TEST_CASE("membership queries") {
    Fan f = blowup_fan();
    CHECK(f.support_contains(rv({3, 5})));
    CHECK(!f.support_contains(rv({-1, 5})));
    CHECK(f.cone_containing(rv({3, 5})) == Cone::from_rays(2, {iv({0, 1}), iv({1, 1})}));
    CHECK(f.cone_containing(rv({2, 2})) == Cone::from_rays(2, {iv({1, 1})}));
    CHECK(f.cone_containing(rv({0, 0})) == Cone(2));
    CHECK(f.cone_containing(rv({-1, 5})) == std::nullopt);
}

TEST_CASE("subfan relations") {
    CHECK(fan_relate(half_line_fan(), line_fan()) == FanRelation::first_subfan_of_second);
    CHECK(fan_relate(line_fan(), half_line_fan()) == FanRelation::second_subfan_of_first);
    CHECK(fan_relate(line_fan(), line_fan()) == FanRelation::equal);
    CHECK(fan_relate(quadrant_fan(), four_quadrants_fan()) == FanRelation::first_subfan_of_second);
}

TEST_CASE("refinement relations") {
    CHECK(fan_relate(blowup_fan(), quadrant_fan()) == FanRelation::first_refines_second);
    CHECK(fan_relate(quadrant_fan(), blowup_fan()) == FanRelation::second_refines_first);
}

TEST_CASE("unrelated fans") {
    CHECK(fan_relate(line_fan(), quadrant_fan()) == FanRelation::unrelated);
    CHECK(fan_relate(blowup_fan(), four_quadrants_fan()) == FanRelation::unrelated);
}

TEST_CASE("completeness") {
    CHECK(is_complete(line_fan()));
    CHECK(is_complete(four_quadrants_fan()));
    CHECK(is_complete(zero_fan()));
    CHECK(!is_complete(half_line_fan()));
    CHECK(!is_complete(quadrant_fan()));
    CHECK(!is_complete(wedge_resolution_fan()));
    CHECK(!is_complete(Fan::from_cones(2, {Cone(2)})));
    CHECK(!is_complete(Fan(2)));
}

TEST_CASE("support equality") {
    CHECK(support_equal(quadrant_fan(), blowup_fan()));
    CHECK(!support_equal(quadrant_fan(), four_quadrants_fan()));
    // same support, neither refines the other
    Fan wedge = make_fan(2, {{iv({1, 1}), iv({1, -1})}});
    CHECK(support_equal(wedge_resolution_fan(), wedge));
    CHECK(fan_relate(wedge_resolution_fan(), wedge) == FanRelation::first_refines_second);
}

TEST_CASE("common refinement") {
    CHECK(common_refinement(quadrant_fan(), blowup_fan()) == blowup_fan());
    Fan diagonal = make_fan(2, {{iv({1, 1}), iv({-1, 1})},
                                {iv({-1, 1}), iv({-1, -1})},
                                {iv({-1, -1}), iv({1, -1})},
                                {iv({1, -1}), iv({1, 1})}});
    Fan eight = common_refinement(four_quadrants_fan(), diagonal);
    CHECK(eight.maximal_cones().size() == 8);
    CHECK(is_complete(eight));
    CHECK(fan_relate(eight, four_quadrants_fan()) == FanRelation::first_refines_second);
    CHECK(fan_relate(eight, diagonal) == FanRelation::first_refines_second);
}

TEST_CASE("morphism validation") {
    LatticeMap id2{2, 2, IntMat::identity(2)};
    CHECK_NOTHROW(FanMorphism(id2, quadrant_fan(), quadrant_fan()));
    CHECK_NOTHROW(FanMorphism(id2, blowup_fan(), quadrant_fan()));
    // the identity into a refinement is not a fan morphism: the undivided
    // cone fits in no single piece
    CHECK_THROWS_AS(FanMorphism(id2, quadrant_fan(), blowup_fan()), ValidationError);

    // the lower half-plane cones land in no target cone
    CHECK_THROWS_AS(FanMorphism(id2, four_quadrants_fan(), quadrant_fan()), ValidationError);
    // shape mismatch
    CHECK_THROWS_AS(FanMorphism(id2, line_fan(), quadrant_fan()), ValidationError);
    // a cone folding onto a line lands in no strongly convex cone
    LatticeMap fold{2, 1, im({{1, -1}})};
    CHECK_THROWS_AS(FanMorphism(fold, quadrant_fan(), half_line_fan()), ValidationError);
}

TEST_CASE("proper morphisms") {
    // finite cover of the wedge: e1 -> (1,0), e2 -> (1,2)
    LatticeMap cover{2, 2, im({{1, 1}, {0, 2}})};
    Fan wedge = make_fan(2, {{iv({1, 0}), iv({1, 2})}});
    CHECK(is_proper(FanMorphism(cover, quadrant_fan(), wedge)));

    // complete source over a point
    LatticeMap collapse1{1, 0, IntMat(0, 1)};
    CHECK(is_proper(FanMorphism(collapse1, line_fan(), zero_fan())));

    // refinements are proper
    LatticeMap id2{2, 2, IntMat::identity(2)};
    CHECK(is_proper(FanMorphism(id2, blowup_fan(), quadrant_fan())));
}

TEST_CASE("improper morphisms and witnesses") {
    // half line over a point: the preimage of the support is all of R
    LatticeMap collapse1{1, 0, IntMat(0, 1)};
    PropernessCheck pc = properness_check(FanMorphism(collapse1, half_line_fan(), zero_fan()));
    CHECK(!pc.proper);
    REQUIRE(pc.witness.has_value());
    CHECK(*pc.witness == rv({-1}));

    // coordinate projection of the quadrant: preimage is a half-plane
    LatticeMap proj{2, 1, im({{1, 0}})};
    pc = properness_check(FanMorphism(proj, quadrant_fan(), half_line_fan()));
    CHECK(!pc.proper);
    REQUIRE(pc.witness.has_value());
    CHECK(*pc.witness == rv({0, -1}));
}

TEST_CASE("witnesses certify improperness") {
    Rng rng(20240817);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Cone> ray_cones = {Cone(2)};
        for (int i = 0; i < 2; ++i) {
            IntVec r = iv({rng.pick(-4, 4), rng.pick(-4, 4)});
            if (!is_zero(r)) ray_cones.push_back(Cone::from_rays(2, {r}));
        }
        Fan source = Fan::from_cones(2, ray_cones);
        IntMat m(1, 2);
        m.at(0, 0) = rng.pick(-2, 2);
        m.at(0, 1) = rng.pick(-2, 2);
        std::optional<FanMorphism> phi;
        try {
            phi.emplace(LatticeMap{2, 1, m}, source, line_fan());
        } catch (const ValidationError&) {
            continue;
        }
        PropernessCheck pc = properness_check(*phi);
        if (pc.proper) {
            // spot-check: every grid point maps into the target support only
            // if it lies in the source support (target is complete here, so
            // the source must cover everything)
            for (Int x = -3; x <= 3; ++x)
                for (Int y = -3; y <= 3; ++y)
                    CHECK(source.support_contains(RatVec{Rat(x), Rat(y)}));
        } else {
            REQUIRE(pc.witness.has_value());
            RatVec w = *pc.witness;
            CHECK(line_fan().support_contains(mul(m, w)));
            CHECK(!source.support_contains(w));
        }
    }
}

TEST_CASE("stellar subdivision at an interior ray") {
    Fan f = stellar_subdivision(quadrant_fan(), iv({1, 1}));
    CHECK(f == blowup_fan());
    CHECK(fan_relate(f, quadrant_fan()) == FanRelation::first_refines_second);
    CHECK(common_refinement(f, quadrant_fan()) == f);
}

TEST_CASE("stellar subdivision at an existing ray of a simplicial fan is the identity") {
    CHECK(stellar_subdivision(blowup_fan(), iv({1, 1})) == blowup_fan());
    CHECK(stellar_subdivision(four_quadrants_fan(), iv({1, 0})) == four_quadrants_fan());
}

TEST_CASE("stellar subdivision scales generators to primitive ones") {
    CHECK(stellar_subdivision(quadrant_fan(), iv({3, 3})) == blowup_fan());
}

TEST_CASE("stellar subdivision outside the support is rejected") {
    CHECK_THROWS_AS(stellar_subdivision(quadrant_fan(), iv({-1, 0})), Error);
    CHECK_THROWS_AS(stellar_subdivision(quadrant_fan(), iv({0, 0})), Error);
}

TEST_CASE("smooth refinement of the index-two wedge") {
    Fan f = smooth_refine(make_fan(2, {{iv({1, 0}), iv({1, 2})}}));
    CHECK(f.rays() == std::vector<IntVec>{iv({1, 0}), iv({1, 1}), iv({1, 2})});
    std::vector<Cone> max = f.maximal_cones();
    REQUIRE(max.size() == 2);
    CHECK(max[0] == Cone::from_rays(2, {iv({1, 0}), iv({1, 1})}));
    CHECK(max[1] == Cone::from_rays(2, {iv({1, 1}), iv({1, 2})}));
    CHECK(max_multiplicity(f) == 1);
}

TEST_CASE("smooth refinement of the index-three wedge takes two steps") {
    Fan f = smooth_refine(make_fan(2, {{iv({1, 0}), iv({1, 3})}}));
    CHECK(f.rays() ==
          std::vector<IntVec>{iv({1, 0}), iv({1, 1}), iv({1, 2}), iv({1, 3})});
    CHECK(f.maximal_cones().size() == 3);
    CHECK(max_multiplicity(f) == 1);
}

TEST_CASE("smooth fans are fixed by smooth refinement") {
    CHECK(smooth_refine(blowup_fan()) == blowup_fan());
    CHECK(smooth_refine(four_quadrants_fan()) == four_quadrants_fan());
    CHECK(smooth_refine(line_fan()) == line_fan());
    CHECK(smooth_refine(zero_fan()) == zero_fan());
}

TEST_CASE("smooth refinement triangulates a square cone without new rays") {
    Fan f = smooth_refine(make_fan(
        3, {{iv({0, 0, 1}), iv({1, 0, 1}), iv({0, 1, 1}), iv({1, 1, 1})}}));
    CHECK(f.rays() == std::vector<IntVec>{iv({0, 0, 1}), iv({0, 1, 1}), iv({1, 0, 1}),
                                          iv({1, 1, 1})});
    std::vector<Cone> max = f.maximal_cones();
    REQUIRE(max.size() == 2);
    CHECK(max_multiplicity(f) == 1);
}

TEST_CASE("smooth refinement splits a three-dimensional double cover") {
    Fan f = smooth_refine(
        make_fan(3, {{iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2})}}));
    CHECK(max_multiplicity(f) == 1);
    std::vector<IntVec> rays = f.rays();
    CHECK(std::find(rays.begin(), rays.end(), iv({1, 1, 1})) != rays.end());
    CHECK(f.maximal_cones().size() == 3);
}

TEST_CASE("smooth refinement properties on random plane wedges") {
    Rng rng(911);
    for (int trial = 0; trial < 25; ++trial) {
        IntVec a = iv({rng.pick(-6, 6), rng.pick(-6, 6)});
        IntVec b = iv({rng.pick(-6, 6), rng.pick(-6, 6)});
        if (a[0] * b[1] - a[1] * b[0] == 0) continue;
        Fan input = make_fan(2, {{a, b}});
        Fan out = smooth_refine(input);
        CHECK(max_multiplicity(out) == 1);
        FanRelation rel = fan_relate(out, input);
        CHECK((rel == FanRelation::equal || rel == FanRelation::first_refines_second));
        for (const Cone& c : input.cones())
            if (c.is_smooth()) CHECK(out.has_cone(c));
    }
}

TEST_CASE("completion of the half line") {
    Completion c = complete_fan(half_line_fan());
    CHECK(c.fan == line_fan());
    CHECK(!c.refined_input);
}

TEST_CASE("completion of the empty fan") {
    Completion c0 = complete_fan(Fan(0));
    CHECK(c0.fan == zero_fan());
    Completion c1 = complete_fan(Fan(1));
    CHECK(c1.fan == line_fan());
    Completion c2 = complete_fan(Fan(2));
    CHECK(is_complete(c2.fan));
    CHECK(c2.fan.maximal_cones().size() == 4);
}

TEST_CASE("completion of the quadrant") {
    Completion c = complete_fan(quadrant_fan());
    CHECK(c.fan == four_quadrants_fan());
    CHECK(!c.refined_input);
}

TEST_CASE("complete fans are fixed by completion") {
    Completion c = complete_fan(four_quadrants_fan());
    CHECK(c.fan == four_quadrants_fan());
    CHECK(!c.refined_input);
    c = complete_fan(zero_fan());
    CHECK(c.fan == zero_fan());
    CHECK(!c.refined_input);
}

TEST_CASE("completion fills wide gaps") {
    Fan input = wedge_resolution_fan();
    Completion c = complete_fan(input);
    CHECK(is_complete(c.fan));
    CHECK(!c.refined_input);
    for (const Cone& cone : input.cones()) CHECK(c.fan.has_cone(cone));
    CHECK(c.fan.rays() == std::vector<IntVec>{iv({-1, -1}), iv({-1, 1}), iv({1, -1}),
                                              iv({1, 0}), iv({1, 1})});
}

TEST_CASE("completion of a single ray in the plane") {
    Completion c = complete_fan(make_fan(2, {{iv({2, 3})}}));
    CHECK(is_complete(c.fan));
    CHECK(!c.refined_input);
    CHECK(c.fan.has_cone(Cone::from_rays(2, {iv({2, 3})})));
}

TEST_CASE("completion of the octant stays a subfan") {
    Fan octant = make_fan(3, {{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}});
    Completion c = complete_fan(octant);
    CHECK(is_complete(c.fan));
    CHECK(!c.refined_input);
    CHECK(c.fan.maximal_cones().size() == 8);
    for (const Cone& cone : octant.cones()) CHECK(c.fan.has_cone(cone));
}

TEST_CASE("higher-rank completion refines when walls cut the input") {
    Fan input = make_fan(3, {{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})},
                             {iv({1, 1, -1}), iv({1, -1, -1})}});
    Completion c = complete_fan(input);
    CHECK(is_complete(c.fan));
    // whatever was cut, the result refines the input over its support
    for (const Cone& piece : c.fan.cones()) {
        RatVec x = piece.relative_interior_point();
        if (!input.support_contains(x)) continue;
        Cone home = *input.cone_containing(x);
        CHECK(home.contains(piece));
    }
    if (!c.refined_input)
        for (const Cone& cone : input.cones()) CHECK(c.fan.has_cone(cone));
}

TEST_CASE("star and quotient at a ray of the resolved wedge") {
    Fan f = wedge_resolution_fan();
    StarQuotient sq = star_quotient(f, Cone::from_rays(2, {iv({1, 0})}));
    CHECK(sq.star.size() == 3);
    CHECK(sq.closed_star == f);
    CHECK(sq.boundary_star.cones().size() == 3); // zero cone and the outer rays
    CHECK(sq.boundary_star.has_cone(Cone::from_rays(2, {iv({1, 1})})));
    CHECK(sq.boundary_star.has_cone(Cone::from_rays(2, {iv({1, -1})})));
    CHECK(sq.projection == im({{0, 1}}));
    CHECK(sq.quotient == line_fan());
}

TEST_CASE("star at the zero cone is the whole fan") {
    Fan f = blowup_fan();
    StarQuotient sq = star_quotient(f, Cone(2));
    CHECK(sq.star.size() == f.cones().size());
    CHECK(sq.closed_star == f);
    CHECK(sq.boundary_star.empty());
    CHECK(sq.quotient == f);
    CHECK(sq.projection == IntMat::identity(2));
}

TEST_CASE("star at a maximal cone is a point") {
    StarQuotient sq = star_quotient(quadrant_fan(), Cone::from_rays(2, {iv({1, 0}), iv({0, 1})}));
    CHECK(sq.star.size() == 1);
    CHECK(sq.quotient == zero_fan());
    CHECK(sq.projection.rows == 0);
}

TEST_CASE("star of a missing cone is rejected") {
    CHECK_THROWS_AS(star_quotient(quadrant_fan(), Cone::from_rays(2, {iv({1, 1})})),
                    ConeNotInFanError);
}

TEST_CASE("the projection is a poset isomorphism onto the quotient") {
    Fan f = four_quadrants_fan();
    StarQuotient sq = star_quotient(f, Cone::from_rays(2, {iv({1, 0})}));
    REQUIRE(sq.star.size() == 3);
    std::vector<Cone> images;
    for (const Cone& c : sq.star) images.push_back(c.image(sq.projection));
    for (size_t i = 0; i < sq.star.size(); ++i)
        for (size_t j = 0; j < sq.star.size(); ++j) {
            if (i != j) CHECK(!(images[i] == images[j]));
            CHECK(sq.star[j].contains(sq.star[i]) == images[j].contains(images[i]));
        }
}

TEST_CASE("product fans multiply cones and supports") {
    Fan plane = product_fan(line_fan(), line_fan());
    CHECK(plane == four_quadrants_fan());
    CHECK(plane.cones().size() == 9);

    Fan slab = product_fan(quadrant_fan(), line_fan());
    CHECK(slab.ambient_dim() == 3);
    CHECK(slab.maximal_cones().size() == 2);
    CHECK(slab.cones().size() == 12);
    CHECK(slab.support_contains(rv({5, 5, -3})));
    CHECK_FALSE(slab.support_contains(rv({-1, 0, 0})));
    CHECK_FALSE(is_complete(slab));

    // A rank-zero factor is neutral.
    CHECK(product_fan(line_fan(), zero_fan()) == line_fan());
    CHECK(product_fan(zero_fan(), line_fan()) == line_fan());
}

TEST_CASE("mapping a fan through a unimodular change of lattice") {
    IntMat rot = im({{0, -1}, {1, 0}});
    CHECK(map_fan(four_quadrants_fan(), rot) == four_quadrants_fan());

    IntMat shear = im({{1, 1}, {0, 1}});
    Fan image = map_fan(quadrant_fan(), shear);
    CHECK(image == make_fan(2, {{iv({1, 0}), iv({1, 1})}}));

    CHECK_THROWS_AS(map_fan(quadrant_fan(), im({{1, 0}, {0, 0}})), Error);
}
