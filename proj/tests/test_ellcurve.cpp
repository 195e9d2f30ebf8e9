#include <doctest.h>

#include <algorithm>

#include "g2glue/ellcurve.hpp"
#include "helpers.hpp"

using namespace g2glue;
using g2glue::testing::random_curve;

TEST_CASE("curve construction and two-torsion") {
    RingPtr q = Ring::rationals();
    EllCurve e({q->from_int(0), q->from_int(1), q->from_int(-1)});
    auto t = two_torsion(e);
    REQUIRE(t.size() == 4);
    CHECK(t[0] == EllPoint::affine(q->from_int(0), q->zero()));
    CHECK(t[1] == EllPoint::affine(q->from_int(1), q->zero()));
    CHECK(t[2] == EllPoint::affine(q->from_int(-1), q->zero()));
    CHECK(t[3].infinity);

    RingPtr f5 = Ring::parse("fp:5");
    EllCurve e5({f5->from_int(0), f5->from_int(1), f5->from_int(4)});
    auto t5 = two_torsion(e5);
    CHECK(t5[2].x == f5->from_int(4));
    CHECK(t5[3].infinity);

    RingPtr f7s = Ring::parse("ratfunc:fp:7:s");
    EllCurve es({f7s->parse_elem("0"), f7s->parse_elem("s"),
                 f7s->parse_elem("s+1")});
    auto ts = two_torsion(es);
    CHECK(ts[1].x == f7s->parse_elem("s"));
    CHECK(ts[2].x == f7s->parse_elem("s+1"));

    CHECK_THROWS_AS(EllCurve({q->from_int(0), q->from_int(0), q->from_int(1)}),
                    PreconditionError);
}

TEST_CASE("cubic expansion matches the product form") {
    RingPtr f7 = Ring::parse("fp:7");
    for (int i = 0; i < 20; ++i) {
        EllCurve e = random_curve(f7);
        Poly c = e.cubic();
        CHECK(c.degree() == 3);
        CHECK(c.is_monic());
        for (int v = 0; v < 7; ++v) {
            Elem x = f7->from_int(v);
            CHECK(c.eval(x) == e.eval_cubic(x));
        }
    }
}

TEST_CASE("j-invariant examples") {
    RingPtr q = Ring::rationals();
    EllCurve e1({q->from_int(0), q->from_int(1), q->from_int(-1)});
    // lambda = -1: j = 256 * 27 / 4 = 1728.
    CHECK(j_invariant(e1) == q->from_int(1728));
    EllCurve e2({q->from_int(0), q->from_int(1), q->from_int(2)});
    CHECK(j_invariant(e2) == q->from_int(1728));
}

TEST_CASE("j-invariant is independent of the root order") {
    for (const char* desc : {"q", "fp:7", "fp:5"}) {
        RingPtr r = Ring::parse(desc);
        CAPTURE(desc);
        for (int iter = 0; iter < 15; ++iter) {
            EllCurve e = r->kind() == RingKind::Rationals
                             ? EllCurve({r->from_int(0), r->from_int(3),
                                         r->from_int(iter + 5)})
                             : random_curve(r);
            Elem j = j_invariant(e);
            std::array<int, 3> idx{0, 1, 2};
            std::sort(idx.begin(), idx.end());
            do {
                EllCurve p({e.root(idx[0]), e.root(idx[1]), e.root(idx[2])});
                CHECK(j_invariant(p) == j);
            } while (std::next_permutation(idx.begin(), idx.end()));
        }
    }
}

TEST_CASE("geometric isomorphism matching psi: examples") {
    RingPtr q = Ring::rationals();
    EllCurve e({q->from_int(0), q->from_int(1), q->from_int(-1)});
    auto iso = geometric_iso_for_psi(e, e, TwoTorsionIso::identity());
    REQUIRE(iso.has_value());
    CHECK(iso->u2 == q->one());
    CHECK(iso->r == q->zero());

    RingPtr f5 = Ring::parse("fp:5");
    EllCurve e5({f5->from_int(0), f5->from_int(1), f5->from_int(4)});
    EllCurve ep5({f5->from_int(0), f5->from_int(2), f5->from_int(3)});
    auto iso5 = geometric_iso_for_psi(e5, ep5, TwoTorsionIso::identity());
    REQUIRE(iso5.has_value());
    CHECK(iso5->u2 == f5->from_int(2));
    CHECK(iso5->r == f5->zero());

    // sigma = (1->2, 2->1, 3->3) forces u2 = 3, r = 2, but 4*3+2 = 4 != 3.
    TwoTorsionIso swapped{{1, 0, 2}};
    CHECK(!geometric_iso_for_psi(e5, ep5, swapped).has_value());
}

TEST_CASE("geometric isomorphism properties") {
    RingPtr f7 = Ring::parse("fp:7");
    for (int iter = 0; iter < 40; ++iter) {
        EllCurve e = random_curve(f7);
        // The identity always matches itself with (1, 0).
        auto self = geometric_iso_for_psi(e, e, TwoTorsionIso::identity());
        REQUIRE(self.has_value());
        CHECK(self->u2.is_one());
        CHECK(self->r.is_zero());

        EllCurve ep = random_curve(f7);
        bool j_differ = !(j_invariant(e) == j_invariant(ep));
        for (const auto& sigma : TwoTorsionIso::all()) {
            auto iso = geometric_iso_for_psi(e, ep, sigma);
            if (j_differ) CHECK(!iso.has_value());
            if (iso) {
                // The affine map reproduces the target triple in sigma-order.
                for (int i = 0; i < 3; ++i)
                    CHECK(iso->u2 * e.root(i) + iso->r == ep.root(sigma.sigma[i]));
            }
        }
    }
}

TEST_CASE("two-torsion permutation encoding") {
    TwoTorsionIso id = TwoTorsionIso::identity();
    CHECK(id.str() == "1,2,3");
    TwoTorsionIso p = TwoTorsionIso::parse("2,1,3");
    CHECK(p.sigma == std::array<int, 3>{1, 0, 2});
    CHECK(p.inverse() == p);
    CHECK(p.after(p) == id);
    CHECK_THROWS_AS(TwoTorsionIso::parse("1,1,3"), ParseError);
    CHECK_THROWS_AS(TwoTorsionIso::parse("1,2"), ParseError);
    CHECK(TwoTorsionIso::all().size() == 6);
    // after() composes left-to-right through indices.
    TwoTorsionIso c{{1, 2, 0}};
    CHECK(c.after(c.inverse()) == id);
}
