// Acceptance suite: every release criterion with its tolerance/budget pinned,
// one PASS/FAIL line per criterion.  Exit code 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "g2glue/family.hpp"
#include "g2glue/glue.hpp"

using namespace g2glue;

namespace {

std::mt19937_64 gen(0x616363657074ULL);

struct Line {
    bool pass;
    std::string label;
    double ms;
    std::string detail;
};

std::vector<Line> results;

template <typename F>
void criterion(const std::string& label, double budget_ms, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        detail = body();
        pass = true;
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (budget_ms > 0 && ms > budget_ms) {
        pass = false;
        detail += " [over time budget of " + std::to_string(budget_ms) + " ms]";
    }
    results.push_back({pass, label, ms, detail});
    std::printf("%s  %s (%.0f ms)%s%s\n", pass ? "PASS" : "FAIL", label.c_str(),
                ms, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

// ---------------------------------------------------------------------------

std::vector<ProjPoint> proj_line_points(const RingPtr& r) {
    std::vector<ProjPoint> pts;
    std::uint64_t n = r->order().convert_to<std::uint64_t>();
    for (std::uint64_t i = 0; i < n; ++i)
        pts.push_back(ProjPoint::finite(r->element_at(i)));
    pts.push_back(ProjPoint::infinity(r));
    return pts;
}

std::vector<MoebiusMap> all_moebius_classes(const RingPtr& r) {
    std::uint64_t n = r->order().convert_to<std::uint64_t>();
    std::set<std::string> seen;
    std::vector<MoebiusMap> classes;
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b)
            for (std::uint64_t c = 0; c < n; ++c)
                for (std::uint64_t d = 0; d < n; ++d) {
                    Elem ea = r->element_at(a), eb = r->element_at(b),
                         ec = r->element_at(c), ed = r->element_at(d);
                    if (!(ea * ed - eb * ec).is_unit()) continue;
                    MoebiusMap m(ea, eb, ec, ed);
                    if (seen.insert(m.str()).second) classes.push_back(m);
                }
    return classes;
}

std::array<ProjPoint, 3> random_distinct_triple(
    const std::vector<ProjPoint>& pool) {
    for (;;) {
        std::array<ProjPoint, 3> t{pool[gen() % pool.size()],
                                   pool[gen() % pool.size()],
                                   pool[gen() % pool.size()]};
        try {
            check_triple_distinct(t, "sample");
            return t;
        } catch (const TripleNotDistinct&) {
        }
    }
}

std::array<ProjPoint, 3> random_valid_triple_z15(const RingPtr& z15) {
    for (;;) {
        std::array<ProjPoint, 3> t = [&] {
            std::vector<ProjPoint> pts;
            while (pts.size() < 3) {
                Elem u = z15->element_at(gen() % 15);
                Elem v = z15->element_at(gen() % 15);
                try {
                    pts.push_back(ProjPoint(u, v));
                } catch (const PreconditionError&) {
                }
            }
            return std::array<ProjPoint, 3>{pts[0], pts[1], pts[2]};
        }();
        try {
            check_triple_distinct(t, "sample");
            return t;
        } catch (const TripleNotDistinct&) {
        }
    }
}

int count_matching_classes(const std::vector<MoebiusMap>& classes,
                           const std::array<ProjPoint, 3>& src,
                           const std::array<ProjPoint, 3>& dst,
                           const MoebiusMap& expected) {
    int hits = 0;
    for (const auto& g : classes) {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) ok = g.apply(src[i]) == dst[i];
        if (ok) {
            ++hits;
            require(g == expected, "brute-force winner differs from the "
                                   "interpolated class");
        }
    }
    return hits;
}

// Census helpers -------------------------------------------------------------

struct CensusInput {
    EllCurve e, eprime;
    TwoTorsionIso sigma;
};

std::vector<std::array<Elem, 3>> distinct_triples(const RingPtr& r) {
    std::uint64_t p = r->order().convert_to<std::uint64_t>();
    std::vector<std::array<Elem, 3>> out;
    for (std::uint64_t i = 0; i < p; ++i)
        for (std::uint64_t j = 0; j < p; ++j)
            for (std::uint64_t k = 0; k < p; ++k) {
                if (i == j || j == k || i == k) continue;
                out.push_back(
                    {r->element_at(i), r->element_at(j), r->element_at(k)});
            }
    return out;
}

// Shared across criteria 3-8: every theta-smooth census input over F_5 with
// its constructed pair.
std::vector<GluedPair>& f5_constructed() {
    static std::vector<GluedPair> pairs = [] {
        RingPtr f5 = Ring::parse("fp:5");
        std::vector<GluedPair> out;
        auto triples = distinct_triples(f5);
        for (const auto& te : triples) {
            EllCurve e(te);
            for (const auto& tp : triples) {
                EllCurve ep(tp);
                for (const auto& s : TwoTorsionIso::all())
                    if (theta_smooth(e, ep, s)) out.push_back(construct(e, ep, s));
            }
        }
        return out;
    }();
    return pairs;
}

GluedPair rational_example() {
    RingPtr q = Ring::rationals();
    EllCurve e({q->from_int(0), q->from_int(1), q->from_int(-1)});
    EllCurve ep({q->from_int(0), q->from_int(1), q->from_int(3)});
    return construct(e, ep, TwoTorsionIso::identity());
}

GluedPair f5_example() {
    RingPtr f5 = Ring::parse("fp:5");
    EllCurve e({f5->from_int(0), f5->from_int(1), f5->from_int(4)});
    EllCurve ep({f5->from_int(0), f5->from_int(2), f5->from_int(3)});
    return construct(e, ep, TwoTorsionIso::parse("2,1,3"));
}

bool pushforward_is_double(const GluedPair& g, Cover which) {
    auto push = weierstrass_pushforward(g, which);
    if (push.size() != 3) return false;
    for (const auto& [v, m] : push)
        if (m != 2) return false;
    return true;
}

bool f_lands_on_e_symbolically(const GluedPair& g) {
    const RingPtr kt = g.kt();
    auto lift = [&](const Elem& c) {
        return make_ratfn_elem(kt, Poly::constant(c),
                               Poly::constant(c.ring()->one()));
    };
    Elem prod = kt->one();
    for (const auto& ev : g.curve_e().roots())
        prod = prod * (g.payload().x_t - lift(ev));
    Elem sextic_fn = make_ratfn_elem(
        kt, g.sextic(), Poly::constant(g.base_ring()->one()));
    return g.payload().h_t * g.payload().h_t * sextic_fn == prod;
}

}  // namespace

// ---------------------------------------------------------------------------

int main() {
    criterion(
        "criterion 1: three-point interpolation uniqueness by brute force "
        "(PGL2(F_5) x 100, invertible classes over Z/15 x 25)",
        10'000, [] {
            RingPtr f5 = Ring::parse("fp:5");
            auto classes5 = all_moebius_classes(f5);
            require(classes5.size() == 120, "PGL2(F_5) should have 120 classes");
            auto pool = proj_line_points(f5);
            for (int iter = 0; iter < 100; ++iter) {
                auto src = random_distinct_triple(pool);
                auto dst = random_distinct_triple(pool);
                MoebiusMap m = moebius_from_triples(src, dst);
                require(count_matching_classes(classes5, src, dst, m) == 1,
                        "expected exactly one matching class over F_5");
            }
            RingPtr z15 = Ring::parse("z:15");
            auto classes15 = all_moebius_classes(z15);
            require(classes15.size() == 2880,
                    "GL2(Z/15) modulo units should have 2880 classes");
            for (int iter = 0; iter < 25; ++iter) {
                auto src = random_valid_triple_z15(z15);
                auto dst = random_valid_triple_z15(z15);
                MoebiusMap m = moebius_from_triples(src, dst);
                require(count_matching_classes(classes15, src, dst, m) == 1,
                        "expected exactly one matching class over Z/15");
            }
            return std::string("120 classes over F_5, 2880 over Z/15, always "
                               "a unique match");
        });

    criterion(
        "criterion 2: theta-smoothness criteria agree on the full F_5 and F_7 "
        "censuses",
        120'000, [] {
            long long total = 0;
            for (std::int64_t p : {5, 7}) {
                RingPtr r = Ring::prime_field(p);
                auto triples = distinct_triples(r);
                for (const auto& te : triples) {
                    EllCurve e(te);
                    Elem je = j_invariant(e);
                    for (const auto& tp : triples) {
                        EllCurve ep(tp);
                        int smooth_count = 0;
                        for (const auto& s : TwoTorsionIso::all()) {
                            // theta_smooth aborts if the matrix criterion and
                            // the geometric-isomorphism criterion disagree.
                            if (theta_smooth(e, ep, s)) ++smooth_count;
                            ++total;
                        }
                        if (!(je == j_invariant(ep)))
                            require(smooth_count == 6,
                                    "j(E) != j(E') must make every sigma "
                                    "theta-smooth");
                    }
                }
            }
            require(total == 21600 + 264600, "census sizes");
            return std::string("21600 + 264600 inputs, zero disagreements");
        });

    criterion(
        "criterion 3: construction validity on every theta-smooth F_5 input "
        "(squarefree sextic, exact h^2 sextic = P_E(x(t)))",
        0, [] {
            const auto& pairs = f5_constructed();
            for (const auto& g : pairs) {
                require(g.sextic().degree() == 6, "sextic degree");
                require(g.sextic().is_squarefree(), "sextic squarefree");
                require(f_lands_on_e_symbolically(g),
                        "h^2 sextic != P_E(x(t)) for " + g.payload().str());
            }
            return std::to_string(pairs.size()) +
                   " constructions, zero square-root extraction failures";
        });

    criterion(
        "criterion 4: Weierstrass pushforward has multiplicity 2 on both "
        "covers (all F_5 pairs + the worked examples)",
        0, [] {
            const auto& pairs = f5_constructed();
            for (const auto& g : pairs) {
                require(pushforward_is_double(g, Cover::F), "f pushforward");
                require(pushforward_is_double(g, Cover::FPrime),
                        "f' pushforward");
            }
            for (const GluedPair& g : {rational_example(), f5_example()}) {
                require(pushforward_is_double(g, Cover::F), "f pushforward");
                require(pushforward_is_double(g, Cover::FPrime),
                        "f' pushforward");
            }
            return std::to_string(pairs.size() * 2 + 4) + " pushforwards checked";
        });

    criterion(
        "criterion 5: recover_psi o construct = identity on all theta-smooth "
        "F_5 and F_7 census inputs",
        0, [] {
            long long constructed = 0;
            for (std::int64_t p : {5, 7}) {
                RingPtr r = Ring::prime_field(p);
                auto triples = distinct_triples(r);
                for (const auto& te : triples) {
                    EllCurve e(te);
                    for (const auto& tp : triples) {
                        EllCurve ep(tp);
                        for (const auto& s : TwoTorsionIso::all()) {
                            if (!theta_smooth(e, ep, s)) continue;
                            GluedPair g = construct(e, ep, s);
                            require(recover_psi(g) == s, "psi roundtrip failed");
                            ++constructed;
                        }
                    }
                }
            }
            return std::to_string(constructed) + " roundtrips";
        });

    criterion(
        "criterion 6: ramification lands on the origins and the differents "
        "are the involution fixed loci (all F_5 pairs)",
        0, [] {
            const auto& pairs = f5_constructed();
            for (const auto& g : pairs) {
                require(ram_image_check(g), "ram image");
                require(kahler_different(g, Cover::F).ideal ==
                            fixed_point_ideal(g, Cover::F),
                        "different of f vs fixed locus of tau");
                require(kahler_different(g, Cover::FPrime).ideal ==
                            fixed_point_ideal(g, Cover::FPrime),
                        "different of f' vs fixed locus of tau'");
            }
            return std::to_string(pairs.size()) + " pairs checked";
        });

    criterion(
        "criterion 7: trace/kernel condition, exhaustive over E'(F_25) on 50 "
        "random theta-smooth F_5 inputs",
        60'000, [] {
            const auto& pairs = f5_constructed();
            for (int iter = 0; iter < 50; ++iter) {
                const GluedPair& g = pairs[gen() % pairs.size()];
                require(trace_pushpull(g, 2, 0), "trace sum not zero for " +
                                                     g.payload().str());
            }
            return std::string("50 inputs, exhaustive fibers over F_625");
        });

    criterion(
        "criterion 8: (f, f') separates the rational points of C on 50 random "
        "theta-smooth F_5 inputs",
        0, [] {
            const auto& pairs = f5_constructed();
            for (int iter = 0; iter < 50; ++iter) {
                const GluedPair& g = pairs[gen() % pairs.size()];
                require(birationality_check(g, 0), "separation failed for " +
                                                       g.payload().str());
            }
            return std::string("50 inputs, all rational points");
        });

    criterion(
        "criterion 9: construction is invariant under relabeling (100 random "
        "theta-smooth F_7 inputs x 6 relabelings, bit-identical)",
        0, [] {
            RingPtr f7 = Ring::parse("fp:7");
            auto triples = distinct_triples(f7);
            int done = 0;
            while (done < 100) {
                EllCurve e(triples[gen() % triples.size()]);
                EllCurve ep(triples[gen() % triples.size()]);
                TwoTorsionIso s = TwoTorsionIso::all()[gen() % 6];
                if (!theta_smooth(e, ep, s)) continue;
                GluedPair g = construct(e, ep, s);
                std::string fingerprint = g.payload().str();
                for (const auto& pi : TwoTorsionIso::all()) {
                    EllCurve re({e.root(pi.sigma[0]), e.root(pi.sigma[1]),
                                 e.root(pi.sigma[2])});
                    GluedPair rg = construct(re, ep, s.after(pi));
                    require(rg.payload() == g.payload(),
                            "relabeled payload differs structurally");
                    require(rg.payload().str() == fingerprint,
                            "relabeled payload differs bitwise");
                }
                ++done;
            }
            return std::string("100 inputs x 6 relabelings");
        });

    criterion(
        "criterion 10: family over F_7(s): algebraic bad locus equals the "
        "fiberwise scan; specialization commutes at every good s0",
        10'000, [] {
            RingPtr f7 = Ring::parse("fp:7");
            RingPtr f7s = Ring::rational_function_field(f7, "s");
            EllCurve e({f7s->parse_elem("0"), f7s->parse_elem("1"),
                        f7s->parse_elem("s")});
            EllCurve ep({f7s->parse_elem("0"), f7s->parse_elem("1"),
                         f7s->parse_elem("s+1")});
            TwoTorsionIso id = TwoTorsionIso::identity();

            std::set<std::string> algebraic;
            for (const auto& b : family_bad_locus(e, ep, id))
                algebraic.insert(b.s0.str());

            std::set<std::string> fiberwise;
            for (int i = 0; i < 7; ++i) {
                Elem s0 = f7->from_int(i);
                try {
                    std::array<Elem, 3> re, rp;
                    for (int k = 0; k < 3; ++k) {
                        re[k] = specialize_elem(e.root(k), s0);
                        rp[k] = specialize_elem(ep.root(k), s0);
                    }
                    if (!theta_smooth(EllCurve(re), EllCurve(rp), id))
                        fiberwise.insert(s0.str());
                } catch (const PreconditionError&) {
                    fiberwise.insert(s0.str());
                }
            }
            require(algebraic == fiberwise,
                    "bad locus disagrees with the fiberwise scan");
            int good = 0;
            for (int i = 0; i < 7; ++i) {
                Elem s0 = f7->from_int(i);
                if (fiberwise.count(s0.str())) continue;
                require(specialize_commutes(e, ep, id, s0),
                        "specialization does not commute at s0 = " + s0.str());
                ++good;
            }
            require(good == 4, "expected 4 good rational points");
            return std::string("bad locus {0, 1, 6}, 4 commuting specializations");
        });

    int failed = 0;
    for (const auto& line : results)
        if (!line.pass) ++failed;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
                results.size());
    return failed == 0 ? 0 : 1;
}
