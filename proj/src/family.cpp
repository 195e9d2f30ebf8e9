#include "g2glue/family.hpp"

#include <algorithm>
#include <map>

namespace g2glue {

namespace {

// The function field an element of which is being specialized, validated.
RingPtr family_ring_of(const Elem& x, const Elem& s0) {
    const RingPtr ks = x.ring();
    if (ks->kind() != RingKind::RationalFunctionField)
        throw PreconditionError("specialization of a non-function-field element");
    if (!s0.ring()->same(*ks->base()))
        throw PreconditionError("specialization point lives in the wrong field");
    return ks;
}

Poly lcm_poly(const Poly& a, const Poly& b) {
    Poly g = Poly::gcd(a, b);
    return Poly::divmod(a, g).first * b;
}

}  // namespace

Elem specialize_elem(const Elem& x, const Elem& s0) {
    family_ring_of(x, s0);
    const RatFn& f = x.ratfn();
    Elem den = f.den.eval(s0);
    if (den.is_zero())
        throw PreconditionError("evaluation at a pole: s0 = " + s0.str() +
                                " of " + x.str());
    return f.num.eval(s0) / den;
}

Poly specialize_poly(const Poly& f, const Elem& s0) {
    std::vector<Elem> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(specialize_elem(x, s0));
    return Poly(s0.ring(), std::move(c));
}

MoebiusMap specialize_moebius(const MoebiusMap& m, const Elem& s0) {
    family_ring_of(m.at(0, 0), s0);
    // Primitive representative: clear denominators, divide out the content.
    Poly common = Poly::constant(m.at(0, 0).ring()->base()->one());
    for (int i = 0; i < 4; ++i)
        common = lcm_poly(common, m.at(i / 2, i % 2).ratfn().den);
    std::array<Poly, 4> entries;
    for (int i = 0; i < 4; ++i) {
        const RatFn& f = m.at(i / 2, i % 2).ratfn();
        entries[i] = f.num * Poly::divmod(common, f.den).first;
    }
    Poly content = entries[0];
    for (int i = 1; i < 4; ++i) content = Poly::gcd(content, entries[i]);
    if (content.degree() > 0)
        for (auto& e : entries) e = Poly::divmod(e, content).first;
    // Entries cannot all vanish at s0 now; the determinant may still vanish
    // at a degenerate point, in which case the constructor rejects it.
    return MoebiusMap(entries[0].eval(s0), entries[1].eval(s0),
                      entries[2].eval(s0), entries[3].eval(s0));
}

Elem specialize_cover_fn(const Elem& fn, const Elem& s0, const RingPtr& kt_out) {
    const RingPtr kst = fn.ring();
    if (kst->kind() != RingKind::RationalFunctionField)
        throw PreconditionError("specialization of a non-function-field element");
    const RatFn& f = fn.ratfn();
    return make_ratfn_elem(kt_out, specialize_poly(f.num, s0),
                           specialize_poly(f.den, s0));
}

GluePayload specialize_payload(const GluePayload& p, const Elem& s0) {
    RingPtr kt_out = Ring::rational_function_field(s0.ring(), "t");
    return GluePayload{specialize_moebius(p.gamma, s0),
                       specialize_elem(p.a, s0),
                       specialize_elem(p.b, s0),
                       specialize_elem(p.lambda, s0),
                       specialize_poly(p.sextic, s0),
                       specialize_cover_fn(p.xprime_t, s0, kt_out),
                       specialize_cover_fn(p.x_t, s0, kt_out),
                       specialize_cover_fn(p.h_t, s0, kt_out)};
}

// ---------------------------------------------------------------------------

namespace {

struct BadCollector {
    const RingPtr base;  // F_p
    std::map<std::string, BadPoint> rational;
    std::map<std::string, BadPoint> extension;

    explicit BadCollector(RingPtr b) : base(std::move(b)) {}

    void add(const Elem& s0, int k, const std::string& reason) {
        auto& bucket = k == 1 ? rational : extension;
        std::string key = std::to_string(k) + "|" + s0.str();
        auto it = bucket.find(key);
        if (it == bucket.end()) {
            bucket.emplace(key, BadPoint{s0, k, {reason}});
        } else {
            auto& rs = it->second.reasons;
            if (std::find(rs.begin(), rs.end(), reason) == rs.end())
                rs.push_back(reason);
        }
    }

    // Roots of a polynomial over F_p, then over F_{p^2} and F_{p^3}
    // (non-rational ones only, flagged with their degree).
    void scan(const Poly& f, const std::string& reason) {
        if (f.is_zero())
            throw InternalError("bad-locus scan over the zero polynomial");
        if (f.degree() == 0) return;
        for (const auto& rm : poly_roots(f)) add(rm.root, 1, reason);
        for (int k = 2; k <= 3; ++k) {
            RingPtr ext = Ring::extension_field(base->characteristic_p(), k);
            FieldEmbedding emb(base, ext);
            for (const auto& rm : poly_roots(emb.map_poly(f))) {
                const auto& c = rm.root.ext().c;
                bool constant = true;
                for (std::size_t i = 1; i < c.size(); ++i)
                    if (c[i] != 0) constant = false;
                if (!constant) add(rm.root, k, reason);
            }
        }
    }

    std::vector<BadPoint> sorted(bool ext) const {
        std::vector<BadPoint> out;
        for (const auto& [k, v] : ext ? extension : rational) out.push_back(v);
        std::sort(out.begin(), out.end(), [](const BadPoint& a, const BadPoint& b) {
            if (a.ext_degree != b.ext_degree) return a.ext_degree < b.ext_degree;
            if (a.ext_degree == 1 || a.s0.ring()->same(*b.s0.ring()))
                return Elem::cmp(a.s0, b.s0) < 0;
            return a.s0.str() < b.s0.str();
        });
        return out;
    }
};

RingPtr family_base(const EllCurve& e_s) {
    const RingPtr ks = e_s.ring();
    if (ks->kind() != RingKind::RationalFunctionField)
        throw PreconditionError("family curves must live over F_p(s)");
    if (ks->base()->kind() != RingKind::PrimeField)
        throw PreconditionError("family base must be a prime field");
    if (ks->var() == "t")
        throw PreconditionError("family variable name 't' is reserved for covers");
    return ks->base();
}

}  // namespace

std::vector<BadPoint> family_bad_locus(const EllCurve& e_s,
                                       const EllCurve& eprime_s,
                                       const TwoTorsionIso& psi,
                                       std::vector<BadPoint>* extension_points) {
    RingPtr base = family_base(e_s);
    BadCollector bad(base);
    for (const EllCurve* c : {&e_s, &eprime_s}) {
        const auto& r = c->roots();
        for (int i = 0; i < 3; ++i) {
            bad.scan(r[i].ratfn().den, "denominator");
            for (int j = i + 1; j < 3; ++j)
                bad.scan((r[i] - r[j]).ratfn().num, "collision");
        }
    }
    // Theta degeneration: vanishing of the lower-left entry of the primitive
    // gamma matrix (gamma(inf) meets infinity in those fibers).
    MoebiusMap gamma = gamma_of(e_s, eprime_s, psi);
    if (gamma.at(1, 0).is_zero())
        throw NotThetaSmooth(
            "family is globally bad: gamma fixes infinity identically");
    Poly common = Poly::constant(base->one());
    for (int i = 0; i < 4; ++i)
        common = lcm_poly(common, gamma.at(i / 2, i % 2).ratfn().den);
    std::array<Poly, 4> entries;
    for (int i = 0; i < 4; ++i) {
        const RatFn& f = gamma.at(i / 2, i % 2).ratfn();
        entries[i] = f.num * Poly::divmod(common, f.den).first;
    }
    Poly content = entries[0];
    for (int i = 1; i < 4; ++i) content = Poly::gcd(content, entries[i]);
    Poly lower_left = content.degree() > 0
                          ? Poly::divmod(entries[2], content).first
                          : entries[2];
    if (lower_left.degree() > 0) bad.scan(lower_left, "theta-degeneration");

    if (extension_points) *extension_points = bad.sorted(true);
    return bad.sorted(false);
}

bool specialize_commutes(const EllCurve& e_s, const EllCurve& eprime_s,
                         const TwoTorsionIso& psi, const Elem& s0) {
    family_base(e_s);
    for (const auto& b : family_bad_locus(e_s, eprime_s, psi))
        if (b.s0 == s0)
            throw PreconditionError("specialize_commutes at a bad point s0 = " +
                                    s0.str());
    GluedPair generic = construct(e_s, eprime_s, psi);
    GluePayload specialized = specialize_payload(generic.payload(), s0);

    auto spec_curve = [&](const EllCurve& c) {
        return EllCurve({specialize_elem(c.root(0), s0),
                         specialize_elem(c.root(1), s0),
                         specialize_elem(c.root(2), s0)});
    };
    GluedPair direct = construct(spec_curve(e_s), spec_curve(eprime_s), psi);
    return specialized == direct.payload();
}

FamilyReport family_run(const EllCurve& e_s, const EllCurve& eprime_s,
                        const TwoTorsionIso& psi, bool with_specializations) {
    FamilyReport report;
    RingPtr base = family_base(e_s);
    try {
        report.bad = family_bad_locus(e_s, eprime_s, psi, &report.bad_ext);
    } catch (const NotThetaSmooth& err) {
        report.globally_bad = true;
        report.globally_bad_reason = err.what();
        return report;
    }
    report.generic = construct(e_s, eprime_s, psi);
    if (!with_specializations) return report;
    std::uint64_t p = static_cast<std::uint64_t>(base->characteristic_p());
    for (std::uint64_t i = 0; i < p; ++i) {
        Elem s0 = base->element_at(i);
        bool is_bad = false;
        for (const auto& b : report.bad) is_bad = is_bad || b.s0 == s0;
        if (is_bad) continue;
        report.specializations.emplace_back(
            s0, specialize_payload(report.generic->payload(), s0));
    }
    return report;
}

}  // namespace g2glue
