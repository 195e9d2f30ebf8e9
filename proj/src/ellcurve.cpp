#include "g2glue/ellcurve.hpp"

#include <algorithm>

namespace g2glue {

EllCurve::EllCurve(std::array<Elem, 3> roots) : e_(std::move(roots)) {
    if (!e_[0].valid() || !e_[1].valid() || !e_[2].valid())
        throw PreconditionError("curve roots must be initialized");
    if (!e_[0].ring()->is_field())
        throw PreconditionError("elliptic curves need field coefficients");
    for (int i = 0; i < 3; ++i) {
        if (!e_[i].ring()->same(*e_[0].ring()))
            throw PreconditionError("curve roots over mismatched fields");
        for (int j = i + 1; j < 3; ++j)
            if (e_[i] == e_[j])
                throw PreconditionError("singular model: e" + std::to_string(i + 1) +
                                        " = e" + std::to_string(j + 1) + " = " +
                                        e_[i].str());
    }
}

Poly EllCurve::cubic() const {
    const RingPtr ring = e_[0].ring();
    Poly acc = Poly::constant(ring->one());
    for (const auto& e : e_) acc = acc * Poly(ring, {-e, ring->one()});
    return acc;
}

Elem EllCurve::eval_cubic(const Elem& x) const {
    // Product form so that x may live in any extension the caller embedded
    // the roots into; callers pass x over the same ring as the curve.
    Elem acc = x.ring()->one();
    for (const auto& e : e_) acc = acc * (x - e);
    return acc;
}

bool EllCurve::contains(const EllPoint& p) const {
    if (p.infinity) return true;
    return p.y * p.y == eval_cubic(p.x);
}

std::string EllCurve::str() const {
    return "y^2 = (x-(" + e_[0].str() + "))(x-(" + e_[1].str() + "))(x-(" +
           e_[2].str() + "))";
}

// ---------------------------------------------------------------------------

bool TwoTorsionIso::is_valid() const {
    std::array<int, 3> s = sigma;
    std::sort(s.begin(), s.end());
    return s == std::array<int, 3>{0, 1, 2};
}

TwoTorsionIso TwoTorsionIso::parse(const std::string& text) {
    auto parts = split_top(text, ',');
    if (parts.size() != 3) throw ParseError("sigma must be 'i,j,k'");
    TwoTorsionIso t;
    for (int i = 0; i < 3; ++i) {
        try {
            t.sigma[i] = std::stoi(parts[i]) - 1;
        } catch (const std::exception&) {
            throw ParseError("bad sigma component '" + parts[i] + "'");
        }
    }
    if (!t.is_valid())
        throw ParseError("sigma must be a permutation of 1,2,3: " + text);
    return t;
}

std::array<TwoTorsionIso, 6> TwoTorsionIso::all() {
    return {TwoTorsionIso{{0, 1, 2}}, TwoTorsionIso{{0, 2, 1}},
            TwoTorsionIso{{1, 0, 2}}, TwoTorsionIso{{1, 2, 0}},
            TwoTorsionIso{{2, 0, 1}}, TwoTorsionIso{{2, 1, 0}}};
}

TwoTorsionIso TwoTorsionIso::inverse() const {
    TwoTorsionIso t;
    for (int i = 0; i < 3; ++i) t.sigma[sigma[i]] = i;
    return t;
}

TwoTorsionIso TwoTorsionIso::after(const TwoTorsionIso& other) const {
    TwoTorsionIso t;
    for (int i = 0; i < 3; ++i) t.sigma[i] = sigma[other.sigma[i]];
    return t;
}

std::string TwoTorsionIso::str() const {
    return std::to_string(sigma[0] + 1) + "," + std::to_string(sigma[1] + 1) +
           "," + std::to_string(sigma[2] + 1);
}

// ---------------------------------------------------------------------------

std::vector<EllPoint> two_torsion(const EllCurve& curve) {
    std::vector<EllPoint> pts;
    const Elem zero = curve.ring()->zero();
    for (const auto& e : curve.roots()) pts.push_back(EllPoint::affine(e, zero));
    pts.push_back(EllPoint::at_infinity());
    return pts;
}

Elem j_invariant(const EllCurve& curve) {
    const auto& e = curve.roots();
    Elem l = (e[2] - e[0]) / (e[1] - e[0]);
    const RingPtr ring = curve.ring();
    Elem one = ring->one();
    Elem num = l * l - l + one;
    num = ring->from_int(256) * num * num * num;
    Elem den = l * l * (l - one) * (l - one);
    return num / den;  // den nonzero: l != 0, 1 by distinctness
}

std::optional<AffineIso> geometric_iso_for_psi(const EllCurve& curve,
                                               const EllCurve& curve_prime,
                                               const TwoTorsionIso& psi) {
    if (!curve.ring()->same(*curve_prime.ring()))
        throw PreconditionError("curves over mismatched fields");
    if (!psi.is_valid()) throw PreconditionError("invalid two-torsion map");
    const auto& e = curve.roots();
    const auto& ep = curve_prime.roots();
    Elem u2 = (ep[psi.sigma[0]] - ep[psi.sigma[1]]) / (e[0] - e[1]);
    Elem r = ep[psi.sigma[0]] - u2 * e[0];
    if (u2 * e[2] + r == ep[psi.sigma[2]]) return AffineIso{u2, r};
    return std::nullopt;
}

}  // namespace g2glue
