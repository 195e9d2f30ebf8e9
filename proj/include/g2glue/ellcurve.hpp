#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "g2glue/poly.hpp"

namespace g2glue {

// Affine point of y^2 = (x-e1)(x-e2)(x-e3), or the point at infinity (the
// group origin of the curve).
struct EllPoint {
    bool infinity = true;
    Elem x, y;

    static EllPoint at_infinity() { return EllPoint{}; }
    static EllPoint affine(Elem px, Elem py) {
        return EllPoint{false, std::move(px), std::move(py)};
    }
    friend bool operator==(const EllPoint& a, const EllPoint& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const EllPoint& a, const EllPoint& b) {
        return !(a == b);
    }
    std::string str() const {
        return infinity ? "O" : "(" + x.str() + "," + y.str() + ")";
    }
};

// Elliptic curve with fully split 2-torsion: y^2 = (x-e1)(x-e2)(x-e3) over a
// field, the e_i pairwise distinct.
class EllCurve {
public:
    explicit EllCurve(std::array<Elem, 3> roots);

    const RingPtr& ring() const { return e_[0].ring(); }
    const std::array<Elem, 3>& roots() const { return e_; }
    const Elem& root(int i) const { return e_[i]; }

    Poly cubic() const;                      // (x-e1)(x-e2)(x-e3) expanded
    Elem eval_cubic(const Elem& x) const;    // product form, any field extension
    bool contains(const EllPoint& p) const;

    friend bool operator==(const EllCurve& a, const EllCurve& b) {
        return a.e_[0] == b.e_[0] && a.e_[1] == b.e_[1] && a.e_[2] == b.e_[2];
    }
    std::string str() const;

private:
    std::array<Elem, 3> e_;
};

// Isomorphism psi: E[2] -> E'[2] encoded by the permutation of the three
// finite 2-torsion points: psi(e_i, 0) = (e'_{sigma(i)}, 0).  Any bijection
// of the nonzero points extends uniquely to a group isomorphism of (Z/2)^2,
// so the permutation is a faithful encoding.
struct TwoTorsionIso {
    std::array<int, 3> sigma{0, 1, 2};  // 0-based images

    static TwoTorsionIso identity() { return TwoTorsionIso{}; }
    static TwoTorsionIso parse(const std::string& text);  // "i,j,k", 1-based
    static std::array<TwoTorsionIso, 6> all();

    bool is_valid() const;
    TwoTorsionIso inverse() const;
    // (this o other)(i) = this(other(i))
    TwoTorsionIso after(const TwoTorsionIso& other) const;

    friend bool operator==(const TwoTorsionIso& a, const TwoTorsionIso& b) {
        return a.sigma == b.sigma;
    }
    friend bool operator!=(const TwoTorsionIso& a, const TwoTorsionIso& b) {
        return !(a == b);
    }
    std::string str() const;  // 1-based "i,j,k"
};

// E[2]: the three finite points (e_i, 0) followed by the origin.
std::vector<EllPoint> two_torsion(const EllCurve& curve);

// j = 256 (l^2-l+1)^3 / (l^2 (l-1)^2) with l = (e3-e1)/(e2-e1).
Elem j_invariant(const EllCurve& curve);

// The affine map x -> u2*x + r matching psi on x-coordinates, when it exists.
struct AffineIso {
    Elem u2;  // multiplier; a square in the algebraic closure automatically
    Elem r;
};

// Decides whether some isomorphism E -> E' over the algebraic closure
// restricts to psi on 2-torsion: equivalently, whether the affine map fixed
// by the first two constraints also sends e3 to e'_{sigma(3)}.
std::optional<AffineIso> geometric_iso_for_psi(const EllCurve& curve,
                                               const EllCurve& curve_prime,
                                               const TwoTorsionIso& psi);

}  // namespace g2glue
