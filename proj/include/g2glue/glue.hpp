#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g2glue/ellcurve.hpp"
#include "g2glue/projline.hpp"

namespace g2glue {

enum class Cover { F, FPrime };  // f: C -> E,  f': C -> E'

// Involution of the model C: y^2 = sextic(t) acting by sign flips on the
// coordinates.  tau (the automorphism of f) flips both, tau' (of f') flips t
// only, and their product is the hyperelliptic involution sigma_C.
struct Involution {
    int t_sign;
    int y_sign;

    Involution composed_with(const Involution& other) const {
        return Involution{t_sign * other.t_sign, y_sign * other.y_sign};
    }
    friend bool operator==(const Involution& a, const Involution& b) {
        return a.t_sign == b.t_sign && a.y_sign == b.y_sign;
    }
    std::string str() const;  // "(t,y) -> (-t,y)" and friends
};

// Everything the construction produces, over the base field K and K(t):
//   C:  y^2 = sextic(t),  sextic = prod_i (lambda t^2 + a - e'_i)
//   f': (t,y) |-> (x' = lambda t^2 + a, y' = y)
//   f:  (t,y) |-> (x = gamma^{-1}(lambda t^2 + a), y_E = y * h(t))
// with a = gamma(inf), b = gamma^{-1}(inf), lambda = prod_i (b - e_i) and
// h(t) = 1/(lambda t^3).  Canonical forms throughout, so equality of payloads
// is equality of constructions.
struct GluePayload {
    MoebiusMap gamma;
    Elem a, b, lambda;
    Poly sextic;      // over K, degree 6, squarefree
    Elem xprime_t;    // over K(t)
    Elem x_t;         // over K(t)
    Elem h_t;         // over K(t); sign pinned by h * lambda * t^3 = 1

    friend bool operator==(const GluePayload& p, const GluePayload& q);
    friend bool operator!=(const GluePayload& p, const GluePayload& q) {
        return !(p == q);
    }
    std::string str() const;
};

class GluedPair {
public:
    GluedPair(EllCurve e, EllCurve eprime, TwoTorsionIso psi, RingPtr kt,
              GluePayload payload)
        : e_(std::move(e)),
          eprime_(std::move(eprime)),
          psi_(psi),
          kt_(std::move(kt)),
          p_(std::move(payload)) {}

    const EllCurve& curve_e() const { return e_; }
    const EllCurve& curve_eprime() const { return eprime_; }
    const TwoTorsionIso& psi() const { return psi_; }
    const RingPtr& base_ring() const { return e_.ring(); }
    const RingPtr& kt() const { return kt_; }
    const GluePayload& payload() const { return p_; }

    const MoebiusMap& gamma() const { return p_.gamma; }
    const Elem& a() const { return p_.a; }
    const Elem& b() const { return p_.b; }
    const Elem& lambda() const { return p_.lambda; }
    const Poly& sextic() const { return p_.sextic; }

    // Involutions of the configuration: tau is the automorphism of f, tau'
    // of f', and tau o tau' = sigma_C, the hyperelliptic involution.
    static Involution tau() { return Involution{-1, -1}; }
    static Involution tau_prime() { return Involution{-1, 1}; }
    static Involution sigma_c() { return Involution{1, -1}; }

private:
    EllCurve e_, eprime_;
    TwoTorsionIso psi_;
    RingPtr kt_;
    GluePayload p_;
};

// The unique Moebius class with gamma(e_i) = e'_{sigma(i)}, i = 1,2,3.
MoebiusMap gamma_of(const EllCurve& e, const EllCurve& eprime,
                    const TwoTorsionIso& psi);

// gamma(inf) != inf, cross-checked against the non-existence of a geometric
// isomorphism matching psi.  Disagreement of the two criteria would falsify
// the theory and raises InternalError.
bool theta_smooth(const EllCurve& e, const EllCurve& eprime,
                  const TwoTorsionIso& psi);

// The symmetric gluing.  Throws NotThetaSmooth on bad input; the remaining
// identities are verified before returning and raise InternalError or
// SquareRootExtractionFailed when violated (they never are on valid input).
GluedPair construct(const EllCurve& e, const EllCurve& eprime,
                    const TwoTorsionIso& psi);

// Pushforward of the Weierstrass divisor {y = 0} through the chosen cover:
// pairs (2-torsion x-value, multiplicity), in the stored root order of the
// target curve.  Counted via gcd degrees, which equals counting the sextic's
// roots in a splitting field grouped by image.
std::vector<std::pair<Elem, int>> weierstrass_pushforward(const GluedPair& g,
                                                          Cover which);

// Reads psi back off the covers: pairs f(w) with f'(w) over the Weierstrass
// points.  Always equals the input psi; an ill-defined correspondence raises
// InternalError.
TwoTorsionIso recover_psi(const GluedPair& g);

// Degree-2 ramification subscheme of a cover, computed from the annihilator
// of the relative differentials in the chart where it lives (t = infinity
// for f, t = 0 for f').  The subscheme is {chart_var = 0, w^2 = fiber_const}.
struct RamificationDivisor {
    Cover which;
    std::string chart_var;  // "u" (= 1/t) or "t"
    Poly ideal;             // monic generator of the different ideal
    Elem fiber_const;
    int degree;
    bool split;                   // the two points are rational
    std::optional<Elem> witness;  // square root of fiber_const when split
};

RamificationDivisor kahler_different(const GluedPair& g, Cover which);

// Fixed-point ideal of the cover's involution (tau for f, tau' for f') in
// the same chart; equals the Kaehler different ideal.
Poly fixed_point_ideal(const GluedPair& g, Cover which);

// f' maps the different of f to the origin of E', and f maps the different
// of f' to the origin of E.
bool ram_image_check(const GluedPair& g);

// Discriminant (branch) divisor on the target curve: the fiber of the chosen
// cover's different, {x = x_value, y^2 = fiber_const}.
struct BranchDivisor {
    Cover which;
    Elem x_value;
    Elem fiber_const;
    int degree;
    bool split;
    std::optional<Elem> witness;
};

BranchDivisor discriminant(const GluedPair& g, Cover which);

// Chord-and-tangent group law on the factored model (used by the trace
// check; infinity is the origin).
EllPoint ell_add(const EllCurve& curve, const EllPoint& p, const EllPoint& q);
EllPoint ell_neg(const EllCurve& curve, const EllPoint& p);

// Enumerate points of E' over F_{p^(m*ext_k)} (m = degree of the base field),
// pull each back through f', push the fiber through f and add on E: the sum
// must be the origin every time.  Fibers live one quadratic step higher,
// F_{p^(2 m ext_k)}.  budget = 0 means exhaustive.
bool trace_pushpull(const GluedPair& g, int ext_k = 1, int budget = 0);

// (f, f') separates the rational points of C away from t in {0, inf}; the
// only admissible collisions are the Weierstrass twins {(t,0), (-t,0)}, which
// lie over the singular points of the fiber product.  Also verifies the
// function-field identity t * h(t) * (x'(t) - a) = 1 symbolically.
bool birationality_check(const GluedPair& g, int budget = 0);

// Points of C rational over the base field, t outside {0, inf}.
std::vector<std::pair<Elem, Elem>> rational_curve_points(const GluedPair& g,
                                                         int budget = 0);

// Runs every check that applies to the pair's base field; returns (name,
// pass) rows.  All rows pass on every constructible input.  budget = 0 runs
// the point checks exhaustively.
std::vector<std::pair<std::string, bool>> verify_all(const GluedPair& g,
                                                     int budget = 0);

}  // namespace g2glue
