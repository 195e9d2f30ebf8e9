#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g2glue/ring.hpp"

namespace g2glue {

// Dense univariate polynomial over a common coefficient ring.  Coefficients
// ascending, no trailing zeros; the zero polynomial has an empty list (and
// degree -1).
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, std::vector<Elem> coeffs);

    static Poly constant(const Elem& c);
    static Poly x(const RingPtr& ring);  // the variable
    static Poly from_ints(const RingPtr& ring,
                          const std::vector<long long>& coeffs);

    const RingPtr& ring() const { return ring_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(int i) const;  // zero beyond the degree
    Elem lc() const;          // leading coefficient; zero for the zero poly
    bool is_monic() const;

    Elem eval(const Elem& x) const;
    Poly derivative() const;
    Poly monic() const;                  // field coefficients
    Poly scaled(const Elem& s) const;    // s * this
    // x^n f(1/x) for n >= degree: the coefficient list reversed after
    // zero-padding to length n+1.
    Poly reversed(int n) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division over a field (b != 0).
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    static Poly gcd(Poly a, Poly b);  // monic gcd; gcd(0,0) = 0
    bool divides(const Poly& other) const;
    bool is_squarefree() const;  // nonzero input, field coefficients

    static int cmp(const Poly& a, const Poly& b);
    std::string str(const std::string& var) const;

private:
    void normalize();
    RingPtr ring_;
    std::vector<Elem> c_;
};

// Payload of a rational-function-field element: reduced fraction with monic
// denominator.  Zero is 0/1.
struct RatFn {
    Poly num;
    Poly den;
};

// Builds a canonical element of `ring` (a RationalFunctionField over
// num.ring()) from a fraction of base-field polynomials.
Elem make_ratfn_elem(const RingPtr& ring, Poly num, Poly den);

struct RootMult {
    Elem root;
    int mult;
};

// All roots in the coefficient field with multiplicities, sorted by
// Elem::cmp.  Supported over finite fields (exhaustive scan) and over the
// rationals (rational-root extraction).  Throws on the zero polynomial.
std::vector<RootMult> poly_roots(const Poly& f);

// Square root with witness over any supported field (including rational
// function fields); std::nullopt when the element is not a square.
std::optional<Elem> square_root(const Elem& a);

// Exact square root of a polynomial over a field: g with g^2 = f, monic-lc
// normalized by construction (returned g has lc(g)^2 = lc(f)).
std::optional<Poly> poly_square_root(const Poly& f);

}  // namespace g2glue
