#pragma once

#include <array>
#include <optional>
#include <string>

#include "g2glue/poly.hpp"

namespace g2glue {

// Point [u:v] of the projective line over a field or over Z/n, stored as a
// canonical representative:
//   field: [x:1] for finite points, [1:0] for the point at infinity;
//   Z/n:   componentwise CRT of the local normalizations (v scaled to 1
//          where v is a unit mod p, else u scaled to 1).
class ProjPoint {
public:
    ProjPoint(Elem u, Elem v);
    static ProjPoint finite(const Elem& x);
    static ProjPoint infinity(const RingPtr& ring);

    const RingPtr& ring() const { return u_.ring(); }
    const Elem& u() const { return u_; }
    const Elem& v() const { return v_; }
    bool is_infinity() const { return v_.is_zero(); }
    Elem affine() const;  // u/v; v must be a unit

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.u_ == b.u_ && a.v_ == b.v_;
    }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) {
        return !(a == b);
    }
    std::string str() const;

private:
    Elem u_, v_;
};

// Invertible 2x2 matrix modulo units, acting on the projective line.  The
// stored representative is canonical (first unit entry in row-major order
// scaled to 1; over Z/n the scaling is done prime power by prime power and
// recombined), so operator== decides equality of map classes.
class MoebiusMap {
public:
    MoebiusMap(Elem m00, Elem m01, Elem m10, Elem m11);
    static MoebiusMap identity(const RingPtr& ring);

    const RingPtr& ring() const { return m_[0].ring(); }
    const Elem& at(int row, int col) const { return m_[2 * row + col]; }
    Elem det() const;

    ProjPoint apply(const ProjPoint& x) const;
    // (m00*x + m01)/(m10*x + m11) inside any field containing x -- used to
    // compose with rational functions; throws when the denominator vanishes.
    Elem apply_in_field(const Elem& x) const;

    MoebiusMap inverse() const;  // adjugate class
    friend MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);
    bool is_identity() const;

    friend bool operator==(const MoebiusMap& a, const MoebiusMap& b) {
        return a.m_[0] == b.m_[0] && a.m_[1] == b.m_[1] && a.m_[2] == b.m_[2] &&
               a.m_[3] == b.m_[3];
    }
    friend bool operator!=(const MoebiusMap& a, const MoebiusMap& b) {
        return !(a == b);
    }

    std::string str() const;  // [[a,b],[c,d]]
    std::string rational_form(const std::string& var) const;

private:
    std::array<Elem, 4> m_;
};

// Throws TripleNotDistinct when two of the three points coincide (over Z/n:
// coincide modulo some prime divisor, which is reported).
void check_triple_distinct(const std::array<ProjPoint, 3>& pts,
                           const std::string& side);

// The unique Moebius class taking src_i to dst_i for i = 1,2,3.  Existence
// and uniqueness need the points pairwise distinct modulo every prime.
MoebiusMap moebius_from_triples(const std::array<ProjPoint, 3>& src,
                                const std::array<ProjPoint, 3>& dst);

// Interpolation through the ordered root lists of two squarefree cubics in a
// common splitting field (degree <= 6 over a prime field), then descent to
// the base field.  `matching` sends the i-th root of c (sorted by Elem::cmp)
// to the matching[i]-th root of cprime.  Throws DescentError when the
// matching is not Galois-equivariant.
MoebiusMap moebius_from_cubics(const Poly& c, const Poly& cprime,
                               const std::array<int, 3>& matching);

// Embedding of one supported field into another: the identity, F_p into
// F_{p^k}, or F_{p^m} into F_{p^n} with m | n (the generator maps to the
// least root of the source modulus in the target).
class FieldEmbedding {
public:
    FieldEmbedding(RingPtr src, RingPtr dst);
    const RingPtr& src() const { return src_; }
    const RingPtr& dst() const { return dst_; }
    Elem map(const Elem& x) const;
    Poly map_poly(const Poly& f) const;

private:
    RingPtr src_, dst_;
    Elem gen_image_;  // image of the source generator; invalid for id / F_p
};

}  // namespace g2glue
