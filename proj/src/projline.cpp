#include "g2glue/projline.hpp"

#include <algorithm>
#include <numeric>

namespace g2glue {

namespace {

// CRT recombination of residues modulo the prime powers of n.
std::int64_t crt(const std::vector<std::pair<std::int64_t, int>>& factors,
                 const std::vector<std::int64_t>& residues, std::int64_t n) {
    std::int64_t x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::int64_t q = 1;
        for (int e = 0; e < factors[i].second; ++e) q *= factors[i].first;
        std::int64_t m = n / q;
        std::int64_t c = mod_mul(mod_norm(residues[i], q), mod_inv(m % q, q), q);
        x = (x + c % q * m) % n;
    }
    return x;
}

std::int64_t prime_power(const std::pair<std::int64_t, int>& f) {
    std::int64_t q = 1;
    for (int e = 0; e < f.second; ++e) q *= f.first;
    return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// ProjPoint.

ProjPoint::ProjPoint(Elem u, Elem v) : u_(std::move(u)), v_(std::move(v)) {
    if (!u_.valid() || !u_.ring()->same(*v_.ring()))
        throw PreconditionError("projective point with mismatched coordinates");
    const Ring& ring = *u_.ring();
    if (ring.kind() == RingKind::ResidueRing) {
        std::int64_t n = ring.modulus_n();
        std::int64_t a = u_.residue(), b = v_.residue();
        const auto& factors = ring.factors();
        std::vector<std::int64_t> us, vs;
        for (const auto& f : factors) {
            std::int64_t p = f.first, q = prime_power(f);
            if (b % p != 0) {
                std::int64_t inv = mod_inv(b % q, q);
                us.push_back(mod_mul(mod_norm(a, q), inv, q));
                vs.push_back(1);
            } else if (a % p != 0) {
                std::int64_t inv = mod_inv(a % q, q);
                us.push_back(1);
                vs.push_back(mod_mul(mod_norm(b, q), inv, q));
            } else {
                throw PreconditionError(
                    "projective point [" + std::to_string(a) + ":" +
                    std::to_string(b) + "] does not generate the unit ideal mod " +
                    std::to_string(p));
            }
        }
        u_ = ring.from_int(crt(factors, us, n));
        v_ = ring.from_int(crt(factors, vs, n));
        return;
    }
    // Field case.
    if (!v_.is_zero()) {
        u_ = u_ / v_;
        v_ = ring.one();
    } else if (!u_.is_zero()) {
        u_ = ring.one();
    } else {
        throw PreconditionError("projective point [0:0]");
    }
}

ProjPoint ProjPoint::finite(const Elem& x) {
    return ProjPoint(x, x.ring()->one());
}

ProjPoint ProjPoint::infinity(const RingPtr& ring) {
    return ProjPoint(ring->one(), ring->zero());
}

Elem ProjPoint::affine() const {
    if (!v_.is_unit())
        throw PreconditionError("affine() of a point at infinity");
    return u_ / v_;
}

std::string ProjPoint::str() const {
    if (v_.is_zero()) return "inf";
    if (v_.is_one()) return u_.str();
    return "[" + u_.str() + ":" + v_.str() + "]";
}

// ---------------------------------------------------------------------------
// MoebiusMap.

MoebiusMap::MoebiusMap(Elem m00, Elem m01, Elem m10, Elem m11)
    : m_{std::move(m00), std::move(m01), std::move(m10), std::move(m11)} {
    for (int i = 1; i < 4; ++i)
        if (!m_[i].valid() || !m_[i].ring()->same(*m_[0].ring()))
            throw PreconditionError("matrix entries over mismatched rings");
    Elem d = m_[0] * m_[3] - m_[1] * m_[2];
    if (!d.is_unit())
        throw PreconditionError("Moebius matrix with non-unit determinant " +
                                d.str());
    const Ring& ring = *m_[0].ring();
    if (ring.kind() == RingKind::ResidueRing) {
        std::int64_t n = ring.modulus_n();
        const auto& factors = ring.factors();
        std::array<std::vector<std::int64_t>, 4> locals;
        for (const auto& f : factors) {
            std::int64_t p = f.first, q = prime_power(f);
            int lead = -1;
            for (int i = 0; i < 4; ++i) {
                if (m_[i].residue() % p != 0) {
                    lead = i;
                    break;
                }
            }
            // An invertible matrix is nonzero mod every prime.
            std::int64_t inv = mod_inv(m_[lead].residue() % q, q);
            for (int i = 0; i < 4; ++i)
                locals[i].push_back(mod_mul(mod_norm(m_[i].residue(), q), inv, q));
        }
        for (int i = 0; i < 4; ++i)
            m_[i] = ring.from_int(crt(factors, locals[i], n));
        return;
    }
    for (int i = 0; i < 4; ++i) {
        if (!m_[i].is_zero()) {
            Elem inv = m_[i].inv();
            for (int j = 0; j < 4; ++j) m_[j] = m_[j] * inv;
            return;
        }
    }
}

MoebiusMap MoebiusMap::identity(const RingPtr& ring) {
    return MoebiusMap(ring->one(), ring->zero(), ring->zero(), ring->one());
}

Elem MoebiusMap::det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

ProjPoint MoebiusMap::apply(const ProjPoint& x) const {
    return ProjPoint(m_[0] * x.u() + m_[1] * x.v(),
                     m_[2] * x.u() + m_[3] * x.v());
}

Elem MoebiusMap::apply_in_field(const Elem& x) const {
    if (!x.ring()->is_field())
        throw PreconditionError("apply_in_field needs field coefficients");
    // The matrix entries may live in a subfield of x's field (constants of a
    // function field); lift through from-scratch arithmetic on x.
    auto lift = [&](const Elem& c) -> Elem {
        if (c.ring()->same(*x.ring())) return c;
        if (x.ring()->kind() == RingKind::RationalFunctionField &&
            c.ring()->same(*x.ring()->base())) {
            return make_ratfn_elem(x.ring(), Poly::constant(c),
                                   Poly::constant(c.ring()->one()));
        }
        throw PreconditionError("apply_in_field: incompatible coefficient ring");
    };
    Elem num = lift(m_[0]) * x + lift(m_[1]);
    Elem den = lift(m_[2]) * x + lift(m_[3]);
    return num / den;
}

MoebiusMap MoebiusMap::inverse() const {
    return MoebiusMap(m_[3], -m_[1], -m_[2], m_[0]);
}

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h) {
    return MoebiusMap(g.m_[0] * h.m_[0] + g.m_[1] * h.m_[2],
                      g.m_[0] * h.m_[1] + g.m_[1] * h.m_[3],
                      g.m_[2] * h.m_[0] + g.m_[3] * h.m_[2],
                      g.m_[2] * h.m_[1] + g.m_[3] * h.m_[3]);
}

bool MoebiusMap::is_identity() const {
    return *this == identity(m_[0].ring());
}

std::string MoebiusMap::str() const {
    return "[[" + m_[0].str() + "," + m_[1].str() + "],[" + m_[2].str() + "," +
           m_[3].str() + "]]";
}

std::string MoebiusMap::rational_form(const std::string& var) const {
    Poly num(m_[0].ring(), {m_[1], m_[0]});
    Poly den(m_[0].ring(), {m_[3], m_[2]});
    std::string ns = num.str(var), ds = den.str(var);
    if (ds == "1") return ns;
    return "(" + ns + ")/(" + ds + ")";
}

// ---------------------------------------------------------------------------
// Three-point interpolation (and its preconditions).

void check_triple_distinct(const std::array<ProjPoint, 3>& pts,
                           const std::string& side) {
    const Ring& ring = *pts[0].ring();
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            Elem d = pts[i].u() * pts[j].v() - pts[j].u() * pts[i].v();
            if (ring.kind() == RingKind::ResidueRing) {
                std::int64_t g = gcd64(d.residue(), ring.modulus_n());
                if (g != 1) {
                    for (const auto& f : ring.factors())
                        if (g % f.first == 0)
                            throw TripleNotDistinct(side, i, j, f.first);
                    throw TripleNotDistinct(side, i, j, g);
                }
            } else if (d.is_zero()) {
                throw TripleNotDistinct(side, i, j, 0);
            }
        }
    }
}

namespace {

// The class taking (p1, p2, p3) to ((1:0), (0:1), (1:1)): adjugate of the
// matrix with columns p1, p2, rescaled so the image of p3 is (1:1).
MoebiusMap normalizer(const std::array<ProjPoint, 3>& pts) {
    const Elem &u1 = pts[0].u(), &v1 = pts[0].v();
    const Elem &u2 = pts[1].u(), &v2 = pts[1].v();
    // adj([[u1,u2],[v1,v2]]) = [[v2,-u2],[-v1,u1]]
    Elem a = pts[2].u() * v2 - pts[2].v() * u2;   // first coordinate of adj*p3
    Elem b = -(pts[2].u() * v1) + pts[2].v() * u1;  // second coordinate
    // Distinctness makes a and b units; rescale rows by their inverses.
    Elem ai = a.inv(), bi = b.inv();
    return MoebiusMap(v2 * ai, -u2 * ai, -v1 * bi, u1 * bi);
}

}  // namespace

MoebiusMap moebius_from_triples(const std::array<ProjPoint, 3>& src,
                                const std::array<ProjPoint, 3>& dst) {
    for (int i = 0; i < 3; ++i)
        if (!src[i].ring()->same(*dst[i].ring()) ||
            !src[i].ring()->same(*src[0].ring()))
            throw PreconditionError("interpolation points over mismatched rings");
    check_triple_distinct(src, "source");
    check_triple_distinct(dst, "target");
    MoebiusMap b = compose(normalizer(dst).inverse(), normalizer(src));
    for (int i = 0; i < 3; ++i) {
        if (b.apply(src[i]) != dst[i])
            throw InternalError("interpolated map misses constraint " +
                                std::to_string(i + 1));
    }
    return b;
}

// ---------------------------------------------------------------------------
// Field embeddings.

FieldEmbedding::FieldEmbedding(RingPtr src, RingPtr dst)
    : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->same(*dst_)) return;
    if (!dst_ || dst_->kind() != RingKind::ExtensionField)
        throw PreconditionError("unsupported field embedding target");
    if (src_->kind() == RingKind::PrimeField) {
        if (src_->characteristic_p() != dst_->characteristic_p())
            throw PreconditionError("embedding across characteristics");
        return;
    }
    if (src_->kind() == RingKind::ExtensionField &&
        src_->characteristic_p() == dst_->characteristic_p() &&
        dst_->ext_degree() % src_->ext_degree() == 0) {
        std::vector<std::int64_t> mod = src_->ext_modulus();
        std::vector<Elem> coeffs;
        for (std::int64_t c : mod) coeffs.push_back(dst_->from_int(c));
        Poly f(dst_, std::move(coeffs));
        auto roots = poly_roots(f);
        if (roots.empty())
            throw InternalError("source modulus has no root in the target field");
        gen_image_ = roots.front().root;  // least root: deterministic embedding
        return;
    }
    throw PreconditionError("unsupported field embedding " + src_->to_string() +
                            " -> " + dst_->to_string());
}

Elem FieldEmbedding::map(const Elem& x) const {
    if (src_->same(*dst_)) return x;
    if (!x.ring()->same(*src_))
        throw PreconditionError("embedding an element of the wrong field");
    if (src_->kind() == RingKind::PrimeField) return dst_->from_int(x.residue());
    // sum c_i * gen_image^i
    Elem acc = dst_->zero();
    const auto& c = x.ext().c;
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * gen_image_ + dst_->from_int(c[i]);
    return acc;
}

Poly FieldEmbedding::map_poly(const Poly& f) const {
    std::vector<Elem> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(map(x));
    return Poly(dst_, std::move(c));
}

// ---------------------------------------------------------------------------
// Interpolation through cubic root lists with descent to the base field.

namespace {

// 1, 2 or 3: degree of the splitting field of a squarefree cubic over F_p.
// A squarefree cubic has 0, 1 or 3 roots in the base field.
int cubic_splitting_degree(const Poly& c) {
    std::size_t nroots = poly_roots(c).size();
    if (nroots == 3) return 1;
    if (nroots == 1) return 2;
    return 3;
}

}  // namespace

MoebiusMap moebius_from_cubics(const Poly& c, const Poly& cprime,
                               const std::array<int, 3>& matching) {
    const RingPtr base = c.ring();
    if (!base->same(*cprime.ring()))
        throw PreconditionError("cubics over mismatched fields");
    if (c.degree() != 3 || cprime.degree() != 3)
        throw PreconditionError("moebius_from_cubics expects cubics");
    if (!c.is_squarefree() || !cprime.is_squarefree())
        throw PreconditionError("moebius_from_cubics expects squarefree cubics");
    {
        std::array<int, 3> sorted = matching;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != std::array<int, 3>{0, 1, 2})
            throw PreconditionError("matching must be a permutation of {0,1,2}");
    }

    RingPtr split = base;
    if (base->kind() == RingKind::PrimeField) {
        int k = std::lcm(cubic_splitting_degree(c), cubic_splitting_degree(cprime));
        if (k > 1) split = Ring::extension_field(base->characteristic_p(), k);
    } else if (base->kind() == RingKind::Rationals ||
               base->kind() == RingKind::ExtensionField) {
        // Supported only when both cubics already split over the base.
        if (poly_roots(c).size() != 3 || poly_roots(cprime).size() != 3)
            throw PreconditionError(
                "cubics must split over the base field (no splitting tower for " +
                base->to_string() + ")");
    } else {
        throw PreconditionError("moebius_from_cubics over unsupported ring " +
                                base->to_string());
    }

    FieldEmbedding emb(base, split);
    auto roots = poly_roots(emb.map_poly(c));
    auto roots_p = poly_roots(emb.map_poly(cprime));
    if (roots.size() != 3 || roots_p.size() != 3)
        throw InternalError("cubic does not split in its splitting field");

    std::array<ProjPoint, 3> src{ProjPoint::finite(roots[0].root),
                                 ProjPoint::finite(roots[1].root),
                                 ProjPoint::finite(roots[2].root)};
    std::array<ProjPoint, 3> dst{ProjPoint::finite(roots_p[matching[0]].root),
                                 ProjPoint::finite(roots_p[matching[1]].root),
                                 ProjPoint::finite(roots_p[matching[2]].root)};
    MoebiusMap g = moebius_from_triples(src, dst);

    if (split->same(*base)) return g;
    // Descent: the canonical representative has ratio entries, so the class is
    // defined over F_p exactly when every entry is a constant.
    std::array<Elem, 4> down;
    for (int i = 0; i < 4; ++i) {
        const Elem& e = g.at(i / 2, i % 2);
        const auto& coeffs = e.ext().c;
        for (std::size_t j = 1; j < coeffs.size(); ++j) {
            if (coeffs[j] != 0)
                throw DescentError(
                    "interpolated map does not descend to " + base->to_string() +
                    " (matching is not Galois-equivariant): " + g.str());
        }
        down[i] = base->from_int(coeffs[0]);
    }
    return MoebiusMap(down[0], down[1], down[2], down[3]);
}

}  // namespace g2glue
