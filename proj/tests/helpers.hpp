#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "g2glue/ellcurve.hpp"
#include "g2glue/poly.hpp"

namespace g2glue::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x67326c7565ULL);  // fixed seed: reproducible
    return gen;
}

inline Elem random_elem(const RingPtr& ring) {
    switch (ring->kind()) {
        case RingKind::PrimeField:
        case RingKind::ExtensionField:
        case RingKind::ResidueRing: {
            std::uint64_t n = ring->order().convert_to<std::uint64_t>();
            return ring->element_at(rng()() % n);
        }
        case RingKind::Rationals: {
            long long num = static_cast<long long>(rng()() % 41) - 20;
            long long den = 1 + static_cast<long long>(rng()() % 12);
            return ring->from_int(num) / ring->from_int(den);
        }
        case RingKind::RationalFunctionField: {
            const RingPtr base = ring->base();
            auto random_poly = [&](int maxdeg, bool nonzero) {
                for (;;) {
                    std::vector<Elem> c;
                    int d = static_cast<int>(rng()() % (maxdeg + 1));
                    for (int i = 0; i <= d; ++i) c.push_back(random_elem(base));
                    Poly f(base, std::move(c));
                    if (!nonzero || !f.is_zero()) return f;
                }
            };
            return make_ratfn_elem(ring, random_poly(3, false), random_poly(2, true));
        }
    }
    return ring->zero();
}

inline Elem random_nonzero(const RingPtr& ring) {
    for (;;) {
        Elem e = random_elem(ring);
        if (!e.is_zero()) return e;
    }
}

inline Elem random_unit(const RingPtr& ring) {
    for (;;) {
        Elem e = random_elem(ring);
        if (e.is_unit()) return e;
    }
}

// Random elliptic curve with split 2-torsion over a finite field.
inline EllCurve random_curve(const RingPtr& ring) {
    for (;;) {
        Elem a = random_elem(ring), b = random_elem(ring), c = random_elem(ring);
        if (a == b || b == c || a == c) continue;
        return EllCurve({a, b, c});
    }
}

// All ordered triples of distinct field elements (the census input grid).
inline std::vector<std::array<Elem, 3>> distinct_triples(const RingPtr& ring) {
    std::uint64_t p = ring->order().convert_to<std::uint64_t>();
    std::vector<std::array<Elem, 3>> out;
    for (std::uint64_t i = 0; i < p; ++i)
        for (std::uint64_t j = 0; j < p; ++j)
            for (std::uint64_t k = 0; k < p; ++k) {
                if (i == j || j == k || i == k) continue;
                out.push_back({ring->element_at(i), ring->element_at(j),
                               ring->element_at(k)});
            }
    return out;
}

}  // namespace g2glue::testing
