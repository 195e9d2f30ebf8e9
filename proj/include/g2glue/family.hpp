#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g2glue/glue.hpp"

namespace g2glue {

// Specialization s -> s0 of objects over F_p(s) (or any K(s) with K the
// field of s0).  All of these throw PreconditionError when a denominator
// vanishes at s0.
Elem specialize_elem(const Elem& x, const Elem& s0);
Poly specialize_poly(const Poly& f, const Elem& s0);
// Goes through a pole-free primitive representative (polynomial entries with
// trivial content), so it is defined wherever the underlying map specializes.
MoebiusMap specialize_moebius(const MoebiusMap& m, const Elem& s0);
// K(s)(t) -> K(t).
Elem specialize_cover_fn(const Elem& fn, const Elem& s0, const RingPtr& kt_out);
GluePayload specialize_payload(const GluePayload& p, const Elem& s0);

struct BadPoint {
    Elem s0;
    int ext_degree = 1;  // 1: rational; 2, 3: visible only over F_{p^k}
    std::vector<std::string> reasons;  // denominator | collision | theta-degeneration
};

struct FamilyReport {
    bool globally_bad = false;
    std::string globally_bad_reason;
    std::optional<GluedPair> generic;
    std::vector<BadPoint> bad;      // rational bad points, sorted
    std::vector<BadPoint> bad_ext;  // extension-only bad points (k = 2, 3)
    std::vector<std::pair<Elem, GluePayload>> specializations;  // good s0
};

// Bad parameter values of a family over F_p(s): vanishing denominators of
// the root functions, root collisions, and the theta-degeneration locus (the
// vanishing of the lower-left entry of the primitive gamma matrix).  Throws
// NotThetaSmooth when gamma fixes infinity identically (globally bad family).
std::vector<BadPoint> family_bad_locus(const EllCurve& e_s,
                                       const EllCurve& eprime_s,
                                       const TwoTorsionIso& psi,
                                       std::vector<BadPoint>* extension_points = nullptr);

// construct-then-specialize equals specialize-then-construct at s0.
// Precondition: s0 outside the bad locus.
bool specialize_commutes(const EllCurve& e_s, const EllCurve& eprime_s,
                         const TwoTorsionIso& psi, const Elem& s0);

// Full report: generic construction, bad locus, and the specialization table
// over the good rational s0.
FamilyReport family_run(const EllCurve& e_s, const EllCurve& eprime_s,
                        const TwoTorsionIso& psi,
                        bool with_specializations = true);

}  // namespace g2glue
