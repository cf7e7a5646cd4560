#pragma once

#include "adscausal/lie_core.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace adscausal {

struct NamedElement {
    std::string name;
    ElemQ x;
};

struct CanonicalBases {
    std::vector<ElemQ> q;               // q0 .. qn  (q1 = J2)
    std::vector<NamedElement> h_basis;  // J1, p1, s1, {pk, rk, sk}, R:i:j
    std::vector<NamedElement> b_basis;  // J1, J2, q0, q2, p1, s1, {qk, pk, rk, sk}, R:i:j
    MatQ from_b;                        // columns: b_basis in root coordinates
    MatQ to_b;

    const ElemQ& b(std::string_view name) const;
};

struct Intertwiners {
    ElemQ X1, X2;
    std::vector<ElemQ> Xk;  // Xk[k-3]
};

// q0, q1 = J2, q2 = -[J1,q0], qk = (X0+^k)_P, without the membership checks.
std::vector<ElemQ> q_generators(const Algebra& a);

// Four-term compact generator 1/4 (X++ + X+- + X-+ + X--).
ElemQ compact_generator(const Algebra& a);

CanonicalBases canonical_bases(const Algebra& a);
Intertwiners intertwiners(const Algebra& a);

// Expected membership of a b_basis element: +1 compact (K) / -1 noncompact (P).
int expected_norm2(const std::string& b_name);

// E(w) = q0 + sum_i w_i q_i, w in R^n.  Checks norm2(E) = 0 and ad(E)^3 = 0.
ElemQ lightlike(const Algebra& a, const std::vector<Q>& w);
ElemD lightlike(const Algebra& a, const std::vector<double>& w);
// No checks; for inner loops.
ElemD lightlike_unchecked(const Algebra& a, const std::vector<double>& w);

// Exact rational point on the unit sphere S^{m-1} by inverse stereographic projection.
std::vector<Q> rational_unit(std::size_t m, std::mt19937_64& rng);

// Randomized checks draw from the seed.
Report verify_reductive(const Algebra& a, std::uint64_t seed = 0);

}  // namespace adscausal
