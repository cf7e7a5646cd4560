#pragma once

#include "adscausal/lie_core.hpp"

#include <array>
#include <optional>
#include <vector>

namespace adscausal {

enum class ExpPath { Auto, ClosedForm, Nilpotent, ScalingSquaring };

// exp(M) by scaling and squaring with a degree-13 Taylor core.
MatD expm(const MatD& m);

// exp(t ad Z).  Auto picks the closed trigonometric form for multiples of q0,
// a terminating series when ad Z is nilpotent, scaling-and-squaring otherwise.
MatD exp_ad(const ElemD& Z, double t, ExpPath path = ExpPath::Auto);
ExpPath exp_path_for(const ElemD& Z);
// Exact terminating series; nullopt if ad(Z) is not nilpotent.
std::optional<MatQ> exp_ad_nilpotent(const ElemQ& Z, const Q& t);

// g = prod exp(t_i Z_i) in order.  The point it stands for is [g^{-1}]:
// the fundamental field of J1 there is Ad(g) J1 = ad_word(w) J1.
struct GroupWord {
    const Algebra* alg = nullptr;
    std::vector<std::pair<ElemD, double>> factors;

    explicit GroupWord(const Algebra& a) : alg(&a) {}
    GroupWord& push(const ElemD& z, double t) {
        if (z.alg != alg) throw AlgebraMismatch("word factor from another algebra");
        factors.emplace_back(z, t);
        return *this;
    }
    GroupWord inverse() const;
    friend GroupWord operator+(GroupWord x, const GroupWord& y) {
        if (x.alg != y.alg) throw AlgebraMismatch("concatenating words over different algebras");
        x.factors.insert(x.factors.end(), y.factors.begin(), y.factors.end());
        return x;
    }
};

MatD ad_word(const GroupWord& w);
MatD group_matrix(const GroupWord& w);  // defining representation of g

// X = Ad(g) J1 for the word's g.
ElemD fundamental_vector(const GroupWord& w);

struct PointCoords {
    std::array<double, 2> alpha{0, 0};
    double nu_pp = 0, nu_pm = 0;
    std::vector<double> nu_0p, nu_p0;  // index k-3; shorter vectors are zero-padded
    double x = 0;
};

// Z = nu_pp X++ + nu_pm X+- + sum nu_0p X0+ + nu_p0 X+0
ElemD nilpotent_part(const Algebra& a, const PointCoords& p);
GroupWord point_word(const Algebra& a, const PointCoords& p);

struct ANCoefficients {
    double a = 0, b = 0;
    std::vector<double> c;

    double C2() const {
        double s = 0;
        for (double v : c) s += v * v;
        return s;
    }
    double M() const { return a * a - b * b - C2(); }
    double u() const { return a + b; }
    double v() const { return (1 + C2() - 4 * a * b) / 2; }
};

ANCoefficients an_coefficients(const Algebra& a, const PointCoords& p);

struct ANCoefficientsExact {
    Q a, b;
    std::vector<Q> c;
};
// Ad(e^Z) J1 for exact nilpotent Z in the span of N.
ANCoefficientsExact an_coefficients(const ElemQ& Z);

// g^{-1} e0: the point of the quadric eta(v,v) = 1 the word stands for.
std::vector<double> quadric_point(const GroupWord& w);
double eta_norm(const Algebra& a, const std::vector<double>& v);

}  // namespace adscausal
