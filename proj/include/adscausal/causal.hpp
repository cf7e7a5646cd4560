#pragma once

#include "adscausal/exp_group.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace adscausal {

// Coefficients of n(s) = a s^2 + b s + c in raw Killing units.
struct QuadraticCoeffs {
    double a = 0, b = 0, c = 0;
};

struct RootAnalysis {
    std::vector<double> roots;  // sorted
    bool future_hit = false;
    bool always_singular = false;
};

enum class CausalKind { Singular, BlackHole, Free };
enum class Branch { AN, ANktheta, AbarN, AbarNktheta };
enum class PointType { TypeI, TypeII };

std::string to_string(CausalKind k);
std::string to_string(Branch b);
CausalKind parse_kind(const std::string& s);
Branch parse_branch(const std::string& s);

struct RootRow {
    double w2;
    std::vector<double> roots;
};

struct CausalClass {
    CausalKind kind = CausalKind::Free;
    double c = 0;
    std::optional<double> witness_w2;
    std::vector<double> witness_w;  // full escaping direction when Free
    std::vector<RootRow> root_table;  // BlackHole: roots of the canonical direction per w2 node
    std::optional<Branch> branch;
    std::optional<PointType> type;
    double w2_residual = 0;  // spread of the coefficients over completions at fixed w2
};

struct ClassifyOptions {
    int grid = 257;
    double tol = 1e-9;
    int completions = 8;
    std::uint64_t seed = 0;
};

// norm2 of the Q-part of the fundamental field of J1 at the word's point.
double singularity_norm2(const GroupWord& w);
// -B(X_Q, X_Q): the same quantity in Killing units.
double singularity_killing(const GroupWord& w);

QuadraticCoeffs geodesic_quadratic(const GroupWord& word, const std::vector<double>& w);

// Precomputed quadratic as a function of the direction; same values as geodesic_quadratic.
struct QuadraticField {
    int n = 0;
    std::vector<std::vector<double>> G;  // a = -wt^T G wt, wt = (1, w)
    std::vector<double> beta;            // b = beta . wt
    double c = 0;

    explicit QuadraticField(const GroupWord& word);
    QuadraticCoeffs at(const std::vector<double>& w) const;
};

QuadraticCoeffs closed_form_quadratic(const ANCoefficients& k, double x, double w2, int n);

struct ClosedFormComparison {
    QuadraticCoeffs closed, generic;
    double scale = 0;         // best lambda with generic ~ lambda * closed
    double rel_residual = 0;  // |generic - lambda closed| / |generic|
};
ClosedFormComparison compare_closed_form(const Algebra& a, const PointCoords& p, double w2);

RootAnalysis singular_times(const QuadraticCoeffs& q);

CausalClass classify_point(const GroupWord& word, const ClassifyOptions& opt = {});
CausalClass classify_coords(const Algebra& a, const PointCoords& p, const ClassifyOptions& opt = {});
std::optional<Branch> singular_branch(const GroupWord& word);

struct AngleSet {
    std::vector<double> angles;
    PointType type = PointType::TypeI;
};
AngleSet singular_angles(double u, double v);
AngleSet singular_angles(const Algebra& a, const PointCoords& p);
double curve_value(double u, double v, double x);  // u sin 2x + v cos 2x - v

ElemD iota_embed(const ElemD& x, const Algebra& target);
GroupWord iota_word(const GroupWord& w, const Algebra& target);

struct Transport {
    double t = 0;      // rotation angle in the last spatial plane
    double t_alt = 0;  // the other solution, t + pi
    std::vector<double> v_reduced;
};
Transport r_transport(const std::vector<double>& v);
// Word whose point is the rotated point; the rotation generator commutes with J1.
GroupWord r_transport_word(const GroupWord& w, double t);

double horizon_bisect(const std::function<GroupWord(double)>& path, double t_lo, double t_hi, double tol,
                      const ClassifyOptions& opt = {});

struct AdS2Result {
    CausalClass cls;
    double s_plus = 0, s_minus = 0;
};
// X+ = p1 - q0 inside so(2,2).  s_plus / s_minus are the roots of the directions w1 = -1 / +1.
ElemQ ads2_nilpotent(const Algebra& so22);
AdS2Result ads2_classify(double alpha, double a, double x);
GroupWord ads2_word(double alpha, double a, double x);
// -B(X_Q, X_Q) at exp(a X+), exactly.
Q ads2_singularity_value(const Q& a);

struct CoordinateFit {
    int t_index = -1, y_index = -1;
    double singular_residual = 0;  // max |v_t^2 - v_y^2| on singular samples
    double ratio = 0;              // singularity_norm2 / (v_t^2 - v_y^2) on regular samples
    double ratio_spread = 0;
};
CoordinateFit fit_singularity_coordinates(const Algebra& a, int samples, std::uint64_t seed);

}  // namespace adscausal
