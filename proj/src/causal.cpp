#include "adscausal/causal.hpp"

#include "adscausal/reductive.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace adscausal {

std::string to_string(CausalKind k) {
    switch (k) {
        case CausalKind::Singular: return "singular";
        case CausalKind::BlackHole: return "black_hole";
        case CausalKind::Free: return "free";
    }
    return "?";
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::AN: return "AN";
        case Branch::ANktheta: return "ANktheta";
        case Branch::AbarN: return "AbarN";
        case Branch::AbarNktheta: return "AbarNktheta";
    }
    return "?";
}

CausalKind parse_kind(const std::string& s) {
    if (s == "singular") return CausalKind::Singular;
    if (s == "black_hole") return CausalKind::BlackHole;
    if (s == "free") return CausalKind::Free;
    throw std::invalid_argument("unknown class " + s);
}

Branch parse_branch(const std::string& s) {
    for (Branch b : {Branch::AN, Branch::ANktheta, Branch::AbarN, Branch::AbarNktheta})
        if (to_string(b) == s) return b;
    throw std::invalid_argument("unknown branch " + s);
}

namespace {

constexpr double kFuture = 1e-12;

struct Split {
    ElemD X, XH, XQ;
};

Split split(const GroupWord& w) {
    ElemD X = fundamental_vector(w);
    return {X, project(Subspace::H, X), project(Subspace::Q, X)};
}

std::vector<double> canonical_direction(int n, double w2) {
    std::vector<double> w(std::size_t(n), 0.0);
    w[0] = std::sqrt(std::max(0.0, 1 - w2 * w2));
    w[1] = w2;
    return w;
}

double wrap(double t) {
    t = std::fmod(t, 2 * M_PI);
    return t < 0 ? t + 2 * M_PI : t;
}

}  // namespace

double singularity_killing(const GroupWord& w) {
    ElemD XQ = split(w).XQ;
    return -killing(XQ, XQ);
}

double singularity_norm2(const GroupWord& w) { return norm2(split(w).XQ); }

QuadraticCoeffs geodesic_quadratic(const GroupWord& word, const std::vector<double>& w) {
    const Algebra& a = *word.alg;
    auto [X, XH, XQ] = split(word);
    ElemD E = lightlike(a, w);
    ElemD adX = bracket(E, X);
    QuadraticCoeffs q;
    q.a = -killing(adX, apply_involution(Involution::Sigma, adX));
    q.b = -2 * killing(XQ, bracket(E, XH));
    q.c = killing(XQ, XQ);

    // n(s) is also the Gram polynomial of V(s) = V0 + s V1 + s^2 V2; degrees 3 and 4 must vanish
    ElemD V[3] = {XQ, -bracket(E, XH), bracket(E, bracket(E, XQ)) * 0.5};
    double B[3][3];
    double scale = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale += std::fabs(B[i][j] = killing(V[i], V[j]));
    double d[5] = {B[0][0], 2 * B[0][1], B[1][1] + 2 * B[0][2], 2 * B[1][2], B[2][2]};
    double tol = 1e-10 * scale;
    if (std::fabs(d[3]) > tol || std::fabs(d[4]) > tol || std::fabs(d[0] - q.c) > tol ||
        std::fabs(d[1] - q.b) > tol || std::fabs(d[2] - q.a) > tol)
        throw ConsistencyFailure("geodesic quadratic disagrees with its Gram expansion");
    return q;
}

QuadraticField::QuadraticField(const GroupWord& word) : n(word.alg->n) {
    const Algebra& a = *word.alg;
    auto [X, XH, XQ] = split(word);
    std::vector<ElemD> V, SV;
    for (const auto& qi : q_generators(a)) {
        ElemD q = lower(qi);
        V.push_back(bracket(q, X));
        SV.push_back(apply_involution(Involution::Sigma, V.back()));
        beta.push_back(-2 * killing(XQ, bracket(q, XH)));
    }
    G.assign(V.size(), std::vector<double>(V.size()));
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = 0; j < V.size(); ++j) G[i][j] = killing(V[i], SV[j]);
    c = killing(XQ, XQ);
}

QuadraticCoeffs QuadraticField::at(const std::vector<double>& w) const {
    if (w.size() != std::size_t(n)) throw NotUnit("direction needs " + std::to_string(n) + " components");
    std::vector<double> wt{1.0};
    wt.insert(wt.end(), w.begin(), w.end());
    QuadraticCoeffs q;
    q.c = c;
    for (std::size_t i = 0; i < wt.size(); ++i) {
        q.b += beta[i] * wt[i];
        for (std::size_t j = 0; j < wt.size(); ++j) q.a -= wt[i] * G[i][j] * wt[j];
    }
    return q;
}

QuadraticCoeffs closed_form_quadratic(const ANCoefficients& k, double x, double w2, int n) {
    const double Bq = -2.0 * n;  // B(q0, q0)
    const double M = k.M(), cx = std::cos(x), sx = std::sin(x);
    return {Bq * M * (w2 * w2 + cx * w2 + cx * cx), Bq * (-2 * M * sx * (w2 + cx)), Bq * M * sx * sx};
}

ClosedFormComparison compare_closed_form(const Algebra& a, const PointCoords& p, double w2) {
    ClosedFormComparison r;
    r.closed = closed_form_quadratic(an_coefficients(a, p), p.x, w2, a.n);
    r.generic = QuadraticField(point_word(a, p)).at(canonical_direction(a.n, w2));
    const double f[3] = {r.closed.a, r.closed.b, r.closed.c}, g[3] = {r.generic.a, r.generic.b, r.generic.c};
    double gf = 0, ff = 0, gg = 0;
    for (int i = 0; i < 3; ++i) gf += g[i] * f[i], ff += f[i] * f[i], gg += g[i] * g[i];
    r.scale = ff > 0 ? gf / ff : 0;
    double res = 0;
    for (int i = 0; i < 3; ++i) res += (g[i] - r.scale * f[i]) * (g[i] - r.scale * f[i]);
    r.rel_residual = gg > 0 ? std::sqrt(res / gg) : std::sqrt(res);
    return r;
}

RootAnalysis singular_times(const QuadraticCoeffs& q) {
    RootAnalysis r;
    const double scale = std::fabs(q.a) + std::fabs(q.b) + std::fabs(q.c);
    if (scale < 1e-300) {
        r.always_singular = r.future_hit = true;
        return r;
    }
    const double eps = 1e-14 * scale;
    if (std::fabs(q.a) <= eps) {
        if (std::fabs(q.b) > eps) r.roots.push_back(-q.c / q.b);
        else if (std::fabs(q.c) <= eps) r.always_singular = true;
    } else {
        // tangential contact (double root) counts as meeting the singularity
        double disc = q.b * q.b - 4 * q.a * q.c;
        if (disc >= -1e-12 * scale * scale) {
            double s = std::sqrt(std::max(0.0, disc));
            double h = -0.5 * (q.b + (q.b >= 0 ? s : -s));
            if (h != 0) r.roots = {h / q.a, q.c / h};
            else r.roots = {0.0, 0.0};
        }
    }
    std::sort(r.roots.begin(), r.roots.end());
    r.future_hit = r.always_singular;
    for (double s : r.roots)
        if (s > kFuture) r.future_hit = true;
    return r;
}

std::optional<Branch> singular_branch(const GroupWord& word) {
    auto v = quadric_point(word);
    bool an = std::fabs(v[1] - v[2]) <= std::fabs(v[1] + v[2]);
    bool ktheta = v[0] < 0;
    if (an) return ktheta ? Branch::ANktheta : Branch::AN;
    return ktheta ? Branch::AbarNktheta : Branch::AbarN;
}

namespace {

// Sign-normalised distance from meeting the singularity in the future: positive exactly
// when a' >= 0 and (b' >= 0 or the discriminant is negative), with a' = a sgn c etc.
double escape_margin(const QuadraticCoeffs& q) {
    const double sg = q.c < 0 ? -1 : 1;
    const double a = q.a * sg, b = q.b * sg, c = q.c * sg;
    const double S = std::fabs(a) + std::fabs(b) + c;
    return std::min(a / S, std::max(b / S, (4 * a * c - b * b) / (S * S)));
}

struct Candidate {
    double margin;
    std::vector<double> w;
};

struct Scan {
    bool free = false;
    double witness_w2 = 0;
    std::vector<double> witness_w;
    std::vector<RootRow> table;
    double residual = 0;
    std::vector<Candidate> best;  // highest margins among non-escaping samples
};

void offer_witness(Scan& s, const std::vector<double>& w) {
    if (!s.free || std::fabs(w[1]) < std::fabs(s.witness_w2)) {
        s.free = true;
        s.witness_w2 = w[1];
        s.witness_w = w;
    }
}

void keep_best(std::vector<Candidate>& best, Candidate c, std::size_t k) {
    best.push_back(std::move(c));
    std::sort(best.begin(), best.end(), [](const Candidate& x, const Candidate& y) { return x.margin > y.margin; });
    if (best.size() > k) best.pop_back();
}

// Every direction with the given w2 is tried: the canonical completion, its mirror in w1,
// and seeded random completions in the orthogonal complement of the w2 axis.
Scan scan_directions(const QuadraticField& f, int grid, const ClassifyOptions& opt) {
    const int n = f.n;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;
    Scan s;
    for (int j = 0; j < grid; ++j) {
        double w2 = std::cos(M_PI * j / (grid - 1));
        if (std::fabs(w2) < 1e-15) w2 = 0;
        const double r = std::sqrt(std::max(0.0, 1 - w2 * w2));

        std::vector<std::vector<double>> dirs{canonical_direction(n, w2)};
        dirs.push_back(dirs[0]);
        dirs[1][0] = -dirs[1][0];
        for (int c = 0; c < opt.completions; ++c) {
            std::vector<double> w(std::size_t(n), 0.0);
            double nn = 0;
            while (nn < 1e-12) {
                nn = 0;
                for (int i = 0; i < n; ++i)
                    if (i != 1) nn += (w[std::size_t(i)] = gauss(rng)) * w[std::size_t(i)];
            }
            nn = std::sqrt(nn);
            for (int i = 0; i < n; ++i)
                if (i != 1) w[std::size_t(i)] *= r / nn;
            w[1] = w2;
            dirs.push_back(std::move(w));
        }

        QuadraticCoeffs q0 = f.at(dirs[0]);
        const double qs = 1 + std::fabs(q0.a) + std::fabs(q0.b) + std::fabs(q0.c);
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            QuadraticCoeffs q = d == 0 ? q0 : f.at(dirs[d]);
            s.residual = std::max(s.residual, (std::fabs(q.a - q0.a) + std::fabs(q.b - q0.b)) / qs);
            RootAnalysis ra = singular_times(q);
            if (d == 0) s.table.push_back({w2, ra.roots});
            if (!ra.future_hit) offer_witness(s, dirs[d]);
            else keep_best(s.best, {escape_margin(q), dirs[d]}, 8);
        }
    }
    return s;
}

// Random-perturbation ascent of the escape margin on the sphere; stops at the first escaping direction.
std::optional<std::vector<double>> climb(const QuadraticField& f, std::vector<double> w, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    double m = escape_margin(f.at(w));
    double step = 0.25;
    for (int it = 0; it < 400 && step > 1e-7; ++it) {
        std::vector<double> t = w;
        double nn = 0;
        for (auto& x : t) x += step * gauss(rng), nn += x * x;
        for (auto& x : t) x /= std::sqrt(nn);
        QuadraticCoeffs q = f.at(t);
        if (!singular_times(q).future_hit) return t;
        double mt = escape_margin(q);
        if (mt > m) m = mt, w = std::move(t);
        else if (it % 20 == 19) step *= 0.5;
    }
    return std::nullopt;
}

}  // namespace

CausalClass classify_point(const GroupWord& word, const ClassifyOptions& opt) {
    if (opt.grid < 3) throw std::invalid_argument("grid needs at least 3 nodes");
    if (opt.completions < 0) throw std::invalid_argument("negative completion count");
    const int n = word.alg->n;
    QuadraticField f(word);
    CausalClass r;
    r.c = f.c;
    QuadraticCoeffs q = f.at(canonical_direction(n, 0));
    if (std::fabs(q.c) <= opt.tol * (1 + std::fabs(q.a) + std::fabs(q.b))) {
        r.kind = CausalKind::Singular;
        r.branch = singular_branch(word);
        return r;
    }
    // odd grids contain w2 = 0; an escaping direction is a certificate, its absence is refined
    const int g = opt.grid % 2 ? opt.grid : opt.grid + 1;
    Scan s = scan_directions(f, g, opt);
    r.w2_residual = s.residual;
    if (!s.free) {
        Scan fine = scan_directions(f, 2 * g - 1, opt);
        r.w2_residual = std::max(r.w2_residual, fine.residual);
        if (fine.free) {
            s.free = true, s.witness_w2 = fine.witness_w2, s.witness_w = fine.witness_w;
        } else {
            std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
            for (const auto& c : fine.best)
                if (auto w = climb(f, c.w, rng)) {
                    offer_witness(s, *w);
                    break;
                }
        }
    }
    if (s.free) {
        r.kind = CausalKind::Free;
        r.witness_w2 = s.witness_w2;
        r.witness_w = s.witness_w;
    } else {
        r.kind = CausalKind::BlackHole;
        r.root_table = std::move(s.table);
    }
    return r;
}

CausalClass classify_coords(const Algebra& a, const PointCoords& p, const ClassifyOptions& opt) {
    CausalClass r = classify_point(point_word(a, p), opt);
    ANCoefficients k = an_coefficients(a, p);
    r.type = std::fabs(k.u()) <= 1e-12 * (1 + std::fabs(k.a) + std::fabs(k.b)) ? PointType::TypeI : PointType::TypeII;
    return r;
}

AngleSet singular_angles(double u, double v) {
    AngleSet s;
    s.angles = {0.0, M_PI};
    if (std::fabs(u) > 1e-14 * (std::fabs(u) + std::fabs(v))) {
        double x = wrap(std::atan2(u, v));
        s.angles.push_back(x);
        s.angles.push_back(wrap(x + M_PI));
        s.type = PointType::TypeII;
    } else {
        s.type = PointType::TypeI;
    }
    std::sort(s.angles.begin(), s.angles.end());
    return s;
}

AngleSet singular_angles(const Algebra& a, const PointCoords& p) {
    ANCoefficients k = an_coefficients(a, p);
    return singular_angles(k.u(), k.v());
}

double curve_value(double u, double v, double x) { return u * std::sin(2 * x) + v * std::cos(2 * x) - v; }

ElemD iota_embed(const ElemD& x, const Algebra& target) {
    const Algebra& src = *x.alg;
    if (target.n < src.n) throw InvalidDimension("embedding target is smaller than the source");
    ElemD y(target);
    for (std::size_t i = 0; i < src.dim; ++i) y[target.index(src.labels[i].str())] = x.c[i];
    return y;
}

GroupWord iota_word(const GroupWord& w, const Algebra& target) {
    GroupWord r(target);
    for (const auto& [z, t] : w.factors) r.push(iota_embed(z, target), t);
    return r;
}

Transport r_transport(const std::vector<double>& v) {
    if (v.size() < 2) throw InvalidDimension("point has no spatial plane to rotate");
    const std::size_t N = v.size();
    const double y = v[N - 2], z = v[N - 1];
    const double r = std::hypot(y, z);
    if (r < 1e-12) throw Degenerate("last spatial plane component vanishes");
    Transport t;
    t.t = wrap(std::atan2(-z, y));
    t.t_alt = wrap(t.t + M_PI);
    t.v_reduced = v;
    t.v_reduced[N - 2] = r;
    t.v_reduced[N - 1] = 0;
    return t;
}

GroupWord r_transport_word(const GroupWord& w, double t) {
    const Algebra& a = *w.alg;
    const std::size_t N = std::size_t(a.n) + 2;
    // rotation generator of the last spatial plane: G e_{N-2} = e_{N-1}
    MatQ G(N, N);
    G(N - 1, N - 2) = 1;
    G(N - 2, N - 1) = -1;
    GroupWord r = w;
    // quadric_point applies exp(-s G), which rotates by -s
    r.push(lower(from_matrix(a, G)), -t);
    return r;
}

double horizon_bisect(const std::function<GroupWord(double)>& path, double t_lo, double t_hi, double tol,
                      const ClassifyOptions& opt) {
    if (!(tol > 0)) throw std::invalid_argument("bisection tolerance must be positive");
    auto kind = [&](double t) { return classify_point(path(t), opt).kind; };
    CausalKind lo = kind(t_lo), hi = kind(t_hi);
    if (lo == CausalKind::Singular || hi == CausalKind::Singular)
        throw std::invalid_argument("bisection endpoint is singular");
    if (lo == hi) throw NoCrossing("endpoints have the same class " + to_string(lo));
    while (std::fabs(t_hi - t_lo) > tol) {
        double mid = 0.5 * (t_lo + t_hi);
        CausalKind m;
        try {
            m = kind(mid);
        } catch (const InconclusiveNearBoundary&) {
            return mid;
        }
        if (m == CausalKind::Singular) return mid;
        if (m == lo) t_lo = mid;
        else t_hi = mid;
    }
    return 0.5 * (t_lo + t_hi);
}

ElemQ ads2_nilpotent(const Algebra& so22) {
    if (so22.n != 2) throw InvalidDimension("AdS2 nilpotent lives in so(2,2)");
    auto q = q_generators(so22);
    return bracket(q[0], basis(so22, "J2")) - q[0];
}

GroupWord ads2_word(double alpha, double a, double x) {
    const Algebra& g = *algebra(2);
    GroupWord w(g);
    // the closed-form roots measure the compact angle with the opposite orientation
    if (x != 0) w.push(lower(compact_generator(g)), -x);
    if (a != 0) w.push(lower(ads2_nilpotent(g)), a);
    if (alpha != 0) w.push(lower(basis(g, "J2")), alpha);
    return w;
}

AdS2Result ads2_classify(double alpha, double a, double x) {
    AdS2Result r;
    const double cx = std::cos(x), sx = std::sin(x);
    const double num = a * cx + sx;
    r.s_plus = num / ((sx - 1) * a - cx);
    r.s_minus = num / ((sx + 1) * a - cx);
    GroupWord w = ads2_word(alpha, a, x);
    r.cls.c = -singularity_killing(w);
    if (std::fabs(singularity_norm2(w)) <= 1e-12) {
        r.cls.kind = CausalKind::Singular;
        r.cls.branch = singular_branch(w);
        return r;
    }
    auto future = [](double s) { return std::isfinite(s) && s > kFuture; };
    if (future(r.s_plus) && future(r.s_minus)) {
        r.cls.kind = CausalKind::BlackHole;
    } else {
        r.cls.kind = CausalKind::Free;
        r.cls.witness_w2 = 0.0;
        r.cls.witness_w = {future(r.s_plus) ? 1.0 : -1.0, 0.0};  // s+ belongs to w1 = -1
    }
    return r;
}

Q ads2_singularity_value(const Q& a) {
    const Algebra& g = *algebra(2);
    auto m = exp_ad_nilpotent(ads2_nilpotent(g), a);
    if (!m) throw std::logic_error("AdS2 nilpotent is not nilpotent");
    ElemQ X(g, *m * basis(g, "J1").c);
    ElemQ XQ = project(Subspace::Q, X);
    return -killing(XQ, XQ);
}

namespace {

GroupWord random_an_word(const Algebra& a, std::mt19937_64& rng, bool bar, double x) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    ElemD Z(a), A(a);
    Z[bar ? "X--" : "X++"] = u(rng);
    Z[bar ? "X-+" : "X+-"] = u(rng);
    for (int k = 3; k <= a.n; ++k) {
        Z[(bar ? "X0-:" : "X0+:") + std::to_string(k)] = u(rng);
        Z[(bar ? "X-0:" : "X+0:") + std::to_string(k)] = u(rng);
    }
    A["J1"] = u(rng);
    A["J2"] = u(rng);
    GroupWord w(a);
    if (x != 0) w.push(lower(compact_generator(a)), x);
    w.push(Z, 1.0);
    w.push(A, 1.0);
    return w;
}

}  // namespace

CoordinateFit fit_singularity_coordinates(const Algebra& a, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> sing;
    for (int s = 0; s < samples; ++s)
        for (bool bar : {false, true})
            for (double x : {0.0, M_PI}) sing.push_back(quadric_point(random_an_word(a, rng, bar, x)));

    const std::size_t N = std::size_t(a.n) + 2;
    CoordinateFit fit;
    fit.singular_residual = INFINITY;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            double worst = 0;
            for (const auto& v : sing)
                worst = std::max(worst, std::fabs(v[i] * v[i] - v[j] * v[j]) / (1 + v[i] * v[i] + v[j] * v[j]));
            if (worst < fit.singular_residual) {
                fit.singular_residual = worst;
                fit.t_index = int(i);
                fit.y_index = int(j);
            }
        }

    std::uniform_real_distribution<double> ux(0, 2 * M_PI);
    std::vector<double> ratios;
    for (int s = 0; s < samples; ++s) {
        GroupWord w = random_an_word(a, rng, s % 2 == 1, ux(rng));
        auto v = quadric_point(w);
        double d = v[std::size_t(fit.t_index)] * v[std::size_t(fit.t_index)] -
                   v[std::size_t(fit.y_index)] * v[std::size_t(fit.y_index)];
        if (std::fabs(d) < 1e-6) continue;
        ratios.push_back(singularity_norm2(w) / d);
    }
    if (!ratios.empty()) {
        double lo = *std::min_element(ratios.begin(), ratios.end());
        double hi = *std::max_element(ratios.begin(), ratios.end());
        fit.ratio = 0.5 * (lo + hi);
        fit.ratio_spread = hi - lo;
    }
    return fit;
}

}  // namespace adscausal
