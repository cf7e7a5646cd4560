#include "adscausal/exp_group.hpp"

#include "adscausal/reductive.hpp"

#include <cmath>

namespace adscausal {

MatD expm(const MatD& m) {
    const std::size_t n = m.rows;
    int s = 0;
    double nrm = norm1(m);
    while (nrm / std::ldexp(1.0, s) > 0.5) ++s;
    MatD a = m * std::ldexp(1.0, -s);
    MatD r = MatD::identity(n), term = MatD::identity(n);
    for (int k = 1; k <= 13; ++k) {
        term = term * a * (1.0 / k);
        r += term;
    }
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

namespace {

constexpr int kMaxNilpotency = 8;  // ad-nilpotent elements of so(2,n) have index <= 5

double q0_multiple(const ElemD& Z, const ElemD& q0, double& residual) {
    double zq = 0, qq = 0;
    for (std::size_t i = 0; i < Z.c.size(); ++i) {
        zq += Z.c[i] * q0.c[i];
        qq += q0.c[i] * q0.c[i];
    }
    double lam = zq / qq;
    residual = max_abs(Z - q0 * lam);
    return lam;
}

// Powers of M until one vanishes (relative to the size of M); empty if none does.
std::vector<MatD> nilpotent_powers(const MatD& m) {
    double scale = std::max(1.0, max_abs(m));
    std::vector<MatD> pw{m};
    for (int k = 2; k <= kMaxNilpotency; ++k) {
        MatD next = pw.back() * m;
        if (max_abs(next) <= 1e-12 * std::pow(scale, k)) return pw;
        pw.push_back(std::move(next));
    }
    return {};
}

MatD series(const std::vector<MatD>& pw, std::size_t n) {
    MatD r = MatD::identity(n);
    double fact = 1;
    for (std::size_t k = 0; k < pw.size(); ++k) {
        fact *= double(k + 1);
        r += pw[k] * (1.0 / fact);
    }
    return r;
}

}  // namespace

ExpPath exp_path_for(const ElemD& Z) {
    const Algebra& a = *Z.alg;
    double res;
    double lam = q0_multiple(Z, lower(compact_generator(a)), res);
    if (res <= 1e-14 * std::max(1.0, std::fabs(lam))) return ExpPath::ClosedForm;
    if (!nilpotent_powers(ad_matrix(Z)).empty()) return ExpPath::Nilpotent;
    return ExpPath::ScalingSquaring;
}

MatD exp_ad(const ElemD& Z, double t, ExpPath path) {
    const Algebra& a = *Z.alg;
    if (t == 0 || Z.is_zero()) return MatD::identity(a.dim);
    if (path == ExpPath::Auto) path = exp_path_for(Z);
    switch (path) {
        case ExpPath::ClosedForm: {
            // ad(q0)^3 = -ad(q0): exp(x ad q0) = 1 + sin x ad q0 + (1 - cos x) ad q0^2
            ElemD q0 = lower(compact_generator(a));
            double res;
            double x = q0_multiple(Z, q0, res) * t;
            if (res > 1e-12 * std::max(1.0, max_abs(Z))) throw std::invalid_argument("closed form needs a multiple of q0");
            MatD A = ad_matrix(q0);
            return MatD::identity(a.dim) + A * std::sin(x) + (A * A) * (1 - std::cos(x));
        }
        case ExpPath::Nilpotent: {
            auto pw = nilpotent_powers(ad_matrix(Z) * t);
            if (pw.empty()) throw std::invalid_argument("ad(Z) is not nilpotent");
            return series(pw, a.dim);
        }
        case ExpPath::ScalingSquaring:
        case ExpPath::Auto: break;
    }
    return expm(ad_matrix(Z) * t);
}

std::optional<MatQ> exp_ad_nilpotent(const ElemQ& Z, const Q& t) {
    const Algebra& a = *Z.alg;
    MatQ m = ad_matrix(Z) * t;
    MatQ r = MatQ::identity(a.dim), pw = m;
    Q fact = 1;
    for (int k = 1; k <= int(a.dim) + 1; ++k) {
        if (pw.is_zero()) return r;
        fact *= k;
        r += pw * (1 / fact);
        pw = pw * m;
    }
    return std::nullopt;
}

GroupWord GroupWord::inverse() const {
    GroupWord w(*alg);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) w.factors.emplace_back(it->first, -it->second);
    return w;
}

MatD ad_word(const GroupWord& w) {
    MatD r = MatD::identity(w.alg->dim);
    for (const auto& [z, t] : w.factors) r = r * exp_ad(z, t);
    return r;
}

MatD group_matrix(const GroupWord& w) {
    std::size_t N = std::size_t(w.alg->n) + 2;
    MatD r = MatD::identity(N);
    for (const auto& [z, t] : w.factors) r = r * expm(to_matrix(z) * t);
    return r;
}

ElemD fundamental_vector(const GroupWord& w) {
    return ElemD(*w.alg, ad_word(w) * lower(basis(*w.alg, "J1")).c);
}

ElemD nilpotent_part(const Algebra& a, const PointCoords& p) {
    if (p.nu_0p.size() > std::size_t(a.n - 2) || p.nu_p0.size() > std::size_t(a.n - 2))
        throw std::invalid_argument("point has more slice coordinates than so(2," + std::to_string(a.n) + ")");
    ElemD Z(a);
    Z["X++"] = p.nu_pp;
    Z["X+-"] = p.nu_pm;
    for (std::size_t k = 0; k < p.nu_0p.size(); ++k) Z["X0+:" + std::to_string(k + 3)] = p.nu_0p[k];
    for (std::size_t k = 0; k < p.nu_p0.size(); ++k) Z["X+0:" + std::to_string(k + 3)] = p.nu_p0[k];
    return Z;
}

namespace {

// A single basis direction becomes (basis, coefficient); anything else (Z, 1).
void push_factor(GroupWord& w, const ElemD& z) {
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < z.c.size(); ++i)
        if (z.c[i] != 0) ++nz, at = i;
    if (nz == 0) return;
    if (nz == 1) w.push(lower(basis(*z.alg, at)), z.c[at]);
    else w.push(z, 1.0);
}

}  // namespace

GroupWord point_word(const Algebra& a, const PointCoords& p) {
    GroupWord w(a);
    if (p.x != 0) w.push(lower(compact_generator(a)), p.x);
    push_factor(w, nilpotent_part(a, p));
    ElemD A(a);
    A["J1"] = p.alpha[0];
    A["J2"] = p.alpha[1];
    push_factor(w, A);
    return w;
}

ANCoefficients an_coefficients(const Algebra& a, const PointCoords& p) {
    ElemD Z = nilpotent_part(a, p);
    ElemD A(a);
    A["J1"] = p.alpha[0];
    A["J2"] = p.alpha[1];
    MatD m = exp_ad(Z, 1.0, ExpPath::Nilpotent) * exp_ad(A, 1.0);
    ElemD X(a, m * lower(basis(a, "J1")).c);

    ANCoefficients r;
    r.a = X["X++"];
    r.b = X["X+-"];
    for (int k = 3; k <= a.n; ++k) r.c.push_back(X["X+0:" + std::to_string(k)]);
    double scale = std::max(1.0, max_abs(X));
    for (std::size_t i = 0; i < a.dim; ++i) {
        const auto& l = a.labels[i];
        double expect = l.kind == LabelKind::J1 ? 1.0 : 0.0;
        bool listed = l.kind == LabelKind::Xpp || l.kind == LabelKind::Xpm || l.kind == LabelKind::Xp0;
        if (!listed && std::fabs(X.c[i] - expect) > 1e-12 * scale)
            throw ResidualComponent("Ad(e^Z)J1 has a " + l.str() + " component " + std::to_string(X.c[i]));
    }
    return r;
}

ANCoefficientsExact an_coefficients(const ElemQ& Z) {
    const Algebra& a = *Z.alg;
    auto m = exp_ad_nilpotent(Z, Q(1));
    if (!m) throw std::invalid_argument("Z is not nilpotent");
    ElemQ X(a, *m * basis(a, "J1").c);
    ANCoefficientsExact r{X["X++"], X["X+-"], {}};
    for (int k = 3; k <= a.n; ++k) r.c.push_back(X["X+0:" + std::to_string(k)]);
    for (std::size_t i = 0; i < a.dim; ++i) {
        const auto& l = a.labels[i];
        bool listed = l.kind == LabelKind::Xpp || l.kind == LabelKind::Xpm || l.kind == LabelKind::Xp0;
        Q expect = l.kind == LabelKind::J1 ? Q(1) : Q(0);
        if (!listed && X.c[i] != expect) throw ResidualComponent("Ad(e^Z)J1 has a " + l.str() + " component");
    }
    return r;
}

std::vector<double> quadric_point(const GroupWord& w) {
    const Algebra& a = *w.alg;
    std::vector<double> v = lower(a.rep.base_point);
    for (const auto& [z, t] : w.factors) v = expm(to_matrix(z) * (-t)) * v;
    return v;
}

double eta_norm(const Algebra& a, const std::vector<double>& v) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += a.rep.eta(i, i).get_d() * v[i] * v[i];
    return s;
}

}  // namespace adscausal
