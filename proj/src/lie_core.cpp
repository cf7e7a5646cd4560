#include "adscausal/lie_core.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <sstream>

namespace adscausal {

// ---------------------------------------------------------------- labels

std::string BasisLabel::str() const {
    switch (kind) {
        case LabelKind::J1: return "J1";
        case LabelKind::J2: return "J2";
        case LabelKind::Xpp: return "X++";
        case LabelKind::Xpm: return "X+-";
        case LabelKind::Xmp: return "X-+";
        case LabelKind::Xmm: return "X--";
        case LabelKind::X0p: return "X0+:" + std::to_string(i);
        case LabelKind::X0m: return "X0-:" + std::to_string(i);
        case LabelKind::Xp0: return "X+0:" + std::to_string(i);
        case LabelKind::Xm0: return "X-0:" + std::to_string(i);
        case LabelKind::R: return "R:" + std::to_string(i) + ":" + std::to_string(j);
    }
    return "?";
}

namespace {

int parse_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("bad label index");
    return v;
}

}  // namespace

BasisLabel BasisLabel::parse(std::string_view s) {
    BasisLabel l;
    if (s == "J1") return {LabelKind::J1};
    if (s == "J2") return {LabelKind::J2};
    if (s == "X++") return {LabelKind::Xpp};
    if (s == "X+-") return {LabelKind::Xpm};
    if (s == "X-+") return {LabelKind::Xmp};
    if (s == "X--") return {LabelKind::Xmm};
    if (s.size() > 4 && s[0] == 'X' && s[3] == ':') {
        auto head = s.substr(0, 3);
        l.i = parse_int(s.substr(4));
        if (head == "X0+") l.kind = LabelKind::X0p;
        else if (head == "X0-") l.kind = LabelKind::X0m;
        else if (head == "X+0") l.kind = LabelKind::Xp0;
        else if (head == "X-0") l.kind = LabelKind::Xm0;
        else throw std::invalid_argument("unknown label: " + std::string(s));
        return l;
    }
    if (s.size() > 2 && s.substr(0, 2) == "R:") {
        auto rest = s.substr(2);
        auto c = rest.find(':');
        if (c == std::string_view::npos) throw std::invalid_argument("bad R label");
        l.kind = LabelKind::R;
        l.i = parse_int(rest.substr(0, c));
        l.j = parse_int(rest.substr(c + 1));
        return l;
    }
    throw std::invalid_argument("unknown label: " + std::string(s));
}

int BasisLabel::alpha() const {
    switch (kind) {
        case LabelKind::Xpp: case LabelKind::Xpm: case LabelKind::Xp0: return 1;
        case LabelKind::Xmp: case LabelKind::Xmm: case LabelKind::Xm0: return -1;
        default: return 0;
    }
}

int BasisLabel::beta() const {
    switch (kind) {
        case LabelKind::Xpp: case LabelKind::Xmp: case LabelKind::X0p: return 1;
        case LabelKind::Xpm: case LabelKind::Xmm: case LabelKind::X0m: return -1;
        default: return 0;
    }
}

std::string to_string(Subspace s) {
    switch (s) {
        case Subspace::H: return "H";
        case Subspace::Q: return "Q";
        case Subspace::K: return "K";
        case Subspace::P: return "P";
        case Subspace::HK: return "HK";
        case Subspace::HP: return "HP";
        case Subspace::QK: return "QK";
        case Subspace::QP: return "QP";
    }
    return "?";
}

std::size_t Algebra::index(const BasisLabel& l) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return i;
    throw std::invalid_argument("label not in so(2," + std::to_string(n) + "): " + l.str());
}

std::size_t Algebra::index(std::string_view label) const { return index(BasisLabel::parse(label)); }

bool Algebra::has(std::string_view label) const {
    try {
        index(label);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

// ---------------------------------------------------------------- realization helpers

namespace {

struct Frame {
    int N;
    std::vector<int> eta;  // diagonal

    std::size_t ncoords() const { return std::size_t(N) * (N - 1) / 2; }

    std::vector<Q> coords(const MatQ& m) const {
        std::vector<Q> v;
        v.reserve(ncoords());
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) v.push_back(m(p, q));
        return v;
    }

    MatQ from_coords(const std::vector<Q>& v) const {
        MatQ m(N, N);
        std::size_t k = 0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q, ++k) {
                m(p, q) = v[k];
                m(q, p) = -eta[p] * eta[q] * v[k];
            }
        return m;
    }

    // a ^ b := a (eta b)^T - b (eta a)^T, an element of so(eta)
    MatQ wedge(const std::vector<Q>& a, const std::vector<Q>& b) const {
        MatQ m(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) m(i, j) = a[i] * eta[j] * b[j] - b[i] * eta[j] * a[j];
        return m;
    }

    std::vector<Q> unit(int i) const {
        std::vector<Q> e(N, Q(0));
        e[i] = 1;
        return e;
    }
};

MatQ comm(const MatQ& x, const MatQ& y) { return x * y - y * x; }
MatQ theta_of(const MatQ& x) { return x.transpose() * Q(-1); }

// Scale v so that [theta v, v] = target; only the magnitude is fixed here.
MatQ normalize_against(const MatQ& v, const MatQ& target, const std::string& what) {
    MatQ br = comm(theta_of(v), v);
    std::optional<Q> ratio;
    for (std::size_t i = 0; i < br.a.size(); ++i) {
        if (is_zero(target.a[i])) {
            if (!is_zero(br.a[i])) throw NormalizationFailure(what + ": [theta v, v] not along anchor");
            continue;
        }
        Q r = br.a[i] / target.a[i];
        if (ratio && *ratio != r) throw NormalizationFailure(what + ": [theta v, v] not along anchor");
        ratio = r;
    }
    if (!ratio || sgn(*ratio) <= 0) throw NormalizationFailure(what + ": anchor has wrong sign");
    auto s = exact_sqrt(1 / *ratio);
    if (!s) throw NormalizationFailure(what + ": scale is not rational");
    return v * *s;
}

// Residual sign freedom: first nonzero entry in column-major order is positive.
MatQ fix_sign(const MatQ& v) {
    for (std::size_t j = 0; j < v.cols; ++j)
        for (std::size_t i = 0; i < v.rows; ++i)
            if (!is_zero(v(i, j))) return sgn(v(i, j)) > 0 ? v : v * Q(-1);
    return v;
}

int proportional(const MatQ& x, const MatQ& y) {  // +1, -1 or 0
    if (x == y) return 1;
    if (x == y * Q(-1)) return -1;
    return 0;
}

}  // namespace

// ---------------------------------------------------------------- build

AlgebraPtr build_algebra(int n) {
    if (n < 2) throw InvalidDimension("so(2,n) needs n >= 2, got " + std::to_string(n));
    const int N = n + 2;
    Frame F{N, {}};
    F.eta.assign(N, -1);
    F.eta[0] = F.eta[1] = 1;

    auto alg = std::make_shared<Algebra>();
    Algebra& A = *alg;
    A.n = n;
    A.dim = std::size_t(n + 1) * (n + 2) / 2;

    MatQ eta(N, N);
    for (int i = 0; i < N; ++i) eta(i, i) = F.eta[i];
    MatQ S(N, N);
    for (int i = 0; i < N; ++i) S(i, i) = i == 0 ? 1 : -1;

    // J1 mixes e1 (timelike) with e2, J2 mixes e0 with e3.
    MatQ J1(N, N), J2(N, N);
    J1(1, 2) = J1(2, 1) = 1;
    J2(0, 3) = J2(3, 0) = 1;

    // ad(J1), ad(J2) on the upper-triangle coordinates of so(eta)
    const std::size_t nc = F.ncoords();
    MatQ adJ1(nc, nc), adJ2(nc, nc);
    for (std::size_t c = 0; c < nc; ++c) {
        std::vector<Q> e(nc, Q(0));
        e[c] = 1;
        MatQ w = F.from_coords(e);
        adJ1.set_column(c, F.coords(comm(J1, w)));
        adJ2.set_column(c, F.coords(comm(J2, w)));
    }
    auto root_space = [&](int al, int be) {
        MatQ st(2 * nc, nc);
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nc; ++j) {
                st(i, j) = adJ1(i, j) - (i == j ? Q(al) : Q(0));
                st(nc + i, j) = adJ2(i, j) - (i == j ? Q(be) : Q(0));
            }
        std::vector<MatQ> out;
        for (auto& v : nullspace(st)) out.push_back(F.from_coords(v));
        return out;
    };
    auto expect_dim = [&](const std::vector<MatQ>& sp, std::size_t d, const char* what) {
        if (sp.size() != d)
            throw NormalizationFailure(std::string("root space ") + what + " has dimension " +
                                       std::to_string(sp.size()) + ", expected " + std::to_string(d));
    };
    const std::size_t slices = std::size_t(n - 2);

    auto spp = root_space(1, 1), spm = root_space(1, -1), s0p = root_space(0, 1), sp0 = root_space(1, 0);
    expect_dim(spp, 1, "(+,+)");
    expect_dim(spm, 1, "(+,-)");
    expect_dim(s0p, slices, "(0,+)");
    expect_dim(sp0, slices, "(+,0)");
    for (auto [al, be] : {std::pair{-1, -1}, {-1, 1}, {0, -1}, {-1, 0}})
        expect_dim(root_space(al, be), (al && be) ? 1 : slices, "negative");
    {
        std::size_t zero = root_space(0, 0).size();
        if (zero != 2 + (slices ? slices * (slices - 1) / 2 : 0))
            throw NormalizationFailure("centralizer of A has unexpected dimension");
    }

    MatQ Xpp = fix_sign(normalize_against(spp[0], (J1 + J2) * Q(4), "X++"));

    // slice vectors X0+^k live on e0, e3 and one further spacelike axis e_{k+1}
    std::vector<MatQ> X0p(slices);
    for (const auto& v : s0p) {
        int axis = -1;
        for (int r = 4; r < N; ++r)
            for (int c = 0; c < N; ++c)
                if (!is_zero(v(r, c))) {
                    if (axis >= 0 && axis != r) throw NormalizationFailure("slice vector spans several axes");
                    axis = r;
                }
        if (axis < 0) throw NormalizationFailure("slice vector without slice axis");
        std::size_t k = std::size_t(axis - 1);  // axis e_{k+1}
        X0p[k - 3] = fix_sign(normalize_against(v, J2 * Q(2), "X0+"));
    }

    // X+0^k from [X0+^k', X+0^k] = delta X++
    std::vector<MatQ> Xp0(slices);
    for (std::size_t k = 0; k < slices; ++k) {
        std::size_t m = sp0.size();
        MatQ sys(slices * nc, m);
        std::vector<Q> rhs(slices * nc, Q(0));
        for (std::size_t kk = 0; kk < slices; ++kk) {
            for (std::size_t c = 0; c < m; ++c) {
                auto col = F.coords(comm(X0p[kk], sp0[c]));
                for (std::size_t r = 0; r < nc; ++r) sys(kk * nc + r, c) = col[r];
            }
            if (kk == k) {
                auto t = F.coords(Xpp);
                for (std::size_t r = 0; r < nc; ++r) rhs[kk * nc + r] = t[r];
            }
        }
        auto y = solve(sys, rhs);
        if (!y) throw NormalizationFailure("cannot satisfy [X0+, X+0] = X++");
        MatQ v(N, N);
        for (std::size_t c = 0; c < m; ++c) v += sp0[c] * (*y)[c];
        Xp0[k] = v;
    }

    MatQ Xpm = normalize_against(spm[0], (J1 - J2) * Q(4), "X+-");
    int s = n >= 3 ? proportional(comm(X0p[0], Xpm), Xp0[0] * Q(2))
                   : proportional(S * Xpp * S, Xpm * Q(-1));
    if (s == 0) throw NormalizationFailure("no sign of X+- satisfies the anchors");
    Xpm = Xpm * Q(s);

    // assemble in label order
    auto push = [&](BasisLabel l, MatQ m) {
        A.labels.push_back(l);
        A.rep.gens.push_back(std::move(m));
    };
    push({LabelKind::J1}, J1);
    push({LabelKind::J2}, J2);
    push({LabelKind::Xpp}, Xpp);
    push({LabelKind::Xpm}, Xpm);
    push({LabelKind::Xmp}, theta_of(Xpm));
    push({LabelKind::Xmm}, theta_of(Xpp));
    for (std::size_t k = 0; k < slices; ++k) {
        int kk = int(k) + 3;
        push({LabelKind::X0p, kk}, X0p[k]);
        push({LabelKind::X0m, kk}, theta_of(X0p[k]));
        push({LabelKind::Xp0, kk}, Xp0[k]);
        push({LabelKind::Xm0, kk}, theta_of(Xp0[k]));
    }
    for (std::size_t i = 0; i < slices; ++i)
        for (std::size_t j = i + 1; j < slices; ++j)
            push({LabelKind::R, int(i) + 3, int(j) + 3}, comm(X0p[i], theta_of(X0p[j])) * Q(1, 2));
    if (A.labels.size() != A.dim) throw NormalizationFailure("label count does not match dimension");

    A.rep.eta = eta;
    A.rep.sigma_conjugator = S;
    A.rep.base_point = F.unit(0);

    const std::size_t d = A.dim;
    MatQ basis_coords(nc, d);
    for (std::size_t i = 0; i < d; ++i) basis_coords.set_column(i, F.coords(A.rep.gens[i]));
    auto inv = inverse(basis_coords);
    if (!inv) throw NormalizationFailure("generators are not a basis");
    A.coord_inv = *inv;
    A.coord_inv_f = lower(A.coord_inv);
    auto coords_of = [&](const MatQ& m) { return A.coord_inv * F.coords(m); };

    A.brackets.assign(d * d, {});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            auto c = coords_of(comm(A.rep.gens[i], A.rep.gens[j]));
            for (std::size_t m = 0; m < d; ++m)
                if (!is_zero(c[m])) {
                    A.brackets[i * d + j].push_back({m, c[m]});
                    A.brackets[j * d + i].push_back({m, -c[m]});
                }
        }
    A.brackets_f.assign(d * d, {});
    for (std::size_t k = 0; k < d * d; ++k)
        for (const auto& t : A.brackets[k]) A.brackets_f[k].push_back({t.m, t.v.get_d()});

    A.ad.assign(d, MatQ(d, d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& t : A.terms(i, j)) A.ad[i](t.m, j) = t.v;

    A.killing = MatQ(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Q tr = 0;
            for (std::size_t p = 0; p < d; ++p)
                for (const auto& t : A.terms(i, p)) {
                    const Q& y = A.ad[j](p, t.m);
                    if (!is_zero(y)) tr += t.v * y;
                }
            A.killing(i, j) = tr;
            A.killing(j, i) = tr;
        }

    A.theta_mat = MatQ(d, d);
    A.sigma_mat = MatQ(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        A.theta_mat.set_column(i, coords_of(theta_of(A.rep.gens[i])));
        A.sigma_mat.set_column(i, coords_of(S * A.rep.gens[i] * S));
    }

    MatQ I = MatQ::identity(d);
    Q half(1, 2);
    A.proj[Subspace::H] = (I + A.sigma_mat) * half;
    A.proj[Subspace::Q] = (I - A.sigma_mat) * half;
    A.proj[Subspace::K] = (I + A.theta_mat) * half;
    A.proj[Subspace::P] = (I - A.theta_mat) * half;
    A.proj[Subspace::HK] = A.proj[Subspace::H] * A.proj[Subspace::K];
    A.proj[Subspace::HP] = A.proj[Subspace::H] * A.proj[Subspace::P];
    A.proj[Subspace::QK] = A.proj[Subspace::Q] * A.proj[Subspace::K];
    A.proj[Subspace::QP] = A.proj[Subspace::Q] * A.proj[Subspace::P];

    for (const auto& m : A.ad) A.ad_f.push_back(lower(m));
    A.killing_f = lower(A.killing);
    A.theta_f = lower(A.theta_mat);
    A.sigma_f = lower(A.sigma_mat);
    for (const auto& [k, m] : A.proj) A.proj_f[k] = lower(m);
    return alg;
}

AlgebraPtr algebra(int n) {
    static std::mutex mu;
    static std::map<int, AlgebraPtr> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto a = build_algebra(n);
    cache[n] = a;
    return a;
}

// ---------------------------------------------------------------- elements

ElemQ basis(const Algebra& a, std::size_t i) {
    ElemQ e(a);
    e.c.at(i) = 1;
    return e;
}

ElemQ basis(const Algebra& a, std::string_view label) { return basis(a, a.index(label)); }

ElemD lower(const ElemQ& x) { return ElemD(*x.alg, lower(x.c)); }

std::string to_string(const ElemQ& x) {
    std::string out;
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        const Q& v = x.c[i];
        if (is_zero(v)) continue;
        Q mag = abs(v);
        if (out.empty()) out += sgn(v) < 0 ? "-" : "";
        else out += sgn(v) < 0 ? " - " : " + ";
        if (mag != 1) out += mag.get_str() + "*";
        out += x.alg->labels[i].str();
    }
    return out.empty() ? "0" : out;
}

double max_abs(const ElemD& x) {
    double r = 0;
    for (double v : x.c) r = std::max(r, std::fabs(v));
    return r;
}

MatQ to_matrix(const ElemQ& x) {
    const auto& g = x.alg->rep.gens;
    MatQ m(g[0].rows, g[0].cols);
    for (std::size_t i = 0; i < x.c.size(); ++i)
        if (!is_zero(x.c[i])) m += g[i] * x.c[i];
    return m;
}

MatD to_matrix(const ElemD& x) {
    const auto& g = x.alg->rep.gens;
    MatD m(g[0].rows, g[0].cols);
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (x.c[i] == 0) continue;
        for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] += x.c[i] * g[i].a[k].get_d();
    }
    return m;
}

ElemQ from_matrix(const Algebra& a, const MatQ& m) {
    std::vector<Q> v;
    for (std::size_t p = 0; p < m.rows; ++p)
        for (std::size_t q = p + 1; q < m.cols; ++q) v.push_back(m(p, q));
    return ElemQ(a, a.coord_inv * v);
}

ElemD from_matrix(const Algebra& a, const MatD& m) {
    std::vector<double> v;
    for (std::size_t p = 0; p < m.rows; ++p)
        for (std::size_t q = p + 1; q < m.cols; ++q) v.push_back(m(p, q));
    return ElemD(a, a.coord_inv_f * v);
}

}  // namespace adscausal
