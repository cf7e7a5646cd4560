#include "adscausal/reductive.hpp"

#include "adscausal/exp_group.hpp"

#include <functional>

namespace adscausal {

namespace {

std::string ks(int k) { return std::to_string(k); }

}  // namespace

std::vector<ElemQ> q_generators(const Algebra& a) {
    std::vector<ElemQ> q;
    ElemQ q0 = compact_generator(a);
    q.push_back(q0);
    q.push_back(basis(a, "J2"));
    q.push_back(-bracket(basis(a, "J1"), q0));
    for (int k = 3; k <= a.n; ++k)
        q.push_back((basis(a, "X0+:" + ks(k)) - basis(a, "X0-:" + ks(k))) * Q(1, 2));
    return q;
}

namespace {

// Centre of the compact part, from the brackets of a basis of K.
std::vector<ElemQ> compact_centre(const Algebra& a) {
    std::vector<ElemQ> kb;
    MatQ span(a.dim, 0);
    for (std::size_t i = 0; i < a.dim; ++i) {
        ElemQ v = project(Subspace::K, basis(a, i));
        MatQ trial(a.dim, kb.size() + 1);
        for (std::size_t j = 0; j < kb.size(); ++j) trial.set_column(j, kb[j].c);
        trial.set_column(kb.size(), v.c);
        if (rank(trial) == kb.size() + 1) kb.push_back(v);
    }
    // z = sum y_j k_j with [z, k_m] = 0 for all m
    const std::size_t m = kb.size();
    MatQ sys(a.dim * m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t mm = 0; mm < m; ++mm) {
            ElemQ c = bracket(kb[j], kb[mm]);
            for (std::size_t r = 0; r < a.dim; ++r) sys(mm * a.dim + r, j) = c.c[r];
        }
    std::vector<ElemQ> centre;
    for (const auto& y : nullspace(sys)) {
        ElemQ z(a);
        for (std::size_t j = 0; j < m; ++j) z += kb[j] * y[j];
        centre.push_back(z);
    }
    return centre;
}

enum class Part { A, N2, Slice, Centralizer };

struct Expect {
    bool compact;   // K (else P)
    bool in_h;      // H (else Q)
    Part part;
};

Expect expectation(const std::string& name) {
    if (name == "J1") return {false, true, Part::A};
    if (name == "J2") return {false, false, Part::A};
    if (name == "q0") return {true, false, Part::N2};
    if (name == "q2") return {false, false, Part::N2};
    if (name == "p1") return {false, true, Part::N2};
    if (name == "s1") return {true, true, Part::N2};
    if (name.rfind("R:", 0) == 0) return {true, true, Part::Centralizer};
    switch (name[0]) {
        case 'q': return {false, false, Part::Slice};
        case 'p': return {false, true, Part::Slice};
        case 'r': return {true, true, Part::Slice};
        case 's': return {true, true, Part::Slice};
    }
    throw std::invalid_argument("unknown basis element " + name);
}

bool in_part(const ElemQ& x, Part p, int k) {
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (is_zero(x.c[i])) continue;
        const auto& l = x.alg->labels[i];
        bool ok = false;
        switch (p) {
            case Part::A: ok = l.kind == LabelKind::J1 || l.kind == LabelKind::J2; break;
            case Part::Centralizer: ok = l.kind == LabelKind::R; break;
            case Part::N2:
                ok = l.kind == LabelKind::Xpp || l.kind == LabelKind::Xpm || l.kind == LabelKind::Xmp ||
                     l.kind == LabelKind::Xmm;
                break;
            case Part::Slice:
                ok = (l.kind == LabelKind::X0p || l.kind == LabelKind::X0m || l.kind == LabelKind::Xp0 ||
                      l.kind == LabelKind::Xm0) &&
                     l.i == k;
                break;
        }
        if (!ok) return false;
    }
    return true;
}

// Membership failures of one b_basis element, empty when fine.
std::string membership_error(const NamedElement& e) {
    Expect ex = expectation(e.name);
    const ElemQ& x = e.x;
    if (x.is_zero()) return e.name + " vanishes";
    if (project(ex.compact ? Subspace::K : Subspace::P, x) != x) return e.name + " not in " + (ex.compact ? "K" : "P");
    if (project(ex.in_h ? Subspace::H : Subspace::Q, x) != x) return e.name + " not in " + (ex.in_h ? "H" : "Q");
    int k = 0;
    if (ex.part == Part::Slice) k = std::stoi(e.name.substr(1));
    if (!in_part(x, ex.part, k)) return e.name + " outside its slice";
    return {};
}

}  // namespace

const ElemQ& CanonicalBases::b(std::string_view name) const {
    for (const auto& e : b_basis)
        if (e.name == name) return e.x;
    throw std::invalid_argument("no basis element " + std::string(name));
}

ElemQ compact_generator(const Algebra& a) {
    return (basis(a, "X++") + basis(a, "X+-") + basis(a, "X-+") + basis(a, "X--")) * Q(1, 4);
}

int expected_norm2(const std::string& b_name) { return expectation(b_name).compact ? 1 : -1; }

CanonicalBases canonical_bases(const Algebra& a) {
    CanonicalBases cb;
    cb.q = q_generators(a);
    ElemQ J1 = basis(a, "J1"), J2 = basis(a, "J2");

    if (a.n >= 3) {
        // q0 is the Killing-orthogonal projection of X++ on the centre of K
        auto centre = compact_centre(a);
        if (centre.size() != 1) throw NormalizationFailure("centre of K is not one-dimensional");
        const ElemQ& z = centre[0];
        ElemQ xk = project(Subspace::K, basis(a, "X++"));
        ElemQ q0 = z * (killing(xk, z) / killing(z, z));
        if (q0 != cb.q[0]) throw NormalizationFailure("centre projection disagrees with " + to_string(cb.q[0]));
    }

    const ElemQ& q0 = cb.q[0];
    ElemQ p1 = bracket(q0, J2);
    ElemQ s1 = bracket(J1, p1);
    cb.h_basis = {{"J1", J1}, {"p1", p1}, {"s1", s1}};
    cb.b_basis = {{"J1", J1}, {"J2", J2}, {"q0", q0}, {"q2", cb.q[2]}, {"p1", p1}, {"s1", s1}};
    for (int k = 3; k <= a.n; ++k) {
        const ElemQ& qk = cb.q[k];
        ElemQ pk = bracket(q0, qk), rk = bracket(J2, qk), sk = bracket(J1, pk);
        std::string s = ks(k);
        cb.h_basis.push_back({"p" + s, pk});
        cb.h_basis.push_back({"r" + s, rk});
        cb.h_basis.push_back({"s" + s, sk});
        cb.b_basis.push_back({"q" + s, qk});
        cb.b_basis.push_back({"p" + s, pk});
        cb.b_basis.push_back({"r" + s, rk});
        cb.b_basis.push_back({"s" + s, sk});
    }
    for (std::size_t i = 0; i < a.dim; ++i)
        if (a.labels[i].kind == LabelKind::R) {
            cb.h_basis.push_back({a.labels[i].str(), basis(a, i)});
            cb.b_basis.push_back({a.labels[i].str(), basis(a, i)});
        }

    for (const auto& e : cb.b_basis) {
        auto err = membership_error(e);
        if (!err.empty()) throw NormalizationFailure(err);
    }
    cb.from_b = MatQ(a.dim, cb.b_basis.size());
    for (std::size_t j = 0; j < cb.b_basis.size(); ++j) cb.from_b.set_column(j, cb.b_basis[j].x.c);
    auto inv = inverse(cb.from_b);
    if (!inv) throw NormalizationFailure("b_basis is not a basis");
    cb.to_b = *inv;
    return cb;
}

Intertwiners intertwiners(const Algebra& a) {
    auto q = q_generators(a);
    ElemQ J1 = basis(a, "J1"), J2 = basis(a, "J2");
    Intertwiners it;
    it.X1 = -bracket(J2, q[0]);
    it.X2 = bracket(J1, it.X1);
    for (int k = 3; k <= a.n; ++k) it.Xk.push_back(-bracket(J2, q[k]));

    auto need = [](bool ok, const char* what) {
        if (!ok) throw NormalizationFailure(std::string("intertwining relation fails: ") + what);
    };
    need(bracket(it.X1, q[1]) == q[0], "ad(X1)q1 = q0");
    need(bracket(it.X1, q[0]) == q[1], "ad(X1)q0 = q1");
    need(bracket(it.X2, q[2]) == q[1], "ad(X2)q2 = q1");
    need(bracket(it.X2, q[1]) == -q[2], "ad(X2)q1 = -q2");
    need(bracket(J1, q[0]) == -q[2], "ad(J1)q0 = -q2");
    need(bracket(J1, q[2]) == -q[0], "ad(J1)q2 = -q0");
    for (int k = 3; k <= a.n; ++k) {
        need(bracket(it.Xk[k - 3], q[k]) == -q[1], "ad(Xk)qk = -q1");
        need(bracket(it.Xk[k - 3], q[1]) == q[k], "ad(Xk)q1 = qk");
    }
    return it;
}

ElemQ lightlike(const Algebra& a, const std::vector<Q>& w) {
    if (w.size() != std::size_t(a.n)) throw NotUnit("direction needs " + std::to_string(a.n) + " components");
    Q s = 0;
    for (const auto& x : w) s += x * x;
    if (s != 1) throw NotUnit("direction is not a unit vector");
    auto q = q_generators(a);
    ElemQ E = q[0];
    for (std::size_t i = 0; i < w.size(); ++i) E += q[i + 1] * w[i];
    MatQ ad = ad_matrix(E);
    if (!is_zero(norm2(E)) || !(ad * ad * ad).is_zero())
        throw NormalizationFailure("light-like element is not nilpotent of order 3");
    return E;
}

ElemD lightlike_unchecked(const Algebra& a, const std::vector<double>& w) {
    auto q = q_generators(a);
    ElemD E = lower(q[0]);
    for (std::size_t i = 0; i < w.size(); ++i) E += lower(q[i + 1]) * w[i];
    return E;
}

ElemD lightlike(const Algebra& a, const std::vector<double>& w) {
    if (w.size() != std::size_t(a.n)) throw NotUnit("direction needs " + std::to_string(a.n) + " components");
    double s = 0;
    for (double x : w) s += x * x;
    if (std::fabs(s - 1) > 1e-12) throw NotUnit("direction is not a unit vector");
    ElemD E = lightlike_unchecked(a, w);
    MatD ad = ad_matrix(E);
    if (std::fabs(norm2(E)) > 1e-12 || max_abs(ad * ad * ad) > 1e-12)
        throw NormalizationFailure("light-like element is not nilpotent of order 3");
    return E;
}

std::vector<Q> rational_unit(std::size_t m, std::mt19937_64& rng) {
    if (m == 0) return {};
    std::uniform_int_distribution<int> num(-12, 12), den(1, 9);
    std::vector<Q> t(m - 1);
    Q s2 = 0;
    for (auto& x : t) {
        x = Q(num(rng), den(rng));
        x.canonicalize();
        s2 += x * x;
    }
    std::vector<Q> w(m);
    for (std::size_t i = 0; i + 1 < m; ++i) w[i] = 2 * t[i] / (1 + s2);
    w[m - 1] = (s2 - 1) / (1 + s2);
    return w;
}

Report verify_reductive(const Algebra& a, std::uint64_t seed) {
    Report rep;
    CanonicalBases cb;
    try {
        cb = canonical_bases(a);
        rep.add("canonical bases and memberships", true);
    } catch (const NormalizationFailure& e) {
        rep.add("canonical bases and memberships", false, e.what());
        return rep;
    }
    try {
        intertwiners(a);
        rep.add("intertwining relations", true);
    } catch (const NormalizationFailure& e) {
        rep.add("intertwining relations", false, e.what());
    }
    const auto& q = cb.q;
    ElemQ J1 = basis(a, "J1");

    {
        bool ok = true;
        std::string cx;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) {
                if (i == j || j == 0) continue;
                ElemQ got = bracket(q[i], bracket(q[i], q[j]));
                ElemQ want = i == 0 ? -q[j] : q[j];
                if (got != want && ok) {
                    ok = false;
                    cx = "ad(q" + ks(int(i)) + ")^2 q" + ks(int(j)) + " = " + to_string(got);
                }
            }
        for (std::size_t i = 1; i < q.size(); ++i)
            if (bracket(q[i], bracket(q[i], q[0])) != q[0] && ok) {
                ok = false;
                cx = "ad(q" + ks(int(i)) + ")^2 q0";
            }
        rep.add("ad(qi)^2 qj = qj, ad(q0)^2 qj = -qj", ok, cx);
    }
    {
        bool ok = true;
        std::string cx;
        for (const auto& x : q)
            for (const auto& y : q) {
                ElemQ z = bracket(x, y);
                if (project(Subspace::H, z) != z && ok) ok = false, cx = "[Q,Q] leaves H";
            }
        for (const auto& h : cb.h_basis)
            for (const auto& y : q) {
                ElemQ z = bracket(h.x, y);
                if (project(Subspace::Q, z) != z && ok) ok = false, cx = "[" + h.name + ",Q] leaves Q";
            }
        rep.add("reductive: [Q,Q] in H, [H,Q] in Q", ok, cx);
    }
    {
        MatQ span(a.dim, 0);
        std::vector<std::vector<Q>> cols;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) cols.push_back(bracket(q[i], q[j]).c);
        MatQ m(a.dim, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
        std::size_t r = rank(m);
        std::size_t hdim = std::size_t(a.n) * (a.n + 1) / 2;
        rep.add("H = [Q,Q]", r == hdim && cb.h_basis.size() == hdim,
                "rank " + std::to_string(r) + " vs " + std::to_string(hdim));
    }
    {
        bool ok = true;
        std::string cx;
        for (std::size_t i = 0; i < cb.b_basis.size(); ++i) {
            const auto& bi = cb.b_basis[i];
            Q nv = norm2(bi.x);
            if (nv != expected_norm2(bi.name) && ok) ok = false, cx = "norm2(" + bi.name + ") = " + nv.get_str();
            for (std::size_t j = i + 1; j < cb.b_basis.size(); ++j)
                if (!is_zero(killing(bi.x, cb.b_basis[j].x)) && ok)
                    ok = false, cx = "B(" + bi.name + "," + cb.b_basis[j].name + ") != 0";
        }
        rep.add("b_basis orthonormal with signs", ok, cx);
    }
    {
        bool closed = true, square = true;
        std::string cx1, cx2;
        for (const auto& X : cb.b_basis)
            for (const auto& Y : cb.b_basis) {
                ElemQ z = bracket(X.x, Y.x);
                if (z.is_zero()) continue;
                bool hit = false;
                for (const auto& W : cb.b_basis) hit = hit || z == W.x || z == -W.x;
                if (!hit && closed) closed = false, cx1 = "[" + X.name + "," + Y.name + "] = " + to_string(z);
                ElemQ zz = bracket(X.x, z);
                ElemQ want = expected_norm2(X.name) > 0 ? -Y.x : Y.x;
                if (zz != want && square)
                    square = false, cx2 = "ad(" + X.name + ")^2 " + Y.name + " = " + to_string(zz);
            }
        rep.add("b_basis brackets in {0, +-b}", closed, cx1);
        rep.add("ad(X)^2 Y = +-Y by K/P membership", square, cx2);
    }
    {
        Q h(1, 4);
        ElemQ want_q2 = (-basis(a, "X++") - basis(a, "X+-") + basis(a, "X-+") + basis(a, "X--")) * h;
        rep.add("q2 = 1/4(-X++ - X+- + X-+ + X--)", q[2] == want_q2, to_string(q[2]));
        ElemQ d = q[0] - q[2];
        rep.add("q0 - q2 = 1/2(X++ + X+-)", d == (basis(a, "X++") + basis(a, "X+-")) * Q(1, 2), to_string(d));
        rep.add("[q0,q2] = -J1", bracket(q[0], q[2]) == -J1, to_string(bracket(q[0], q[2])));
        rep.add("(X++)_Q = q0 - q2", project(Subspace::Q, basis(a, "X++")) == d);
        rep.add("(X+-)_Q = q0 - q2", project(Subspace::Q, basis(a, "X+-")) == d);
        bool slices_h = true;
        for (int k = 3; k <= a.n; ++k)
            for (const char* l : {"X+0:", "X-0:"})
                slices_h = slices_h && project(Subspace::Q, basis(a, l + ks(k))).is_zero();
        rep.add("X(+-)0 slices lie in H", slices_h);
    }
    {
        bool ok = true;
        std::string cx;
        std::vector<std::vector<Q>> ws;
        for (int i = 0; i < a.n; ++i) {
            std::vector<Q> w(a.n, Q(0));
            w[i] = 1;
            ws.push_back(w);
            w[i] = -1;
            ws.push_back(w);
        }
        std::mt19937_64 rng(seed);
        for (int t = 0; t < 20; ++t) ws.push_back(rational_unit(a.n, rng));
        for (const auto& w : ws) {
            try {
                lightlike(a, w);
            } catch (const std::exception& e) {
                if (ok) ok = false, cx = e.what();
            }
        }
        rep.add("ad(E(w))^3 = 0 on exact unit directions", ok, cx);
    }
    {
        MatD e = exp_ad(lower(q[0]), M_PI, ExpPath::ScalingSquaring);
        double dev = max_abs(e - a.theta_f);
        rep.add("exp(pi ad q0) = theta", dev < 1e-10, "max deviation " + std::to_string(dev));
        MatQ A = ad_matrix(q[0]);
        rep.add("ad(q0)^3 = -ad(q0)", A * A * A == A * Q(-1));
    }
    return rep;
}

}  // namespace adscausal
