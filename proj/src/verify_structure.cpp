#include "adscausal/lie_core.hpp"

#include <functional>
#include <sstream>

namespace adscausal {

namespace {

enum class Block { Centralizer, Cartan, N2, Slice };

Block block_of(const BasisLabel& l) {
    switch (l.kind) {
        case LabelKind::J1: case LabelKind::J2: return Block::Cartan;
        case LabelKind::R: return Block::Centralizer;
        case LabelKind::Xpp: case LabelKind::Xpm: case LabelKind::Xmp: case LabelKind::Xmm: return Block::N2;
        default: return Block::Slice;
    }
}

// Accumulates one named check over many instances; keeps the first counterexample.
struct Rel {
    Report& rep;
    std::string name;
    bool pass = true;
    std::string cx;

    Rel(Report& r, std::string nm) : rep(r), name(std::move(nm)) {}

    void expect(bool ok, const std::function<std::string()>& why) {
        if (!ok && pass) {
            pass = false;
            cx = why();
        }
    }
    void equal(const ElemQ& lhs, const ElemQ& rhs, const std::string& where) {
        expect(lhs == rhs, [&] { return where + ": got " + to_string(lhs) + ", want " + to_string(rhs); });
    }
    ~Rel() { rep.add(name, pass, cx); }
};

bool in_span(const ElemQ& x, const std::function<bool(const BasisLabel&)>& allowed) {
    for (std::size_t i = 0; i < x.c.size(); ++i)
        if (!is_zero(x.c[i]) && !allowed(x.alg->labels[i])) return false;
    return true;
}

std::string triple(const Algebra& a, std::size_t i, std::size_t j, std::size_t k) {
    return "(" + a.labels[i].str() + ", " + a.labels[j].str() + ", " + a.labels[k].str() + ")";
}

}  // namespace

Report verify_structure(const Algebra& a) {
    Report rep;
    const std::size_t d = a.dim;
    const int n = a.n;
    auto E = [&](const std::string& l) { return basis(a, l); };
    auto br = [](const ElemQ& x, const ElemQ& y) { return bracket(x, y); };
    auto th = [](const ElemQ& x) { return apply_involution(Involution::Theta, x); };
    auto sg = [](const ElemQ& x) { return apply_involution(Involution::Sigma, x); };
    auto ks = [](int k) { return std::to_string(k); };
    const ElemQ zero(a);

    {
        Rel r{rep, "dimension"};
        std::size_t slices = 0, roots2 = 0, rs = 0;
        for (const auto& l : a.labels) {
            slices += block_of(l) == Block::Slice;
            roots2 += block_of(l) == Block::N2;
            rs += l.kind == LabelKind::R;
        }
        std::size_t want_r = std::size_t(n - 2) * (n - 2 > 0 ? n - 3 : 0) / 2;
        r.expect(d == std::size_t(n + 1) * (n + 2) / 2 && roots2 == 4 && slices == 4 * std::size_t(n - 2) &&
                     rs == want_r,
                 [&] { return "dim=" + std::to_string(d) + " slices=" + std::to_string(slices); });
    }
    {
        Rel r{rep, "generators preserve eta"};
        const MatQ& eta = a.rep.eta;
        for (std::size_t i = 0; i < d; ++i) {
            const MatQ& g = a.rep.gens[i];
            r.expect((g.transpose() * eta + eta * g).is_zero(), [&] { return a.labels[i].str(); });
        }
    }
    {
        Rel r{rep, "antisymmetry"};
        for (std::size_t i = 0; i < d && r.pass; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                ElemQ x = br(basis(a, i), basis(a, j)) + br(basis(a, j), basis(a, i));
                if (!x.is_zero()) {
                    r.expect(false, [&] { return "(" + a.labels[i].str() + ", " + a.labels[j].str() + ")"; });
                    break;
                }
            }
    }
    {
        Rel r{rep, "jacobi"};
        std::vector<Q> acc(d);
        auto nest = [&](std::size_t i, std::size_t j, std::size_t k) {  // acc += [b_i, [b_j, b_k]]
            for (const auto& t : a.terms(j, k))
                for (const auto& u : a.terms(i, t.m)) acc[u.m] += t.v * u.v;
        };
        for (std::size_t i = 0; i < d && r.pass; ++i)
            for (std::size_t j = 0; j < d && r.pass; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    for (auto& v : acc) v = 0;
                    nest(i, j, k);
                    nest(j, k, i);
                    nest(k, i, j);
                    bool ok = true;
                    for (const auto& v : acc) ok = ok && is_zero(v);
                    if (!ok) {
                        r.expect(false, [&] { return triple(a, i, j, k); });
                        break;
                    }
                }
    }
    {
        Rel r{rep, "killing symmetric"};
        r.expect(a.killing == a.killing.transpose(), [] { return "killing matrix"; });
    }
    {
        Rel r{rep, "ad-invariance of killing"};
        for (std::size_t z = 0; z < d && r.pass; ++z)
            for (std::size_t x = 0; x < d && r.pass; ++x)
                for (std::size_t y = 0; y < d; ++y) {
                    Q s = 0;
                    for (const auto& t : a.terms(z, x)) s += t.v * a.killing(t.m, y);
                    for (const auto& t : a.terms(z, y)) s += t.v * a.killing(x, t.m);
                    if (!is_zero(s)) {
                        r.expect(false, [&] { return triple(a, z, x, y); });
                        break;
                    }
                }
    }
    {
        MatQ I = MatQ::identity(d);
        rep.add("theta^2 = 1", a.theta_mat * a.theta_mat == I);
        rep.add("sigma^2 = 1", a.sigma_mat * a.sigma_mat == I);
        rep.add("theta sigma = sigma theta", a.theta_mat * a.sigma_mat == a.sigma_mat * a.theta_mat);
        Rel r{rep, "theta, sigma are automorphisms"};
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                ElemQ x = basis(a, i), y = basis(a, j);
                r.equal(th(br(x, y)), br(th(x), th(y)), "theta on " + a.labels[i].str() + "," + a.labels[j].str());
                r.equal(sg(br(x, y)), br(sg(x), sg(y)), "sigma on " + a.labels[i].str() + "," + a.labels[j].str());
            }
    }
    {
        Rel r{rep, "H stabilizes the base point"};
        std::size_t hdim = rank(a.proj.at(Subspace::H));
        r.expect(hdim == std::size_t(n) * (n + 1) / 2, [&] { return "dim H = " + std::to_string(hdim); });
        for (std::size_t i = 0; i < d; ++i) {
            MatQ m = to_matrix(project(Subspace::H, basis(a, i)));
            r.expect(is_zero((m * a.rep.base_point)[0]) && (m * a.rep.base_point) == std::vector<Q>(n + 2, Q(0)),
                     [&] { return a.labels[i].str(); });
        }
    }
    {
        Rel r{rep, "K is block-antisymmetric"};
        for (std::size_t i = 0; i < d; ++i) {
            MatQ m = to_matrix(project(Subspace::K, basis(a, i)));
            r.expect(m + m.transpose() == MatQ(m.rows, m.cols), [&] { return a.labels[i].str(); });
        }
    }
    {
        Rel r{rep, "root eigenvalues"};
        ElemQ J1 = E("J1"), J2 = E("J2");
        for (std::size_t i = 0; i < d; ++i) {
            ElemQ x = basis(a, i);
            const auto& l = a.labels[i];
            r.equal(br(J1, x), x * Q(l.alpha()), "[J1," + l.str() + "]");
            r.equal(br(J2, x), x * Q(l.beta()), "[J2," + l.str() + "]");
        }
    }
    {
        Rel r{rep, "theta maps (a,b) to (-a,-b)"};
        r.equal(th(E("X++")), E("X--"), "X++");
        r.equal(th(E("X+-")), E("X-+"), "X+-");
        for (int k = 3; k <= n; ++k) {
            r.equal(th(E("X0+:" + ks(k))), E("X0-:" + ks(k)), "X0+");
            r.equal(th(E("X+0:" + ks(k))), E("X-0:" + ks(k)), "X+0");
        }
        r.equal(th(E("J1")), -E("J1"), "J1");
        r.equal(th(E("J2")), -E("J2"), "J2");
    }
    {
        Rel r{rep, "sigma maps (a,b) to (a,-b)"};
        ElemQ J1 = E("J1"), J2 = E("J2");
        for (std::size_t i = 0; i < d; ++i) {
            ElemQ y = sg(basis(a, i));
            const auto& l = a.labels[i];
            r.equal(br(J1, y), y * Q(l.alpha()), "sigma " + l.str());
            r.equal(br(J2, y), y * Q(-l.beta()), "sigma " + l.str());
        }
        r.equal(sg(E("J1")), E("J1"), "J1");
        r.equal(sg(E("J2")), -E("J2"), "J2");
        r.equal(sg(E("X++")), -E("X+-"), "X++");
        for (int k = 3; k <= n; ++k) r.equal(sg(E("X0+:" + ks(k))), E("X0-:" + ks(k)), "X0+:" + ks(k));
    }

    // Iwasawa commutator table
    {
        Rel r{rep, "[J1,X++]=X++, [J2,X++]=X++, [J1,X+-]=X+-, [J2,X+-]=-X+-"};
        r.equal(br(E("J1"), E("X++")), E("X++"), "J1,X++");
        r.equal(br(E("J2"), E("X++")), E("X++"), "J2,X++");
        r.equal(br(E("J1"), E("X+-")), E("X+-"), "J1,X+-");
        r.equal(br(E("J2"), E("X+-")), -E("X+-"), "J2,X+-");
    }
    {
        Rel r{rep, "[J1,X+0:k]=X+0:k, [J2,X0+:k]=X0+:k"};
        for (int k = 3; k <= n; ++k) {
            r.equal(br(E("J1"), E("X+0:" + ks(k))), E("X+0:" + ks(k)), "k=" + ks(k));
            r.equal(br(E("J2"), E("X0+:" + ks(k))), E("X0+:" + ks(k)), "k=" + ks(k));
        }
    }
    {
        Rel r{rep, "[X0+:k,X+0:k']=delta X++"};
        for (int k = 3; k <= n; ++k)
            for (int k2 = 3; k2 <= n; ++k2)
                r.equal(br(E("X0+:" + ks(k)), E("X+0:" + ks(k2))), k == k2 ? E("X++") : zero,
                        "k=" + ks(k) + ",k'=" + ks(k2));
    }
    {
        Rel r{rep, "[X0+:k,X+-]=2X+0:k"};
        for (int k = 3; k <= n; ++k)
            r.equal(br(E("X0+:" + ks(k)), E("X+-")), E("X+0:" + ks(k)) * Q(2), "k=" + ks(k));
    }

    // Pyatetskii-Shapiro split, H1 = J1 - J2, H2 = J1 + J2
    {
        ElemQ H1 = E("J1") - E("J2"), H2 = E("J1") + E("J2");
        Rel r{rep, "j-algebra relations"};
        r.equal(br(H1, E("X+-")), E("X+-") * Q(2), "[H1,X+-]");
        r.equal(br(H2, E("X++")), E("X++") * Q(2), "[H2,X++]");
        auto isV = [](const BasisLabel& l) { return l.kind == LabelKind::X0p || l.kind == LabelKind::Xp0; };
        for (int k = 3; k <= n; ++k) {
            std::string s = ks(k);
            r.equal(br(H2, E("X0+:" + s)), E("X0+:" + s), "[H2,X0+]");
            r.equal(br(H2, E("X+0:" + s)), E("X+0:" + s), "[H2,X+0]");
            r.equal(br(H1, E("X0+:" + s)), -E("X0+:" + s), "[H1,X0+]");
            r.equal(br(E("X+-"), E("X0+:" + s)), E("X+0:" + s) * Q(-2), "[X+-,X0+]");
            for (const char* v : {"X0+:", "X+0:"}) {
                r.expect(in_span(br(H1, E(v + s)), isV), [&] { return std::string("[H1,V] at ") + v + s; });
                r.expect(in_span(br(E("X+-"), E(v + s)), isV), [&] { return std::string("[X+-,V] at ") + v + s; });
            }
        }
    }

    // link between N and its theta image
    {
        ElemQ J1 = E("J1"), J2 = E("J2");
        Rel r{rep, "theta relations"};
        r.equal(br(th(E("X++")), E("X++")), (J1 + J2) * Q(4), "[thX++,X++]");
        r.equal(br(th(E("X+-")), E("X+-")), (J1 - J2) * Q(4), "[thX+-,X+-]");
        for (int k = 3; k <= n; ++k) {
            std::string s = ks(k);
            r.equal(br(th(E("X+0:" + s)), E("X++")), E("X0+:" + s) * Q(2), "[thX+0,X++] k=" + s);
            r.equal(br(th(E("X0+:" + s)), E("X0+:" + s)), J2 * Q(2), "[thX0+,X0+] k=" + s);
            r.equal(br(th(E("X++")), E("X0+:" + s)), E("X-0:" + s) * Q(2), "[thX++,X0+] k=" + s);
            r.equal(br(th(E("X+-")), E("X+0:" + s)), E("X0+:" + s) * Q(2), "[thX+-,X+0] k=" + s);
            r.equal(br(th(E("X0+:" + s)), E("X++")), E("X+0:" + s) * Q(-2), "[thX0+,X++] k=" + s);
            r.equal(br(th(E("X+0:" + s)), E("X+-")), E("X0-:" + s) * Q(-2), "[thX+0,X+-] k=" + s);
            r.equal(br(th(E("X++")), E("X+0:" + s)), E("X0-:" + s) * Q(-2), "[thX++,X+0] k=" + s);
            r.equal(br(E("X-+"), E("X0-:" + s)), E("X-0:" + s) * Q(-2), "[X-+,X0-] k=" + s);
        }
    }
    {
        Rel r{rep, "higher root relations"};
        for (int i = 3; i <= n; ++i)
            for (int j = 3; j <= n; ++j) {
                std::string si = ks(i), sj = ks(j), w = "i=" + si + ",j=" + sj;
                bool dl = i == j;
                r.equal(br(E("X0+:" + si), E("X-0:" + sj)), dl ? -E("X-+") : zero, "[X0+,X-0] " + w);
                r.equal(br(E("X0+:" + si), E("X+0:" + sj)), dl ? E("X++") : zero, "[X0+,X+0] " + w);
                r.equal(br(E("X+0:" + si), E("X0+:" + sj)), dl ? -E("X++") : zero, "[X+0,X0+] " + w);
                r.equal(br(E("X+0:" + si), E("X0-:" + sj)), dl ? E("X+-") : zero, "[X+0,X0-] " + w);
            }
    }

    // compact part: r_ij = 1/2 [X0+^i, X0-^j]
    if (n >= 4) {
        auto R = [&](int i, int j) {
            return i < j ? E("R:" + ks(i) + ":" + ks(j)) : -E("R:" + ks(j) + ":" + ks(i));
        };
        Rel r{rep, "centralizer relations"};
        for (int i = 3; i <= n; ++i)
            for (int j = 3; j <= n; ++j) {
                if (i == j) continue;
                std::string si = ks(i), sj = ks(j), w = "i=" + si + ",j=" + sj;
                ElemQ rij = R(i, j);
                r.equal(br(E("X0+:" + si), E("X0-:" + sj)), rij * Q(2), "[X0+i,X0-j] " + w);
                r.equal(br(E("X0-:" + si), E("X0+:" + sj)), rij * Q(2), "[X0-i,X0+j] " + w);
                r.equal(th(rij), rij, "theta r " + w);
                r.equal(sg(rij), rij, "sigma r " + w);
                // In this realization the sign is the same on both slice families.
                r.equal(br(rij, E("X+0:" + sj)), -E("X+0:" + si), "[r,X+0j] " + w);
                r.equal(br(rij, E("X0+:" + sj)), -E("X0+:" + si), "[r,X0+j] " + w);
                for (const char* x : {"X++", "X+-", "X-+", "X--", "J1", "J2"})
                    r.equal(br(rij, E(x)), zero, std::string("[r,") + x + "] " + w);
                for (int k = 3; k <= n; ++k) {
                    if (k == i || k == j) continue;
                    r.equal(br(rij, E("X+0:" + ks(k))), zero, "[r,X+0k] " + w);
                    r.equal(br(rij, E("X0+:" + ks(k))), zero, "[r,X0+k] " + w);
                }
                for (int k = 3; k <= n; ++k)
                    for (int l = 3; l <= n; ++l) {
                        if (k == l) continue;
                        // so(n-2) structure: [r_ij, r_kl] = d_jk r_il - d_ik r_jl - d_jl r_ik + d_il r_jk
                        ElemQ want = zero;
                        auto add = [&](bool on, int p, int q, int s) {
                            if (on && p != q) want += R(p, q) * Q(s);
                        };
                        add(j == k, i, l, 1);
                        add(i == k, j, l, -1);
                        add(j == l, i, k, -1);
                        add(i == l, j, k, 1);
                        ElemQ got = br(rij, R(k, l));
                        r.expect(got == want || got == -want,
                                 [&] { return "[r" + si + sj + ",r" + ks(k) + ks(l) + "] = " + to_string(got); });
                        r.expect(in_span(got, [](const BasisLabel& b) { return b.kind == LabelKind::R; }),
                                 [&] { return "[r,r] leaves span(r)"; });
                    }
            }
    }

    // dimensional slices
    {
        Rel r{rep, "slice commutator inclusions"};
        auto slice_of = [](const BasisLabel& l) { return block_of(l) == Block::Slice ? l.i : 0; };
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const auto &li = a.labels[i], &lj = a.labels[j];
                Block bi = block_of(li), bj = block_of(lj);
                if ((bi != Block::N2 && bi != Block::Slice) || (bj != Block::N2 && bj != Block::Slice)) continue;
                ElemQ x = br(basis(a, i), basis(a, j));
                std::function<bool(const BasisLabel&)> ok;
                if (bi == Block::N2 && bj == Block::N2)
                    ok = [](const BasisLabel& l) { return block_of(l) == Block::Cartan; };
                else if (bi == Block::Slice && bj == Block::Slice && li.i == lj.i)
                    ok = [](const BasisLabel& l) { return block_of(l) == Block::Cartan || block_of(l) == Block::N2; };
                else if (bi == Block::Slice && bj == Block::Slice)
                    ok = [](const BasisLabel& l) { return block_of(l) == Block::Centralizer; };
                else {
                    int k = bi == Block::Slice ? li.i : lj.i;
                    ok = [k, slice_of](const BasisLabel& l) { return slice_of(l) == k; };
                }
                r.expect(in_span(x, ok), [&] { return "[" + li.str() + "," + lj.str() + "] = " + to_string(x); });
            }
    }
    {
        Rel r{rep, "killing-orthogonal decomposition"};
        auto part = [](const BasisLabel& l) { return block_of(l) == Block::Slice ? 100 + l.i : int(block_of(l)); };
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (part(a.labels[i]) != part(a.labels[j]))
                    r.expect(is_zero(a.killing(i, j)),
                             [&] { return "B(" + a.labels[i].str() + "," + a.labels[j].str() + ") != 0"; });
    }
    return rep;
}

Report verify_structure(int n_max) {
    if (n_max < 2) throw InvalidDimension("n_max must be >= 2");
    Report rep;
    for (int n = 2; n <= n_max; ++n) rep.append(verify_structure(*algebra(n)), "n=" + std::to_string(n) + ": ");
    return rep;
}

}  // namespace adscausal
