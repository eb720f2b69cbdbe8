#include "tw/applications.hpp"

#include <algorithm>

namespace tw {

std::string ManifoldModel::validate(const TruncationPolicy& policy) const {
    const auto& deg = coalgebra.space.degrees;
    int units = 0, top = 0;
    for (std::size_t i = 0; i < deg.size(); ++i) {
        if (deg[i] == 1) return "homology in degree 1 (" + coalgebra.space.names[i] + "): the manifold must be simply connected";
        if (deg[i] < 0) return "homology in negative degree";
        if (deg[i] == 0) ++units;
        top = std::max(top, deg[i]);
    }
    if (units != 1) return "H_0 must be one-dimensional";
    if (pairing.deg != deg) return "pairing is defined on a different basis";
    if (pairing.degree != top) return "pairing degree must be the top degree " + std::to_string(top);
    const StructureFamily s = coalgebra.shifted();
    if (auto r = check_ainf(s, policy); !r.ok()) return "A-infinity relations fail: " + r.summary(s);
    if (auto r = check_cinfty(s, policy); !r.ok()) return "coalgebra is not C-infinity: " + r.summary(s);
    if (auto r = check_cyclic(coalgebra, pairing); !r.ok()) return "coalgebra is not cyclic: " + r.summary(s);
    if (auto e = lie.check_differential(policy); !e.empty()) return "Lie model: " + e;
    const auto mc = check_maurer_cartan(coalgebra, lie, tau, policy);
    if (!mc.pass) return mc.describe(coalgebra, lie);
    return "";
}

ManifoldModel manifold_from_coalgebra(const std::string& name, const FiniteCoalgebra& c, const Pairing& p,
                                      std::vector<std::string> generator_names) {
    ManifoldModel m;
    m.name = name;
    m.coalgebra = c;
    m.pairing = p;
    const auto& sp = c.space;
    std::vector<std::string> names;
    std::vector<int> degs;
    m.generator_of.assign(sp.dim(), -1);
    for (int i = 0; i < sp.dim(); ++i) {
        if (sp.degrees[i] == 1) throw Error(name + ": homology in degree 1 (" + sp.names[i] + "); the manifold must be simply connected");
        if (sp.degrees[i] <= 0) continue;
        m.generator_of[i] = static_cast<int>(names.size());
        names.push_back("s" + sp.names[i]);
        degs.push_back(sp.degrees[i] - 1);
    }
    if (!generator_names.empty()) {
        if (generator_names.size() != names.size()) throw Error(name + ": wrong number of generator names");
        names = std::move(generator_names);
    }
    const StructureFamily s = c.shifted();
    std::vector<Vec> d(names.size());
    for (int i = 0; i < sp.dim(); ++i) {
        const int g = m.generator_of[i];
        if (g < 0) continue;
        for (const auto& [w, coef] : s.coproduct(i)) {
            Word image;
            for (int x : w) {
                if (m.generator_of[x] < 0) {
                    image.clear();
                    break;
                }
                image.push_back(m.generator_of[x]);
            }
            if (image.size() == w.size()) d[g].add(image, coef);
        }
    }
    m.lie = HopfAlgebra::tensor(names, degs, d);
    std::vector<Vec> values(sp.dim());
    for (int i = 0; i < sp.dim(); ++i)
        if (m.generator_of[i] >= 0) values[i] = Vec(Word{m.generator_of[i]});
    m.tau = make_twisting_cochain(c, m.lie, values, TargetKind::lie);
    return m;
}

ManifoldModel manifold_from_cdga(const std::string& name, const CDGAModel& model, int max_length, const Matrix& pairing,
                                 const std::string& unit_name) {
    const PowerSeriesConnection psc = build_power_series_connection(model, max_length);
    ExtractedStructures x = extract_structures(psc, model, unit_name);
    ManifoldModel m;
    m.name = name;
    m.coalgebra = x.coalgebra;
    m.pairing = Pairing(x.coalgebra.space.degrees, pairing);
    m.lie = x.lie_model;
    m.tau = x.tau;
    m.generator_of.assign(x.coalgebra.space.dim(), -1);
    for (int i = 1; i < x.coalgebra.space.dim(); ++i) m.generator_of[i] = i - 1;
    m.connection = psc;
    return m;
}

TruncationPolicy window_policy(int max_degree, int max_length) {
    return TruncationPolicy(max_degree + 1, std::max(max_length, max_degree + 1));
}

namespace {

HomologyRun run_family(TwistedFamily f, int max_degree) {
    ChainComplex x = assemble_complex(f, max_degree);
    HomologyResult h = homology(x);
    return {std::move(f), std::move(x), std::move(h)};
}

}  // namespace

HomologyRun path_space_model(const ManifoldModel& m, int max_degree, int max_length) {
    return run_family(build_twisted_coalgebra(m.coalgebra, m.lie, m.tau, ActionKind::left_mult,
                                              window_policy(max_degree, max_length)),
                      max_degree);
}

HomologyRun free_loop_model(const ManifoldModel& m, int max_degree, ActionKind action, bool untwisted, int max_length) {
    const TruncationPolicy p = window_policy(max_degree, max_length);
    if (untwisted) return run_family(untwisted_tensor_coalgebra(m.coalgebra, m.lie, p), max_degree);
    return run_family(build_twisted_coalgebra(m.coalgebra, m.lie, m.tau, action, p), max_degree);
}

LoopProduct loop_product_table(const ManifoldModel& m, int max_degree, int max_length, ActionKind action) {
    if (action == ActionKind::left_mult) throw Error("loop product: the left action does not give a derivation");
    LoopProduct lp{run_family(build_twisted_algebra(m.coalgebra, m.pairing, m.lie, m.tau, action,
                                                    window_policy(max_degree, max_length)),
                              max_degree),
                   {}};
    lp.table = induced_product(lp.run.homology, lp.run.complex, lp.run.family);
    return lp;
}

TwistingCochain BundleModel::twisting_cochain() const {
    const auto& sp = base.coalgebra.space;
    if (group_names.size() != group_degrees.size() || classes.size() != group_names.size())
        throw Error("bundle: one characteristic class is needed per group generator");
    std::vector<Vec> values(sp.dim());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (static_cast<int>(classes[i].size()) != sp.dim())
            throw Error("bundle: characteristic class of " + group_names[i] + " has the wrong length");
        for (int x = 0; x < sp.dim(); ++x) {
            if (classes[i][x] == 0) continue;
            if (sp.degrees[x] != group_degrees[i] + 1)
                throw Error("bundle: characteristic class for " + group_names[i] + " must have degree " +
                            std::to_string(group_degrees[i] + 1) + ", but is nonzero on " + sp.names[x]);
            values[x].add(Word{static_cast<int>(i)}, classes[i][x]);
        }
    }
    return make_twisting_cochain(base.coalgebra, group(), values, TargetKind::hopf);
}

namespace {

/** (a u b)(x) = sum (-1)^{|b||x'|} a(x') b(x'') over c_2(x) = sum x' (x) x''. */
Vec cup(const FiniteCoalgebra& c, int a, int b) {
    Vec out;
    const GradedMap c2 = c.component(2);
    for (int x = 0; x < c.space.dim(); ++x)
        for (const auto& [w, coef] : c2.apply(Word{x}))
            if (w[0] == a && w[1] == b)
                out.add(Word{x}, coef * sign_of(static_cast<long long>(c.space.degrees[b]) * c.space.degrees[w[0]]));
    return out;
}

struct DualLetters {
    std::vector<std::pair<Word, int>> letters;  // (U word, cochain index)
    std::map<std::pair<Word, int>, int> index;
};

}  // namespace

BundleResult bundle_model(const BundleModel& b, int max_degree, BundleVariant variant, ActionKind action) {
    const HopfAlgebra g = b.group();
    const TwistingCochain tau = b.twisting_cochain();
    const FiniteCoalgebra& c = b.base.coalgebra;
    BundleResult r;
    r.run = run_family(build_twisted_coalgebra(c, g, tau, action, window_policy(max_degree, 0)), max_degree);
    r.betti = r.run.homology.betti_vector();
    if (variant == BundleVariant::homology) return r;

    for (const auto& [n, f] : c.maps)
        if (n >= 3 && !f.entries.empty())
            throw Error("bundle cohomology: the base coalgebra has a nonzero c_" + std::to_string(n));
    int group_top = 0;
    for (int d : b.group_degrees) group_top += d;
    DualLetters dl;
    for (int k = 0; k <= group_top; ++k)
        for (const Word& u : g.basis_of_degree(k, static_cast<int>(b.group_degrees.size())))
            for (int a = 0; a < c.space.dim(); ++a) {
                dl.index[{u, a}] = static_cast<int>(dl.letters.size());
                dl.letters.emplace_back(u, a);
            }
    auto cdeg = [&](int i) { return g.degree(dl.letters[i].first) + c.space.degrees[dl.letters[i].second]; };

    // coboundary U_K (x) a -> sum_{i in K} sigma(i, K) (-1)^{|a|} U_{K\i} (x) (p_i u a)
    auto coboundary = [&](int l) {
        const auto& [k, a] = dl.letters[l];
        Vec out;
        for (std::size_t pos = 0; pos < k.size(); ++pos) {
            const int i = k[pos];
            Word rest = k;
            rest.erase(rest.begin() + static_cast<long>(pos));
            const Q sigma = g.mul(Vec(Word{i}), Vec(rest)).coeff(k);
            Vec pa;
            for (int x = 0; x < c.space.dim(); ++x)
                if (b.classes[i][x] != 0) pa.add(cup(c, x, a), b.classes[i][x]);
            for (const auto& [w, coef] : pa)
                out.add(Word{dl.index.at({rest, w[0]})}, sigma * coef * sign_of(c.space.degrees[a]));
        }
        return out;
    };

    ChainComplex x;
    x.lo = -(max_degree + 1);
    x.hi = 0;
    for (int k = x.lo; k <= x.hi; ++k) {
        x.letters[k];
        x.names[k];
    }
    auto letter_name = [&](int l) { return g.format(dl.letters[l].first) + "⊗" + c.space.names[dl.letters[l].second] + "*"; };
    for (int l = 0; l < static_cast<int>(dl.letters.size()); ++l)
        if (cdeg(l) <= max_degree + 1) {
            x.letters[-cdeg(l)].push_back(l);
            x.names[-cdeg(l)].push_back(letter_name(l));
        }
    for (int k = x.lo + 1; k <= x.hi; ++k) {
        Matrix m(x.dim(k - 1), x.dim(k));
        for (int col = 0; col < x.dim(k); ++col) {
            const auto v = x.coordinates(k - 1, coboundary(x.letters[k][col]));
            for (int row = 0; row < m.rows(); ++row) m(row, col) = v[row];
        }
        x.boundary[k] = std::move(m);
    }
    HomologyResult h = homology(x);
    r.betti.clear();
    for (int j = 0; j <= max_degree; ++j) r.betti.push_back(h.betti.at(-j));

    // The coboundary matrix against the transpose of the twisted differential in the dual bases.
    r.dual_matches = true;
    const ChainComplex& hx = r.run.complex;
    for (int k = 1; k <= max_degree + 1 && r.dual_matches; ++k) {
        const Matrix& dh = hx.boundary.at(k);
        for (int col = 0; col < hx.dim(k - 1) && r.dual_matches; ++col) {
            const auto& [xa, ua] = r.run.family.letter(hx.letters.at(k - 1)[col]);
            const Vec cob = coboundary(dl.index.at({ua, xa}));
            for (int row = 0; row < hx.dim(k); ++row) {
                const auto& [xb, ub] = r.run.family.letter(hx.letters.at(k)[row]);
                if (cob.coeff(Word{dl.index.at({ub, xb})}) != dh(col, row)) {
                    r.dual_matches = false;
                    break;
                }
            }
        }
    }

    StructureFamily s;
    s.kind = StructureKind::ainf_algebra;
    s.max_arity = 2;
    for (int l = 0; l < static_cast<int>(dl.letters.size()); ++l) {
        s.names.push_back(letter_name(l));
        s.deg.push_back(1 - cdeg(l));
        s.weight.push_back(cdeg(l));
        s.length.push_back(static_cast<int>(dl.letters[l].first.size()));
    }
    auto table = std::make_shared<std::vector<Vec>>();
    for (int l = 0; l < static_cast<int>(dl.letters.size()); ++l) table->push_back(coboundary(l));
    auto letters = std::make_shared<DualLetters>(dl);
    auto base = std::make_shared<FiniteCoalgebra>(c);
    auto grp = std::make_shared<HopfAlgebra>(g);
    s.product = [table, letters, base, grp](const Word& w) {
        if (w.size() == 1) return table->at(w[0]);
        if (w.size() != 2) return Vec{};
        const auto& [ui, a] = letters->letters[w[0]];
        const auto& [uj, bb] = letters->letters[w[1]];
        const int dx = grp->degree(ui) + base->space.degrees[a], dy = grp->degree(uj) + base->space.degrees[bb];
        const int sign = suspension_sign({-dx, -dy}, 1) *
                         sign_of(static_cast<long long>(base->space.degrees[a]) * grp->degree(uj));
        Vec out;
        for (const auto& [u, c1] : grp->mul(Vec(ui), Vec(uj)))
            for (const auto& [x, c2] : cup(*base, a, bb)) out.add(Word{letters->index.at({u, x[0]})}, c1 * c2 * sign);
        return out;
    };
    int top = 0;
    for (int l = 0; l < static_cast<int>(dl.letters.size()); ++l) top = std::max(top, cdeg(l));
    r.dual_report = check_ainf(s, TruncationPolicy(top, std::max(1, static_cast<int>(b.group_degrees.size()))));
    r.dual_algebra = std::move(s);
    r.cochains = std::move(x);
    r.cohomology = std::move(h);
    return r;
}

}  // namespace tw
