#include "tw/twisting.hpp"

#include <memory>

namespace tw {

TwistingCochain make_twisting_cochain(const FiniteCoalgebra& c, const HopfAlgebra& h, std::vector<Vec> values,
                                      TargetKind target) {
    const GradedSpace& sp = c.space;
    if (static_cast<int>(values.size()) != sp.dim())
        throw Error("twisting cochain: expected " + std::to_string(sp.dim()) + " values, got " +
                    std::to_string(values.size()));
    TwistingCochain t;
    t.target = target;
    t.primitive_image = true;
    for (int i = 0; i < sp.dim(); ++i) {
        for (const auto& [w, coef] : values[i]) {
            (void)coef;
            for (int x : w)
                if (x < 0 || x >= h.generators()) throw Error("twisting cochain: value on " + sp.names[i] + " uses an unknown generator");
            if (h.degree(w) != sp.degrees[i] - 1)
                throw Error("twisting cochain must have degree -1: value on " + sp.names[i] + " contains " +
                            h.format(w) + " of degree " + std::to_string(h.degree(w)));
        }
        values[i] = h.normalize(values[i]);
        if (sp.degrees[i] <= 1 && !values[i].empty())
            throw Error("twisting cochain must vanish in degrees 0 and 1, but is nonzero on " + sp.names[i]);
        if (!values[i].empty() && !h.is_primitive(values[i])) t.primitive_image = false;
    }
    if (target == TargetKind::lie && !t.primitive_image)
        throw Error("twisting cochain into a Lie algebra must have primitive values");
    t.tau.degree = -1;
    t.tau.values = std::move(values);
    return t;
}

TwistingCochain zero_cochain(const FiniteCoalgebra& c) {
    TwistingCochain t;
    t.primitive_image = true;
    t.tau.degree = -1;
    t.tau.values.assign(c.space.dim(), Vec{});
    return t;
}

std::string MaurerCartanReport::describe(const FiniteCoalgebra& c, const HopfAlgebra& h) const {
    if (pass) return "Maurer-Cartan equation holds";
    std::string s = "Maurer-Cartan defect:";
    for (std::size_t i = 0; i < defect.size(); ++i)
        if (!defect[i].empty()) s += " on " + c.space.names[i] + ": " + h.format(defect[i]) + ";";
    return s;
}

MaurerCartanReport check_maurer_cartan(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau,
                                       const TruncationPolicy& policy, ConvolutionMode mode) {
    if (tau.tau.degree != -1) throw Error("check_maurer_cartan: twisting cochain must have degree -1");
    if (mode == ConvolutionMode::lie && !tau.primitive_image)
        throw Error("check_maurer_cartan: Lie mode needs a cochain with primitive values");
    HomConvolution conv(c, h, mode);
    MaurerCartanReport r;
    const int dim = c.space.dim();
    r.defect.assign(dim, Vec{});
    const int top = std::min(c.max_arity(), policy.max_length);
    Q factorial = 1;
    for (int n = 1; n <= top; ++n) {
        factorial *= n;
        Cochain term = conv(std::vector<Cochain>(n, tau.tau));
        if (mode == ConvolutionMode::lie) term.values = [&] {
            std::vector<Vec> v = term.values;
            for (auto& x : v) x *= 1 / factorial;
            return v;
        }();
        r.terms[n] = term.values;
        for (int i = 0; i < dim; ++i) r.defect[i] += term.values[i];
    }
    for (int i = 0; i < dim; ++i) {
        if (c.space.degrees[i] > policy.max_degree + 1) r.defect[i] = Vec{};
        if (!r.defect[i].empty()) r.pass = false;
    }
    return r;
}

namespace {

Vec apply_multiplicative(const HopfAlgebra& h, const std::vector<Vec>& values, const Word& w) {
    Vec prod(Word{}, 1);
    for (int x : w) {
        prod = h.mul(prod, values.at(x));
        if (prod.empty()) break;
    }
    return prod;
}

Vec apply_multiplicative(const HopfAlgebra& h, const std::vector<Vec>& values, const Vec& v) {
    Vec out;
    for (const auto& [w, c] : v) out.add(apply_multiplicative(h, values, w), c);
    return out;
}

Vec lie_image(const HopfAlgebra& h, const std::vector<Vec>& values, const std::vector<int>& letter_of,
              const LieWord& l) {
    if (l.is_leaf()) return values.at(letter_of[l.letter]);
    return h.bracket(lie_image(h, values, letter_of, *l.left), lie_image(h, values, letter_of, *l.right));
}

}  // namespace

MorphismReport cochain_to_morphism(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau,
                                   ConvolutionMode mode, const TruncationPolicy& policy) {
    if (mode == ConvolutionMode::lie && !tau.primitive_image)
        throw Error("cochain_to_morphism: Lie mode needs a cochain with primitive values");
    auto hh = std::make_shared<HopfAlgebra>(h);
    auto values = std::make_shared<std::vector<Vec>>(tau.tau.values);
    MorphismReport r;
    r.apply = [hh, values](const Word& w) { return apply_multiplicative(*hh, *values, w); };

    const StructureFamily s = c.shifted();
    std::vector<int> letter_of, sub_deg;
    for (int i = 0; i < s.size(); ++i)
        if (s.deg[i] >= 1) {
            letter_of.push_back(i);
            sub_deg.push_back(s.deg[i]);
        }
    auto defect_of = [&](const Vec& tensor, const Vec& image) {
        const Vec dw = extend_derivation(tensor, -1, s.coproduct, s.deg);
        return apply_multiplicative(h, *values, dw) - h.d(image);
    };
    if (mode == ConvolutionMode::assoc) {
        for (const Word& sub : words_up_to(sub_deg, policy)) {
            Word w;
            for (int x : sub) w.push_back(letter_of[x]);
            const Vec def = defect_of(Vec(w), apply_multiplicative(h, *values, w));
            ++r.checked;
            if (!def.empty()) r.defects.emplace_back(w, def);
        }
        return r;
    }
    for (const auto& l : lyndon_basis(sub_deg, policy)) {
        Vec tensor;
        for (const auto& [sub, coef] : lie_to_tensor(*l, sub_deg)) {
            Word w;
            for (int x : sub) w.push_back(letter_of[x]);
            tensor.add(w, coef);
        }
        Word key;
        for (int x : l->letters()) key.push_back(letter_of[x]);
        const Vec def = defect_of(tensor, lie_image(h, *values, letter_of, *l));
        ++r.checked;
        if (!def.empty()) r.defects.emplace_back(key, def);
    }
    return r;
}

AinfMorphism identity_morphism(const StructureFamily& a) {
    AinfMorphism f;
    GradedMap id(a.deg, a.deg, 1, 1, 0);
    for (int i = 0; i < a.size(); ++i) id.set({i}, Vec(Word{i}));
    f.components[1] = id;
    return f;
}

namespace {

/** The coalgebra map T(W_A) -> T(W_B) with the given components (all of degree 0). */
Vec coalgebra_map(const AinfMorphism& f, const Word& w) {
    if (w.empty()) return Vec(Word{}, 1);
    Vec out;
    for (const auto& [n, g] : f.components) {
        if (n > static_cast<int>(w.size())) break;
        const Vec head = g.apply(Word(w.begin(), w.begin() + n));
        if (head.empty()) continue;
        const Vec tail = coalgebra_map(f, Word(w.begin() + n, w.end()));
        out += concat(head, tail);
    }
    return out;
}

Vec coalgebra_map(const AinfMorphism& f, const Vec& v) {
    Vec out;
    for (const auto& [w, c] : v) out.add(coalgebra_map(f, w), c);
    return out;
}

/** The bar coderivation of an algebra family on a word. */
Vec bar_differential(const StructureFamily& a, const Word& w) {
    Vec out;
    long long passed = 0;
    const int n = static_cast<int>(w.size());
    for (int j = 0; j < n; ++j) {
        for (int k = 1; k <= a.max_arity && j + k <= n; ++k) {
            const Vec mid = a.product(Word(w.begin() + j, w.begin() + j + k));
            for (const auto& [m, c] : mid) {
                Word v(w.begin(), w.begin() + j);
                v.push_back(m.at(0));
                v.insert(v.end(), w.begin() + j + k, w.end());
                out.add(v, c * sign_of(passed));
            }
        }
        passed += a.deg[w[j]];
    }
    return out;
}

Vec bar_differential(const StructureFamily& a, const Vec& v) {
    Vec out;
    for (const auto& [w, c] : v) out.add(bar_differential(a, w), c);
    return out;
}

Vec project_letters(const Vec& v) {
    Vec out;
    for (const auto& [w, c] : v)
        if (w.size() == 1) out.add(w, c);
    return out;
}

Vec tensor_power(const Vec& x, int n) {
    Vec p(Word{}, 1);
    for (int i = 0; i < n; ++i) p = concat(p, x);
    return p;
}

void for_each_word_over(int letters, int n, const std::function<void(const Word&)>& fn) {
    Word w(n, 0);
    if (letters == 0) return;
    while (true) {
        fn(w);
        int i = n - 1;
        while (i >= 0 && ++w[i] == letters) w[i--] = 0;
        if (i < 0) return;
    }
}

}  // namespace

DefectReport check_ainf_morphism(const StructureFamily& a, const StructureFamily& b, const AinfMorphism& f,
                                 const TruncationPolicy& policy) {
    DefectReport r;
    for (const auto& [n, g] : f.components)
        if (g.degree != 0) {
            r.error = "morphism component " + std::to_string(n) + " must have degree 0 in shifted form";
            return r;
        }
    for (int n = 1; n <= policy.max_length; ++n)
        for_each_word_over(a.size(), n, [&](const Word& w) {
            Vec lhs;
            for (const auto& [v, c] : bar_differential(a, w)) {
                auto it = f.components.find(static_cast<int>(v.size()));
                if (it != f.components.end()) lhs.add(it->second.apply(v), c);
            }
            Vec rhs;
            for (const auto& [u, c] : coalgebra_map(f, w)) rhs.add(b.product(u), c);
            Vec diff = lhs - rhs;
            if (!diff.empty()) r.defects.push_back({n, w, diff});
        });
    return r;
}

Vec mc_defect(const StructureFamily& a, const Vec& x, const TruncationPolicy& policy) {
    for (const auto& [w, c] : x)
        if (w.size() != 1 || a.deg.at(w[0]) != 0)
            throw Error("Maurer-Cartan element must be a degree 0 element of the shifted space");
    Vec out;
    for (int n = 1; n <= std::min(a.max_arity, policy.max_length); ++n)
        for (const auto& [w, c] : tensor_power(x, n)) out.add(a.product(w), c);
    return out;
}

Vec pushforward_mc(const StructureFamily& a, const StructureFamily& b, const AinfMorphism& f, const Vec& x,
                   const TruncationPolicy& policy) {
    if (!mc_defect(a, x, policy).empty()) throw Error("pushforward_mc: input is not a Maurer-Cartan element");
    if (!check_ainf_morphism(a, b, f, policy).ok()) throw Error("pushforward_mc: morphism does not verify");
    Vec out;
    for (const auto& [n, g] : f.components) {
        if (n > policy.max_length) break;
        for (const auto& [w, c] : tensor_power(x, n)) out.add(g.apply(w), c);
    }
    return out;
}

StructureFamily transport_structure(const StructureFamily& a, const AinfMorphism& f, int max_arity) {
    if (a.is_coalgebra() || a.kind == StructureKind::linf_algebra)
        throw Error("transport_structure: input must be an A-infinity algebra");
    auto it = f.components.find(1);
    if (it == f.components.end() || !(it->second == identity_morphism(a).components.at(1)))
        throw Error("transport_structure: the linear component must be the identity");
    StructureFamily b = a;
    b.max_arity = max_arity;
    auto src = std::make_shared<StructureFamily>(a);
    auto fm = std::make_shared<AinfMorphism>(f);
    auto memo = std::make_shared<std::map<Word, Vec>>();
    b.product = [src, fm, memo, max_arity](const Word& w) {
        if (static_cast<int>(w.size()) > max_arity || w.empty()) return Vec{};
        auto hit = memo->find(w);
        if (hit != memo->end()) return hit->second;
        // F^{-1} = sum_k (id - F)^k, finite since F - id lowers word length
        Vec inv = Vec(w), cur = Vec(w);
        while (!cur.empty()) {
            cur = cur - coalgebra_map(*fm, cur);
            inv += cur;
        }
        const Vec out = project_letters(coalgebra_map(*fm, bar_differential(*src, inv)));
        (*memo)[w] = out;
        return out;
    };
    return b;
}

}  // namespace tw
