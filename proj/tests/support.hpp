#pragma once

#include <string>

#include "tw/applications.hpp"
#include "tw/model_io.hpp"

namespace tw::testing {

inline std::string fixture(const std::string& name) { return std::string(TW_FIXTURE_DIR) + "/" + name + ".json"; }

inline Vec letter(int i) { return Vec(Word{i}); }

/** H_*(S^n): e0 and e_n with the diagonal coproduct. */
inline FiniteCoalgebra sphere(int n) {
    GradedSpace sp("S" + std::to_string(n), {{"e0", 0}, {"e" + std::to_string(n), n}});
    GradedMap c2(sp.degrees, sp.degrees, 1, 2, 0);
    c2.set({0}, Vec(Word{0, 0}));
    Vec v;
    v.add(Word{1, 0}, 1);
    v.add(Word{0, 1}, 1);
    c2.set({1}, v);
    return FiniteCoalgebra(sp, {{2, c2}}, StructureKind::cinf_coalgebra);
}

inline FiniteCoalgebra cp2() {
    GradedSpace sp("CP2", {{"e0", 0}, {"e2", 2}, {"e4", 4}});
    GradedMap c2(sp.degrees, sp.degrees, 1, 2, 0);
    c2.set({0}, Vec(Word{0, 0}));
    Vec v;
    v.add(Word{1, 0}, 1);
    v.add(Word{0, 1}, 1);
    c2.set({1}, v);
    Vec w;
    w.add(Word{2, 0}, 1);
    w.add(Word{1, 1}, 1);
    w.add(Word{0, 2}, 1);
    c2.set({2}, w);
    return FiniteCoalgebra(sp, {{2, c2}}, StructureKind::cinf_coalgebra);
}

/** <e0, top> = 1, and <e2, e2> = 1 for CP2. */
inline Pairing top_pairing(const FiniteCoalgebra& c) {
    const int n = c.space.dim();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
    return Pairing(c.space.degrees, m);
}

inline ManifoldModel manifold(const FiniteCoalgebra& c) { return manifold_from_coalgebra(c.space.name, c, top_pairing(c)); }

/** Sum over c_2(x) = x' (x) x'' of (-1)^{|x'|} x' (x) tau(x'') . h, plus (-1)^{|x|} x (x) dh. */
inline Vec classical_differential(const TwistedFamily& f, int i) {
    const auto& [x, hw] = f.letter(i);
    const auto& deg = f.c->space.degrees;
    Vec out;
    for (const auto& [w, coef] : f.c->component(2).apply(Word{x})) {
        const Vec acted = hopf_action(*f.h, f.action, f.tau(w[1]), Vec(hw));
        for (const auto& [u, cu] : acted) out.add(Word{f.index(w[0], u)}, coef * cu * sign_of(deg[w[0]]));
    }
    for (const auto& [u, cu] : f.h->d(Vec(hw))) out.add(Word{f.index(x, u)}, cu * sign_of(deg[x]));
    return out;
}

/** Delta(x (x) h) = sum (-1)^{|x''||h'|} (x' (x) h') (x) (x'' (x) h'') with the strict coproducts. */
inline Lin<std::pair<int, int>> product_coproduct(const TwistedFamily& f, int i) {
    const auto& [x, hw] = f.letter(i);
    const auto& deg = f.c->space.degrees;
    Lin<std::pair<int, int>> out;
    for (const auto& [w, cx] : f.c->component(2).apply(Word{x}))
        for (const auto& [split, ch] : f.h->coproduct(Vec(hw))) {
            const int e = deg[w[1]] * f.h->degree(split.first);
            out.add({f.index(w[0], split.first), f.index(w[1], split.second)}, cx * ch * sign_of(e));
        }
    return out;
}

}  // namespace tw::testing
