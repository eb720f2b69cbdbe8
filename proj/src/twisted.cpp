#include "tw/twisted.hpp"

#include <algorithm>
#include <map>

namespace tw {

struct TwistedState {
    std::shared_ptr<const FiniteCoalgebra> c;
    std::shared_ptr<const HopfAlgebra> h;
    std::vector<Vec> tau;
    ActionKind action = ActionKind::left_mult;
    StructureFamily c_shifted;
    bool algebra = false;
    int pairing_degree = 0;
    FiniteAlgebra c_algebra;

    std::vector<TensorLetter> letters;
    std::map<TensorLetter, int> index;
    std::vector<int> weight;
    int max_weight = 0, max_length = 0;

    std::map<int, Vec> d_memo;
    std::map<Word, Vec> m_memo;

    int lookup(int x, const Word& hw) const {
        auto it = index.find({x, hw});
        if (it == index.end())
            throw Error("twisted family: " + c->space.names[x] + "⊗" + h->format(hw) +
                        " lies outside the precomputed window (weight " + std::to_string(max_weight) +
                        ", length " + std::to_string(max_length) + ")");
        return it->second;
    }

    int c_degree(int x) const { return c->space.degrees[x] - (algebra ? pairing_degree : 0); }
    int letter_degree(int i) const { return c_degree(letters[i].first) + h->degree(letters[i].second); }

    Lin<std::vector<Word>> iterated_coproduct(const Word& y, int k) const {
        Lin<std::vector<Word>> out;
        if (k == 1) {
            out.add(std::vector<Word>{y}, 1);
            return out;
        }
        for (const auto& [split, c1] : unshuffle(y, h->deg()))
            for (const auto& [rest, c2] : iterated_coproduct(split.second, k - 1)) {
                std::vector<Word> parts{split.first};
                parts.insert(parts.end(), rest.begin(), rest.end());
                out.add(parts, c1 * c2);
            }
        return out;
    }

    /** Letters p_1..p_k of C[-1] sharing the H word y through its iterated coproduct. */
    Vec share(const Word& p, const Word& y) const {
        const int k = static_cast<int>(p.size());
        std::vector<int> sh;
        for (int x : p) sh.push_back(c->space.degrees[x] - 1);
        const int s1 = suspension_sign(sh, 1);
        std::vector<int> perm;
        for (int i = 0; i < k; ++i) {
            perm.push_back(i);
            perm.push_back(k + i);
        }
        Vec out;
        for (const auto& [parts, coef] : iterated_coproduct(y, k)) {
            std::vector<int> degs, joint;
            for (int x : p) degs.push_back(c->space.degrees[x]);
            for (int i = 0; i < k; ++i) degs.push_back(h->degree(parts[i]));
            for (int i = 0; i < k; ++i) joint.push_back(degs[i] + degs[k + i]);
            Word w;
            for (int i = 0; i < k; ++i) w.push_back(lookup(p[i], parts[i]));
            out.add(w, coef * s1 * reorder_sign(perm, degs) * suspension_sign(joint, -1));
        }
        return out;
    }

    /** The derivation D on the letter i of (C (x) H)[-1]; only output length one when arity1_only. */
    Vec derivation(int i, bool arity1_only) const {
        const auto& [x, hw] = letters[i];
        Vec out;
        for (const auto& [w, coef] : c_shifted.coproduct(x)) {
            const int n = static_cast<int>(w.size());
            for (int k = 1; k <= n; ++k) {
                if (arity1_only && k > 1) break;
                Vec y;
                if (k == n) {
                    y = Vec(hw);
                } else {
                    std::vector<Vec> images;
                    std::vector<int> degs;
                    bool vanishes = false;
                    for (int j = k; j < n; ++j) {
                        if (tau[w[j]].empty()) vanishes = true;
                        images.push_back(tau[w[j]]);
                        degs.push_back(c->space.degrees[w[j]] - 1);
                    }
                    if (vanishes) continue;
                    const Vec a = h->normalize(nested_bracket(images, degs, h->deg()));
                    y = hopf_action(*h, action, a, Vec(hw));
                }
                for (const auto& [yw, yc] : y) out.add(share(Word(w.begin(), w.begin() + k), yw), coef * yc);
            }
        }
        for (const auto& [dw, dc] : h->d(Vec(hw))) out.add(Word{lookup(x, dw)}, dc * sign_of(c->space.degrees[x] - 1));
        return out;
    }

    Vec coproduct(int i) {
        auto it = d_memo.find(i);
        if (it != d_memo.end()) return it->second;
        return d_memo[i] = derivation(i, false);
    }

    /** m~_1 = -(length one part of D), the unshifted differential. */
    Vec differential(int i) {
        auto it = d_memo.find(i);
        if (it == d_memo.end()) it = d_memo.emplace(i, derivation(i, algebra)).first;
        Vec out;
        for (const auto& [w, c] : it->second)
            if (w.size() == 1) out.add(w, -c);
        return out;
    }

    Vec product(const Word& w) {
        const int n = static_cast<int>(w.size());
        if (n == 1) return differential(w[0]);
        if (n < 2 || n > c_algebra.max_arity()) return {};
        auto it = m_memo.find(w);
        if (it != m_memo.end()) return it->second;
        Word xs;
        std::vector<int> unshifted, inter;
        Vec hprod(Word{}, 1);
        for (int l : w) {
            xs.push_back(letters[l].first);
            unshifted.push_back(letter_degree(l));
            inter.push_back(c_degree(letters[l].first));
            inter.push_back(h->degree(letters[l].second));
            hprod = h->mul(hprod, Vec(letters[l].second));
        }
        Vec out;
        const Vec mc = c_algebra.component(n).apply(xs);
        if (!mc.empty() && !hprod.empty()) {
            std::vector<int> perm;
            for (int i = 0; i < n; ++i) perm.push_back(2 * i);
            for (int i = 0; i < n; ++i) perm.push_back(2 * i + 1);
            const int sign = suspension_sign(unshifted, 1) * reorder_sign(perm, inter);
            for (const auto& [xo, c1] : mc)
                for (const auto& [ho, c2] : hprod) out.add(Word{lookup(xo.at(0), ho)}, c1 * c2 * sign);
        }
        return m_memo[w] = out;
    }
};

namespace {

int max_word_length(const std::vector<Vec>& vs) {
    std::size_t m = 0;
    for (const auto& v : vs)
        for (const auto& [w, c] : v) m = std::max(m, w.size());
    return static_cast<int>(m);
}

TwistedFamily assemble(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau, ActionKind action,
                       const TruncationPolicy& policy, const Pairing* pairing) {
    auto st = std::make_shared<TwistedState>();
    st->c = std::make_shared<FiniteCoalgebra>(c);
    st->h = std::make_shared<HopfAlgebra>(h);
    st->tau = tau.tau.values;
    st->action = action;
    st->c_shifted = c.shifted();
    st->algebra = pairing != nullptr;
    if (pairing) {
        st->pairing_degree = pairing->degree;
        st->c_algebra = pair_to_algebra(c, *pairing);
    }

    const int arity = std::max(2, c.max_arity());
    const int growth = std::max((arity - 1) * max_word_length(st->tau),
                                std::max(0, max_word_length(h.differential_on_generators()) - 1));
    st->max_length = policy.max_length + 2 * growth;
    st->max_weight = st->algebra ? (2 * arity - 1) * policy.max_degree + arity
                                 : policy.max_degree + 2 * (arity - 2);
    for (int x = 0; x < c.space.dim(); ++x)
        for (int k = 0; k + c.space.degrees[x] <= st->max_weight; ++k)
            for (const Word& hw : h.basis_of_degree(k, st->max_length)) {
                st->index[{x, hw}] = static_cast<int>(st->letters.size());
                st->letters.emplace_back(x, hw);
            }

    TwistedFamily f;
    f.c = st->c;
    f.h = st->h;
    f.tau = tau;
    f.action = action;
    f.policy = policy;
    f.pairing_degree = st->pairing_degree;
    f.state = st;
    StructureFamily& s = f.family;
    if (st->algebra) {
        s.kind = StructureKind::ainf_algebra;
        s.max_arity = std::max(1, st->c_algebra.max_arity());
    } else {
        s.kind = StructureKind::ainf_coalgebra;
        s.max_arity = c.max_arity();
    }
    for (int i = 0; i < static_cast<int>(st->letters.size()); ++i) {
        const int d = st->letter_degree(i);
        s.names.push_back(f.name(i));
        s.deg.push_back(st->algebra ? d + 1 : d - 1);
        s.weight.push_back(c.space.degrees[st->letters[i].first] + h.degree(st->letters[i].second));
        s.length.push_back(static_cast<int>(st->letters[i].second.size()));
    }
    if (st->algebra)
        s.product = [st](const Word& w) { return st->product(w); };
    else
        s.coproduct = [st](int x) { return st->coproduct(x); };
    return f;
}

void require_compatible(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau, ActionKind action,
                        const TruncationPolicy& policy) {
    if (static_cast<int>(tau.tau.values.size()) != c.space.dim())
        throw Error("twisting cochain does not match the coalgebra");
    if (!tau.primitive_image)
        throw Error("the " + to_string(action) + " action needs a twisting cochain with primitive values");
    const std::string hd = h.check_differential(policy);
    if (!hd.empty()) throw Error("Hopf algebra differential: " + hd);
    if (!tau.tau.is_zero()) {
        const auto mc = check_maurer_cartan(c, h, tau, policy);
        if (!mc.pass) throw Error("twisting cochain fails the Maurer-Cartan equation: " + mc.describe(c, h));
    }
}

}  // namespace

const TensorLetter& TwistedFamily::letter(int i) const { return state->letters.at(i); }

std::optional<int> TwistedFamily::find(int x, const Word& hw) const {
    auto it = state->index.find({x, hw});
    if (it == state->index.end()) return std::nullopt;
    return it->second;
}

int TwistedFamily::index(int x, const Word& hw) const { return state->lookup(x, hw); }

int TwistedFamily::degree(int i) const { return state->letter_degree(i); }

std::vector<int> TwistedFamily::basis(int max_weight, int max_length) const {
    return family.letters_within(max_weight, max_length);
}

Vec TwistedFamily::differential(int i) const { return state->differential(i); }

Vec TwistedFamily::unshifted_product(int i, int j) const {
    if (!is_algebra()) throw Error("unshifted_product: family is not an algebra");
    const auto& [x, hx] = letter(i);
    const auto& [y, hy] = letter(j);
    const Vec m = state->c_algebra.component(2).apply(Word{x, y});
    const Vec hp = h->mul(Vec(hx), Vec(hy));
    const int sign = sign_of(static_cast<long long>(h->degree(hx)) * state->c_degree(y));
    Vec out;
    for (const auto& [xo, c1] : m)
        for (const auto& [ho, c2] : hp) out.add(Word{index(xo.at(0), ho)}, c1 * c2 * sign);
    return out;
}

std::string TwistedFamily::name(int i) const {
    const auto& [x, hw] = letter(i);
    return c->space.names[x] + "⊗" + h->format(hw);
}

std::string TwistedFamily::format(const Vec& v) const {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [w, coef] : v) {
        if (!s.empty()) s += " + ";
        if (coef != 1) s += "(" + format_rational(coef) + ") ";
        for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " | " : "") + name(w[k]);
    }
    return s;
}

TwistedFamily untwisted_tensor_coalgebra(const FiniteCoalgebra& c, const HopfAlgebra& h,
                                         const TruncationPolicy& policy) {
    return assemble(c, h, zero_cochain(c), ActionKind::left_mult, policy, nullptr);
}

TwistedFamily build_twisted_coalgebra(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau,
                                      ActionKind action, const TruncationPolicy& policy) {
    require_compatible(c, h, tau, action, policy);
    return assemble(c, h, tau, action, policy, nullptr);
}

TwistedFamily build_twisted_algebra(const FiniteCoalgebra& c, const Pairing& p, const HopfAlgebra& h,
                                    const TwistingCochain& tau, ActionKind action, const TruncationPolicy& policy) {
    const DefectReport cyc = check_cyclic(c, p);
    if (!cyc.ok()) throw Error("coalgebra is not cyclic for the pairing: " + cyc.summary(c.shifted()));
    require_compatible(c, h, tau, action, policy);
    return assemble(c, h, tau, action, policy, &p);
}

std::vector<Defect> derivation_defects(const TwistedFamily& f, const TruncationPolicy& policy) {
    if (!f.is_algebra()) throw Error("derivation_defects: family is not an algebra");
    auto d = [&](const Vec& v) {
        Vec out;
        for (const auto& [w, c] : v) out.add(f.differential(w.at(0)), c);
        return out;
    };
    auto mul = [&](const Vec& u, const Vec& v) {
        Vec out;
        for (const auto& [a, c1] : u)
            for (const auto& [b, c2] : v) out.add(f.unshifted_product(a.at(0), b.at(0)), c1 * c2);
        return out;
    };
    std::vector<Defect> out;
    const auto letters = f.basis(policy.max_degree, policy.max_length);
    for (int i : letters)
        for (int j : letters) {
            if (f.family.length[i] + f.family.length[j] > policy.max_length) continue;
            const Vec x(Word{i}), y(Word{j});
            Vec defect = d(mul(x, y)) - mul(d(x), y) - mul(x, d(y)) * sign_of(f.degree(i));
            if (!defect.empty()) out.push_back({2, {i, j}, defect});
        }
    return out;
}

std::vector<Vec> primitive_basis(const HopfAlgebra& h, const TruncationPolicy& policy) {
    std::vector<Vec> out;
    if (h.is_exterior()) {
        for (int g = 0; g < h.generators(); ++g)
            if (h.deg()[g] <= policy.max_degree) out.emplace_back(Word{g});
        return out;
    }
    for (const auto& l : lyndon_basis(h.deg(), policy)) {
        const Vec v = lie_to_tensor(*l, h.deg());
        if (!v.empty()) out.push_back(v);
    }
    return out;
}

LinfRestriction restrict_linf_to_primitives(const TwistedFamily& f, const TruncationPolicy& policy) {
    if (!f.is_algebra()) throw Error("restrict_linf_to_primitives: family is not an algebra");
    LinfRestriction r;
    r.linf = symmetrize_to_linf(f.family);
    const HopfAlgebra& h = *f.h;

    struct Item {
        Vec element;
        int length;
    };
    std::vector<Item> items;
    for (const Vec& p : primitive_basis(h, policy)) {
        const Word& first = p.begin()->first;
        const int len = static_cast<int>(first.size());
        for (int x = 0; x < f.c->space.dim(); ++x) {
            if (f.c->space.degrees[x] + h.degree(first) > policy.max_degree) continue;
            Vec e;
            for (const auto& [w, c] : p) e.add(Word{f.index(x, w)}, c);
            items.push_back({e, len});
        }
    }

    const int top = r.linf.max_arity;
    std::vector<int> pick;
    auto evaluate = [&]() {
        Vec inputs(Word{}, 1);
        for (int k : pick) inputs = concat(inputs, items[k].element);
        Vec value;
        for (const auto& [w, c] : inputs) value.add(r.linf.product(w), c);
        std::map<int, Vec> legs;
        for (const auto& [w, c] : value) legs[f.letter(w.at(0)).first].add(Word(f.letter(w[0]).second), c);
        ++r.checked;
        for (const auto& [x, leg] : legs)
            if (!h.is_primitive(h.normalize(leg))) {
                Word in;
                for (int k : pick) in.push_back(items[k].element.begin()->first.at(0));
                r.closure_defects.push_back({static_cast<int>(pick.size()), in, value});
                return;
            }
    };
    std::function<void(int, int)> rec = [&](int from, int len) {
        if (!pick.empty()) evaluate();
        if (static_cast<int>(pick.size()) == top) return;
        for (int k = from; k < static_cast<int>(items.size()); ++k) {
            if (len + items[k].length > policy.max_length) continue;
            pick.push_back(k);
            rec(k, len + items[k].length);
            pick.pop_back();
        }
    };
    rec(0, 0);
    return r;
}

}  // namespace tw
