#include "tw/structures.hpp"

#include <algorithm>
#include <numeric>

namespace tw {

std::string to_string(StructureKind k) {
    switch (k) {
        case StructureKind::ainf_coalgebra: return "A-infinity coalgebra";
        case StructureKind::cinf_coalgebra: return "C-infinity coalgebra";
        case StructureKind::strict_coalgebra: return "strict dg coalgebra";
        case StructureKind::ainf_algebra: return "A-infinity algebra";
        case StructureKind::cinf_algebra: return "C-infinity algebra";
        case StructureKind::strict_algebra: return "strict dg algebra";
        case StructureKind::linf_algebra: return "L-infinity algebra";
    }
    return "?";
}

bool is_coalgebra_kind(StructureKind k) {
    return k == StructureKind::ainf_coalgebra || k == StructureKind::cinf_coalgebra ||
           k == StructureKind::strict_coalgebra;
}

namespace {

/** Calls fn on every word of n letters drawn from the list, optionally nondecreasing in list order. */
void for_each_word(const std::vector<int>& letters, int n, bool nondecreasing,
                   const std::function<bool(const Word&)>& prune, const std::function<void(const Word&)>& fn) {
    Word cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == n) {
            fn(cur);
            return;
        }
        for (std::size_t i = nondecreasing ? start : 0; i < letters.size(); ++i) {
            cur.push_back(letters[i]);
            if (!prune || !prune(cur)) rec(i);
            cur.pop_back();
        }
    };
    rec(0);
}

Vec length_part(const Vec& v, int n) {
    Vec out;
    for (const auto& [w, c] : v)
        if (static_cast<int>(w.size()) == n) out.add(w, c);
    return out;
}

std::map<int, Vec> split_by_length(const Vec& v) {
    std::map<int, Vec> out;
    for (const auto& [w, c] : v) out[static_cast<int>(w.size())].add(w, c);
    return out;
}

std::vector<int> degrees_of(const Word& w, const std::vector<int>& deg) {
    std::vector<int> out;
    for (int x : w) out.push_back(deg[x]);
    return out;
}

/** All words of length n over the space whose degrees sum to the target. */
std::vector<Word> words_with_degree(const std::vector<int>& deg, int n, int target) {
    std::vector<Word> out;
    std::vector<int> all(deg.size());
    std::iota(all.begin(), all.end(), 0);
    for_each_word(all, n, false, nullptr, [&](const Word& w) {
        if (word_degree(w, deg) == target) out.push_back(w);
    });
    return out;
}

/** Contracts the first n legs of an (n+1)-tensor against inputs through the pairing. */
std::map<Word, Vec> dualize_tensor(const Lin<Word>& tensor, const Pairing& p, const std::vector<int>& deg, int n) {
    const int dim = static_cast<int>(deg.size());
    std::map<Word, Vec> values;
    for (const auto& [t, a] : tensor) {
        std::vector<std::vector<int>> cand(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < dim; ++j)
                if (p(j, t[i]) != 0) cand[i].push_back(j);
        Word x(n);
        std::function<void(int, Q)> rec = [&](int i, Q coef) {
            if (i == n) {
                // reorder x_1..x_n t_1..t_{n+1} into x_1 t_1 ... x_n t_n t_{n+1}
                std::vector<int> degs, perm;
                // <x, -> is a functional of degree |x| - |pairing|
                for (int k = 0; k < n; ++k) degs.push_back(deg[x[k]] - p.degree);
                for (int k = 0; k <= n; ++k) degs.push_back(deg[t[k]]);
                for (int k = 0; k < n; ++k) {
                    perm.push_back(k);
                    perm.push_back(n + k);
                }
                perm.push_back(2 * n);
                values[x].add(Word{t[n]}, coef * reorder_sign(perm, degs));
                return;
            }
            for (int j : cand[i]) {
                x[i] = j;
                rec(i + 1, coef * p(j, t[i]));
            }
        };
        rec(0, a);
    }
    return values;
}

}  // namespace

std::vector<int> StructureFamily::letters_within(int max_weight, int max_length) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        const int len = length.empty() ? 0 : length[i];
        if (weight[i] <= max_weight && len <= max_length) out.push_back(i);
    }
    return out;
}

GradedMap StructureFamily::component(int arity, int max_weight, int max_length) const {
    const auto letters = letters_within(max_weight, max_length);
    if (is_coalgebra()) {
        GradedMap g(deg, deg, 1, arity, -1);
        for (int x : letters) g.set({x}, length_part(coproduct(x), arity));
        return g;
    }
    GradedMap g(deg, deg, arity, 1, -1);
    for_each_word(letters, arity, false, nullptr, [&](const Word& w) { g.set(w, product(w)); });
    return g;
}

std::string StructureFamily::format(const Vec& v) const {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : v) {
        if (!s.empty()) s += " + ";
        s += "(" + c.get_str() + ")";
        for (int x : w) s += " " + names.at(x);
    }
    return s;
}

FiniteCoalgebra::FiniteCoalgebra(GradedSpace s, std::map<int, GradedMap> m, StructureKind k)
    : space(std::move(s)), maps(std::move(m)), kind(k) {
    if (!is_coalgebra_kind(kind)) throw Error("FiniteCoalgebra: kind must be a coalgebra kind");
    for (const auto& [n, f] : maps) {
        if (n < 1) throw Error("coalgebra map of arity " + std::to_string(n) + " is not allowed");
        if (f.src_deg != space.degrees || f.dst_deg != space.degrees || f.arity_in != 1 || f.arity_out != n ||
            f.degree != n - 2)
            throw Error("coalgebra map c_" + std::to_string(n) + " must send " + space.name + " to its " +
                        std::to_string(n) + "-fold tensor power with degree " + std::to_string(n - 2));
    }
    if (kind == StructureKind::strict_coalgebra)
        for (const auto& [n, f] : maps)
            if (n > 2 && !f.entries.empty()) throw Error("strict coalgebra has a nonzero map of arity " + std::to_string(n));
}

GradedMap FiniteCoalgebra::component(int arity) const {
    auto it = maps.find(arity);
    if (it != maps.end()) return it->second;
    return GradedMap(space.degrees, space.degrees, 1, arity, arity - 2);
}

GradedMap FiniteCoalgebra::shifted_component(int arity) const {
    GradedMap g = shift(component(arity), -1);
    for (auto& [w, v] : g.entries) v *= -1;
    return g;
}

StructureFamily FiniteCoalgebra::shifted() const {
    StructureFamily s;
    s.kind = kind;
    s.names = space.names;
    s.deg = space.shifted(-1).degrees;
    s.weight = space.degrees;
    s.length.assign(space.dim(), 0);
    s.max_arity = max_arity();
    auto table = std::make_shared<std::vector<Vec>>(space.dim());
    for (const auto& [n, f] : maps) {
        GradedMap g = shifted_component(n);
        for (int i = 0; i < space.dim(); ++i) (*table)[i] += g.apply(Word{i});
    }
    s.coproduct = [table](int x) { return table->at(x); };
    return s;
}

FiniteAlgebra::FiniteAlgebra(GradedSpace s, std::map<int, GradedMap> m, StructureKind k)
    : space(std::move(s)), maps(std::move(m)), kind(k) {
    if (is_coalgebra_kind(kind) || kind == StructureKind::linf_algebra)
        throw Error("FiniteAlgebra: kind must be an associative algebra kind");
    for (const auto& [n, f] : maps) {
        if (n < 1) throw Error("algebra map of arity " + std::to_string(n) + " is not allowed");
        if (f.src_deg != space.degrees || f.dst_deg != space.degrees || f.arity_in != n || f.arity_out != 1 ||
            f.degree != n - 2)
            throw Error("algebra map m_" + std::to_string(n) + " has the wrong shape or degree");
    }
}

GradedMap FiniteAlgebra::component(int arity) const {
    auto it = maps.find(arity);
    if (it != maps.end()) return it->second;
    return GradedMap(space.degrees, space.degrees, arity, 1, arity - 2);
}

GradedMap FiniteAlgebra::shifted_component(int arity) const { return shift(component(arity), 1); }

StructureFamily FiniteAlgebra::shifted() const {
    StructureFamily s;
    s.kind = kind;
    s.names = space.names;
    s.deg = space.shifted(1).degrees;
    s.weight = space.degrees;
    s.length.assign(space.dim(), 0);
    s.max_arity = max_arity();
    auto table = std::make_shared<std::map<int, GradedMap>>();
    for (const auto& [n, f] : maps) (*table)[n] = shifted_component(n);
    s.product = [table](const Word& w) {
        auto it = table->find(static_cast<int>(w.size()));
        return it == table->end() ? Vec{} : it->second.apply(w);
    };
    return s;
}

std::string DefectReport::summary(const StructureFamily& s, std::size_t limit) const {
    if (!error.empty()) return error;
    if (defects.empty()) return "no defects";
    std::string out = std::to_string(defects.size()) + " defect(s)";
    for (std::size_t i = 0; i < defects.size() && i < limit; ++i) {
        out += "; arity " + std::to_string(defects[i].arity) + " on [";
        for (std::size_t j = 0; j < defects[i].input.size(); ++j)
            out += (j ? " " : "") + s.names.at(defects[i].input[j]);
        out += "] = " + s.format(defects[i].value);
    }
    return out;
}

namespace {

DefectReport check_coalgebra(const StructureFamily& s, const TruncationPolicy& policy) {
    DefectReport r;
    for (int x : s.letters_within(policy.max_degree, policy.max_length)) {
        const Vec d2 = extend_derivation(s.coproduct(x), -1, s.coproduct, s.deg);
        for (auto& [n, v] : split_by_length(d2)) r.defects.push_back({n, {x}, v});
    }
    return r;
}

DefectReport check_algebra(const StructureFamily& s, const TruncationPolicy& policy) {
    DefectReport r;
    const auto letters = s.letters_within(policy.max_degree, policy.max_length);
    auto prune = [&](const Word& w) {
        int len = 0;
        for (int x : w) len += s.length[x];
        return len > policy.max_length;
    };
    for (int n = 1; n <= 2 * s.max_arity - 1; ++n) {
        for_each_word(letters, n, false, prune, [&](const Word& w) {
            Vec total;
            long long passed = 0;
            for (int j = 0; j < n; ++j) {
                for (int k = 1; k <= s.max_arity && j + k <= n; ++k) {
                    if (n - k + 1 > s.max_arity) continue;
                    const Vec inner = s.product(Word(w.begin() + j, w.begin() + j + k));
                    if (inner.empty()) continue;
                    const int sign = sign_of(passed);
                    for (const auto& [mid, c] : inner) {
                        Word outer(w.begin(), w.begin() + j);
                        outer.push_back(mid.at(0));
                        outer.insert(outer.end(), w.begin() + j + k, w.end());
                        total.add(s.product(outer), c * sign);
                    }
                }
                passed += s.deg[w[j]];
            }
            if (!total.empty()) r.defects.push_back({n, w, total});
        });
    }
    return r;
}

DefectReport check_linf(const StructureFamily& s, const TruncationPolicy& policy) {
    DefectReport r;
    const auto letters = s.letters_within(policy.max_degree, policy.max_length);
    for (int n = 1; n <= 2 * s.max_arity - 1; ++n) {
        for_each_word(letters, n, true, nullptr, [&](const Word& w) {
            Vec total;
            const auto degs = degrees_of(w, s.deg);
            for (int i = 1; i <= n; ++i) {
                const int j = n - i + 1;
                if (i > s.max_arity || j > s.max_arity) continue;
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    if (__builtin_popcount(mask) != i) continue;
                    std::vector<int> perm;
                    for (int p = 0; p < n; ++p)
                        if (mask & (1u << p)) perm.push_back(p);
                    for (int p = 0; p < n; ++p)
                        if (!(mask & (1u << p))) perm.push_back(p);
                    const int sign = reorder_sign(perm, degs);
                    Word first;
                    for (int p = 0; p < i; ++p) first.push_back(w[perm[p]]);
                    for (const auto& [mid, c] : s.product(first)) {
                        Word outer{mid.at(0)};
                        for (int p = i; p < n; ++p) outer.push_back(w[perm[p]]);
                        total.add(s.product(outer), c * sign);
                    }
                }
            }
            if (!total.empty()) r.defects.push_back({n, w, total});
        });
    }
    return r;
}

}  // namespace

DefectReport check_ainf(const StructureFamily& s, const TruncationPolicy& policy) {
    try {
        if (s.is_coalgebra()) {
            if (!s.coproduct) throw Error("coalgebra family has no structure maps");
            return check_coalgebra(s, policy);
        }
        if (!s.product) throw Error("algebra family has no structure maps");
        if (s.kind == StructureKind::linf_algebra) return check_linf(s, policy);
        return check_algebra(s, policy);
    } catch (const Error& e) {
        DefectReport r;
        r.error = e.what();
        return r;
    }
}

DefectReport check_cinfty(const StructureFamily& s, const TruncationPolicy& policy) {
    DefectReport r;
    const auto letters = s.letters_within(policy.max_degree, policy.max_length);
    if (s.is_coalgebra()) {
        for (int x : letters)
            for (auto& [n, v] : split_by_length(s.coproduct(x))) {
                if (n < 2) continue;
                SplitVec red = reduced_unshuffle(v, s.deg);
                if (!red.empty()) r.defects.push_back({n, {x}, v});
            }
        return r;
    }
    for (int n = 2; n <= s.max_arity; ++n)
        for_each_word(letters, n, false, nullptr, [&](const Word& w) {
            for (int p = 1; p < n; ++p) {
                Vec sh = shuffle(Word(w.begin(), w.begin() + p), Word(w.begin() + p, w.end()), s.deg);
                Vec total;
                for (const auto& [u, c] : sh) total.add(s.product(u), c);
                if (!total.empty()) r.defects.push_back({n, w, total});
            }
        });
    return r;
}

StructureFamily symmetrize_to_linf(const StructureFamily& a) {
    if (a.is_coalgebra() || a.kind == StructureKind::linf_algebra)
        throw Error("symmetrize_to_linf: input must be an A-infinity algebra");
    StructureFamily l = a;
    l.kind = StructureKind::linf_algebra;
    auto product = a.product;
    auto deg = std::make_shared<std::vector<int>>(a.deg);
    l.product = [product, deg](const Word& w) {
        const int n = static_cast<int>(w.size());
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        const auto degs = degrees_of(w, *deg);
        Vec out;
        do {
            Word ws;
            for (int i : p) ws.push_back(w[i]);
            out.add(product(ws), reorder_sign(p, degs));
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    };
    return l;
}

GradedMap symmetrize_unshifted(const GradedMap& m) {
    if (m.arity_out != 1) throw Error("symmetrize_unshifted: map must have a single output");
    GradedMap l(m.src_deg, m.dst_deg, m.arity_in, 1, m.degree);
    std::vector<int> all(m.src_deg.size());
    std::iota(all.begin(), all.end(), 0);
    for_each_word(all, m.arity_in, false, nullptr, [&](const Word& w) {
        std::vector<int> p(w.size());
        std::iota(p.begin(), p.end(), 0);
        const auto degs = degrees_of(w, m.src_deg);
        Vec out;
        do {
            Word ws;
            for (int i : p) ws.push_back(w[i]);
            out.add(m.apply(ws), reorder_sign(p, degs) * permutation_parity_sign(p));
        } while (std::next_permutation(p.begin(), p.end()));
        l.set(w, out);
    });
    return l;
}

Pairing::Pairing(std::vector<int> degrees, Matrix m) : deg(std::move(degrees)), form(std::move(m)) {
    const int n = static_cast<int>(deg.size());
    if (form.rows() != n || form.cols() != n) throw Error("pairing matrix does not match the basis size");
    if (rank(form) != n) throw Error("pairing must be non-degenerate");
    bool found = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (form(i, j) == 0) continue;
            if (!found) {
                degree = deg[i] + deg[j];
                found = true;
            } else if (deg[i] + deg[j] != degree) {
                throw Error("pairing entries have inconsistent total degree");
            }
            if (form(j, i) != form(i, j) * sign_of(static_cast<long long>(deg[i]) * deg[j]))
                throw Error("pairing must be graded-symmetric");
        }
}

Vec Pairing::dual(int i) const {
    std::vector<Q> e(deg.size());
    e[i] = 1;
    auto x = solve(form, e);
    Vec out;
    for (std::size_t k = 0; k < x->size(); ++k) out.add(Word{static_cast<int>(k)}, (*x)[k]);
    return out;
}

Lin<Word> coalgebra_tensor(const FiniteCoalgebra& c, const Pairing& p, int arity) {
    Lin<Word> t;
    const GradedMap f = c.component(arity);
    for (int i = 0; i < c.space.dim(); ++i) {
        const Vec img = f.apply(Word{i});
        if (img.empty()) continue;
        for (const auto& [d, a] : p.dual(i))
            for (const auto& [w, b] : img) {
                Word full{d[0]};
                full.insert(full.end(), w.begin(), w.end());
                t.add(full, a * b);
            }
    }
    return t;
}

DefectReport check_cyclic(const FiniteCoalgebra& c, const Pairing& p) {
    if (static_cast<int>(p.deg.size()) != c.space.dim() || p.deg != c.space.degrees)
        throw Error("pairing basis does not match the coalgebra");
    DefectReport r;
    for (const auto& [n, f] : c.maps) {
        const Lin<Word> t = coalgebra_tensor(c, p, n);
        Lin<Word> rot;
        for (const auto& [w, a] : t) {
            Word v{w.back()};
            v.insert(v.end(), w.begin(), w.end() - 1);
            const int last = c.space.degrees[w.back()];
            const int rest = word_degree(Word(w.begin(), w.end() - 1), c.space.degrees);
            rot.add(v, a * sign_of(static_cast<long long>(last) * rest));
        }
        const Lin<Word> diff = rot - t;
        if (!diff.empty()) r.defects.push_back({n, {}, diff});
    }
    return r;
}

FiniteAlgebra pair_to_algebra(const FiniteCoalgebra& c, const Pairing& p) {
    if (!check_cyclic(c, p).ok()) throw Error("pair_to_algebra: coalgebra is not cyclic for this pairing");
    const int d = p.degree;
    GradedSpace regraded = c.space.shifted(-d);
    std::map<int, GradedMap> maps;
    for (const auto& [n, f] : c.maps) {
        GradedMap m(regraded.degrees, regraded.degrees, n, 1, n - 2);
        const auto values = dualize_tensor(coalgebra_tensor(c, p, n), p, c.space.degrees, n);
        for (const auto& [x, v] : values) m.set(x, v);
        maps[n] = std::move(m);
    }
    StructureKind kind = c.kind == StructureKind::strict_coalgebra ? StructureKind::strict_algebra
                         : c.kind == StructureKind::cinf_coalgebra ? StructureKind::cinf_algebra
                                                                   : StructureKind::ainf_algebra;
    return FiniteAlgebra(regraded, std::move(maps), kind);
}

FiniteCoalgebra algebra_to_coalgebra(const FiniteAlgebra& a, const Pairing& p, const GradedSpace& original) {
    const int dim = original.dim();
    std::map<int, GradedMap> out;
    for (const auto& [n, m] : a.maps) {
        // unknowns: coefficient of word w in c_n(b)
        std::vector<std::pair<int, Word>> unknowns;
        for (int b = 0; b < dim; ++b)
            for (auto& w : words_with_degree(original.degrees, n, original.degrees[b] + n - 2))
                unknowns.emplace_back(b, w);
        std::vector<int> all(a.space.dim());
        std::iota(all.begin(), all.end(), 0);
        std::vector<std::pair<Word, int>> rows;
        for_each_word(all, n, false, nullptr, [&](const Word& x) {
            for (int y = 0; y < dim; ++y) rows.emplace_back(x, y);
        });
        Matrix mat(static_cast<int>(rows.size()), static_cast<int>(unknowns.size()));
        std::map<std::pair<Word, int>, int> row_of;
        for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            GradedMap single(original.degrees, original.degrees, 1, n, n - 2);
            single.set(Word{unknowns[u].first}, Vec(unknowns[u].second));
            FiniteCoalgebra probe(original, {{n, single}}, StructureKind::ainf_coalgebra);
            for (const auto& [x, v] : dualize_tensor(coalgebra_tensor(probe, p, n), p, original.degrees, n))
                for (const auto& [y, cf] : v) mat(row_of.at({x, y[0]}), static_cast<int>(u)) += cf;
        }
        std::vector<Q> rhs(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = m.apply(rows[r].first).coeff(Word{rows[r].second});
        auto sol = solve(mat, rhs);
        if (!sol) throw Error("algebra_to_coalgebra: no coalgebra dualizes to the given algebra");
        GradedMap c(original.degrees, original.degrees, 1, n, n - 2);
        std::map<int, Vec> vals;
        for (std::size_t u = 0; u < unknowns.size(); ++u) vals[unknowns[u].first].add(unknowns[u].second, (*sol)[u]);
        for (auto& [b, v] : vals) c.set(Word{b}, v);
        out[n] = std::move(c);
    }
    StructureKind kind = a.kind == StructureKind::strict_algebra ? StructureKind::strict_coalgebra
                         : a.kind == StructureKind::cinf_algebra ? StructureKind::cinf_coalgebra
                                                                 : StructureKind::ainf_coalgebra;
    return FiniteCoalgebra(original, std::move(out), kind);
}

bool Cochain::is_zero() const {
    for (const auto& v : values)
        if (!v.empty()) return false;
    return true;
}

HomConvolution::HomConvolution(const FiniteCoalgebra& c, const HopfAlgebra& h, ConvolutionMode mode)
    : c_(&c), h_(&h), mode_(mode) {}

Cochain HomConvolution::m(const std::vector<Cochain>& fs) const {
    const int n = static_cast<int>(fs.size());
    if (n == 0) throw Error("convolution: needs at least one argument");
    const int dim = c_->space.dim();
    for (const auto& f : fs)
        if (static_cast<int>(f.values.size()) != dim) throw Error("convolution: cochain has the wrong number of values");
    Cochain out;
    out.values.assign(dim, Vec{});
    if (n == 1) {
        const Cochain& f = fs[0];
        out.degree = f.degree - 1;
        const GradedMap dc = c_->component(1);
        for (int i = 0; i < dim; ++i) {
            out.values[i] += h_->d(f.values[i]);
            for (const auto& [w, c] : dc.apply(Word{i}))
                out.values[i].add(f.values[w[0]], -c * sign_of(f.degree));
        }
        return out;
    }
    out.degree = n - 2;
    for (const auto& f : fs) out.degree += f.degree;
    const GradedMap cn = c_->component(n);
    const auto& deg = c_->space.degrees;
    for (int i = 0; i < dim; ++i)
        for (const auto& [w, c] : cn.apply(Word{i})) {
            long long e = 0, passed = 0;
            Vec prod(Word{}, 1);
            for (int k = 0; k < n && !prod.empty(); ++k) {
                e += static_cast<long long>(fs[k].degree) * passed;
                passed += deg[w[k]];
                prod = h_->mul(prod, fs[k].values[w[k]]);
            }
            out.values[i].add(prod, c * sign_of(e));
        }
    return out;
}

Cochain HomConvolution::l(const std::vector<Cochain>& fs) const {
    const int n = static_cast<int>(fs.size());
    if (n == 1) return m(fs);
    std::vector<int> degs, p(n);
    for (const auto& f : fs) degs.push_back(f.degree);
    std::iota(p.begin(), p.end(), 0);
    Cochain out;
    bool first = true;
    do {
        std::vector<Cochain> perm;
        for (int i : p) perm.push_back(fs[i]);
        Cochain term = m(perm);
        const int xi = reorder_sign(p, degs) * permutation_parity_sign(p);
        if (first) {
            out.degree = term.degree;
            out.values.assign(term.values.size(), Vec{});
            first = false;
        }
        for (std::size_t i = 0; i < term.values.size(); ++i) out.values[i].add(term.values[i], xi);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace tw
