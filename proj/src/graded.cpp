#include "tw/graded.hpp"

#include <set>

namespace tw {

GradedSpace::GradedSpace(std::string n, std::vector<std::pair<std::string, int>> basis) : name(std::move(n)) {
    std::set<std::string> seen;
    for (auto& [el, d] : basis) {
        if (!seen.insert(el).second) throw Error("duplicate basis element '" + el + "' in space " + name);
        names.push_back(el);
        degrees.push_back(d);
    }
}

int GradedSpace::index(const std::string& element) const {
    for (int i = 0; i < dim(); ++i)
        if (names[i] == element) return i;
    throw Error("unknown basis element '" + element + "' in space " + name);
}

bool GradedSpace::contains(const std::string& element) const {
    for (const auto& n : names)
        if (n == element) return true;
    return false;
}

GradedSpace GradedSpace::shifted(int k) const {
    GradedSpace s = *this;
    for (auto& d : s.degrees) d += k;
    return s;
}

int word_degree(const Word& w, const std::vector<int>& deg) {
    int d = 0;
    for (int x : w) d += deg.at(x);
    return d;
}

int reorder_sign(const std::vector<int>& perm0, const std::vector<int>& degrees) {
    long long e = 0;
    const int n = static_cast<int>(perm0.size());
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            if (perm0[p] > perm0[q]) e += static_cast<long long>(degrees[perm0[p]]) * degrees[perm0[q]];
    return sign_of(e);
}

int permutation_parity_sign(const std::vector<int>& perm0) {
    long long inv = 0;
    for (std::size_t p = 0; p < perm0.size(); ++p)
        for (std::size_t q = p + 1; q < perm0.size(); ++q)
            if (perm0[p] > perm0[q]) ++inv;
    return sign_of(inv);
}

PermutationSigns koszul_sign(const std::vector<int>& permutation, const std::vector<int>& degrees) {
    const int n = static_cast<int>(permutation.size());
    if (static_cast<int>(degrees.size()) != n)
        throw Error("koszul_sign: permutation has length " + std::to_string(n) + " but " +
                    std::to_string(degrees.size()) + " degrees were given");
    std::vector<int> p0(n);
    std::vector<bool> hit(n, false);
    for (int i = 0; i < n; ++i) {
        int v = permutation[i] - 1;
        if (v < 0 || v >= n || hit[v]) throw Error("koszul_sign: not a bijection on {1.." + std::to_string(n) + "}");
        hit[v] = true;
        p0[i] = v;
    }
    int eps = reorder_sign(p0, degrees);
    return {eps, eps * permutation_parity_sign(p0)};
}

void GradedMap::set(const Word& in, const Vec& out) {
    if (static_cast<int>(in.size()) != arity_in) throw Error("GradedMap::set: input word has wrong arity");
    const int din = word_degree(in, src_deg);
    for (const auto& [w, c] : out) {
        if (arity_out >= 0 && static_cast<int>(w.size()) != arity_out)
            throw Error("GradedMap::set: output word has wrong arity");
        if (word_degree(w, dst_deg) != din + degree)
            throw Error("GradedMap::set: output degree " + std::to_string(word_degree(w, dst_deg)) +
                        " does not equal input degree " + std::to_string(din) + " plus map degree " +
                        std::to_string(degree));
    }
    if (out.empty())
        entries.erase(in);
    else
        entries[in] = out;
}

Vec GradedMap::apply(const Word& in) const {
    auto it = entries.find(in);
    return it == entries.end() ? Vec{} : it->second;
}

Vec GradedMap::apply(const Vec& in) const {
    Vec r;
    for (const auto& [w, c] : in) r.add(apply(w), c);
    return r;
}

bool GradedMap::operator==(const GradedMap& o) const {
    return src_deg == o.src_deg && dst_deg == o.dst_deg && arity_in == o.arity_in && arity_out == o.arity_out &&
           degree == o.degree && entries == o.entries;
}

GradedMap identity_map(const std::vector<int>& deg) {
    GradedMap f(deg, deg, 1, 1, 0);
    for (int i = 0; i < static_cast<int>(deg.size()); ++i) f.entries[{i}] = Vec({i});
    return f;
}

Lin<std::vector<Word>> apply_tensor_map(const std::vector<const GradedMap*>& factors, const Word& word) {
    std::size_t total = 0;
    for (auto* f : factors) total += f->arity_in;
    if (total != word.size())
        throw Error("apply_tensor_map: factor arities sum to " + std::to_string(total) + " but word has length " +
                    std::to_string(word.size()));

    Lin<std::vector<Word>> acc(std::vector<Word>{}, 1);
    long long passed = 0;
    std::size_t pos = 0;
    for (auto* f : factors) {
        Word chunk(word.begin() + pos, word.begin() + pos + f->arity_in);
        pos += f->arity_in;
        Vec out = f->apply(chunk);
        const int s = sign_of(static_cast<long long>(f->degree) * passed);
        Lin<std::vector<Word>> next;
        for (const auto& [parts, c] : acc)
            for (const auto& [w, d] : out) {
                auto p = parts;
                p.push_back(w);
                next.add(p, c * d * s);
            }
        acc = std::move(next);
        passed += word_degree(chunk, f->src_deg);
    }
    return acc;
}

int suspension_sign(const std::vector<int>& degrees, int k) {
    const long long q = static_cast<long long>(degrees.size());
    long long e = 0;
    for (long long i = 0; i < q; ++i) e += static_cast<long long>(degrees[i]) * (q - 1 - i);
    e *= k;
    const long long kk = static_cast<long long>(k) * (k + 1) / 2;
    e += (q * (q - 1) / 2) * kk;
    return sign_of(e);
}

GradedMap shift(const GradedMap& f, int k) {
    if (f.arity_out < 0) throw Error("shift: map must have a fixed output arity");
    std::vector<int> src = f.src_deg, dst = f.dst_deg;
    for (auto& d : src) d += k;
    for (auto& d : dst) d += k;
    GradedMap g(src, dst, f.arity_in, f.arity_out, f.degree + k * (f.arity_out - f.arity_in));
    for (const auto& [in, out] : f.entries) {
        std::vector<int> din;
        for (int x : in) din.push_back(f.src_deg[x]);
        const int sin = suspension_sign(din, k);
        Vec r;
        for (const auto& [w, c] : out) {
            std::vector<int> dw;
            for (int x : w) dw.push_back(f.dst_deg[x]);
            r.add(w, c * sin * suspension_sign(dw, k));
        }
        g.set(in, r);
    }
    return g;
}

}  // namespace tw
