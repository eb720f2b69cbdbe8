#include "tw/hopf.hpp"

#include <algorithm>
#include <numeric>

namespace tw {

HopfAlgebra HopfAlgebra::tensor(std::vector<std::string> names, std::vector<int> deg, std::vector<Vec> d_gen) {
    if (names.size() != deg.size()) throw Error("Hopf algebra: names and degrees differ in length");
    for (int d : deg)
        if (d <= 0) throw Error("Hopf algebra: generators must have positive degree");
    if (!d_gen.empty() && d_gen.size() != deg.size())
        throw Error("Hopf algebra: differential must be given on every generator");
    HopfAlgebra h;
    h.names_ = std::move(names);
    h.deg_ = std::move(deg);
    h.d_gen_ = std::move(d_gen);
    for (std::size_t i = 0; i < h.d_gen_.size(); ++i)
        for (const auto& [w, c] : h.d_gen_[i])
            if (h.degree(w) != h.deg_[i] - 1)
                throw Error("Hopf algebra: d(" + h.names_[i] + ") contains " + h.format(w) + " of the wrong degree");
    return h;
}

HopfAlgebra HopfAlgebra::exterior(std::vector<std::string> names, std::vector<int> deg) {
    if (names.size() != deg.size()) throw Error("Hopf algebra: names and degrees differ in length");
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] <= 0 || deg[i] % 2 == 0)
            throw Error("exterior Hopf algebra: generator " + names[i] + " must have positive odd degree");
    HopfAlgebra h;
    h.names_ = std::move(names);
    h.deg_ = std::move(deg);
    h.exterior_ = true;
    return h;
}

bool HopfAlgebra::has_differential() const {
    for (const auto& v : d_gen_)
        if (!v.empty()) return true;
    return false;
}

Vec HopfAlgebra::normalize(const Vec& v) const {
    if (!exterior_) return v;
    Vec out;
    for (const auto& [w, c] : v) {
        std::vector<int> p(w.size());
        std::iota(p.begin(), p.end(), 0);
        std::stable_sort(p.begin(), p.end(), [&](int i, int j) { return w[i] < w[j]; });
        Word s;
        bool repeat = false;
        for (int i : p) {
            if (!s.empty() && s.back() == w[i]) repeat = true;
            s.push_back(w[i]);
        }
        if (repeat) continue;
        std::vector<int> degs;
        for (int x : w) degs.push_back(deg_[x]);
        out.add(s, c * reorder_sign(p, degs));
    }
    return out;
}

Vec HopfAlgebra::mul(const Vec& u, const Vec& v) const { return normalize(concat(u, v)); }

Vec HopfAlgebra::bracket(const Vec& u, const Vec& v) const { return normalize(tw::bracket(u, v, deg_)); }

SplitVec HopfAlgebra::coproduct(const Vec& v) const {
    SplitVec out;
    for (const auto& [w, c] : v) out.add(unshuffle(w, deg_), c);
    return out;
}

Vec HopfAlgebra::antipode(const Vec& v) const {
    Vec out;
    for (const auto& [w, c] : v) out.add(tw::antipode(w, deg_), c);
    return normalize(out);
}

Vec HopfAlgebra::d(const Vec& v) const {
    if (!has_differential()) return {};
    return normalize(extend_derivation(v, -1, [&](int x) { return d_gen_[x]; }, deg_));
}

bool HopfAlgebra::is_primitive(const Vec& v) const {
    if (v.coeff(Word{}) != 0) return false;
    return reduced_unshuffle(v, deg_).empty();
}

std::vector<Word> HopfAlgebra::basis_of_degree(int degree, int max_length) const {
    auto words = words_of_degree(deg_, degree, max_length);
    if (!exterior_) return words;
    std::vector<Word> out;
    for (auto& w : words)
        if (std::adjacent_find(w.begin(), w.end(), [](int a, int b) { return a >= b; }) == w.end())
            out.push_back(std::move(w));
    return out;
}

std::string HopfAlgebra::check_differential(const TruncationPolicy& policy) const {
    if (!has_differential()) return "";
    for (int i = 0; i < generators(); ++i) {
        if (!is_primitive(d_gen_[i]))
            return "d(" + names_[i] + ") = " + format(d_gen_[i]) + " is not primitive";
        Vec dd = d(d_gen_[i]);
        if (!dd.empty() && deg_[i] <= policy.max_degree)
            return "d^2(" + names_[i] + ") = " + format(dd) + " is not zero";
    }
    return "";
}

std::string HopfAlgebra::format(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += names_.at(w[i]);
    }
    return s;
}

std::string format_rational(const Q& q) { return q.get_str(); }

std::string HopfAlgebra::format(const Vec& v) const {
    if (v.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : v) {
        Q a = c;
        if (!first) s += (a < 0 ? " - " : " + ");
        else if (a < 0) s += "-";
        if (a < 0) a = -a;
        if (a != 1) s += format_rational(a) + " ";
        s += format(w);
        first = false;
    }
    return s;
}

std::string to_string(ActionKind k) {
    switch (k) {
        case ActionKind::left_mult: return "left";
        case ActionKind::bracket: return "bracket";
        case ActionKind::conjugation: return "conjugation";
    }
    return "?";
}

ActionKind parse_action(const std::string& s) {
    if (s == "left" || s == "left_mult") return ActionKind::left_mult;
    if (s == "bracket") return ActionKind::bracket;
    if (s == "conjugation") return ActionKind::conjugation;
    throw Error("unknown action '" + s + "' (expected left, bracket or conjugation)");
}

Vec hopf_action(const HopfAlgebra& h, ActionKind kind, const Vec& a, const Vec& x) {
    switch (kind) {
        case ActionKind::left_mult: return h.mul(a, x);
        case ActionKind::bracket: return h.bracket(a, x);
        case ActionKind::conjugation: {
            Vec out;
            const auto& deg = h.deg();
            for (const auto& [split, c] : h.coproduct(a)) {
                const Vec s_right = h.antipode(Vec(split.second));
                const int dr = h.degree(split.second);
                for (const auto& [xw, d] : x) {
                    const int sign = sign_of(static_cast<long long>(dr) * word_degree(xw, deg));
                    out += h.mul(h.mul(Vec(split.first), Vec(xw)), s_right) * (c * d * sign);
                }
            }
            return out;
        }
    }
    throw Error("hopf_action: unknown action");
}

}  // namespace tw
