#include "tw/free.hpp"

#include <algorithm>
#include <numeric>

namespace tw {

TruncationPolicy::TruncationPolicy(int d, int l) : max_degree(d), max_length(l) {
    if (d < 0) throw Error("truncation policy: max degree must be >= 0");
    if (l < 1) throw Error("truncation policy: max length must be >= 1");
}

bool TruncationPolicy::admits(const Word& w, const std::vector<int>& deg) const {
    return static_cast<int>(w.size()) <= max_length && word_degree(w, deg) <= max_degree;
}

std::vector<Split> deconcatenate(const Word& w) {
    std::vector<Split> out;
    for (std::size_t i = 0; i <= w.size(); ++i)
        out.emplace_back(Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end()));
    return out;
}

namespace {

void shuffle_rec(const Word& u, const Word& v, std::size_t i, std::size_t j, Word& cur, long long e,
                 long long restU, const std::vector<int>& deg, Vec& out) {
    // restU is the total degree of u[i..]; taking v[j] passes all remaining letters of u.
    if (i == u.size() && j == v.size()) {
        out.add(cur, sign_of(e));
        return;
    }
    if (i < u.size()) {
        cur.push_back(u[i]);
        shuffle_rec(u, v, i + 1, j, cur, e, restU - deg[u[i]], deg, out);
        cur.pop_back();
    }
    if (j < v.size()) {
        cur.push_back(v[j]);
        shuffle_rec(u, v, i, j + 1, cur, e + restU * deg[v[j]], restU, deg, out);
        cur.pop_back();
    }
}

}  // namespace

Vec shuffle(const Word& u, const Word& v, const std::vector<int>& deg) {
    Vec out;
    Word cur;
    shuffle_rec(u, v, 0, 0, cur, 0, word_degree(u, deg), deg, out);
    return out;
}

Vec shuffle(const Vec& u, const Vec& v, const std::vector<int>& deg) {
    Vec out;
    for (const auto& [a, c] : u)
        for (const auto& [b, d] : v) out.add(shuffle(a, b, deg), c * d);
    return out;
}

Vec concat(const Vec& u, const Vec& v) {
    Vec out;
    for (const auto& [a, c] : u)
        for (const auto& [b, d] : v) {
            Word w = a;
            w.insert(w.end(), b.begin(), b.end());
            out.add(w, c * d);
        }
    return out;
}

SplitVec unshuffle(const Word& w, const std::vector<int>& deg) {
    SplitVec out;
    const int n = static_cast<int>(w.size());
    if (n > 30) throw Error("unshuffle: word too long");
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        Word l, r;
        long long e = 0;
        long long rdeg = 0;  // degree of letters already sent right
        for (int i = 0; i < n; ++i) {
            if (mask & (1ul << i)) {
                l.push_back(w[i]);
                e += rdeg * deg[w[i]];
            } else {
                r.push_back(w[i]);
                rdeg += deg[w[i]];
            }
        }
        out.add({l, r}, sign_of(e));
    }
    return out;
}

SplitVec reduced_unshuffle(const Vec& v, const std::vector<int>& deg) {
    SplitVec out;
    for (const auto& [w, c] : v) {
        if (w.empty()) continue;
        for (const auto& [s, d] : unshuffle(w, deg))
            if (!s.first.empty() && !s.second.empty()) out.add(s, c * d);
    }
    return out;
}

bool is_primitive(const Vec& v, const std::vector<int>& deg) {
    if (v.coeff(Word{}) != 0) return false;
    return reduced_unshuffle(v, deg).empty();
}

Vec bracket(const Vec& u, const Vec& v, const std::vector<int>& deg) {
    Vec out;
    for (const auto& [a, c] : u)
        for (const auto& [b, d] : v) {
            Word ab = a, ba = b;
            ab.insert(ab.end(), b.begin(), b.end());
            ba.insert(ba.end(), a.begin(), a.end());
            out.add(ab, c * d);
            out.add(ba, -c * d * sign_of(static_cast<long long>(word_degree(a, deg)) * word_degree(b, deg)));
        }
    return out;
}

Vec nested_bracket(const std::vector<Vec>& xs, const std::vector<int>& degrees, const std::vector<int>& deg) {
    const int n = static_cast<int>(xs.size());
    if (n == 0) throw Error("nested_bracket: needs at least one argument");
    if (static_cast<int>(degrees.size()) != n) throw Error("nested_bracket: degree list mismatch");
    if (n == 1) return xs[0];
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Vec out;
    do {
        const int xi = reorder_sign(p, degrees) * permutation_parity_sign(p);
        Vec acc = xs[p[n - 1]];
        for (int i = n - 2; i >= 0; --i) acc = bracket(xs[p[i]], acc, deg);
        out.add(acc, xi);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Vec antipode(const Word& w, const std::vector<int>& deg) {
    const int n = static_cast<int>(w.size());
    std::vector<int> degs, rev(n);
    for (int x : w) degs.push_back(deg[x]);
    for (int i = 0; i < n; ++i) rev[i] = n - 1 - i;
    Word r(w.rbegin(), w.rend());
    return Vec(r, sign_of(n) * reorder_sign(rev, degs));
}

Vec extend_derivation(const Vec& v, int map_degree, const std::function<Vec(int)>& on_letter,
                      const std::vector<int>& deg) {
    Vec out;
    for (const auto& [w, c] : v) {
        long long passed = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            Vec img = on_letter(w[i]);
            if (!img.empty()) {
                const Q s = c * sign_of(static_cast<long long>(map_degree) * passed);
                for (const auto& [u, d] : img) {
                    Word nw(w.begin(), w.begin() + i);
                    nw.insert(nw.end(), u.begin(), u.end());
                    nw.insert(nw.end(), w.begin() + i + 1, w.end());
                    out.add(nw, s * d);
                }
            }
            passed += deg[w[i]];
        }
    }
    return out;
}

namespace {

void words_rec(const std::vector<int>& deg, int remaining, int max_length, Word& cur, std::vector<Word>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    if (static_cast<int>(cur.size()) == max_length) return;
    for (int x = 0; x < static_cast<int>(deg.size()); ++x) {
        if (deg[x] <= 0) throw Error("words_of_degree: letters must have positive degree");
        if (deg[x] > remaining) continue;
        cur.push_back(x);
        words_rec(deg, remaining - deg[x], max_length, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Word> words_of_degree(const std::vector<int>& deg, int degree, int max_length) {
    std::vector<Word> out;
    if (degree < 0) return out;
    Word cur;
    words_rec(deg, degree, max_length, cur, out);
    return out;
}

std::vector<Word> words_up_to(const std::vector<int>& deg, const TruncationPolicy& policy) {
    std::vector<Word> out;
    for (int d = 0; d <= policy.max_degree; ++d)
        for (auto& w : words_of_degree(deg, d, policy.max_length)) out.push_back(std::move(w));
    return out;
}

LieWordPtr LieWord::leaf(int letter) {
    auto w = std::make_shared<LieWord>();
    w->letter = letter;
    return w;
}

LieWordPtr LieWord::make(LieWordPtr l, LieWordPtr r) {
    auto w = std::make_shared<LieWord>();
    w->left = std::move(l);
    w->right = std::move(r);
    return w;
}

int LieWord::degree(const std::vector<int>& deg) const {
    return is_leaf() ? deg.at(letter) : left->degree(deg) + right->degree(deg);
}

int LieWord::length() const { return is_leaf() ? 1 : left->length() + right->length(); }

Word LieWord::letters() const {
    if (is_leaf()) return {letter};
    Word a = left->letters(), b = right->letters();
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string LieWord::to_string(const std::vector<std::string>& names) const {
    if (is_leaf()) return names.at(letter);
    return "[" + left->to_string(names) + "," + right->to_string(names) + "]";
}

std::vector<Word> lyndon_words(int k, int n) {
    // Duval's algorithm
    std::vector<Word> out;
    if (k <= 0 || n <= 0) return out;
    Word w{-1};
    while (!w.empty()) {
        w.back() += 1;
        out.push_back(w);
        const std::size_t m = w.size();
        while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
    }
    return out;
}

namespace {

bool is_lyndon(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word rot(w.begin() + i, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + i);
        if (!(w < rot)) return false;
    }
    return !w.empty();
}

LieWordPtr standard_bracketing(const Word& w) {
    if (w.size() == 1) return LieWord::leaf(w[0]);
    // longest proper suffix that is Lyndon
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word v(w.begin() + i, w.end());
        if (is_lyndon(v)) {
            Word u(w.begin(), w.begin() + i);
            return LieWord::make(standard_bracketing(u), standard_bracketing(v));
        }
    }
    throw Error("standard_bracketing: not a Lyndon word");
}

}  // namespace

std::vector<LieWordPtr> lyndon_basis(const std::vector<int>& deg, const TruncationPolicy& policy) {
    std::vector<LieWordPtr> out;
    const int k = static_cast<int>(deg.size());
    for (const auto& w : lyndon_words(k, policy.max_length)) {
        if (word_degree(w, deg) > policy.max_degree) continue;
        auto b = standard_bracketing(w);
        std::const_pointer_cast<LieWord>(b)->normal_form = true;
        out.push_back(b);
    }
    std::vector<LieWordPtr> squares;
    for (const auto& b : out) {
        const int d = b->degree(deg);
        if ((d & 1) && 2 * d <= policy.max_degree && 2 * b->length() <= policy.max_length) {
            auto sq = LieWord::make(b, b);
            std::const_pointer_cast<LieWord>(sq)->normal_form = true;
            squares.push_back(sq);
        }
    }
    out.insert(out.end(), squares.begin(), squares.end());
    std::stable_sort(out.begin(), out.end(), [](const LieWordPtr& a, const LieWordPtr& b) {
        if (a->length() != b->length()) return a->length() < b->length();
        return a->letters() < b->letters();
    });
    return out;
}

Vec lie_to_tensor(const LieWord& w, const std::vector<int>& deg) {
    if (w.is_leaf()) return Vec({w.letter});
    return bracket(lie_to_tensor(*w.left, deg), lie_to_tensor(*w.right, deg), deg);
}

}  // namespace tw
