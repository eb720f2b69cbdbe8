#include <gtest/gtest.h>

#include <map>
#include <random>

#include "tw/free.hpp"
#include "tw/linalg.hpp"

using namespace tw;

namespace {

Vec random_vec(std::mt19937& rng, const std::vector<int>& deg, int degree, int max_length) {
    Vec v;
    for (const Word& w : words_of_degree(deg, degree, max_length))
        if (rng() % 2) v.add(w, static_cast<int>(rng() % 5) - 2);
    return v;
}

int vec_degree(const Vec& v, const std::vector<int>& deg) { return word_degree(v.begin()->first, deg); }

/** Coefficients of a power series truncated at n. */
using Series = std::vector<long long>;

Series multiply(const Series& a, const Series& b) {
    Series c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

TEST(Shuffle, CountsAndSigns) {
    const std::vector<int> deg{1, 1, 1, 1, 2};
    // four distinct odd letters: shuffles of ab with cd
    const Vec s = shuffle(Word{0, 1}, Word{2, 3}, deg);
    EXPECT_EQ(s.size(), 6u);
    EXPECT_EQ(s.coeff(Word{0, 1, 2, 3}), 1);
    EXPECT_EQ(s.coeff(Word{2, 3, 0, 1}), 1);
    EXPECT_EQ(s.coeff(Word{0, 2, 1, 3}), -1);
    EXPECT_EQ(shuffle(Word{4}, Word{0}, deg).coeff(Word{0, 4}), 1);
}

TEST(Shuffle, GradedCommutative) {
    std::mt19937 rng(3);
    const std::vector<int> deg{1, 2, 3};
    for (int trial = 0; trial < 40; ++trial) {
        const Vec u = random_vec(rng, deg, 1 + static_cast<int>(rng() % 4), 3);
        const Vec v = random_vec(rng, deg, 1 + static_cast<int>(rng() % 4), 3);
        if (u.empty() || v.empty()) continue;
        const int e = vec_degree(u, deg) * vec_degree(v, deg);
        EXPECT_EQ(shuffle(u, v, deg), shuffle(v, u, deg) * sign_of(e));
    }
}

TEST(Bracket, AntisymmetryAndJacobi) {
    std::mt19937 rng(9);
    const std::vector<int> deg{1, 2, 3};
    for (int trial = 0; trial < 40; ++trial) {
        Vec x[3];
        int d[3];
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            d[i] = 1 + static_cast<int>(rng() % 3);
            x[i] = random_vec(rng, deg, d[i], 2);
            ok = ok && !x[i].empty();
        }
        if (!ok) continue;
        EXPECT_EQ(bracket(x[0], x[1], deg), bracket(x[1], x[0], deg) * -sign_of(d[0] * d[1]));
        // (-1)^{|x||z|}[x,[y,z]] + cyclic = 0
        const Vec j = bracket(x[0], bracket(x[1], x[2], deg), deg) * sign_of(d[0] * d[2]) +
                      bracket(x[1], bracket(x[2], x[0], deg), deg) * sign_of(d[1] * d[0]) +
                      bracket(x[2], bracket(x[0], x[1], deg), deg) * sign_of(d[2] * d[1]);
        EXPECT_TRUE(j.empty());
    }
}

TEST(Unshuffle, ReducedCoproductKillsLieElements) {
    const std::vector<int> deg{1, 2};
    const TruncationPolicy policy(6, 6);
    const auto basis = lyndon_basis(deg, policy);
    ASSERT_FALSE(basis.empty());
    for (const auto& b : basis) {
        const Vec t = lie_to_tensor(*b, deg);
        EXPECT_TRUE(is_primitive(t, deg)) << b->to_string({"a", "b"});
    }
    EXPECT_FALSE(is_primitive(Vec(Word{0, 1}), deg));
    // a*a for odd a is [a,a]/2, hence primitive
    EXPECT_TRUE(is_primitive(Vec(Word{0, 0}), deg));
    EXPECT_FALSE(is_primitive(Vec(Word{1, 1}), deg));
}

TEST(Unshuffle, MultiplicativeOnWords) {
    // Delta(uv) = Delta(u) Delta(v) with the Koszul sign on the middle swap
    const std::vector<int> deg{1, 2, 3};
    std::mt19937 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        Word u(1 + rng() % 3), v(1 + rng() % 3);
        for (auto& x : u) x = static_cast<int>(rng() % 3);
        for (auto& x : v) x = static_cast<int>(rng() % 3);
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        SplitVec expected;
        for (const auto& [a, ca] : unshuffle(u, deg))
            for (const auto& [b, cb] : unshuffle(v, deg)) {
                const int e = word_degree(a.second, deg) * word_degree(b.first, deg);
                Word left = a.first, right = a.second;
                left.insert(left.end(), b.first.begin(), b.first.end());
                right.insert(right.end(), b.second.begin(), b.second.end());
                expected.add(Split{left, right}, ca * cb * sign_of(e));
            }
        EXPECT_EQ(unshuffle(uv, deg), expected);
    }
}

TEST(Antipode, InvolutionAndLetters) {
    const std::vector<int> deg{1, 2, 3};
    EXPECT_EQ(antipode(Word{1}, deg), Vec(Word{1}, -1));
    std::mt19937 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        Word w(1 + rng() % 4);
        for (auto& x : w) x = static_cast<int>(rng() % 3);
        Vec back;
        for (const auto& [u, c] : antipode(w, deg)) back.add(antipode(u, deg), c);
        EXPECT_EQ(back, Vec(w));
        // mu (s (x) 1) Delta = 0 on words of positive length
        Vec conv;
        for (const auto& [split, c] : unshuffle(w, deg)) conv.add(concat(antipode(split.first, deg), Vec(split.second)), c);
        EXPECT_TRUE(conv.empty());
    }
}

TEST(Derivation, LeibnizOnConcatenation) {
    const std::vector<int> deg{1, 2, 3};
    // degree -1 on letters: a -> 0, b -> a, c -> b
    auto on_letter = [](int x) { return x == 0 ? Vec{} : Vec(Word{x - 1}); };
    std::mt19937 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        Word u(1 + rng() % 3), v(1 + rng() % 3);
        for (auto& x : u) x = static_cast<int>(rng() % 3);
        for (auto& x : v) x = static_cast<int>(rng() % 3);
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        const Vec lhs = extend_derivation(Vec(uv), -1, on_letter, deg);
        const Vec rhs = concat(extend_derivation(Vec(u), -1, on_letter, deg), Vec(v)) +
                        concat(Vec(u), extend_derivation(Vec(v), -1, on_letter, deg)) *
                            sign_of(-1LL * word_degree(u, deg));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Words, CountsByDegree) {
    // letters of degrees 1 and 2: compositions of n into parts 1, 2 are Fibonacci numbers
    const std::vector<int> deg{1, 2};
    const std::vector<std::size_t> fib{1, 2, 3, 5, 8, 13};
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(words_of_degree(deg, n, n).size(), fib[n - 1]);
    EXPECT_EQ(words_of_degree(deg, 4, 2).size(), 1u);
}

TEST(Lyndon, WittCountsOnTwoLetters) {
    const std::vector<std::size_t> witt{2, 1, 2, 3, 6, 9, 18};
    const auto words = lyndon_words(2, 7);
    std::map<std::size_t, std::size_t> by_length;
    for (const auto& w : words) ++by_length[w.size()];
    for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(by_length[n], witt[n - 1]) << n;
}

TEST(Lyndon, BasisSatisfiesGradedPbw) {
    // U(L) = S(L_even) (x) Lambda(L_odd) has the Hilbert series of T(V)
    for (const std::vector<int>& deg : {std::vector<int>{1, 2}, std::vector<int>{1, 1}, std::vector<int>{2, 3}}) {
        const int n = 7;
        const auto basis = lyndon_basis(deg, TruncationPolicy(n, n));
        std::vector<long long> l(n + 1, 0);
        for (const auto& b : basis)
            if (b->degree(deg) <= n) ++l[b->degree(deg)];
        Series pbw(n + 1, 0);
        pbw[0] = 1;
        for (int k = 1; k <= n; ++k)
            for (long long copies = 0; copies < l[k]; ++copies) {
                Series f(n + 1, 0);
                if (k % 2) {
                    f[0] = 1;
                    f[k] = 1;
                } else {
                    for (int j = 0; j * k <= n; ++j) f[j * k] = 1;
                }
                pbw = multiply(pbw, f);
            }
        Series tensor(n + 1, 0);
        tensor[0] = 1;
        for (int m = 1; m <= n; ++m)
            for (int d : deg)
                if (d <= m) tensor[m] += tensor[m - d];
        EXPECT_EQ(pbw, tensor);
    }
}

TEST(Lyndon, TensorImagesAreIndependent) {
    const std::vector<int> deg{1, 2};
    const auto basis = lyndon_basis(deg, TruncationPolicy(6, 6));
    std::map<Word, int> index;
    for (const auto& b : basis)
        for (const auto& [w, c] : lie_to_tensor(*b, deg)) index.emplace(w, 0);
    int k = 0;
    for (auto& [w, i] : index) i = k++;
    Matrix m(static_cast<int>(index.size()), static_cast<int>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& [w, c] : lie_to_tensor(*basis[j], deg)) m(index[w], static_cast<int>(j)) = c;
    EXPECT_EQ(rank(m), static_cast<int>(basis.size()));
}

TEST(NestedBracket, TwoArgumentsGiveTwiceTheBracket) {
    // [x,y] - (-1)^{|x||y|}[y,x] = 2[x,y]
    const std::vector<int> deg{1, 2};
    const Vec x = Vec(Word{0}), y = Vec(Word{1});
    EXPECT_EQ(nested_bracket({x, y}, {1, 2}, deg), bracket(x, y, deg) * 2);
}
