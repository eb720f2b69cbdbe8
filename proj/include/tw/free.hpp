#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tw/graded.hpp"

namespace tw {

/** Degree and word-length cutoffs for the completed tensor algebra. */
struct TruncationPolicy {
    int max_degree = 8;
    int max_length = 8;

    TruncationPolicy() = default;
    TruncationPolicy(int d, int l);
    bool admits(const Word& w, const std::vector<int>& deg) const;
};

using Split = std::pair<Word, Word>;
using SplitVec = Lin<Split>;

std::vector<Split> deconcatenate(const Word& w);

Vec shuffle(const Word& u, const Word& v, const std::vector<int>& deg);
Vec shuffle(const Vec& u, const Vec& v, const std::vector<int>& deg);

/** Concatenation product. */
Vec concat(const Vec& u, const Vec& v);

/** Coproduct of T(V) with primitive letters: sum over (i, n-i) unshuffles with Koszul signs. */
SplitVec unshuffle(const Word& w, const std::vector<int>& deg);
/** Unshuffle coproduct minus the two unit terms. */
SplitVec reduced_unshuffle(const Vec& v, const std::vector<int>& deg);
bool is_primitive(const Vec& v, const std::vector<int>& deg);

/** Graded commutator uv - (-1)^{|u||v|} vu, extended bilinearly over homogeneous terms. */
Vec bracket(const Vec& u, const Vec& v, const std::vector<int>& deg);

/** Symmetrized right-nested bracket: sum over S_n of xi(sigma) [x_s1,[x_s2,...,x_sn]]. */
Vec nested_bracket(const std::vector<Vec>& xs, const std::vector<int>& degrees, const std::vector<int>& deg);

/** s(x_1..x_n) = (-1)^n times the Koszul-signed reversal. */
Vec antipode(const Word& w, const std::vector<int>& deg);

/** Extension of a letter map of the given degree as a derivation of T(V). */
Vec extend_derivation(const Vec& v, int map_degree, const std::function<Vec(int)>& on_letter,
                      const std::vector<int>& deg);

/** All words of exactly the given degree over letters of positive degree, length <= max_length. */
std::vector<Word> words_of_degree(const std::vector<int>& deg, int degree, int max_length);
std::vector<Word> words_up_to(const std::vector<int>& deg, const TruncationPolicy& policy);

/** Bracket expression over letters; a leaf when left is null. */
struct LieWord {
    int letter = -1;
    std::shared_ptr<const LieWord> left, right;
    bool normal_form = false;

    static std::shared_ptr<const LieWord> leaf(int letter);
    static std::shared_ptr<const LieWord> make(std::shared_ptr<const LieWord> l, std::shared_ptr<const LieWord> r);

    bool is_leaf() const { return !left; }
    int degree(const std::vector<int>& deg) const;
    int length() const;
    Word letters() const;
    std::string to_string(const std::vector<std::string>& names) const;
};
using LieWordPtr = std::shared_ptr<const LieWord>;

std::vector<Word> lyndon_words(int alphabet_size, int max_length);

/** Lyndon words with their standard bracketing, plus [x,x] for each odd Lyndon element x. */
std::vector<LieWordPtr> lyndon_basis(const std::vector<int>& deg, const TruncationPolicy& policy);

Vec lie_to_tensor(const LieWord& w, const std::vector<int>& deg);

}  // namespace tw
