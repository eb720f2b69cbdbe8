#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tw {

using Q = mpq_class;
using Word = std::vector<int>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int sign_of(long long exponent) { return (exponent & 1) ? -1 : 1; }

/** Sparse linear combination with exact rational coefficients. Zero terms are never stored. */
template <class K>
class Lin {
public:
    using Map = std::map<K, Q>;

    Lin() = default;
    Lin(const K& k, const Q& c = 1) { add(k, c); }

    void add(const K& k, const Q& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(const Lin& other, const Q& c = 1) {
        if (c == 0) return;
        for (const auto& [k, v] : other.terms_) add(k, v * c);
    }

    Lin& operator+=(const Lin& o) { add(o, 1); return *this; }
    Lin& operator-=(const Lin& o) { add(o, -1); return *this; }
    Lin& operator*=(const Q& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& kv : terms_) kv.second *= c;
        return *this;
    }
    friend Lin operator+(Lin a, const Lin& b) { return a += b; }
    friend Lin operator-(Lin a, const Lin& b) { return a -= b; }
    friend Lin operator*(Lin a, const Q& c) { return a *= c; }
    friend Lin operator*(const Q& c, Lin a) { return a *= c; }
    Lin operator-() const { Lin r = *this; r *= -1; return r; }

    bool operator==(const Lin& o) const { return terms_ == o.terms_; }
    bool operator!=(const Lin& o) const { return !(*this == o); }

    Q coeff(const K& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Q(0) : it->second;
    }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

private:
    Map terms_;
};

using Vec = Lin<Word>;

/** Finite basis with integer degrees. */
struct GradedSpace {
    std::string name;
    std::vector<std::string> names;
    std::vector<int> degrees;

    GradedSpace() = default;
    GradedSpace(std::string name, std::vector<std::pair<std::string, int>> basis);

    int dim() const { return static_cast<int>(names.size()); }
    int degree(int i) const { return degrees.at(i); }
    int index(const std::string& element) const;
    bool contains(const std::string& element) const;
    GradedSpace shifted(int k) const;
};

int word_degree(const Word& w, const std::vector<int>& deg);

struct PermutationSigns {
    int epsilon;
    int xi;
};

/**
 * Signs for reordering x_1..x_n into x_{p(1)}..x_{p(n)}; p is 1-based.
 * epsilon is the Koszul sign, xi = sgn(p) * epsilon.
 */
PermutationSigns koszul_sign(const std::vector<int>& permutation, const std::vector<int>& degrees);

/** Same as koszul_sign but 0-based and without validation. */
int reorder_sign(const std::vector<int>& perm0, const std::vector<int>& degrees);
int permutation_parity_sign(const std::vector<int>& perm0);

/**
 * Linear map between tensor powers given on basis words. Letters of input words index
 * src_deg, letters of output words index dst_deg.
 */
struct GradedMap {
    std::vector<int> src_deg;
    std::vector<int> dst_deg;
    int arity_in = 1;
    int arity_out = 1;  // -1 when outputs have mixed lengths
    int degree = 0;
    std::map<Word, Vec> entries;

    GradedMap() = default;
    GradedMap(std::vector<int> src, std::vector<int> dst, int in, int out, int deg)
        : src_deg(std::move(src)), dst_deg(std::move(dst)), arity_in(in), arity_out(out), degree(deg) {}

    void set(const Word& in, const Vec& out);
    Vec apply(const Word& in) const;
    Vec apply(const Vec& in) const;
    bool operator==(const GradedMap& o) const;
};

GradedMap identity_map(const std::vector<int>& deg);

/**
 * (f_1 (x) ... (x) f_k) applied to a word split into consecutive chunks of each factor's arity,
 * with the Koszul sign from moving each f_i past the earlier inputs.
 */
Lin<std::vector<Word>> apply_tensor_map(const std::vector<const GradedMap*>& factors, const Word& word);

/**
 * Sign of S_k(x_1..x_q) = sigma^k x_1 ... sigma^k x_q, where degrees are those before shifting.
 * Desuspension (k = -1) is the plain Koszul rule and S_{-k} o S_k = id for every k.
 */
int suspension_sign(const std::vector<int>& degrees, int k);

GradedMap shift(const GradedMap& f, int k);

}  // namespace tw
