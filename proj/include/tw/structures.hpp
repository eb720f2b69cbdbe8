#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tw/free.hpp"
#include "tw/graded.hpp"
#include "tw/hopf.hpp"
#include "tw/linalg.hpp"

namespace tw {

enum class StructureKind {
    ainf_coalgebra,
    cinf_coalgebra,
    strict_coalgebra,
    ainf_algebra,
    cinf_algebra,
    strict_algebra,
    linf_algebra,
};

std::string to_string(StructureKind k);
bool is_coalgebra_kind(StructureKind k);

/**
 * A (co)algebra family in shifted form. Coalgebras live on W = V[-1] and are the degree -1
 * derivation D of T(W), given letter by letter as a sum over arities. Algebras live on W = V[1]
 * and give the degree -1 map m~_n on each word of length n; L-infinity families are graded
 * symmetric maps of the same shape.
 *
 * weight is the unshifted degree used for truncation; length is an auxiliary word length
 * (the tensor length of the Hopf factor for twisted families, 0 otherwise).
 */
struct StructureFamily {
    StructureKind kind = StructureKind::ainf_coalgebra;
    std::vector<std::string> names;
    std::vector<int> deg;
    std::vector<int> weight;
    std::vector<int> length;
    int max_arity = 2;
    std::function<Vec(int)> coproduct;
    std::function<Vec(const Word&)> product;

    int size() const { return static_cast<int>(deg.size()); }
    bool is_coalgebra() const { return is_coalgebra_kind(kind); }
    /** Letters whose weight and length are within the given bounds. */
    std::vector<int> letters_within(int max_weight, int max_length) const;
    /** Shifted arity-n map materialized on letters (coalgebra) or words of letters (algebra) within bounds. */
    GradedMap component(int arity, int max_weight, int max_length) const;
    std::string format(const Vec& v) const;
};

/** Finite coalgebra given by unshifted maps c_n : C -> C^{(x)n} of degree n-2. */
struct FiniteCoalgebra {
    GradedSpace space;
    std::map<int, GradedMap> maps;
    StructureKind kind = StructureKind::cinf_coalgebra;

    FiniteCoalgebra() = default;
    FiniteCoalgebra(GradedSpace s, std::map<int, GradedMap> m, StructureKind k);

    int max_arity() const { return maps.empty() ? 1 : maps.rbegin()->first; }
    GradedMap component(int arity) const;
    /** c~_n = -shift(c_n, -1), the components of the cobar derivation. */
    GradedMap shifted_component(int arity) const;
    StructureFamily shifted() const;
};

/** Finite algebra given by unshifted maps m_n : A^{(x)n} -> A of degree n-2. */
struct FiniteAlgebra {
    GradedSpace space;
    std::map<int, GradedMap> maps;
    StructureKind kind = StructureKind::cinf_algebra;

    FiniteAlgebra() = default;
    FiniteAlgebra(GradedSpace s, std::map<int, GradedMap> m, StructureKind k);

    int max_arity() const { return maps.empty() ? 1 : maps.rbegin()->first; }
    GradedMap component(int arity) const;
    /** m~_n = shift(m_n, +1). */
    GradedMap shifted_component(int arity) const;
    StructureFamily shifted() const;
};

struct Defect {
    int arity = 0;
    Word input;
    Vec value;
};

struct DefectReport {
    std::vector<Defect> defects;
    std::string error;
    bool ok() const { return defects.empty() && error.empty(); }
    std::string summary(const StructureFamily& s, std::size_t limit = 3) const;
};

/**
 * Stasheff identities. Coalgebras: D^2 = 0 on every letter within the policy, split by output
 * length. Algebras: the bar identity sum m~(1^j (x) m~_k (x) 1) = 0 on every word whose letters are
 * within the policy, with total auxiliary length at most max_length. L-infinity families: the
 * generalized Jacobi identity over unshuffles.
 */
DefectReport check_ainf(const StructureFamily& s, const TruncationPolicy& policy);

/** Coalgebras: reduced unshuffle of every c~_n(letter) vanishes. Algebras: m~_n kills shuffles. */
DefectReport check_cinfty(const StructureFamily& s, const TruncationPolicy& policy);

/** l~_n(w) = sum over S_n of the Koszul sign times m~_n(w_sigma), in shifted form. */
StructureFamily symmetrize_to_linf(const StructureFamily& a);

/** The same symmetrization on unshifted maps, l_n = sum xi(sigma) m_n o sigma. */
GradedMap symmetrize_unshifted(const GradedMap& m);

/** Non-degenerate graded-symmetric bilinear form of a fixed total degree. */
struct Pairing {
    std::vector<int> deg;
    Matrix form;
    int degree = 0;

    Pairing() = default;
    Pairing(std::vector<int> degrees, Matrix m);
    Q operator()(int i, int j) const { return form(i, j); }
    /** dual(i) is the element with <b_j, dual(i)> = delta_ij. */
    Vec dual(int i) const;
};

/** The (n+1)-tensor sum_i b_i^dual (x) c_n(b_i). */
Lin<Word> coalgebra_tensor(const FiniteCoalgebra& c, const Pairing& p, int arity);
DefectReport check_cyclic(const FiniteCoalgebra& c, const Pairing& p);

/**
 * Dualizes one output leg: m_n(x_1..x_n) = sum <x_1,t_1>...<x_n,t_n> t_{n+1} over the tensor above,
 * with Koszul signs. The result lives on C regraded by -d (d the pairing degree) so that m_n has
 * degree n-2.
 */
FiniteAlgebra pair_to_algebra(const FiniteCoalgebra& c, const Pairing& p);
/** Inverse of pair_to_algebra, solved as a linear system. */
FiniteCoalgebra algebra_to_coalgebra(const FiniteAlgebra& a, const Pairing& p, const GradedSpace& original);

enum class ConvolutionMode { assoc, lie };

/** A cochain C -> H given by its values on the basis of C. */
struct Cochain {
    int degree = -1;
    std::vector<Vec> values;
    bool operator==(const Cochain& o) const { return degree == o.degree && values == o.values; }
    bool is_zero() const;
};

/** Convolution structure on Hom(C, H). */
class HomConvolution {
public:
    HomConvolution(const FiniteCoalgebra& c, const HopfAlgebra& h, ConvolutionMode mode);

    /** m_1(f) = d_H f - (-1)^{|f|} f d_C and m_n(f_1..f_n)(c) = mu (f_1 (x) ... (x) f_n) c_n(c). */
    Cochain m(const std::vector<Cochain>& fs) const;
    /** Lie mode: sum over S_n of xi(sigma; |f_i|) m_n(f_sigma(1), ..., f_sigma(n)). */
    Cochain l(const std::vector<Cochain>& fs) const;
    Cochain operator()(const std::vector<Cochain>& fs) const { return mode_ == ConvolutionMode::lie ? l(fs) : m(fs); }
    ConvolutionMode mode() const { return mode_; }

private:
    const FiniteCoalgebra* c_;
    const HopfAlgebra* h_;
    ConvolutionMode mode_;
};

}  // namespace tw
