#pragma once

#include <map>
#include <string>
#include <vector>

#include "tw/linalg.hpp"
#include "tw/twisted.hpp"

namespace tw {

/**
 * Finite complex in degrees lo..hi. boundary[k] maps degree k to degree k-1 (rows index degree k-1).
 * letters[k] records which family letter each basis element is, when built from a family.
 */
struct ChainComplex {
    int lo = 0, hi = 0;
    std::map<int, std::vector<std::string>> names;
    std::map<int, std::vector<int>> letters;
    std::map<int, Matrix> boundary;

    int dim(int k) const;
    /** Zero matrix of the right shape outside the stored range. */
    Matrix d(int k) const;
    bool squares_to_zero() const;
    long long euler_characteristic() const;
    /** Coordinates in degree k of a combination of family letters. */
    std::vector<Q> coordinates(int k, const Vec& v) const;
    Vec to_vec(int k, const std::vector<Q>& coords) const;
};

struct HomologyResult {
    int lo = 0, hi = 0;
    /** Betti numbers are final through this degree; the top degree of a truncated window is not. */
    int exact_through = 0;
    std::map<int, int> betti;
    std::map<int, std::vector<std::vector<Q>>> representatives;

    std::vector<int> betti_vector() const;
    /** Homology coordinates of a cycle; throws if it is not a cycle. */
    std::vector<Q> project(int k, const std::vector<Q>& cycle) const;

    std::map<int, Matrix> cycles_plus_boundaries;  // [representatives | image of d_{k+1}]
    std::map<int, Matrix> boundary_in;             // d_k, to test the cycle condition
};

/**
 * The arity-1 map of f on letters of weight at most max_degree + 1, graded by weight. The family
 * policy must cover max_degree + 1 in both degree and length so that the window is exact.
 */
ChainComplex assemble_complex(const TwistedFamily& f, int max_degree);

/** Pivots are the first nonzero entry column by column, so results depend only on basis order. */
HomologyResult homology(const ChainComplex& x);

struct ProductTable {
    struct Entry {
        int p, i, q, j, degree;
        std::vector<Q> value;
    };
    std::vector<Entry> entries;
    /** Degree of a product is p + q - shift. */
    int shift = 0;
    const Entry* find(int p, int i, int q, int j) const;
};

/** Homology class of the product of two cycles of the algebra family f, in weight p + q - d. */
std::vector<Q> class_product(const HomologyResult& hr, const ChainComplex& x, const TwistedFamily& f, int p,
                             const std::vector<Q>& zp, int q, const std::vector<Q>& zq);

/** m_2 of representatives, projected; products leaving the exact window are omitted. */
ProductTable induced_product(const HomologyResult& hr, const ChainComplex& x, const TwistedFamily& f);

/** True iff both families have the same differential on every letter within the coalgebra policy. */
bool verify_shared_differential(const TwistedFamily& algebra, const TwistedFamily& coalgebra);

}  // namespace tw
