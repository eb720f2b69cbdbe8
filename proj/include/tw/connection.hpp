#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tw/hopf.hpp"
#include "tw/structures.hpp"
#include "tw/twisting.hpp"

namespace tw {

/**
 * Finite commutative dg algebra in cohomological degrees. Elements are Vecs of one-letter words.
 * representatives[i] is a closed element; their classes are a basis of positive-degree cohomology
 * and class_names[i] names the dual homology class. contraction holds pairs (y, h(y)) with d h(y) = y
 * spanning the exact elements that the construction needs; when empty, h is solved for directly.
 */
struct CDGAModel {
    GradedSpace space;
    int unit = 0;
    std::map<std::pair<int, int>, Vec> product;
    std::vector<Vec> differential;
    std::vector<std::string> class_names;
    std::vector<Vec> representatives;
    /** Names of the generators X_i of H[-1]; "s" + class name when empty. */
    std::vector<std::string> generator_names;
    std::vector<std::pair<Vec, Vec>> contraction;

    int degree(const Vec& homogeneous) const;
    Vec mul(const Vec& u, const Vec& v) const;
    Vec d(const Vec& v) const;
    /** Empty when d^2 = 0, the product is unital, associative, graded commutative and satisfies Leibniz,
     *  and the representatives are closed and form a cohomology basis; otherwise the first failure. */
    std::string validate() const;
    /** Solves e = sum c_i W_i + exact for a closed e of positive degree. */
    std::pair<std::vector<Q>, Vec> decompose(const Vec& closed) const;
    /** A chosen primitive of an exact element. */
    Vec primitive(const Vec& exact) const;
};

/** Element of A (x) T(H[-1]): pairs (basis element of A, word in the generators X_i). */
using ConnectionElement = Lin<std::pair<int, Word>>;

struct PowerSeriesConnection {
    /** Degrees of X_i in H[-1]. */
    std::vector<int> generator_degree;
    std::vector<std::string> generator_names;
    ConnectionElement omega;
    /** d on the generators, as elements of the free Lie algebra expanded in T(H[-1]). */
    std::vector<Vec> boundary;
    int max_length = 0;
    /** The exact elements met during the construction and the primitives used for them. */
    std::vector<std::pair<Vec, Vec>> primitives_used;

    HopfAlgebra lie_model() const;
};

/** Runs the stages 2..max_length, asserting after each that the defect and d^2 vanish below the next length. */
PowerSeriesConnection build_power_series_connection(const CDGAModel& model, int max_length);
/** Runs the same stages again starting from an existing connection. */
PowerSeriesConnection rerun_connection(const PowerSeriesConnection& psc, const CDGAModel& model);

/** d omega + d_A omega - 1/2 [J omega, omega], keeping words of length at most s. */
ConnectionElement flatness_defect(const PowerSeriesConnection& psc, const CDGAModel& model, int s);
/** d^2 on the generators, keeping words of length at most s. */
std::vector<Vec> boundary_square(const PowerSeriesConnection& psc, int s);

std::string format_connection(const ConnectionElement& e, const PowerSeriesConnection& psc, const CDGAModel& model);

struct ExtractedStructures {
    /** H_*(M) with the unit class first, then the classes of the representatives. */
    FiniteCoalgebra coalgebra;
    /** T(H[-1]) on generators a_x (one per positive-degree class) with its differential. */
    HopfAlgebra lie_model;
    /** The inclusion H -> T(H[-1]), primitive. */
    TwistingCochain tau;
};

/**
 * Conjugates the differential by X -> -X and dualizes: the reduced c_n(x) is -S_{+1} of the
 * length-n part of d(a_x); c_2 also gets the counit terms. The inclusion is checked against the
 * Maurer-Cartan equation before returning.
 */
ExtractedStructures extract_structures(const PowerSeriesConnection& psc, const CDGAModel& model,
                                       const std::string& unit_name = "e0");

}  // namespace tw
