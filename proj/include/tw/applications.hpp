#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tw/connection.hpp"
#include "tw/homology.hpp"
#include "tw/twisted.hpp"

namespace tw {

/** H_*(M) as a cyclic C-infinity coalgebra, with T(H[-1]) and the inclusion twisting cochain. */
struct ManifoldModel {
    std::string name;
    FiniteCoalgebra coalgebra;
    Pairing pairing;
    HopfAlgebra lie;
    TwistingCochain tau;
    /** H generator index for each basis element of H_*(M) of positive degree, -1 otherwise. */
    std::vector<int> generator_of;
    std::optional<PowerSeriesConnection> connection;

    int dimension() const { return pairing.degree; }
    /** Empty when simply connected, Poincare, cyclic, C-infinity and tau is Maurer-Cartan. */
    std::string validate(const TruncationPolicy& policy) const;
};

/**
 * Generators a_x of degree |x| - 1 for each x of positive degree; d(a_x) is the multiplicative image
 * of D(s^{-1} x) under the inclusion.
 */
ManifoldModel manifold_from_coalgebra(const std::string& name, const FiniteCoalgebra& c, const Pairing& p,
                                      std::vector<std::string> generator_names = {});

/** Builds the connection, extracts the coalgebra and pairs it with p (given on the extracted basis). */
ManifoldModel manifold_from_cdga(const std::string& name, const CDGAModel& model, int max_length, const Matrix& pairing,
                                 const std::string& unit_name = "e0");

struct HomologyRun {
    TwistedFamily family;
    ChainComplex complex;
    HomologyResult homology;
};

TruncationPolicy window_policy(int max_degree, int max_length);

/** Left multiplication action; the expected answer is a point. */
HomologyRun path_space_model(const ManifoldModel& m, int max_degree, int max_length = 0);
/** Conjugation action by default; untwisted uses tau = 0. */
HomologyRun free_loop_model(const ManifoldModel& m, int max_degree, ActionKind action = ActionKind::conjugation,
                            bool untwisted = false, int max_length = 0);

struct LoopProduct {
    HomologyRun run;
    ProductTable table;
};

/** Needs an action that makes the family a derivation: conjugation or bracket. */
LoopProduct loop_product_table(const ManifoldModel& m, int max_degree, int max_length = 0,
                               ActionKind action = ActionKind::conjugation);

/** Exterior generators U_i of H_*(G) and classes p_i in H^{|U_i|+1}(M), given on the homology basis. */
struct BundleModel {
    ManifoldModel base;
    std::vector<std::string> group_names;
    std::vector<int> group_degrees;
    std::vector<std::vector<Q>> classes;

    HopfAlgebra group() const { return HopfAlgebra::exterior(group_names, group_degrees); }
    /** tau(x) = sum_i p_i(x) U_i; throws on degree violations. */
    TwistingCochain twisting_cochain() const;
};

enum class BundleVariant { homology, cohomology };

struct BundleResult {
    std::vector<int> betti;
    HomologyRun run;
    /** Cohomology variant: the explicit cochain complex graded by minus the degree. */
    std::optional<ChainComplex> cochains;
    std::optional<HomologyResult> cohomology;
    /** Cohomology variant: true when the explicit coboundary is the dual of the twisted differential. */
    bool dual_matches = false;
    std::optional<StructureFamily> dual_algebra;
    DefectReport dual_report;
};

BundleResult bundle_model(const BundleModel& b, int max_degree, BundleVariant variant = BundleVariant::homology,
                          ActionKind action = ActionKind::left_mult);

}  // namespace tw
