#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tw/structures.hpp"

namespace tw {

enum class TargetKind { tensor_algebra, hopf, lie };

/** Degree -1 map C -> H; values indexed by the basis of C. */
struct TwistingCochain {
    Cochain tau;
    bool primitive_image = false;
    TargetKind target = TargetKind::hopf;

    const Vec& operator()(int basis_element) const { return tau.values.at(basis_element); }
};

/** Validates degree -1 and vanishing on degrees 0 and 1 of C; records whether every value is primitive. */
TwistingCochain make_twisting_cochain(const FiniteCoalgebra& c, const HopfAlgebra& h, std::vector<Vec> values,
                                      TargetKind target = TargetKind::hopf);
TwistingCochain zero_cochain(const FiniteCoalgebra& c);

struct MaurerCartanReport {
    /** Total defect d_H tau + tau d_C + sum_n m_n(tau,...,tau) on each basis element. */
    std::vector<Vec> defect;
    /** The arity-n contribution on each basis element. */
    std::map<int, std::vector<Vec>> terms;
    bool pass = true;
    std::string describe(const FiniteCoalgebra& c, const HopfAlgebra& h) const;
};

/**
 * Evaluates the Maurer-Cartan expression in Hom(C, H) on every basis element of degree at most
 * policy.max_degree + 1, with terms up to arity policy.max_length. Lie mode uses l_n / n!.
 */
MaurerCartanReport check_maurer_cartan(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau,
                                       const TruncationPolicy& policy, ConvolutionMode mode = ConvolutionMode::assoc);

struct MorphismReport {
    /** The multiplicative extension T(C[-1]) -> H on words of shifted letters. */
    std::function<Vec(const Word&)> apply;
    /** Words (tensor mode) or Lie basis elements (lie mode) with nonzero tau D - d_H tau. */
    std::vector<std::pair<Word, Vec>> defects;
    std::size_t checked = 0;
    bool chain_map() const { return defects.empty(); }
};

/**
 * Extends tau to an algebra map tau_T on T(C[-1]) (or a Lie map on the free Lie algebra) and
 * evaluates the chain-map defect on words of letters of positive shifted degree within the policy.
 */
MorphismReport cochain_to_morphism(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau,
                                   ConvolutionMode mode, const TruncationPolicy& policy);

/** A-infinity morphism in shifted form: f~_n : W_A^{(x)n} -> W_B of degree 0. */
struct AinfMorphism {
    std::map<int, GradedMap> components;
    int max_arity() const { return components.empty() ? 0 : components.rbegin()->first; }
};

AinfMorphism identity_morphism(const StructureFamily& a);

/** sum_k f~(1^j (x) m~_k (x) 1) - sum m~_r(f~ (x) ... (x) f~) on words up to policy.max_length letters. */
DefectReport check_ainf_morphism(const StructureFamily& a, const StructureFamily& b, const AinfMorphism& f,
                                 const TruncationPolicy& policy);

/** sum_n m~_n(x^{(x)n}) for x in W of degree 0, up to policy.max_length factors. */
Vec mc_defect(const StructureFamily& a, const Vec& x, const TruncationPolicy& policy);

/** x' = sum_n f~_n(x^{(x)n}); requires x to be MC in A and f to be a verified morphism. */
Vec pushforward_mc(const StructureFamily& a, const StructureFamily& b, const AinfMorphism& f, const Vec& x,
                   const TruncationPolicy& policy);

/**
 * The algebra B with bar differential F D_A F^{-1}, where F is the coalgebra automorphism of T(W)
 * with components f (f~_1 must be the identity). Arities above max_arity are dropped.
 */
StructureFamily transport_structure(const StructureFamily& a, const AinfMorphism& f, int max_arity);

}  // namespace tw
