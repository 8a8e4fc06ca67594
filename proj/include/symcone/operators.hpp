#pragma once

#include "symcone/paley_wiener.hpp"
#include "symcone/spaces.hpp"

namespace symcone {

/// Parameters of the multifunctional Bergman-type operator
/// T_beta(f_1,...,f_m)(z_1,...,z_m).  The admissibility predicates are
/// queryable, never enforced at construction.
struct OperatorParams {
    Cone cone;
    std::size_t m = 1;
    std::vector<double> beta;  // length m
    std::vector<double> nu;    // length m
    double p = 1.0;

    double sigma() const;  // (1/m) sum beta_j
    /// (1/m) sum beta_j > n/r - 1.
    bool condition_c1() const;
    /// p < 1 + m (min nu_j / (n/r - 1) - 1); the quotient is +inf when
    /// n/r = 1 and min nu_j > 0.
    bool condition_c2() const;
    /// Kernel-integrability condition, per j:
    ///   beta_j > (1/p')(1/m) sum beta - n/(rp) + (m/p)(2 n/r - 1 + nu_j)
    /// together with (1/p')((1/m) sum beta + 2 n/r - 1) < n/r + beta_j.
    bool condition_c3() const;
    bool admissible() const;
};

/// Kernel-integrability parameter sets: tau holds (p, q, nu) with
/// B_nu(., ie) in L^{p',q'}_nu; sigma holds (nu, p) with the same kernel in
/// L^{p'}_nu.
bool in_tau(const Cone& cone, double p, double q, double nu);
bool in_sigma(const Cone& cone, double nu, double p);

/// "beta sufficiently large" for the representation formulas: the tau
/// conditions hold for the kernel built from beta with a safety margin.
bool beta_sufficiently_large(const Cone& cone, double beta, double p, double q,
                             double nu, double margin = 1.0);

/// Integral of g(w) Delta_weight(Im w) over the tube (iterated cone x slab
/// quadrature, trace measures).
quad::IntegralEstimate tube_integral(const Cone& cone,
                                     const std::function<Complex(const TubePoint&)>& g,
                                     const MultiIndex& weight, const Element& anchor,
                                     const quad::QuadratureSpec& spec);

/// Weighted Bergman projection P_nu f(z) with unit kernel constants.
Complex bergman_project(const Cone& cone, double nu, const AnalyticFunction& f,
                        const TubePoint& z, const quad::QuadratureSpec& spec);

/// T_beta applied to an m-tuple at an m-tuple of tube points.
Complex t_beta_apply(const OperatorParams& params,
                     const std::vector<AnalyticFunction>& fs,
                     const std::vector<TubePoint>& zs,
                     const quad::QuadratureSpec& spec);

/// S_{beta,k}; k = -1 evaluates the full sum S_beta.
Complex s_beta_apply(const OperatorParams& params, int k,
                     const std::vector<AnalyticFunction>& fs,
                     const std::vector<TubePoint>& zs,
                     const quad::QuadratureSpec& spec);

struct FunctionTuple {
    std::vector<AnalyticFunction> fs;
    std::string label;
};

enum class ExperimentSuite { thm1, thm7, boxes, lemma7, prop1, prop2 };

struct ExperimentCell {
    std::string label;
    double dilation = 1.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool diverged = false;
};

struct ExperimentResult {
    std::string suite;
    std::vector<ExperimentCell> cells;
    double max_ratio = 0.0;
    double max_drift = 0.0;  // spread of log-ratio across the dilation sweep
    bool divergence_signature = false;
    std::vector<std::string> notes;
};

/// Norm-ratio experiment: computes LHS/RHS of the suite's inequality for
/// each function tuple over a dilation sweep.  Bounded drift is the
/// empirical signature of boundedness on the sample; divergence shows up as
/// stage divergence flags or monotone drift.  Never a proof either way.
ExperimentResult norm_ratio_experiment(ExperimentSuite suite,
                                       const OperatorParams& params,
                                       const std::vector<FunctionTuple>& sample,
                                       const quad::QuadratureSpec& spec,
                                       const std::vector<double>& scales = {0.25, 0.5,
                                                                            1.0, 2.0,
                                                                            4.0});

enum class ReprFormula { repr1, repr2, prod, rep };

struct ReprResult {
    std::vector<double> pair_ratios;  // |RHS/LHS| per surviving pair
    std::size_t skipped = 0;
    bool vacuous = false;
    double cv = 0.0;
};

/// Ratio-constancy check of the representation formulas (the unknown
/// constant is eliminated by comparing across point pairs).
ReprResult reproducing_ratio_check(const OperatorParams& params, ReprFormula formula,
                                   const std::vector<AnalyticFunction>& fs,
                                   const std::vector<std::pair<TubePoint, TubePoint>>& pairs,
                                   const quad::QuadratureSpec& spec);

}  // namespace symcone
