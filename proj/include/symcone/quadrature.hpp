#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "symcone/cone.hpp"

namespace symcone::quad {

enum class Scheme { tensor_gauss, monte_carlo };

/// Node layout for unbounded cone axes.  auto_select picks gauss_laguerre,
/// which suits integrands with exponential decay in the eigenvalues; switch
/// to rational or exp_sinh for integrands with algebraic tails.
enum class AxisMap { auto_select, gauss_laguerre, rational, exp_sinh };

/// All integrals in this library default to the Lebesgue measure induced by
/// the trace inner product (2^{n/2} times the coordinate measure on the
/// lorentz cone); euclidean turns that factor off.
enum class MeasureKind { trace_form, euclidean };

struct QuadratureSpec {
    Scheme scheme = Scheme::tensor_gauss;
    std::size_t nodes_per_axis = 64;
    std::size_t angular_nodes = 0;  // 0: derive from nodes_per_axis
    std::size_t sample_count = 200000;
    double trunc_scale = 1.0;
    AxisMap cone_map = AxisMap::auto_select;
    /// Boundary-exponent hints for the radial laguerre rules (the power of
    /// the eigenvalue gap and of the smallest eigenvalue in the integrand).
    double alpha_gap = 0.0;
    double alpha_min = 0.0;
    std::uint64_t seed = 42;
    double target_rel_tol = 1e-6;

    QuadratureSpec with_nodes(std::size_t n) const;
    QuadratureSpec with_samples(std::size_t n) const;
    QuadratureSpec with_scale(double a) const;
    std::string key_value() const;  // plain-text serialization for reports
};

struct Region {
    enum class Kind { cone, cone_cap, slab, tube_box };

    Kind kind;
    Cone cone;
    Element cap_y;                      // cone_cap: integration over (y-Omega)^Omega
    Element anchor;                     // slab: eigenframe/scale anchor (default e)
    std::vector<double> center;         // slab: offset of the node cluster
    std::vector<double> box_lo, box_hi; // tube_box
    MeasureKind measure = MeasureKind::trace_form;

    static Region cone_region(const Cone& c);
    static Region cap_region(const Cone& c, Element y);
    static Region slab_region(const Cone& c);
    static Region slab_region(const Cone& c, Element anchor,
                              std::vector<double> center = {});
    static Region box_region(const Cone& c, std::vector<double> lo, std::vector<double> hi);
};

struct IntegralEstimate {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;  // abs half-width (two-level) or MC standard error
    std::size_t evaluations = 0;
    bool converged = true;

    double real() const { return value.real(); }
};

using Integrand = std::function<std::complex<double>(std::span<const double>)>;

/// Evaluates the integral of `f` over `region`.  Deterministic for a fixed
/// spec (including the seed for monte_carlo).  Throws on non-finite samples.
IntegralEstimate integrate(const Region& region, const Integrand& f,
                           const QuadratureSpec& spec);

/// Re-runs at doubled resolution; error estimate compares with `previous`.
IntegralEstimate refine(const IntegralEstimate& previous, const Region& region,
                        const Integrand& f, const QuadratureSpec& spec);

/// Convergence probe for integrals whose finiteness is itself in question:
/// evaluates at the base spec, at doubled nodes and at 4x truncation scale.
/// `diverged` is set when the value keeps growing with the truncation window.
struct ProbeResult {
    IntegralEstimate estimate;
    bool diverged = false;
    double scale_drift = 0.0;  // relative change under the wider window
};
ProbeResult integrate_with_divergence_probe(const Region& region, const Integrand& f,
                                            const QuadratureSpec& spec);

/// Materialized tensor grid (points dim-strided, total weights including all
/// jacobians and the measure normalization).  Level 0 is the base spec,
/// each level doubles nodes_per_axis.
struct NodeSet {
    std::size_t dim = 0;
    std::vector<double> points;
    std::vector<double> weights;
    std::size_t size() const { return weights.size(); }
    std::span<const double> point(std::size_t i) const {
        return {points.data() + i * dim, dim};
    }
};
NodeSet tensor_nodes(const Region& region, const QuadratureSpec& spec, int level = 0);

}  // namespace symcone::quad
