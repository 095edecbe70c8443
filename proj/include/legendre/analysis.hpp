#pragma once

#include <optional>
#include <string>
#include <vector>

#include "legendre/curve.hpp"
#include "legendre/plane.hpp"

namespace legendre {

/// A curve gamma with a unit field eta Birkhoff-orthogonal to gamma'.
/// Construction validates the pair against the residual tolerance.
class LegendreCurve {
public:
    static constexpr double kResidualTolerance = 1e-5;

    LegendreCurve(PlanePtr plane, ParamCurve gamma, NormalField eta, double tolerance = kResidualTolerance);
    /// Pairs gamma with its extended normal field.
    static LegendreCurve from_curve(PlanePtr plane, ParamCurve gamma);

    const NormedPlane& plane() const { return *plane_; }
    const PlanePtr& plane_ptr() const { return plane_; }
    const ParamCurve& gamma() const { return gamma_; }
    const NormalField& eta() const { return eta_; }
    const Domain& domain() const { return gamma_.domain(); }
    bool closed() const { return gamma_.closed(); }
    std::vector<double> grid() const { return gamma_.grid(); }
    double residual() const { return residual_; }

    Vec2 xi(double t) const { return plane_->birkhoff(eta_(t)); }
    /// alpha = [eta, gamma'] / [eta, xi]
    double alpha(double t) const;
    /// kappa = [eta, eta'] / [eta, xi]
    double kappa(double t) const;
    /// d^order/dt^order of alpha or kappa (order 0 is the value).
    double alpha_derivative(double t, int order) const;
    double kappa_derivative(double t, int order) const;

private:
    double frame(double t, Vec2 eta) const;

    PlanePtr plane_;
    ParamCurve gamma_;
    NormalField eta_;
    double residual_ = 0.0;
};

struct CurvaturePair {
    std::vector<double> t;
    std::vector<double> alpha;
    std::vector<double> kappa;
};

CurvaturePair curvature_pair(const LegendreCurve& L);

/// k = kappa / alpha where |alpha| > 1e-6 max|alpha|; absent elsewhere.
std::vector<std::optional<double>> circular_curvature(const CurvaturePair& cp);

struct Cusp {
    double t;
    bool zig;
    double alpha_prime;
};
struct Inflection {
    double t;
    bool flip;
};
struct Vertex {
    double t;
    bool regular;
};
struct MaslovIndex {
    std::optional<int> word_reduction;
    std::optional<int> flip_flop;
    std::optional<int> rotation;
};

struct SingularityReport {
    std::vector<Cusp> cusps;
    std::vector<Inflection> inflections;
    std::vector<Vertex> vertices;
    /// Singular points that are not ordinary cusps (alpha and alpha' small).
    std::vector<double> degenerate_singularities;
    /// alpha / kappa is constant: every parameter is a vertex.
    bool all_vertices = false;
    std::optional<MaslovIndex> maslov;
    bool is_front = true;
    bool is_immersion = true;
    std::vector<std::string> notes;

    std::size_t zig_count() const;
    std::size_t flip_count() const;
    std::size_t regular_vertex_count() const;
};

SingularityReport singularity_report(const LegendreCurve& L, const CurvaturePair& cp);

/// Lateral tangent sign test: [gamma'(t0 - h), gamma'(t0 + h)] < 0 means zig.
bool lateral_tangent_is_zig(const LegendreCurve& L, double t0, double h = 1e-3);

/// Reduces a cyclic word in {a, b} with a^2 = b^2 = 1; returns k for (ab)^k,
/// or nothing when the word has odd length.
std::optional<int> reduce_cyclic_word(const std::vector<bool>& letters);

struct ProjectiveCurvatureMap {
    std::vector<double> t;
    std::vector<double> theta;  // continuous lift of the direction of (alpha, kappa)
    double total_change = 0.0;  // includes the closing step for closed curves
};

ProjectiveCurvatureMap projective_curvature(const CurvaturePair& cp, bool closed);

/// The three Maslov computations; MethodsDisagree when any two differ.
MaslovIndex maslov_index(const LegendreCurve& L, const CurvaturePair& cp);

/// Largest j <= kmax such that the jets of (gamma, eta) agree up to order j - 1.
int contact_order(const LegendreCurve& L1, double t0, const LegendreCurve& L2, double u0, int kmax);

struct CurvatureMatchReport {
    std::vector<double> residuals;  // per derivative order j = 0..k-1
    bool matched = false;
};

/// Compares d^j (alpha, kappa) for j = 0..k-1; requires contact order >= k.
CurvatureMatchReport contact_implies_curvature_match(const LegendreCurve& L1, double t0, const LegendreCurve& L2,
                                                     double u0, int k, double tolerance = 1e-4);

/// (gamma, T o eta) on the target plane.
LegendreCurve transfer_legendre(const LegendreCurve& L, PlanePtr target);

}  // namespace legendre
