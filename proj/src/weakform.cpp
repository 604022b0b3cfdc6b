//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file weakform.cpp
//---------------------------------------------------------------------------//
#include "helix/weakform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "helix/error.hpp"
#include "helix/parallel.hpp"
#include "helix/quadrature.hpp"

namespace helix
{
namespace
{
using std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

//! Fraction of the horizon where tau is flat
constexpr double flat_fraction = 0.25;

//---------------------------------------------------------------------------//
//! Velocity at each particle without its own filament, with the
//! background or Xi correction of the state
std::vector<Vec3> other_velocities(TrajectoryState const& state,
                                   VelocityEvalConfig const& cfg)
{
    auto const& w = state.particles;
    if (!w.balanced())
    {
        if (!state.background)
            throw UnbalancedError(
                "unbalanced particles need a background profile");
        return xi_at_particles(w, *state.background, cfg, true);
    }
    auto u = velocity_at_particles(w, cfg, true);
    if (state.background)
    {
        for (std::size_t i = 0; i < w.size(); ++i)
            u[i] += background_velocity(embed(w[i].z), *state.background);
    }
    return u;
}

std::vector<Vec3> helix_gradients(TrajectoryState const& state,
                                  double t,
                                  TestFunction const& psi,
                                  int theta_points)
{
    auto const& w = state.particles;
    std::vector<Vec3> g(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        g[j] = helix_gradient(t, w[j].z, psi, theta_points);
    return g;
}

bool all_zero(std::vector<Vec3> const& v)
{
    return std::all_of(v.begin(), v.end(), [](Vec3 const& x) { return x == Vec3{}; });
}

//! Pair term with the data needed to weight it
struct PairTerm
{
    std::size_t j = 0;
    std::size_t k = 0;
    // Distance from (z_j, 0) to the helix through z_k
    double approach = 0;
    // Both helices inside |x| <= R
    bool inside = true;
    // gamma_j gamma_k (G_j . v_kj + G_k . v_jk)
    double value = 0;
};

std::vector<PairTerm> pair_table(TrajectoryState const& state,
                                 double t,
                                 TestFunction const& psi,
                                 double big_r,
                                 WeakFormConfig const& cfg)
{
    auto const& w = state.particles;
    std::size_t const n = w.size();
    auto const g = helix_gradients(state, t, psi, cfg.theta_points);
    FilamentIntegrator const quad(cfg.eval_cfg, w.h());
    double const half_period = pi * w.h().kappa();
    auto inside = [&](Vec2 const& z) {
        return std::hypot(norm(z), half_period) <= big_r;
    };

    // Row r holds the pairs (r, k > r); rows r and n - 1 - r share a task
    std::vector<std::vector<PairTerm>> rows(n);
    auto row = [&](std::size_t j) {
        for (std::size_t k = j + 1; k < n; ++k)
        {
            PairTerm term;
            term.j = j;
            term.k = k;
            term.approach = quad.closest_approach(embed(w[j].z), w[k].z);
            term.inside = inside(w[j].z) && inside(w[k].z);
            if (w[j].gamma != 0 && w[k].gamma != 0
                && !(g[j] == Vec3{} && g[k] == Vec3{}))
            {
                auto const [at_j, at_k] = quad.pair(w[j].z, w[k].z);
                term.value = w[j].gamma * w[k].gamma
                             * (dot(g[j], at_j) + dot(g[k], at_k));
            }
            rows[j].push_back(term);
        }
    };
    parallel_for((n + 1) / 2, cfg.eval_cfg.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t r = b; r < e; ++r)
        {
            row(r);
            if (n - 1 - r != r)
                row(n - 1 - r);
        }
    });
    std::vector<PairTerm> table;
    for (auto& r : rows)
        table.insert(table.end(), r.begin(), r.end());
    return table;
}

/*!
 * Cutoff-weighted integral of H_psi over two helices.
 *
 * Returns kappa^2 int int f(x, y) H_psi(x, y) dt ds with x = S_t(a, 0) and
 * y = S_s(b, 0), where x3 differences are taken to the nearest period.
 */
class PairIntegrator
{
  public:
    PairIntegrator(TestFunction const& psi,
                   KernelConfig const& kcfg,
                   double eps,
                   int outer_points)
        : psi_(psi), ev_(kcfg), h_(kcfg.h), eps_(eps), outer_(outer_points)
    {
    }

    double h_value(double t, Vec3 const& x, Vec3 const& y) const
    {
        Vec3 const k = ev_.kernel_blob(x - y, eps_);
        return dot(k,
                   cross(xi(y, h_), psi_.gradient(t, x))
                       - cross(xi(x, h_), psi_.gradient(t, y)))
               / (2 * h_.kappa());
    }

    //! Weight phi_delta(|x - y|): a window of half-width 2 delta / kappa
    double near(double t, Vec2 const& a, Vec2 const& b, Cutoff const& phi,
                double approach) const
    {
        using Rule = boost::math::quadrature::gauss<double, 8>;
        double const kappa = h_.kappa();
        double const width = 2 * phi.scale() / kappa;
        double const lambda = std::sqrt(dot(b, b) + kappa * kappa);
        double const resolve = std::min(approach, phi.scale()) / (2 * lambda);
        int const panels
            = std::max(4, static_cast<int>(std::ceil(2 * width / resolve)));
        double const dp = 2 * width / panels;
        CompensatedSum outer;
        for (int i = 0; i < outer_; ++i)
        {
            double const theta = -pi + 2 * pi * i / outer_;
            Vec3 const x = screw(theta, embed(a), h_);
            auto f = [&](double s) {
                Vec3 const y = screw(s, embed(b), h_);
                double const wgt = phi(norm(x - y));
                return wgt == 0 ? 0.0 : wgt * this->h_value(t, x, y);
            };
            CompensatedSum inner;
            for (int p = 0; p < panels; ++p)
            {
                double const lo = theta - width + p * dp;
                inner.add(Rule::integrate(f, lo, lo + dp));
            }
            outer.add(inner.value());
        }
        return kappa * kappa * (2 * pi / outer_) * outer.value();
    }

    //! Weight (1 - phi_delta(|x - y|)) (1 - zeta(|x|) zeta(|y|)) on a
    //! trapezoid grid over both helices
    double far(double t, Vec2 const& a, Vec2 const& b, Cutoff const& phi,
               Cutoff const& zeta) const
    {
        double const kappa = h_.kappa();
        double const period = h_.period();
        CompensatedSum sum;
        for (int i = 0; i < outer_; ++i)
        {
            double const theta = -pi + 2 * pi * i / outer_;
            Vec3 const x = screw(theta, embed(a), h_);
            for (int l = 0; l < outer_; ++l)
            {
                double const s = theta - pi + 2 * pi * (l + 0.5) / outer_;
                Vec3 y = screw(s, embed(b), h_);
                // Unreduced slab coordinates for the truncation weight
                Vec3 y_slab = y;
                y_slab.z -= period * std::round(y_slab.z / period);
                double const wgt = (1 - phi(norm(x - y)))
                                   * (1 - zeta(norm(x)) * zeta(norm(y_slab)));
                if (wgt != 0)
                    sum.add(wgt * this->h_value(t, x, y));
            }
        }
        double const step = 2 * pi / outer_;
        return kappa * kappa * step * step * sum.value();
    }

  private:
    TestFunction const& psi_;
    KernelEvaluator ev_;
    HelixParams h_;
    double eps_;
    int outer_;
};

KernelConfig kernel_for(WeakFormConfig const& cfg, HelixParams const& h)
{
    KernelConfig k = cfg.eval_cfg.kernel_cfg;
    k.h = h;
    return k;
}

//! Near part of each pair whose helices come within 2 delta
std::vector<double> near_values(std::vector<PairTerm> const& table,
                                TrajectoryState const& state,
                                double t,
                                TestFunction const& psi,
                                double delta,
                                double eps,
                                WeakFormConfig const& cfg)
{
    auto const& w = state.particles;
    PairIntegrator const pi_(psi, kernel_for(cfg, w.h()), eps, cfg.near_theta_points);
    Cutoff const phi = cutoff_phi(delta);
    std::vector<double> out(table.size(), 0.0);
    parallel_for(table.size(), cfg.eval_cfg.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
        {
            auto const& p = table[i];
            if (p.approach >= 2 * delta || p.value == 0)
                continue;
            out[i] = 2 * w[p.j].gamma * w[p.k].gamma
                     * pi_.near(t, w[p.j].z, w[p.k].z, phi, p.approach);
        }
    });
    return out;
}

SplitParts split(std::vector<PairTerm> const& table,
                 TrajectoryState const& state,
                 double t,
                 TestFunction const& psi,
                 CutoffPair const& cuts,
                 WeakFormConfig const& cfg)
{
    auto const& w = state.particles;
    auto const near = near_values(
        table, state, t, psi, cuts.delta, cfg.eval_cfg.blob_epsilon, cfg);
    PairIntegrator const pi_(psi,
                             kernel_for(cfg, w.h()),
                             cfg.eval_cfg.blob_epsilon,
                             cfg.near_theta_points);
    Cutoff const phi = cutoff_phi(cuts.delta);
    Cutoff const zeta = cutoff_zeta(cuts.big_r);
    std::vector<double> far(table.size(), 0.0);
    parallel_for(table.size(), cfg.eval_cfg.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
        {
            auto const& p = table[i];
            if (p.inside || p.value == 0)
                continue;
            far[i] = 2 * w[p.j].gamma * w[p.k].gamma
                     * pi_.far(t, w[p.j].z, w[p.k].z, phi, zeta);
        }
    });
    CompensatedSum total, sn, sb, sf;
    for (std::size_t i = 0; i < table.size(); ++i)
    {
        total.add(table[i].value);
        sn.add(near[i]);
        sf.add(far[i]);
        sb.add(table[i].value - near[i] - far[i]);
    }
    return {total.value(), sn.value(), sb.value(), sf.value()};
}

double near_sum(std::vector<double> const& v)
{
    CompensatedSum s;
    for (double x : v)
        s.add(x);
    return s.value();
}

//! The near window must stay inside one period
void check_delta(double delta, HelixParams const& h)
{
    if (!(delta > 0) || !(4 * delta < h.period()))
        throw ValidationError("invalid_delta",
                              "delta must be positive and below a quarter "
                              "of the period");
}

//! Snapshot times relative to the first, through the first one at or
//! beyond the horizon
std::vector<double> horizon_times(std::span<TrajectoryState const> snapshots,
                                  double horizon)
{
    if (snapshots.size() < 4)
        throw ValidationError("insufficient_snapshots",
                              "weak residual needs at least 4 snapshots");
    std::vector<double> t;
    double const t0 = snapshots.front().t;
    for (auto const& s : snapshots)
    {
        double const tau = s.t - t0;
        if (!t.empty() && !(tau > t.back()))
            throw ValidationError("unordered_snapshots",
                                  "snapshot times must increase");
        t.push_back(tau);
        if (tau >= horizon)
            break;
    }
    if (t.back() < horizon * (1 - 1e-12))
        throw ValidationError("snapshots_do_not_cover_horizon",
                              "snapshots end before the test function "
                              "horizon");
    return t;
}

double trapezoid(std::vector<double> const& t, std::vector<double> const& f)
{
    CompensatedSum sum;
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
        sum.add((t[k + 1] - t[k]) * (f[k] + f[k + 1]) / 2);
    return sum.value();
}

}  // namespace

//---------------------------------------------------------------------------//
// TEST FUNCTION
//---------------------------------------------------------------------------//
TestFunction::TestFunction(TestFunctionSpec const& spec, HelixParams const& h)
    : spec_(spec), h_(h)
{
    if (!(spec.radius > 0))
        throw ValidationError("invalid_test_function",
                              "test function radius must be positive");
    if (!(spec.horizon > 0) || !std::isfinite(spec.horizon))
        throw ValidationError("invalid_test_function",
                              "test function horizon must be positive");
    if (spec.mode < 0 || !std::isfinite(spec.mode_amplitude)
        || !std::isfinite(spec.phase) || !std::isfinite(spec.amplitude))
        throw ValidationError("invalid_test_function",
                              "test function mode must be nonnegative and "
                              "coefficients finite");
}

TestFunction TestFunction::preset(std::string const& name,
                                  double support_radius,
                                  double horizon,
                                  HelixParams const& h)
{
    TestFunctionSpec spec;
    spec.horizon = horizon;
    if (name == "bump")
    {
        spec.radius = support_radius;
    }
    else if (name == "offset-bump")
    {
        spec.centre = {0.25 * support_radius, 0.1 * support_radius};
        spec.radius = support_radius;
    }
    else if (name == "helical-mode")
    {
        spec.centre = {0.2 * support_radius, 0};
        spec.radius = support_radius;
        spec.mode = 1;
        spec.mode_amplitude = 0.5;
        spec.phase = 0.3;
    }
    else
    {
        throw ValidationError("unknown_test_function",
                              "unknown test function preset '" + name + "'");
    }
    return TestFunction(spec, h);
}

double TestFunction::support_radius() const
{
    if (!std::isfinite(spec_.radius))
        return std::numeric_limits<double>::infinity();
    return norm(spec_.centre) + spec_.radius;
}

double TestFunction::tau(double t) const
{
    double const u = t / spec_.horizon;
    return 1 - smooth_step((u - flat_fraction) / (1 - flat_fraction));
}

double TestFunction::tau_prime(double t) const
{
    double const u = t / spec_.horizon;
    double const scale = spec_.horizon * (1 - flat_fraction);
    return -smooth_step_derivative((u - flat_fraction) / (1 - flat_fraction))
           / scale;
}

double TestFunction::beta(Vec2 const& d, Vec2* grad) const
{
    if (!std::isfinite(spec_.radius))
    {
        *grad = {};
        return 1;
    }
    double const r2 = spec_.radius * spec_.radius;
    double const q = dot(d, d) / r2;
    if (!(q < 1))
    {
        *grad = {};
        return 0;
    }
    double const one_minus = 1 - q;
    double const b = std::exp(1 - 1 / one_minus);
    *grad = (-2 * b / (one_minus * one_minus * r2)) * d;
    return b;
}

double TestFunction::axial(double x3, double* deriv) const
{
    double const k = spec_.mode / h_.kappa();
    double const arg = k * x3 + spec_.phase;
    *deriv = -spec_.mode_amplitude * k * std::sin(arg);
    return 1 + spec_.mode_amplitude * std::cos(arg);
}

double TestFunction::value(double t, Vec3 const& x) const
{
    Vec2 gb;
    double dp;
    return spec_.amplitude * tau(t) * beta(x.tilde() - spec_.centre, &gb)
           * axial(x.z, &dp);
}

double TestFunction::time_derivative(double t, Vec3 const& x) const
{
    Vec2 gb;
    double dp;
    return spec_.amplitude * tau_prime(t) * beta(x.tilde() - spec_.centre, &gb)
           * axial(x.z, &dp);
}

Vec3 TestFunction::gradient(double t, Vec3 const& x) const
{
    Vec2 gb;
    double dp;
    double const b = beta(x.tilde() - spec_.centre, &gb);
    double const p = axial(x.z, &dp);
    double const c = spec_.amplitude * tau(t);
    return {c * p * gb.x, c * p * gb.y, c * b * dp};
}

//---------------------------------------------------------------------------//
// CUTOFFS
//---------------------------------------------------------------------------//
Cutoff::Cutoff(double a) : a_(a)
{
    if (!(a > 0) || !std::isfinite(a))
        throw ValidationError("invalid_cutoff",
                              "cutoff scale must be positive and finite");
}

double Cutoff::operator()(double r) const
{
    return 1 - smooth_step(r / a_ - 1);
}

Cutoff cutoff_phi(double delta)
{
    return Cutoff(delta);
}

Cutoff cutoff_zeta(double big_r)
{
    return Cutoff(big_r);
}

void CutoffPair::validate(TestFunction const& psi, HelixParams const& h) const
{
    check_delta(delta, h);
    double const need = 2 * std::max(psi.support_radius(), h.period());
    if (!(big_r > need) || !std::isfinite(big_r))
        throw ValidationError("invalid_cutoff_radius",
                              "R must exceed 2 max(rho, 2 pi kappa) = "
                                  + std::to_string(need));
}

//---------------------------------------------------------------------------//
// CONFIG
//---------------------------------------------------------------------------//
void WeakFormConfig::validate() const
{
    eval_cfg.validate();
    if (theta_points < 8 || near_theta_points < 8)
        throw ValidationError("invalid_theta_points",
                              "helix trapezoid needs at least 8 nodes");
    if (!(p > 4.0 / 3) || !std::isfinite(p))
        throw ValidationError("invalid_lp_exponent",
                              "weak formulation needs finite p > 4/3");
}

double WeakFormConfig::s() const
{
    double const conj = p / (p - 1);
    return conj / 2;
}

double WeakFormConfig::near_exponent() const
{
    return (2 - s()) / s();
}

//---------------------------------------------------------------------------//
// KERNEL OF THE WEAK FORM
//---------------------------------------------------------------------------//
double h_psi(double t,
             Vec3 const& x,
             Vec3 const& y,
             TestFunction const& psi,
             KernelConfig const& cfg)
{
    KernelEvaluator const ev(cfg);
    HelixParams const& h = cfg.h;
    Vec3 const k = ev.kernel_blob(x - y, cfg.blob_epsilon);
    Vec3 const gx = psi.gradient(t, x);
    Vec3 const gy = psi.gradient(t, y);
    Vec3 const xi_x = xi(x, h);
    Vec3 const xi_y = xi(y, h);
    return dot(k, cross(xi_y, gx - gy) - cross(xi_x - xi_y, gy))
           / (2 * h.kappa());
}

double h_psi_reduced(double t,
                     Vec3 const& x,
                     Vec3 const& y,
                     TestFunction const& psi,
                     KernelConfig const& cfg)
{
    KernelEvaluator const ev(cfg);
    HelixParams const& h = cfg.h;
    Vec3 const k = ev.kernel_blob(x - y, cfg.blob_epsilon);
    return dot(k,
               cross(xi(y, h), psi.gradient(t, x))
                   - cross(xi(x, h), psi.gradient(t, y)))
           / (2 * h.kappa());
}

Vec3 helix_gradient(double t, Vec2 const& z, TestFunction const& psi, int theta_points)
{
    HelixParams const& h = psi.h();
    CompensatedVec3 sum;
    for (int k = 0; k < theta_points; ++k)
    {
        double const theta = -pi + 2 * pi * k / theta_points;
        Vec3 const x = screw(theta, embed(z), h);
        sum.add(rotate(-theta, psi.gradient(t, x)));
    }
    return (h.kappa() * 2 * pi / theta_points) * sum.value();
}

double helix_value(double t,
                   Vec2 const& z,
                   TestFunction const& psi,
                   int theta_points,
                   bool time_derivative)
{
    HelixParams const& h = psi.h();
    CompensatedSum sum;
    for (int k = 0; k < theta_points; ++k)
    {
        double const theta = -pi + 2 * pi * k / theta_points;
        Vec3 const x = screw(theta, embed(z), h);
        sum.add(time_derivative ? psi.time_derivative(t, x) : psi.value(t, x));
    }
    return h.kappa() * 2 * pi / theta_points * sum.value();
}

//---------------------------------------------------------------------------//
// RESIDUAL
//---------------------------------------------------------------------------//
/*!
 * The two halves of H_psi are equal after exchanging x and y, and the
 * inner integral over the source helix is kappa times the filament
 * velocity, which is helical. The pair sum is therefore
 * sum_j gamma_j G_j . u_j with G_j the helix integral of R_t^T grad psi
 * and u_j the velocity at (z_j, 0) without filament j.
 */
double nonlinear_term(TrajectoryState const& state,
                      double t,
                      TestFunction const& psi,
                      WeakFormConfig const& cfg)
{
    cfg.validate();
    auto const g = helix_gradients(state, t, psi, cfg.theta_points);
    if (all_zero(g))
        return 0;
    auto const u = other_velocities(state, cfg.eval_cfg);
    auto const& w = state.particles;
    CompensatedSum sum;
    for (std::size_t j = 0; j < w.size(); ++j)
        sum.add(w[j].gamma * dot(g[j], u[j]));
    return sum.value();
}

WeakResidual weak_residual(std::span<TrajectoryState const> snapshots,
                           TestFunction const& psi,
                           WeakFormConfig const& cfg)
{
    cfg.validate();
    auto const times = horizon_times(snapshots, psi.horizon());
    std::vector<double> f_time(times.size()), f_nonlin(times.size());
    WeakResidual out;
    for (std::size_t k = 0; k < times.size(); ++k)
    {
        auto const& s = snapshots[k];
        auto const& w = s.particles;
        double const t = times[k];
        if (t >= psi.horizon())
            continue;
        CompensatedSum sum;
        for (std::size_t j = 0; j < w.size(); ++j)
        {
            sum.add(w[j].gamma
                    * helix_value(t, w[j].z, psi, cfg.theta_points, true));
        }
        f_time[k] = sum.value();

        auto const g = helix_gradients(s, t, psi, cfg.theta_points);
        if (all_zero(g))
            continue;
        auto const u = other_velocities(s, cfg.eval_cfg);
        CompensatedSum nl, l2;
        for (std::size_t j = 0; j < w.size(); ++j)
        {
            nl.add(w[j].gamma * dot(g[j], u[j]));
            l2.add(w[j].area * dot(u[j], u[j]));
        }
        f_nonlin[k] = nl.value();
        out.velocity_l2 = std::sqrt(w.h().period() * l2.value());
    }
    out.time_term = trapezoid(times, f_time);
    out.nonlinear_term = trapezoid(times, f_nonlin);
    CompensatedSum init;
    for (auto const& p : snapshots.front().particles.particles())
        init.add(p.gamma * helix_value(0, p.z, psi, cfg.theta_points, false));
    out.initial_term = init.value();
    out.residual
        = std::fabs(out.time_term + out.nonlinear_term + out.initial_term);
    return out;
}

//---------------------------------------------------------------------------//
// SPLITTING
//---------------------------------------------------------------------------//
SplitParts split_pairs(TrajectoryState const& state,
                       double t,
                       TestFunction const& psi,
                       CutoffPair const& cuts,
                       WeakFormConfig const& cfg)
{
    cfg.validate();
    cuts.validate(psi, state.particles.h());
    auto const table = pair_table(state, t, psi, cuts.big_r, cfg);
    return split(table, state, t, psi, cuts, cfg);
}

double near_part(TrajectoryState const& state,
                 double t,
                 TestFunction const& psi,
                 double delta,
                 double blob_epsilon,
                 WeakFormConfig const& cfg)
{
    cfg.validate();
    check_delta(delta, state.particles.h());
    auto const table = pair_table(state, t, psi, inf, cfg);
    return near_sum(
        near_values(table, state, t, psi, delta, blob_epsilon, cfg));
}

SplittingReport splitting_report(std::span<TrajectoryState const> snapshots,
                                 TestFunction const& psi,
                                 CutoffPair const& cuts,
                                 WeakFormConfig const& cfg,
                                 int refinement_levels)
{
    cfg.validate();
    if (snapshots.empty())
        throw ValidationError("insufficient_snapshots",
                              "weak residual needs at least 4 snapshots");
    cuts.validate(psi, snapshots.front().particles.h());
    if (refinement_levels < 1)
        throw ValidationError("invalid_refinement_levels",
                              "refinement needs at least one halving");
    auto const times = horizon_times(snapshots, psi.horizon());

    SplittingReport report;
    report.near_exponent = cfg.near_exponent();
    std::vector<double> total(times.size()), near(times.size()),
        bulk(times.size()), far(times.size());
    std::size_t const mid = (times.size() - 1) / 2;
    for (std::size_t k = 0; k < times.size(); ++k)
    {
        if (times[k] >= psi.horizon())
            continue;
        auto const table = pair_table(snapshots[k], times[k], psi, cuts.big_r, cfg);
        SplitParts const parts = split(table, snapshots[k], times[k], psi, cuts, cfg);
        total[k] = parts.total;
        near[k] = parts.near;
        bulk[k] = parts.bulk;
        far[k] = parts.far;
        if (k != mid)
            continue;
        // Halving table with the unregularized kernel
        double delta = cuts.delta;
        for (int level = 0; level <= refinement_levels; ++level)
        {
            RefinementRow row{delta,
                              near_sum(near_values(
                                  table, snapshots[k], times[k], psi, delta, 0, cfg)),
                              0};
            if (!report.refinement.empty())
                row.ratio = row.near / report.refinement.back().near;
            report.refinement.push_back(row);
            delta /= 2;
        }
        report.far_times_r = parts.far * cuts.big_r;
    }
    report.parts = {trapezoid(times, total),
                    trapezoid(times, near),
                    trapezoid(times, bulk),
                    trapezoid(times, far)};
    return report;
}

//---------------------------------------------------------------------------//
}  // namespace helix
