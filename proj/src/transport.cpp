//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file transport.cpp
//---------------------------------------------------------------------------//
#include "helix/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "helix/error.hpp"
#include "helix/parallel.hpp"

namespace helix
{
namespace
{
using std::numbers::pi;

boost::math::quadrature::tanh_sinh<double>& tanh_sinh()
{
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator;
}

//---------------------------------------------------------------------------//
//! Angle of the circle |y - z| = r lying inside the disc |y - c| < R,
//! with s = |z - c|
double inside_arc(double r, double s, double big_r)
{
    if (!(s > 0))
        return r < big_r ? 2 * pi : 0;
    double const c = (s * s + r * r - big_r * big_r) / (2 * r * s);
    if (c <= -1)
        return 2 * pi;
    if (c >= 1)
        return 0;
    return 2 * std::acos(c);
}

double disc_mollified(DiscComponent const& d, Vec2 const& z, MollifierSpec const& m)
{
    double const s = norm(z - d.centre);
    double const eps = m.radius();
    double const big_r = d.radius;
    if (s >= big_r + eps)
        return 0;
    if (s + eps <= big_r)
        return d.amplitude;

    // Split where the arc length is not smooth
    std::vector<double> cuts{0, eps};
    for (double b : {std::fabs(big_r - s), big_r + s})
    {
        if (b > 0 && b < eps)
            cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    auto f = [&](double r) { return m.radial(r) * inside_arc(r, s, big_r) * r; };
    double sum = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    {
        if (cuts[i + 1] > cuts[i])
            sum += tanh_sinh().integrate(f, cuts[i], cuts[i + 1], 1e-14);
    }
    return d.amplitude * sum;
}

//---------------------------------------------------------------------------//
Vec3 position(TrajectoryState const& s, std::size_t i)
{
    Vec3 const base = embed(s.particles[i].z);
    if (s.heights.empty())
        return base;
    return screw(s.heights[i] / s.particles.h().kappa(), base, s.particles.h());
}

//! State whose particles sit at the given points
TrajectoryState at_points(TrajectoryState const& s,
                          std::vector<Vec3> const& y,
                          bool keep_heights)
{
    HelixParams const& h = s.particles.h();
    TrajectoryState out{s.t, s.particles, s.background, {}};
    std::vector<Vec2> z(y.size());
    if (keep_heights)
        out.heights.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
    {
        z[i] = project_to_slice(y[i], h).z;
        if (keep_heights)
            out.heights[i] = y[i].z;
    }
    out.particles.set_positions(z);
    return out;
}

std::vector<Vec3> axpy(std::vector<Vec3> const& x, double a, std::vector<Vec3> const& v)
{
    std::vector<Vec3> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i] + a * v[i];
    return r;
}

struct StepCounters
{
    int large = 0;
    int halved = 0;
};

TrajectoryState advance(TrajectoryState const& s,
                        double dt,
                        SimulationConfig const& cfg,
                        std::vector<Vec3> const* k1_given,
                        int depth,
                        StepCounters& counters)
{
    std::size_t const n = s.particles.size();
    std::vector<Vec3> x0(n);
    for (std::size_t i = 0; i < n; ++i)
        x0[i] = position(s, i);
    // Every stage point is carried at height x3 so the velocity is rotated
    // from its slice representative
    auto velocity = [&](std::vector<Vec3> const& y) {
        return state_velocities(at_points(s, y, true), cfg.eval_cfg);
    };

    std::vector<Vec3> const k1 = k1_given ? *k1_given : velocity(x0);
    std::vector<Vec3> x1;
    if (cfg.integrator == Integrator::euler)
    {
        x1 = axpy(x0, dt, k1);
    }
    else
    {
        auto const k2 = velocity(axpy(x0, dt / 2, k1));
        auto const k3 = velocity(axpy(x0, dt / 2, k2));
        auto const k4 = velocity(axpy(x0, dt, k3));
        x1.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            x1[i] = x0[i] + (dt / 6) * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }

    double disp = 0;
    for (std::size_t i = 0; i < n; ++i)
        disp = std::max(disp, norm(x1[i] - x0[i]));
    double const eps = cfg.eval_cfg.blob_epsilon;
    if (disp > cfg.max_displacement_factor * eps)
    {
        if (depth >= cfg.max_halvings)
            throw NumericalError("step_rejected",
                                 "particle displacement "
                                     + std::to_string(disp)
                                     + " exceeds the safety bound after "
                                     + std::to_string(depth) + " halvings");
        ++counters.halved;
        auto const half = advance(s, dt / 2, cfg, &k1, depth + 1, counters);
        return advance(half, dt / 2, cfg, nullptr, depth + 1, counters);
    }
    if (disp > eps)
        ++counters.large;

    TrajectoryState out = at_points(s, x1, !cfg.reproject_each_step);
    out.t = s.t + dt;
    return out;
}

constexpr int swirl_probes = 16;

double relative(double num, double den)
{
    return den > 0 ? num / den : 0;
}

}  // namespace

//---------------------------------------------------------------------------//
// MOLLIFIER AND INITIAL DATA
//---------------------------------------------------------------------------//
MollifierSpec::MollifierSpec(int n) : n_(n)
{
    if (n < 1)
        throw ValidationError("invalid_mollifier_index",
                              "mollifier index must be a positive integer");
}

double MollifierSpec::normalization()
{
    // 2 pi int_0^1 exp(-1/(1-t^2)) t dt = pi (1/e - E1(1))
    static double const c
        = 1 / (pi * (std::exp(-1.0) - boost::math::expint(1, 1.0)));
    return c;
}

double MollifierSpec::radial(double r) const
{
    double const t = n_ * r;
    if (!(t < 1))
        return 0;
    return double(n_) * n_ * normalization() * std::exp(-1 / (1 - t * t));
}

SliceField::SliceField(std::vector<DiscComponent> discs)
    : discs_(std::move(discs))
{
    for (auto const& d : discs_)
    {
        if (!(d.radius > 0) || !std::isfinite(d.amplitude)
            || !std::isfinite(d.centre.x) || !std::isfinite(d.centre.y))
            throw ValidationError("invalid_initial_data",
                                  "disc radius must be positive and finite");
    }
}

double SliceField::operator()(Vec2 const& z) const
{
    double v = 0;
    for (auto const& d : discs_)
    {
        if (norm(z - d.centre) < d.radius)
            v += d.amplitude;
    }
    return v;
}

double SliceField::mass() const
{
    CompensatedSum sum;
    for (auto const& d : discs_)
        sum.add(d.amplitude * pi * d.radius * d.radius);
    return sum.value();
}

double SliceField::support_radius() const
{
    double r = 0;
    for (auto const& d : discs_)
        r = std::max(r, norm(d.centre) + d.radius);
    return r;
}

double SliceField::mollified(Vec2 const& z, MollifierSpec const& m) const
{
    double v = 0;
    for (auto const& d : discs_)
        v += disc_mollified(d, z, m);
    return v;
}

SliceField disc_patch(double radius, double amplitude)
{
    return SliceField({{{0, 0}, radius, amplitude}});
}

SliceField dipole(double half_separation, double radius, double amplitude)
{
    if (!(half_separation > radius))
        throw ValidationError("invalid_initial_data",
                              "dipole discs must not overlap");
    return SliceField({{{half_separation, 0}, radius, amplitude},
                       {{-half_separation, 0}, radius, -amplitude}});
}

SliceField ring(double r_inner, double r_outer, double amplitude)
{
    if (!(r_inner > 0) || !(r_outer > r_inner))
        throw ValidationError("invalid_initial_data",
                              "ring needs 0 < r_inner < r_outer");
    return SliceField(
        {{{0, 0}, r_outer, amplitude}, {{0, 0}, r_inner, -amplitude}});
}

VorticityParticles radial_steady(HelixParams const& h, RadialSteadySpec const& spec)
{
    int const n = spec.ring_particles;
    if (n < 2 || !(spec.r_inner > 0) || !(spec.r_outer > spec.r_inner))
        throw ValidationError("invalid_initial_data",
                              "radial-steady needs two or more ring particles "
                              "and 0 < r_inner < r_outer");
    double const mid = (spec.r_inner + spec.r_outer) / 2;
    double const outer_edge = spec.r_outer + (spec.r_outer - mid);
    std::vector<Particle> ps;
    double const centre_area = pi * spec.r_inner * spec.r_inner / 4;
    ps.push_back({{0, 0}, spec.centre_gamma, centre_area});
    double const inner_area = (pi * mid * mid - centre_area) / n;
    double const outer_area = pi * (outer_edge * outer_edge - mid * mid) / n;
    double const outer_gamma = -(spec.centre_gamma + spec.inner_gamma) / n;
    for (auto [radius, gamma, area] :
         {std::tuple{spec.r_inner, spec.inner_gamma / n, inner_area},
          std::tuple{spec.r_outer, outer_gamma, outer_area}})
    {
        for (int k = 0; k < n; ++k)
        {
            double const a = 2 * pi * k / n;
            ps.push_back({{radius * std::cos(a), radius * std::sin(a)}, gamma, area});
        }
    }
    return VorticityParticles(h, std::move(ps));
}

VorticityParticles mollify_initial(SliceField const& omega0,
                                   MollifierSpec const& m,
                                   double spacing,
                                   HelixParams const& h)
{
    if (!(spacing > 0) || !std::isfinite(spacing))
        throw ValidationError("invalid_resolution",
                              "particle spacing must be positive");
    if (omega0.discs().empty())
        throw ValidationError("invalid_initial_data",
                              "initial vorticity has empty support");
    double const extent = omega0.support_radius() + m.radius();
    if (2 * extent / spacing < 16)
        throw ValidationError("resolution_too_coarse",
                              "fewer than 16 particles across the support "
                              "diameter");
    long const k = long(std::ceil(extent / spacing));
    double const area = spacing * spacing;
    std::vector<Particle> ps;
    for (long j = -k; j < k; ++j)
    {
        for (long i = -k; i < k; ++i)
        {
            Vec2 const z{(i + 0.5) * spacing, (j + 0.5) * spacing};
            double const v = omega0.mollified(z, m);
            if (v != 0)
                ps.push_back({z, v * area, area});
        }
    }
    return VorticityParticles(h, std::move(ps));
}

std::vector<Quartet> grid_quartets(VorticityParticles const& w, double spacing)
{
    std::map<std::pair<long, long>, std::size_t> index;
    std::vector<std::pair<long, long>> cell(w.size());
    for (std::size_t p = 0; p < w.size(); ++p)
    {
        cell[p] = {std::lround(w[p].z.x / spacing - 0.5),
                   std::lround(w[p].z.y / spacing - 0.5)};
        index.emplace(cell[p], p);
    }
    std::vector<Quartet> result;
    for (std::size_t p = 0; p < w.size(); ++p)
    {
        auto const [i, j] = cell[p];
        auto right = index.find({i + 1, j});
        auto diag = index.find({i + 1, j + 1});
        auto up = index.find({i, j + 1});
        if (right != index.end() && diag != index.end() && up != index.end())
            result.push_back({p, right->second, diag->second, up->second});
    }
    return result;
}

double quartet_area(VorticityParticles const& w, Quartet const& q)
{
    double twice = 0;
    for (std::size_t k = 0; k < 4; ++k)
    {
        Vec2 const a = w[q[k]].z;
        Vec2 const b = w[q[(k + 1) % 4]].z;
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2;
}

//---------------------------------------------------------------------------//
// CONFIGURATION
//---------------------------------------------------------------------------//
char const* to_string(Integrator i)
{
    return i == Integrator::rk4 ? "rk4" : "euler";
}

void SimulationConfig::validate() const
{
    eval_cfg.validate();
    if (!(dt > 0) || !std::isfinite(dt))
        throw ValidationError("invalid_dt", "time step must be positive");
    if (!(t_end > 0) || !std::isfinite(t_end))
        throw ValidationError("invalid_t_end", "end time must be positive");
    if (!(dt < t_end))
        throw ValidationError("invalid_dt", "time step must be below t_end");
    if (diagnostics_every < 1)
        throw ValidationError("invalid_diagnostics_every",
                              "diagnostics cadence must be a positive integer");
    if (!(eval_cfg.blob_epsilon > 0))
        throw ValidationError("invalid_blob_epsilon",
                              "transport needs a positive blob radius");
    if (!(lp_exponent >= 1) || !std::isfinite(lp_exponent))
        throw ValidationError("invalid_lp_exponent",
                              "norm exponent p must be finite and >= 1");
    if (!(max_displacement_factor >= 1) || max_halvings < 0)
        throw ValidationError("invalid_step_control",
                              "displacement factor must be >= 1 and the "
                              "halving depth nonnegative");
    if (helicality_samples < 0)
        throw ValidationError("invalid_helicality_samples",
                              "helicality sample count must be nonnegative");
}

int SimulationConfig::steps() const
{
    // Guard against t_end / dt landing just above an integer
    return int(std::ceil(t_end / dt * (1 - 1e-12)));
}

int SimulationConfig::snapshots() const
{
    return (steps() + diagnostics_every - 1) / diagnostics_every + 1;
}

//---------------------------------------------------------------------------//
// VELOCITIES AND STEPPING
//---------------------------------------------------------------------------//
std::vector<Vec3> state_velocities(TrajectoryState const& state,
                                   VelocityEvalConfig const& cfg)
{
    auto const& w = state.particles;
    std::vector<Vec3> u;
    if (w.balanced())
    {
        u = velocity_at_particles(w, cfg, false);
        if (state.background)
        {
            for (std::size_t i = 0; i < w.size(); ++i)
                u[i] += background_velocity(embed(w[i].z), *state.background);
        }
    }
    else
    {
        if (!state.background)
            throw UnbalancedError(
                "unbalanced particles need a background profile");
        u = xi_at_particles(w, *state.background, cfg, false);
    }
    if (!state.heights.empty())
    {
        double const kappa = w.h().kappa();
        for (std::size_t i = 0; i < w.size(); ++i)
            u[i] = rotate(state.heights[i] / kappa, u[i]);
    }
    return u;
}

Vec3 state_velocity(Vec3 const& x,
                    TrajectoryState const& state,
                    VelocityEvalConfig const& cfg)
{
    auto const& w = state.particles;
    if (!w.balanced())
    {
        if (!state.background)
            throw UnbalancedError(
                "unbalanced particles need a background profile");
        return xi_operator(x, w, *state.background, cfg);
    }
    Vec3 u = velocity_filament(x, w, cfg);
    if (state.background)
        u += background_velocity(x, *state.background);
    return u;
}

TrajectoryState step(TrajectoryState const& state, SimulationConfig const& cfg)
{
    cfg.validate();
    StepCounters counters;
    return advance(state, cfg.dt, cfg, nullptr, 0, counters);
}

RunResult run(TrajectoryState const& initial,
              SimulationConfig const& cfg,
              std::span<Quartet const> quartets)
{
    cfg.validate();
    int const n_steps = cfg.steps();
    StepCounters counters;
    RunResult result;
    std::vector<std::vector<Vec3>> snapshot_u;

    TrajectoryState s = initial;
    if (cfg.reproject_each_step)
    {
        // Start on the slice
        std::vector<Vec3> x(s.particles.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = position(s, i);
        s = at_points(s, x, false);
    }
    std::vector<Vec3> u = state_velocities(s, cfg.eval_cfg);
    result.snapshots.push_back(s);
    snapshot_u.push_back(u);
    double const t0 = s.t;
    for (int k = 0; k < n_steps; ++k)
    {
        double const t_next
            = k + 1 == n_steps ? t0 + cfg.t_end : t0 + (k + 1) * cfg.dt;
        bool const have_u = !u.empty() || s.particles.empty();
        s = advance(s, t_next - s.t, cfg, have_u ? &u : nullptr, 0, counters);
        s.t = t_next;
        u.clear();
        if ((k + 1) % cfg.diagnostics_every == 0 || k + 1 == n_steps)
        {
            u = state_velocities(s, cfg.eval_cfg);
            result.snapshots.push_back(s);
            snapshot_u.push_back(u);
        }
    }

    result.report = conservation_report(result.snapshots, cfg.lp_exponent);
    result.report.large_displacement_steps = counters.large;
    result.report.halved_steps = counters.halved;

    HelixParams const& h = initial.particles.h();
    for (std::size_t k = 0; k < result.snapshots.size(); ++k)
    {
        auto const& snap = result.snapshots[k];
        auto& rec = result.report.records[k];
        auto const& us = snapshot_u[k];
        std::size_t const n = snap.particles.size();
        // Residuals relative to the largest speed, since symmetric points
        // can have zero velocity
        double umax = 0;
        for (auto const& v : us)
            umax = std::max(umax, norm(v));
        // A filament carries swirl -gamma / 2 pi off its core, which cancels
        // only outside every core: probe on a ring beyond the support, where
        // shielded data can have exponentially small speed
        double const eps = cfg.eval_cfg.blob_epsilon;
        double const r_s = particle_support_radius(snap.particles);
        double const r_probe = r_s + std::max(0.25 * r_s, 8 * eps);
        for (int q = 0; q < swirl_probes; ++q)
        {
            double const a = 2 * pi * (q + 0.5) / swirl_probes;
            Vec3 const x{r_probe * std::cos(a), r_probe * std::sin(a), 0};
            Vec3 const v = state_velocity(x, snap, cfg.eval_cfg);
            rec.max_swirl = std::max(
                rec.max_swirl,
                relative(std::fabs(swirl(v, x, h)),
                         std::max(norm(v), umax) * norm(xi(x, h))));
        }
        int const samples = std::min<int>(cfg.helicality_samples, int(n));
        for (int q = 0; q < samples; ++q)
        {
            std::size_t const i = std::size_t(q) * n / std::size_t(samples);
            Vec3 const x = position(snap, i);
            double const theta = 0.7 + 1.3 * q;
            Vec3 const moved = state_velocity(screw(theta, x, h), snap, cfg.eval_cfg);
            rec.max_helicality = std::max(
                rec.max_helicality,
                relative(norm(moved - rotate(theta, us[i])), umax));
        }
        if (!quartets.empty())
        {
            auto const d = area_distortion(
                result.snapshots.front().particles, snap.particles, quartets);
            rec.area_distortion = d.max;
            rec.area_distortion_mean = d.weighted_mean;
        }
    }
    result.final_state = s;
    return result;
}

//---------------------------------------------------------------------------//
// DIAGNOSTICS
//---------------------------------------------------------------------------//
double support_radius(TrajectoryState const& state)
{
    if (state.particles.empty())
        throw ValidationError("empty_particles",
                              "support radius of an empty particle set");
    return particle_support_radius(state.particles);
}

DiagnosticsReport conservation_report(std::span<TrajectoryState const> series,
                                      double p)
{
    if (!(p >= 1) || !std::isfinite(p))
        throw ValidationError("invalid_lp_exponent",
                              "norm exponent p must be finite and >= 1");
    DiagnosticsReport report;
    report.p = p;
    for (auto const& s : series)
    {
        DiagnosticsRecord rec;
        rec.t = s.t;
        CompensatedSum l1, l2, lp;
        for (auto const& part : s.particles.particles())
        {
            if (!(part.area > 0))
                continue;
            double const om = std::fabs(part.gamma / part.area);
            l1.add(om * part.area);
            l2.add(om * om * part.area);
            lp.add(std::pow(om, p) * part.area);
            rec.linf = std::max(rec.linf, om);
        }
        rec.l1 = l1.value();
        rec.l2 = std::sqrt(l2.value());
        rec.lp = std::pow(lp.value(), 1 / p);
        rec.total_circulation = s.particles.total_circulation();
        rec.support_radius = particle_support_radius(s.particles);
        if (!report.records.empty())
        {
            auto const& first = report.records.front();
            report.circulation_constant = report.circulation_constant
                                          && rec.total_circulation
                                                 == first.total_circulation;
            report.linf_constant = report.linf_constant
                                   && rec.linf == first.linf;
            report.lp_constant = report.lp_constant && rec.lp == first.lp
                                 && rec.l1 == first.l1 && rec.l2 == first.l2;
        }
        report.records.push_back(rec);
    }
    return report;
}

AreaDistortion area_distortion(VorticityParticles const& initial,
                               VorticityParticles const& current,
                               std::span<Quartet const> quartets)
{
    if (initial.size() != current.size())
        throw ValidationError("particle_count_mismatch",
                              "area distortion needs matching particle sets");
    AreaDistortion result;
    double weight = 0;
    double sum = 0;
    for (auto const& q : quartets)
    {
        double const a0 = quartet_area(initial, q);
        double const a1 = quartet_area(current, q);
        double const d = std::fabs(a1 / a0 - 1);
        double g = 0;
        for (auto i : q)
            g += std::fabs(initial[i].gamma);
        result.max = std::max(result.max, d);
        weight += g;
        sum += g * d;
    }
    if (weight > 0)
        result.weighted_mean = sum / weight;
    return result;
}

GronwallEnvelope gronwall_envelope(std::span<double const> t,
                                   std::span<double const> radius)
{
    if (t.size() != radius.size() || t.size() < 3)
        throw ValidationError("invalid_series",
                              "envelope needs three or more matching samples");
    GronwallEnvelope env;
    env.r0 = radius[0];
    std::size_t const half = t.size() / 2;
    for (std::size_t k = 1; k <= half; ++k)
    {
        double const dt = t[k] - t[0];
        env.rate = std::max(env.rate, std::log(radius[k] / env.r0) / dt);
    }
    for (std::size_t k = 1; k < t.size(); ++k)
    {
        double const bound = env.r0 * std::exp(2 * env.rate * (t[k] - t[0]));
        env.max_ratio = std::max(env.max_ratio, radius[k] / bound);
    }
    env.within = env.max_ratio <= 1 + 1e-12;
    return env;
}

//---------------------------------------------------------------------------//
}  // namespace helix
