//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file biotsavart.cpp
//---------------------------------------------------------------------------//
#include "helix/biotsavart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <boost/math/quadrature/gauss.hpp>

#include "helix/error.hpp"
#include "helix/parallel.hpp"
#include "helix/quadrature.hpp"

namespace helix
{
namespace
{
//---------------------------------------------------------------------------//
using std::numbers::pi;

constexpr int fine_points = 1 << 16;

//! Cosine and sine of the finest trapezoid nodes -pi + 2 pi k / N
struct TrigTable
{
    std::vector<double> c;
    std::vector<double> s;

    TrigTable() : c(fine_points), s(fine_points)
    {
        for (int k = 0; k < fine_points; ++k)
        {
            double const theta = -pi + 2 * pi * k / fine_points;
            c[k] = std::cos(theta);
            s[k] = std::sin(theta);
        }
    }
};

TrigTable const& trig()
{
    static TrigTable const table;
    return table;
}

int round_even(double n)
{
    int const i = int(std::ceil(n));
    return i + (i % 2);
}

//---------------------------------------------------------------------------//
//! Fixed-order compensated sum over sources, optionally skipping one
Vec3 filament_sum(FilamentIntegrator const& quad,
                  Vec3 const& x,
                  VorticityParticles const& w,
                  std::size_t skip)
{
    CompensatedVec3 sum;
    auto const ps = w.particles();
    for (std::size_t j = 0; j < ps.size(); ++j)
    {
        if (j == skip || ps[j].gamma == 0)
            continue;
        sum.add(ps[j].gamma * quad(x, ps[j].z));
    }
    return sum.value();
}

void require_balanced(VorticityParticles const& w)
{
    if (!w.balanced())
        throw UnbalancedError("total circulation "
                              + std::to_string(w.total_circulation())
                              + " is not zero");
}

constexpr std::size_t no_skip = std::size_t(-1);
constexpr std::size_t max_shared_particles = 3000;

//---------------------------------------------------------------------------//
//! b(t) = exp(-1 / (1 - t^2)) on (-1, 1)
double bump(double t)
{
    if (!(std::fabs(t) < 1))
        return 0;
    return std::exp(-1 / (1 - t * t));
}

}  // namespace

//---------------------------------------------------------------------------//
// FILAMENT INTEGRATOR
//---------------------------------------------------------------------------//
namespace
{
KernelConfig with_pitch(KernelConfig cfg, HelixParams const& h)
{
    cfg.h = h;
    return cfg;
}
}  // namespace

FilamentIntegrator::FilamentIntegrator(VelocityEvalConfig const& cfg,
                                       HelixParams const& h)
    : ev_(with_pitch(cfg.kernel_cfg, h))
    , kappa_(h.kappa())
    , period_(h.period())
    , eps_(cfg.blob_epsilon)
    , n0_(cfg.theta_quadrature_points)
    , nmax_(cfg.max_theta_points)
    , log_tol_(std::log(1 / cfg.tolerance))
{
    cfg.validate();
}

int FilamentIntegrator::nodes(double distance, double lambda) const
{
    if (!(eps_ > 0) && distance <= 1e-13 * lambda)
        throw SingularInputError("target lies on a filament");
    double const d_eff = std::sqrt(distance * distance + eps_ * eps_);
    double const need = log_tol_ * lambda / d_eff;
    int n = n0_;
    while (n < need && n < nmax_)
        n *= 2;
    if (n < need)
        throw NumericalError("quadrature_nonconvergence",
                             "filament quadrature needs more than "
                                 + std::to_string(nmax_) + " nodes");
    return n;
}

int FilamentIntegrator::nodes(Vec3 const& x, Vec2 const& z) const
{
    return this->nodes(this->closest_approach(x, z),
                       std::sqrt(dot(z, z) + kappa_ * kappa_));
}

Vec3 FilamentIntegrator::operator()(Vec3 const& x, Vec2 const& z) const
{
    auto const& table = trig();
    int const n = this->nodes(x, z);
    int const stride = fine_points / n;
    Vec3 sum;
    for (int k = 0; k < fine_points; k += stride)
    {
        double const c = table.c[k];
        double const s = table.s[k];
        double const theta = -pi + 2 * pi * k / fine_points;
        Vec3 const y{c * z.x + s * z.y, -s * z.x + c * z.y, kappa_ * theta};
        Vec3 const xi_y{y.y, -y.x, kappa_};
        sum += cross(ev_.kernel_blob(x - y, eps_), xi_y);
    }
    return (2 * pi / n) * sum;
}

std::pair<Vec3, Vec3>
FilamentIntegrator::pair(Vec2 const& a, Vec2 const& b) const
{
    // K((b,0) - S_t(a,0)) = -R_t K((a,0) - S_{-t}(b,0)), and -t is a node
    auto const& table = trig();
    double const lambda = std::sqrt(std::max(dot(a, a), dot(b, b))
                                    + kappa_ * kappa_);
    int const n = this->nodes(this->closest_approach(embed(a), b), lambda);
    int const stride = fine_points / n;
    thread_local std::vector<Vec3> values;
    values.resize(n);
    Vec3 const xa = embed(a);
    Vec3 at_a;
    for (int k = 0; k < n; ++k)
    {
        int const f = k * stride;
        double const c = table.c[f];
        double const s = table.s[f];
        double const theta = -pi + 2 * pi * f / fine_points;
        Vec3 const y{c * b.x + s * b.y, -s * b.x + c * b.y, kappa_ * theta};
        values[k] = ev_.kernel_blob(xa - y, eps_);
        at_a += cross(values[k], Vec3{y.y, -y.x, kappa_});
    }
    Vec3 at_b;
    for (int k = 0; k < n; ++k)
    {
        int const f = k * stride;
        double const c = table.c[f];
        double const s = table.s[f];
        Vec3 const& v = values[(n - k) % n];
        Vec3 const kern{-(c * v.x + s * v.y), -(-s * v.x + c * v.y), -v.z};
        Vec2 const ya{c * a.x + s * a.y, -s * a.x + c * a.y};
        at_b += cross(kern, Vec3{ya.y, -ya.x, kappa_});
    }
    double const w = 2 * pi / n;
    return {w * at_a, w * at_b};
}

double FilamentIntegrator::closest_approach(Vec3 const& x, Vec2 const& z) const
{
    auto const& table = trig();
    int const stride = fine_points / n0_;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0;
    double const xx = x.x * x.x + x.y * x.y + dot(z, z);
    double const p = x.x * z.x + x.y * z.y;
    double const q = x.x * z.y - x.y * z.x;
    for (int k = 0; k < fine_points; k += stride)
    {
        double const theta = -pi + 2 * pi * k / fine_points;
        double dz = x.z - kappa_ * theta;
        dz -= period_ * std::round(dz / period_);
        double const f = xx - 2 * (p * table.c[k] + q * table.s[k]) + dz * dz;
        if (f < best)
        {
            best = f;
            best_theta = theta;
        }
    }
    // Newton refinement on the branch of the nearest image
    double const target
        = x.z
          - period_ * std::round((x.z - kappa_ * best_theta) / period_);
    double const max_step = 2 * pi / n0_;
    double theta = best_theta;
    for (int it = 0; it < 6; ++it)
    {
        double const c = std::cos(theta);
        double const s = std::sin(theta);
        double const g = p * c + q * s;
        double const dg = -p * s + q * c;
        double const h = target - kappa_ * theta;
        best = std::min(best, xx - 2 * g + h * h);
        double const f1 = -2 * dg - 2 * kappa_ * h;
        double const f2 = 2 * g + 2 * kappa_ * kappa_;
        if (!(f2 > 0))
            break;
        double const step = std::clamp(-f1 / f2, -max_step, max_step);
        theta += step;
        if (std::fabs(step) < 1e-15)
            break;
    }
    double const h = target - kappa_ * theta;
    best = std::min(
        best, xx - 2 * (p * std::cos(theta) + q * std::sin(theta)) + h * h);
    return std::sqrt(std::max(best, 0.0));
}

//---------------------------------------------------------------------------//
// VORTICITY PARTICLES
//---------------------------------------------------------------------------//
VorticityParticles::VorticityParticles(HelixParams h,
                                       std::vector<Particle> particles)
    : h_(h), particles_(std::move(particles))
{
    for (auto const& p : particles_)
    {
        if (!(p.area > 0) || !std::isfinite(p.area))
            throw ValidationError("invalid_area",
                                  "particle areas must be positive");
        if (!std::isfinite(p.z.x) || !std::isfinite(p.z.y)
            || !std::isfinite(p.gamma))
            throw ValidationError("invalid_particle",
                                  "particle data must be finite");
    }
    this->refresh();
}

bool VorticityParticles::balanced() const
{
    return std::fabs(total_) <= 1e-12 * absolute_;
}

void VorticityParticles::set_positions(std::span<Vec2 const> z)
{
    if (z.size() != particles_.size())
        throw ValidationError("invalid_particle", "position count mismatch");
    for (std::size_t i = 0; i < z.size(); ++i)
    {
        if (!std::isfinite(z[i].x) || !std::isfinite(z[i].y))
            throw ValidationError("invalid_particle",
                                  "particle positions must be finite");
        particles_[i].z = z[i];
    }
}

void VorticityParticles::refresh()
{
    CompensatedSum total;
    CompensatedSum absolute;
    for (auto const& p : particles_)
    {
        total.add(p.gamma);
        absolute.add(std::fabs(p.gamma));
    }
    total_ = total.value();
    absolute_ = absolute.value();
}

//---------------------------------------------------------------------------//
// RADIAL PROFILE
//---------------------------------------------------------------------------//
RadialProfile::RadialProfile(double r_inner, double r_outer, double amplitude)
    : r_inner_(r_inner), r_outer_(r_outer), amplitude_(amplitude)
{
    if (!(r_inner > 0) || !(r_outer > r_inner) || !std::isfinite(r_outer))
        throw ValidationError("invalid_profile",
                              "profile needs 0 < r_inner < r_outer");
    if (!std::isfinite(amplitude))
        throw ValidationError("invalid_profile", "amplitude must be finite");
    total_ = this->cumulative(r_outer_);
}

double RadialProfile::operator()(double r) const
{
    double const mid = (r_inner_ + r_outer_) / 2;
    double const half = (r_outer_ - r_inner_) / 2;
    return amplitude_ * bump((r - mid) / half);
}

double RadialProfile::cumulative(double r) const
{
    if (r <= r_inner_)
        return 0;
    r = std::min(r, r_outer_);
    double const mid = (r_inner_ + r_outer_) / 2;
    double const half = (r_outer_ - r_inner_) / 2;
    double const t_end = (r - mid) / half;
    // Integrate in t over equal panels of [-1, t_end]
    constexpr int panels = 16;
    double const width = (t_end + 1) / panels;
    auto integrand = [&](double t) { return bump(t) * (mid + half * t); };
    double sum = 0;
    for (int i = 0; i < panels; ++i)
    {
        double const a = -1 + i * width;
        sum += boost::math::quadrature::gauss<double, 20>::integrate(
            integrand, a, a + width);
    }
    return amplitude_ * half * sum;
}

RadialProfile
RadialProfile::with_mass(double r_inner, double r_outer, double mass)
{
    RadialProfile unit(r_inner, r_outer, 1.0);
    return RadialProfile(
        r_inner, r_outer, mass / (2 * pi * unit.weighted_integral()));
}

//---------------------------------------------------------------------------//
SteadyBackground::SteadyBackground(RadialProfile profile, HelixParams h)
    : profile_(profile), h_(h)
{
}

double SteadyBackground::beta() const
{
    return std::fabs(profile_.weighted_integral()) / h_.kappa();
}

//---------------------------------------------------------------------------//
void VelocityEvalConfig::validate() const
{
    auto pow2 = [](int n) { return n > 0 && (n & (n - 1)) == 0; };
    if (!pow2(theta_quadrature_points) || theta_quadrature_points < 8)
        throw ValidationError("invalid_theta_points",
                              "theta_quadrature_points must be a power of "
                              "two >= 8");
    if (!pow2(max_theta_points) || max_theta_points < theta_quadrature_points
        || max_theta_points > fine_points)
        throw ValidationError("invalid_theta_points",
                              "max_theta_points must be a power of two in "
                              "[theta_quadrature_points, 65536]");
    if (!(tolerance > 0 && tolerance < 1))
        throw ValidationError("invalid_tolerance",
                              "tolerance must lie in (0, 1)");
    if (!(blob_epsilon >= 0) || !std::isfinite(blob_epsilon))
        throw ValidationError("invalid_blob_epsilon",
                              "blob_epsilon must be nonnegative");
    if (threads < 1)
        throw ValidationError("invalid_threads", "threads must be positive");
    kernel_cfg.validate();
}

//---------------------------------------------------------------------------//
// FILAMENT VELOCITY
//---------------------------------------------------------------------------//
Vec3 velocity_filament(Vec3 const& x,
                       VorticityParticles const& w,
                       VelocityEvalConfig const& cfg)
{
    require_balanced(w);
    FilamentIntegrator const quad(cfg, w.h());
    return filament_sum(quad, x, w, no_skip);
}

std::vector<Vec3> velocity_filament(std::span<Vec3 const> targets,
                                    VorticityParticles const& w,
                                    VelocityEvalConfig const& cfg)
{
    require_balanced(w);
    FilamentIntegrator const quad(cfg, w.h());
    std::vector<Vec3> result(targets.size());
    parallel_for(targets.size(), cfg.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            result[i] = filament_sum(quad, targets[i], w, no_skip);
    });
    return result;
}

namespace
{
//! Unchecked filament sums at every particle
std::vector<Vec3> particle_sums(VorticityParticles const& w,
                                VelocityEvalConfig const& cfg,
                                bool exclude_self)
{
    FilamentIntegrator const quad(cfg, w.h());
    std::size_t const n = w.size();
    std::vector<Vec3> result(n);
    if (n > max_shared_particles)
    {
        parallel_for(n, cfg.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                result[i] = filament_sum(
                    quad, embed(w[i].z), w, exclude_self ? i : no_skip);
        });
        return result;
    }

    // Each unordered pair is integrated once; row r and row n - 1 - r share
    // a work item to balance the triangle
    std::vector<Vec3> m(n * n);
    auto row = [&](std::size_t i) {
        if (!exclude_self)
            m[i * n + i] = quad(embed(w[i].z), w[i].z);
        for (std::size_t j = i + 1; j < n; ++j)
        {
            if (w[i].gamma == 0 && w[j].gamma == 0)
                continue;
            auto const [at_i, at_j] = quad.pair(w[i].z, w[j].z);
            m[i * n + j] = at_i;
            m[j * n + i] = at_j;
        }
    };
    parallel_for((n + 1) / 2, cfg.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t r = b; r < e; ++r)
        {
            row(r);
            if (n - 1 - r != r)
                row(n - 1 - r);
        }
    });
    for (std::size_t i = 0; i < n; ++i)
    {
        CompensatedVec3 sum;
        for (std::size_t j = 0; j < n; ++j)
        {
            if ((j == i && exclude_self) || w[j].gamma == 0)
                continue;
            sum.add(w[j].gamma * m[i * n + j]);
        }
        result[i] = sum.value();
    }
    return result;
}
}  // namespace

std::vector<Vec3> velocity_at_particles(VorticityParticles const& w,
                                        VelocityEvalConfig const& cfg,
                                        bool exclude_self)
{
    require_balanced(w);
    return particle_sums(w, cfg, exclude_self);
}

//---------------------------------------------------------------------------//
// THREE-DIMENSIONAL ORACLE
//---------------------------------------------------------------------------//
namespace
{
struct OracleLevel
{
    Vec3 value;
    double magnitude = 0;
    double mass = 0;
    double abs_mass = 0;
};

/*!
 * One quadrature level of the slab integral.
 *
 * A smooth partition of unity chi(|y - x|) splits the integrand: the ball
 * part uses spherical coordinates about x, which absorb the 1/|x - y|^2
 * singularity; the rest uses polar coordinates about the axis over the
 * support disc and the trapezoid rule over one period in y3 centred at x3.
 * The radial rule is the midpoint rule, which converges faster than any
 * power when omega vanishes near the axis and at the support radius. When
 * omega vanishes at every ball node the split is dropped.
 */
OracleLevel oracle_level(Vec3 const& x,
                         ScalarField const& omega,
                         double support,
                         KernelEvaluator const& ev,
                         OracleConfig const& ocfg,
                         double scale)
{
    double const kappa = ev.config().h.kappa();
    double const period = ev.config().h.period();
    double const feature = ocfg.feature;
    double const ball = std::min(0.4 * period, 0.5 * support);
    auto chi = [ball](double r) { return 1 - smooth_step(2 * r / ball - 1); };
    auto integrand = [&](Vec3 const& y, double om) {
        return (om / kappa)
               * cross(ev.kernel_blob(x - y, 0), xi(y, ev.config().h));
    };

    // Remainder grid without the split
    int n_rho = int(std::ceil(scale * std::max(16.0, 3 * support / feature)));
    int n_psi
        = round_even(scale * std::max(32.0, 3 * pi * support / feature));
    int n_s = round_even(scale * std::max(32.0, 3 * pi * support / feature));
    auto node = [&](int k, int i, int j) {
        double const r = (i + 0.5) * support / n_rho;
        double const psi = j * 2 * pi / n_psi;
        return Vec3{r * std::cos(psi),
                    r * std::sin(psi),
                    x.z - period / 2 + (k + 0.5) * period / n_s};
    };

    // Skip the split when omega vanishes well away from x
    bool near_support = false;
    if (norm(x.tilde()) < support + ball)
    {
        double const spacing = std::max(
            {support / n_rho, 2 * pi * support / n_psi, period / n_s});
        double const reach = std::max(4 * spacing, 0.25 * ball);
        for (int k = 0; k < n_s && !near_support; ++k)
        {
            for (int i = 0; i < n_rho && !near_support; ++i)
            {
                for (int j = 0; j < n_psi; ++j)
                {
                    Vec3 const y = node(k, i, j);
                    if (norm(y - x) < reach && omega(y) != 0)
                    {
                        near_support = true;
                        break;
                    }
                }
            }
        }
    }

    // Ball about x
    CompensatedVec3 ball_total;
    CompensatedSum magnitude;
    bool use_ball = false;
    if (near_support)
    {
        int const n_r
            = int(std::ceil(scale * std::max(12.0, 0.75 * ball / feature)));
        int const n_a
            = int(std::ceil(scale * std::max(16.0, 1.5 * pi * ball / feature)));
        int const n_p
            = round_even(scale * std::max(32.0, 3 * pi * ball / feature));
        auto const inner = gauss_legendre(n_r, 0, ball / 2);
        auto const outer = gauss_legendre(n_r, ball / 2, ball);
        auto const alpha = gauss_legendre(n_a, 0, pi);
        double const w_p = 2 * pi / n_p;
        for (auto const* panel : {&inner, &outer})
        {
            for (std::size_t i = 0; i < panel->x.size(); ++i)
            {
                double const r = panel->x[i];
                double const wr = panel->w[i] * chi(r) * r * r * w_p;
                if (wr == 0)
                    continue;
                for (int a = 0; a < n_a; ++a)
                {
                    double const ca = std::cos(alpha.x[a]);
                    double const sa = std::sin(alpha.x[a]);
                    double const wa = wr * alpha.w[a] * sa;
                    for (int p = 0; p < n_p; ++p)
                    {
                        double const phi = p * w_p;
                        Vec3 const y = x
                                       + r
                                             * Vec3{sa * std::cos(phi),
                                                    sa * std::sin(phi),
                                                    ca};
                        double const om = omega(y);
                        if (om == 0)
                            continue;
                        use_ball = true;
                        Vec3 const f = wa * integrand(y, om);
                        ball_total.add(f);
                        magnitude.add(norm(f));
                    }
                }
            }
        }
    }

    // Remainder on the support disc
    CompensatedVec3 total;
    CompensatedSum mass;
    CompensatedSum abs_mass;
    if (use_ball)
    {
        double const near = support / ball;
        n_rho = std::max(n_rho, int(std::ceil(scale * 8 * near)));
        n_psi = std::max(n_psi, round_even(scale * 16 * pi * near));
        n_s = std::max(n_s, round_even(scale * 8 * period / ball));
    }
    double const w_rho = support / n_rho;
    double const w_psi = 2 * pi / n_psi;
    double const w_s = period / n_s;
    for (int k = 0; k < n_s; ++k)
    {
        double const y3 = x.z - period / 2 + (k + 0.5) * w_s;
        for (int i = 0; i < n_rho; ++i)
        {
            double const r = (i + 0.5) * w_rho;
            double const wr = w_rho * r * w_psi * w_s;
            for (int j = 0; j < n_psi; ++j)
            {
                double const psi = j * w_psi;
                Vec3 const y{r * std::cos(psi), r * std::sin(psi), y3};
                double const om = omega(y);
                if (om == 0)
                    continue;
                mass.add(wr * om);
                abs_mass.add(wr * std::fabs(om));
                double const cut = use_ball ? 1 - chi(norm(y - x)) : 1;
                if (cut == 0)
                    continue;
                Vec3 const f = (wr * cut) * integrand(y, om);
                total.add(f);
                magnitude.add(norm(f));
            }
        }
    }
    total.add(ball_total.value());

    OracleLevel out;
    out.value = total.value();
    out.magnitude = magnitude.value();
    out.mass = mass.value();
    out.abs_mass = abs_mass.value();
    return out;
}

}  // namespace

OracleResult velocity_oracle_3d(Vec3 const& x,
                                ScalarField const& omega,
                                double support_radius,
                                VelocityEvalConfig const& cfg,
                                OracleConfig const& ocfg)
{
    cfg.validate();
    if (!(support_radius > 0) || !(ocfg.feature > 0) || !(ocfg.tolerance > 0)
        || ocfg.min_level < 1 || ocfg.max_level < ocfg.min_level)
        throw ValidationError("invalid_oracle_config",
                              "oracle needs positive support, feature, "
                              "tolerance and 1 <= min_level <= max_level");
    KernelConfig kcfg = cfg.kernel_cfg;
    kcfg.blob_epsilon = 0;
    KernelEvaluator const ev(kcfg);

    OracleLevel prev;
    bool have_prev = false;
    for (int level = ocfg.min_level; level <= ocfg.max_level; ++level)
    {
        double const scale = std::pow(1.5, level - 1);
        OracleLevel cur = oracle_level(x, omega, support_radius, ev, ocfg, scale);
        if (std::fabs(cur.mass) > 1e-3 * cur.abs_mass)
            throw UnbalancedError("integral of omega over the slab is "
                                  + std::to_string(cur.mass));
        if (have_prev)
        {
            double const err = norm(cur.value - prev.value);
            // Relative to the integral of the absolute integrand, which
            // stays meaningful under cancellation
            double const scale_ref = std::max(norm(cur.value), cur.magnitude);
            if (err <= ocfg.tolerance * scale_ref)
            {
                double const slack = std::max(10 * ocfg.tolerance, 1e-9);
                if (std::fabs(cur.mass) > slack * cur.abs_mass)
                    throw UnbalancedError("integral of omega over the slab is "
                                          + std::to_string(cur.mass));
                return {cur.value, err};
            }
            if (level == ocfg.max_level)
                throw NumericalError(
                    "quadrature_nonconvergence",
                    "oracle refinements differ by " + std::to_string(err));
        }
        prev = cur;
        have_prev = true;
    }
    throw NumericalError("quadrature_nonconvergence",
                         "oracle needs at least two levels");
}

//---------------------------------------------------------------------------//
// BACKGROUND AND XI
//---------------------------------------------------------------------------//
Vec3 background_velocity(Vec3 const& x, SteadyBackground const& bg)
{
    double const r2 = x.x * x.x + x.y * x.y;
    double const circ = bg.profile().cumulative(std::sqrt(r2));
    if (circ == 0)
        return {};
    return {-circ * x.y / r2, circ * x.x / r2, circ / bg.h().kappa()};
}

namespace
{
void require_normalized(double mass, double abs_mass, RadialProfile const& p)
{
    double const profile_mass = 2 * pi * p.weighted_integral();
    if (std::fabs(mass - profile_mass)
        > 1e-10 * std::max({abs_mass, std::fabs(profile_mass), 1e-300}))
        throw ValidationError("profile_normalization",
                              "2 pi int phi r dr = "
                                  + std::to_string(profile_mass)
                                  + " differs from the vorticity integral "
                                  + std::to_string(mass));
}
}  // namespace

Vec3 xi_operator(Vec3 const& x,
                 VorticityParticles const& w,
                 SteadyBackground const& bg,
                 VelocityEvalConfig const& cfg)
{
    require_normalized(
        w.total_circulation(), w.absolute_circulation(), bg.profile());
    FilamentIntegrator const quad(cfg, w.h());
    // The filament sum of the profile alone is ubar - (0, 0, Gamma / kappa)
    Vec3 u = filament_sum(quad, x, w, no_skip);
    u.z += bg.profile().weighted_integral() / bg.h().kappa();
    return u;
}

std::vector<Vec3> xi_at_particles(VorticityParticles const& w,
                                  SteadyBackground const& bg,
                                  VelocityEvalConfig const& cfg,
                                  bool exclude_self)
{
    require_normalized(
        w.total_circulation(), w.absolute_circulation(), bg.profile());
    auto u = particle_sums(w, cfg, exclude_self);
    double const axial = bg.profile().weighted_integral() / bg.h().kappa();
    for (auto& v : u)
        v.z += axial;
    return u;
}

//---------------------------------------------------------------------------//
// DECAY
//---------------------------------------------------------------------------//
double particle_support_radius(VorticityParticles const& w)
{
    double r = 0;
    for (auto const& p : w.particles())
        r = std::max(r, norm(p.z));
    return r;
}

namespace
{
constexpr int decay_radii = 9;
constexpr int decay_directions = 8;
constexpr int decay_heights = 3;

std::vector<Vec3> decay_probes(double support, HelixParams const& h)
{
    std::vector<Vec3> probes;
    for (int i = 0; i < decay_radii; ++i)
    {
        double const r
            = 4 * support * std::pow(8.0, double(i) / (decay_radii - 1));
        for (int k = 0; k < decay_heights; ++k)
        {
            double const x3 = h.period() * (k - 1) / decay_heights;
            for (int j = 0; j < decay_directions; ++j)
            {
                double const phi = 2 * pi * (j + 0.25) / decay_directions;
                probes.push_back({r * std::cos(phi), r * std::sin(phi), x3});
            }
        }
    }
    return probes;
}

DecayFit fit_from_values(std::vector<Vec3> const& u, double support)
{
    DecayFit fit;
    fit.support_radius = support;
    int const per_ring = decay_directions * decay_heights;
    for (int i = 0; i < decay_radii; ++i)
    {
        double sq = 0;
        for (int k = 0; k < per_ring; ++k)
        {
            Vec3 const& v = u[i * per_ring + k];
            sq += dot(v, v);
        }
        fit.radii.push_back(4 * support
                            * std::pow(8.0, double(i) / (decay_radii - 1)));
        fit.magnitudes.push_back(std::sqrt(sq / per_ring));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < decay_radii; ++i)
    {
        double const lx = std::log(fit.radii[i]);
        double const ly = std::log(fit.magnitudes[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double const n = decay_radii;
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}
}  // namespace

DecayFit fit_decay(VelocitySampler const& field, double support_radius)
{
    if (!(support_radius > 0))
        throw ValidationError("invalid_support", "support radius must be > 0");
    // The sampler carries no pitch; heights only vary the probe set
    auto const probes = decay_probes(support_radius, HelixParams{1.0});
    std::vector<Vec3> u;
    u.reserve(probes.size());
    for (auto const& p : probes)
        u.push_back(field(p));
    return fit_from_values(u, support_radius);
}

double decay_exponent(VorticityParticles const& w,
                      VelocityEvalConfig const& cfg,
                      DecayFit* fit)
{
    require_balanced(w);
    double const support = particle_support_radius(w);
    if (!(support > 0))
        throw ValidationError("invalid_support",
                              "decay fit needs particles off the axis");
    auto const probes = decay_probes(support, w.h());
    auto const u = velocity_filament(std::span<Vec3 const>(probes), w, cfg);
    DecayFit result = fit_from_values(u, support);
    if (fit)
        *fit = result;
    return result.exponent;
}

//---------------------------------------------------------------------------//
}  // namespace helix
