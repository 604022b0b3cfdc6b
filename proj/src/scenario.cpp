//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file scenario.cpp
//---------------------------------------------------------------------------//
#include "helix/scenario.hpp"

#include <cmath>
#include <set>
#include <json.hpp>

#include "helix/error.hpp"

namespace helix
{
namespace
{
using nlohmann::json;

char const* const commands[] = {"kernel-table",
                                "kernel-verify",
                                "velocity-probe",
                                "decay-study",
                                "simulate",
                                "weakform-check"};

//---------------------------------------------------------------------------//
/*!
 * Typed access to one JSON object; keys never read are rejected.
 */
class Block
{
  public:
    Block(json const& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object())
            throw ValidationError("invalid_type", path_ + " must be an object");
    }

    bool has(char const* key) const { return obj_.contains(key); }

    template<class T>
    void get(char const* key, T& dest)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end())
            return;
        dest = convert<T>(*it, name(key));
    }

    template<class T>
    void get(char const* key, std::optional<T>& dest)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null())
            return;
        dest = convert<T>(*it, name(key));
    }

    Block child(char const* key)
    {
        seen_.insert(key);
        return Block(obj_.at(key), name(key));
    }

    json const& raw(char const* key)
    {
        seen_.insert(key);
        return obj_.at(key);
    }

    void finish() const
    {
        for (auto const& [k, v] : obj_.items())
        {
            if (!seen_.count(k))
                throw ValidationError("unknown_key",
                                      "unknown key '" + name(k.c_str()) + "'");
        }
    }

    std::string name(char const* key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

  private:
    json const& obj_;
    std::string path_;
    std::set<std::string> seen_;

    template<class T>
    static T convert(json const& v, std::string const& where)
    {
        if constexpr (std::is_same_v<T, bool>)
        {
            if (!v.is_boolean())
                throw ValidationError("invalid_type", where + " must be a boolean");
            return v.get<bool>();
        }
        else if constexpr (std::is_integral_v<T>)
        {
            if (!v.is_number_integer())
                throw ValidationError("invalid_type", where + " must be an integer");
            return v.get<T>();
        }
        else if constexpr (std::is_floating_point_v<T>)
        {
            if (!v.is_number())
                throw ValidationError("invalid_type", where + " must be a number");
            return v.get<T>();
        }
        else
        {
            if (!v.is_string())
                throw ValidationError("invalid_type", where + " must be a string");
            return v.get<std::string>();
        }
    }
};

//---------------------------------------------------------------------------//
void require(bool ok, char const* code, std::string const& what)
{
    if (!ok)
        throw ValidationError(code, what);
}

bool positive(double v)
{
    return v > 0 && std::isfinite(v);
}

GridAxis read_axis(json const& v, std::string const& where)
{
    require(v.is_array() && v.size() == 3 && v[0].is_number()
                && v[1].is_number() && v[2].is_number_integer(),
            "invalid_type",
            where + " must be [lo, hi, n]");
    GridAxis a{v[0].get<double>(), v[1].get<double>(), v[2].get<int>()};
    require(a.n >= 1 && std::isfinite(a.lo) && std::isfinite(a.hi)
                && a.lo <= a.hi && (a.n > 1 || a.lo == a.hi),
            "invalid_grid",
            where + " needs lo <= hi, n >= 1, and lo == hi when n == 1");
    return a;
}

//---------------------------------------------------------------------------//
void read_kernel(Block b, KernelConfig& k)
{
    b.get("series_truncation", k.series_truncation);
    b.get("image_truncation", k.image_truncation);
    b.get("switch_radius", k.switch_radius);
    b.get("euler_gamma", k.euler_gamma);
    std::string s = to_string(k.normalization);
    b.get("normalization", s);
    if (s == "consistent")
        k.normalization = Normalization::consistent;
    else if (s == "literal")
        k.normalization = Normalization::literal;
    else
        throw ValidationError("invalid_normalization",
                              "normalization must be consistent or literal");
    s = to_string(k.image_tail);
    b.get("image_tail", s);
    if (s == "multipole")
        k.image_tail = ImageTail::multipole;
    else if (s == "integral")
        k.image_tail = ImageTail::integral;
    else
        throw ValidationError("invalid_image_tail",
                              "image_tail must be multipole or integral");
    b.finish();
}

void read_velocity(Block b, VelocityEvalConfig& v)
{
    b.get("theta_quadrature_points", v.theta_quadrature_points);
    b.get("max_theta_points", v.max_theta_points);
    b.get("tolerance", v.tolerance);
    b.get("blob_epsilon", v.blob_epsilon);
    b.finish();
}

void read_initial(Block b, InitialSpec& s)
{
    b.get("preset", s.preset);
    b.get("amplitude", s.amplitude);
    b.get("radius", s.radius);
    b.get("half_separation", s.half_separation);
    b.get("r_inner", s.r_inner);
    b.get("r_outer", s.r_outer);
    b.get("mollifier_n", s.mollifier_n);
    b.get("spacing", s.spacing);
    b.get("ring_particles", s.radial.ring_particles);
    b.get("centre_gamma", s.radial.centre_gamma);
    b.get("inner_gamma", s.radial.inner_gamma);
    b.get("tracer_radius", s.tracer_radius);
    b.finish();
    // Steady rings reuse the annulus
    s.radial.r_inner = s.r_inner;
    s.radial.r_outer = s.r_outer;
}

void read_test_function(Block& b, TestFunctionChoice& c)
{
    b.get("test_function", c.preset);
    b.get("support_radius", c.support_radius);
    b.get("horizon", c.horizon);
}

void read_simulate(Block b, Scenario& sc)
{
    auto& s = sc.simulate;
    b.get("dt", s.dt);
    b.get("t_end", s.t_end);
    std::string integ = to_string(s.integrator);
    b.get("integrator", integ);
    if (integ == "rk4")
        s.integrator = Integrator::rk4;
    else if (integ == "euler")
        s.integrator = Integrator::euler;
    else
        throw ValidationError("invalid_integrator",
                              "integrator must be rk4 or euler");
    b.get("reproject_each_step", s.reproject_each_step);
    b.get("diagnostics_every", s.diagnostics_every);
    b.get("lp_exponent", s.lp_exponent);
    b.get("max_displacement_factor", s.max_displacement_factor);
    b.get("max_halvings", s.max_halvings);
    b.get("helicality_samples", s.helicality_samples);
    if (b.has("weak_residual"))
    {
        Block w = b.child("weak_residual");
        TestFunctionChoice c;
        read_test_function(w, c);
        w.finish();
        sc.simulate_weak = c;
    }
    b.finish();
}

void read_probe(Block b, VelocityProbeSpec& p)
{
    b.get("points", p.points);
    b.get("r_min", p.r_min);
    b.get("r_max", p.r_max);
    b.get("fd_step", p.fd_step);
    if (b.has("probes"))
    {
        auto const& arr = b.raw("probes");
        require(arr.is_array(), "invalid_type", "probes must be an array");
        for (auto const& v : arr)
        {
            require(v.is_array() && v.size() == 3 && v[0].is_number()
                        && v[1].is_number() && v[2].is_number(),
                    "invalid_type",
                    "each probe must be [x1, x2, x3]");
            p.probes.push_back(
                {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
        }
    }
    b.finish();
}

void read_weakform(Block b, WeakformCheckSpec& w)
{
    b.get("snapshots", w.snapshots);
    read_test_function(b, w.psi);
    b.get("delta", w.cuts.delta);
    b.get("big_r", w.cuts.big_r);
    b.get("p", w.p);
    b.get("theta_points", w.theta_points);
    b.get("near_theta_points", w.near_theta_points);
    b.get("refinement_levels", w.refinement_levels);
    b.finish();
}

//---------------------------------------------------------------------------//
void validate(Scenario const& sc, bool simulate, bool weakform)
{
    HelixParams const h = sc.h();
    sc.kernel.validate();
    sc.velocity.validate();
    if (simulate)
        sc.simulate.validate();

    auto const& in = sc.initial;
    static std::set<std::string> const presets{
        "disc-patch", "dipole", "ring", "radial-steady", "tracer"};
    require(presets.count(in.preset), "unknown_preset",
            "unknown initial preset '" + in.preset + "'");
    require(std::isfinite(in.amplitude) && in.amplitude != 0,
            "invalid_initial_data", "amplitude must be finite and nonzero");
    require(positive(in.radius), "invalid_initial_data",
            "radius must be positive");
    require(positive(in.half_separation), "invalid_initial_data",
            "half_separation must be positive");
    require(positive(in.r_inner) && positive(in.r_outer)
                && in.r_inner < in.r_outer,
            "invalid_initial_data", "need 0 < r_inner < r_outer");
    require(positive(in.spacing), "invalid_resolution",
            "spacing must be positive");
    MollifierSpec const m(in.mollifier_n);
    require(in.radial.ring_particles >= 3, "invalid_initial_data",
            "ring_particles must be at least 3");
    require(std::isfinite(in.radial.centre_gamma)
                && std::isfinite(in.radial.inner_gamma),
            "invalid_initial_data", "ring circulations must be finite");
    require(positive(in.tracer_radius), "invalid_initial_data",
            "tracer_radius must be positive");

    if (sc.background)
    {
        auto const& b = *sc.background;
        RadialProfile const check(b.r_inner, b.r_outer, 1.0);
        require(!b.mass || std::isfinite(*b.mass), "invalid_profile",
                "background mass must be finite");
    }
    require(!(in.preset == "tracer" && !(sc.background && sc.background->mass)),
            "invalid_profile", "the tracer preset needs a background mass");

    auto const& kv = sc.kernel_verify;
    require(kv.points >= 1, "invalid_points", "points must be positive");
    require(positive(kv.r_min) && kv.r_min < kv.r_max && std::isfinite(kv.r_max),
            "invalid_radius_range", "need 0 < r_min < r_max");
    require(positive(kv.tolerance), "invalid_tolerance",
            "tolerance must be positive");

    auto const& vp = sc.velocity_probe;
    require(vp.points >= 0 && (vp.points > 0 || !vp.probes.empty()),
            "invalid_points", "need a positive number of probes");
    require(vp.r_min >= 0 && vp.r_max >= 0
                && (vp.r_max == 0 || vp.r_min < vp.r_max)
                && std::isfinite(vp.r_max),
            "invalid_radius_range", "need 0 <= r_min < r_max");
    require(positive(vp.fd_step), "invalid_fd_step",
            "fd_step must be positive");

    auto check_psi = [&](TestFunctionChoice const& c) {
        require(c.horizon >= 0 && std::isfinite(c.horizon),
                "invalid_test_function", "horizon must be nonnegative");
        return make_test_function(c, sc.simulate.t_end, h);
    };
    if (sc.simulate_weak)
        check_psi(*sc.simulate_weak);

    if (!weakform)
        return;
    auto const& wc = sc.weakform_check;
    WeakFormConfig wcfg;
    wcfg.eval_cfg = sc.velocity;
    wcfg.p = wc.p;
    wcfg.theta_points = wc.theta_points;
    wcfg.near_theta_points = wc.near_theta_points;
    wcfg.validate();
    wc.cuts.validate(check_psi(wc.psi), h);
    require(wc.refinement_levels >= 1, "invalid_refinement_levels",
            "refinement needs at least one halving");
}

//! Parse "value" as JSON, falling back to a bare string
json parse_value(std::string const& text)
{
    auto v = json::parse(text, nullptr, false);
    if (v.is_discarded())
        return json(text);
    return v;
}

void apply_override(json& doc, std::string const& item)
{
    auto const eq = item.find('=');
    require(eq != std::string::npos && eq > 0, "invalid_override",
            "override '" + item + "' must be key=value");
    std::string key = item.substr(0, eq);
    if (key == "preset")
        key = "initial.preset";
    json* node = &doc;
    std::size_t start = 0;
    while (true)
    {
        auto const dot = key.find('.', start);
        std::string const part = key.substr(start, dot - start);
        require(!part.empty(), "invalid_override",
                "override '" + item + "' has an empty key");
        if (dot == std::string::npos)
        {
            (*node)[part] = parse_value(item.substr(eq + 1));
            return;
        }
        json& next = (*node)[part];
        if (next.is_null())
            next = json::object();
        require(next.is_object(), "invalid_override",
                "override '" + item + "' descends into a non-object");
        node = &next;
        start = dot + 1;
    }
}

}  // namespace

//---------------------------------------------------------------------------//
double GridAxis::at(int i) const
{
    if (n == 1)
        return lo;
    return lo + (hi - lo) * i / (n - 1);
}

//---------------------------------------------------------------------------//
Scenario load_scenario(std::string const& text,
                       std::string const& command,
                       std::vector<std::string> const& overrides)
{
    bool known = false;
    for (char const* c : commands)
        known = known || command == c;
    require(known, "unknown_command", "unknown command '" + command + "'");

    json doc = text.empty() ? json::object()
                            : json::parse(text, nullptr, false);
    require(!doc.is_discarded(), "invalid_json", "scenario is not valid JSON");
    require(doc.is_object(), "invalid_type", "scenario must be a JSON object");
    for (auto const& item : overrides)
        apply_override(doc, item);

    Scenario sc;
    sc.velocity.blob_epsilon = Scenario::default_blob_epsilon;
    Block top(doc, "");
    int version = Scenario::schema_version;
    top.get("schema_version", version);
    require(version == Scenario::schema_version, "unsupported_schema_version",
            "schema_version must be "
                + std::to_string(Scenario::schema_version));
    sc.kind = command;
    std::string kind = command;
    top.get("kind", kind);
    require(kind == command, "kind_mismatch",
            "scenario kind '" + kind + "' does not match command '" + command
                + "'");
    top.get("kappa", sc.kappa);
    HelixParams const h(sc.kappa);

    if (top.has("kernel"))
        read_kernel(top.child("kernel"), sc.kernel);
    sc.kernel.h = h;
    if (top.has("velocity"))
        read_velocity(top.child("velocity"), sc.velocity);
    if (top.has("initial"))
        read_initial(top.child("initial"), sc.initial);
    if (top.has("background"))
    {
        Block b = top.child("background");
        BackgroundSpec bg;
        b.get("r_inner", bg.r_inner);
        b.get("r_outer", bg.r_outer);
        b.get("mass", bg.mass);
        b.finish();
        sc.background = bg;
    }
    if (top.has("simulate"))
        read_simulate(top.child("simulate"), sc);
    if (top.has("kernel_table"))
    {
        Block b = top.child("kernel_table");
        auto& kt = sc.kernel_table;
        if (b.has("x1"))
            kt.x1 = read_axis(b.raw("x1"), "kernel_table.x1");
        if (b.has("x2"))
            kt.x2 = read_axis(b.raw("x2"), "kernel_table.x2");
        if (b.has("x3"))
            kt.x3 = read_axis(b.raw("x3"), "kernel_table.x3");
        b.finish();
    }
    if (top.has("kernel_verify"))
    {
        Block b = top.child("kernel_verify");
        b.get("points", sc.kernel_verify.points);
        b.get("r_min", sc.kernel_verify.r_min);
        b.get("r_max", sc.kernel_verify.r_max);
        b.get("tolerance", sc.kernel_verify.tolerance);
        b.finish();
    }
    if (top.has("velocity_probe"))
        read_probe(top.child("velocity_probe"), sc.velocity_probe);
    if (top.has("weakform_check"))
        read_weakform(top.child("weakform_check"), sc.weakform_check);
    top.finish();

    sc.velocity.kernel_cfg = sc.kernel;
    sc.simulate.eval_cfg = sc.velocity;
    validate(sc,
             command == "simulate" || doc.contains("simulate"),
             command == "weakform-check" || doc.contains("weakform_check"));
    return sc;
}

//---------------------------------------------------------------------------//
TrajectoryState initial_state(Scenario const& sc, std::vector<Quartet>* quartets)
{
    HelixParams const h = sc.h();
    auto const& in = sc.initial;
    TrajectoryState s;
    std::optional<SliceField> field;
    if (in.preset == "disc-patch")
        field = disc_patch(in.radius, in.amplitude);
    else if (in.preset == "dipole")
        field = dipole(in.half_separation, in.radius, in.amplitude);
    else if (in.preset == "ring")
        field = ring(in.r_inner, in.r_outer, in.amplitude);
    else if (in.preset == "radial-steady")
        s.particles = radial_steady(h, in.radial);
    else
        s.particles = VorticityParticles(
            h, {{{in.tracer_radius, 0}, 0.0, in.spacing * in.spacing}});

    if (field)
    {
        s.particles
            = mollify_initial(*field, MollifierSpec(in.mollifier_n), in.spacing, h);
        if (quartets)
            *quartets = grid_quartets(s.particles, in.spacing);
    }
    if (sc.background)
    {
        auto const& b = *sc.background;
        double const mass = b.mass ? *b.mass : s.particles.total_circulation();
        s.background = SteadyBackground(
            RadialProfile::with_mass(b.r_inner, b.r_outer, mass), h);
    }
    return s;
}

TestFunction make_test_function(TestFunctionChoice const& c,
                                double run_length,
                                HelixParams const& h)
{
    require(positive(c.support_radius), "invalid_test_function",
            "test function support_radius must be positive");
    return TestFunction::preset(
        c.preset, c.support_radius, c.horizon > 0 ? c.horizon : run_length, h);
}

//---------------------------------------------------------------------------//
}  // namespace helix
