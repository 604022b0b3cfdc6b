//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 helix-euler contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file cli.cpp
//---------------------------------------------------------------------------//
#include "helix/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <CLI11.hpp>
#include <json.hpp>

#include "helix/error.hpp"
#include "helix/io.hpp"
#include "helix/parallel.hpp"
#include "helix/scenario.hpp"

namespace helix
{
namespace
{
using nlohmann::json;
using std::numbers::pi;
namespace fs = std::filesystem;

//! Settings shared by every command
struct Options
{
    std::string config;
    std::string out = "helix_out";
    std::uint64_t seed = 1;
    int threads = 1;
    int points = 0;
    std::string snapshots;
    std::vector<std::string> overrides;
};

//! Artifacts of one command; files are written only after success
struct Artifacts
{
    fs::path dir;
    std::vector<std::pair<std::string, std::string>> files;

    void add(std::string name, std::string text)
    {
        files.emplace_back(std::move(name), std::move(text));
    }
    void add(std::string name, json const& doc)
    {
        files.emplace_back(std::move(name), doc.dump(2) + "\n");
    }
};

json vec_json(Vec3 const& v)
{
    return json::array({v.x, v.y, v.z});
}

//---------------------------------------------------------------------------//
// COMMANDS
//---------------------------------------------------------------------------//
int kernel_table(Scenario const& sc, Options const& opt, Artifacts& art)
{
    auto const& g = sc.kernel_table;
    KernelEvaluator const ev(sc.kernel);
    std::vector<Vec3> pts;
    for (int i = 0; i < g.x1.n; ++i)
        for (int j = 0; j < g.x2.n; ++j)
            for (int k = 0; k < g.x3.n; ++k)
                pts.push_back({g.x1.at(i), g.x2.at(j), g.x3.at(k)});
    for (auto const& x : pts)
    {
        if (x.x == 0 && x.y == 0)
            throw SingularInputError("kernel-table grid contains a point "
                                     "with x~ == 0");
    }

    std::vector<std::vector<std::string>> rows(pts.size());
    parallel_for(pts.size(), opt.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
        {
            Vec3 const& x = pts[i];
            KernelValue const k = ev.kernel(x);
            rows[i] = {format_double(x.x),
                       format_double(x.y),
                       format_double(x.z),
                       format_double(ev.green_series(x)),
                       format_double(ev.green_images(x)),
                       format_double(k.value.x),
                       format_double(k.value.y),
                       format_double(k.value.z),
                       format_double(kernel_bound_ratio(x, sc.kernel)),
                       to_string(k.representation_used)};
        }
    });
    CsvTable t({"x1", "x2", "x3", "G_series", "G_images", "K1", "K2", "K3",
                "bound_ratio", "repr"});
    for (auto const& r : rows)
        t.add_row(r);
    art.add("kernel_table.csv", t.str());
    return exit_ok;
}

int kernel_verify(Scenario const& sc, Options const& opt, Artifacts& art)
{
    auto const& kv = sc.kernel_verify;
    int const n = opt.points > 0 ? opt.points : kv.points;
    double const kappa = sc.kappa;
    SplitMix64 const rng(opt.seed);
    KernelEvaluator const ev(sc.kernel);

    struct Sample
    {
        Vec3 x;
        double green = 0;
        double kernel = 0;
    };
    std::vector<Sample> s(n);
    parallel_for(s.size(), opt.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
        {
            double const r = kappa * kv.r_min
                             * std::pow(kv.r_max / kv.r_min, rng.uniform(3 * i));
            double const phi = 2 * pi * rng.uniform(3 * i + 1);
            double const x3 = (rng.uniform(3 * i + 2) - 0.5) * 2 * pi * kappa;
            Vec3 const x{r * std::cos(phi), r * std::sin(phi), x3};
            Vec3 const d = ev.kernel_series(x) - ev.kernel_images(x);
            s[i] = {x,
                    std::fabs(ev.green_series(x) - ev.green_images(x)),
                    norm(d) / norm(ev.kernel_images(x))};
        }
    });

    std::size_t worst = 0;
    double kmax = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (s[i].green > s[worst].green)
            worst = i;
        kmax = std::max(kmax, s[i].kernel);
    }
    bool const ok = s[worst].green <= kv.tolerance;
    json report{{"command", "kernel-verify"},
                {"kappa", kappa},
                {"seed", opt.seed},
                {"points", n},
                {"r_min", kv.r_min},
                {"r_max", kv.r_max},
                {"tolerance", kv.tolerance},
                {"max_series_vs_images", s[worst].green},
                {"worst_point", vec_json(s[worst].x)},
                {"max_kernel_relative_difference", kmax},
                {"passed", ok}};
    art.add("kernel_verify.json", report);
    return ok ? exit_ok : exit_numerical;
}

int velocity_probe(Scenario const& sc, Options const& opt, Artifacts& art)
{
    auto const& vp = sc.velocity_probe;
    HelixParams const h = sc.h();
    TrajectoryState const state = initial_state(sc);
    VelocityEvalConfig cfg = sc.velocity;
    cfg.threads = 1;
    VelocitySampler const field
        = [&](Vec3 const& x) { return state_velocity(x, state, cfg); };

    SplitMix64 const rng(opt.seed);
    std::vector<Vec3> probes = vp.probes;
    int const n_random = probes.empty() ? (opt.points > 0 ? opt.points : vp.points)
                                        : 0;
    double const support = std::max(support_radius(state), 1e-3);
    double const r_min = vp.r_max > 0 ? vp.r_min : 1.25 * support;
    double const r_max = vp.r_max > 0 ? vp.r_max : 3 * support;
    for (int i = 0; i < n_random; ++i)
    {
        double const r = r_min + (r_max - r_min) * rng.uniform(3 * i);
        double const phi = 2 * pi * rng.uniform(3 * i + 1);
        double const x3 = (rng.uniform(3 * i + 2) - 0.5) * h.period();
        probes.push_back({r * std::cos(phi), r * std::sin(phi), x3});
    }
    std::size_t const base = 3 * probes.size();

    struct Row
    {
        Vec3 u;
        double swirl = 0;
        double div = 0;
        double div_scale = 0;
        double helicality = 0;
    };
    std::vector<Row> rows(probes.size());
    double const fd = vp.fd_step;
    parallel_for(rows.size(), opt.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
        {
            Vec3 const& x = probes[i];
            Row r;
            r.u = field(x);
            r.swirl = swirl(r.u, x, h);
            double parts[3];
            for (int c = 0; c < 3; ++c)
            {
                Vec3 dx{};
                (c == 0 ? dx.x : c == 1 ? dx.y : dx.z) = fd;
                Vec3 const up = field(x + dx);
                Vec3 const um = field(x - dx);
                double const dp = c == 0 ? up.x : c == 1 ? up.y : up.z;
                double const dm = c == 0 ? um.x : c == 1 ? um.y : um.z;
                parts[c] = (dp - dm) / (2 * fd);
            }
            r.div = parts[0] + parts[1] + parts[2];
            r.div_scale = std::fabs(parts[0]) + std::fabs(parts[1])
                          + std::fabs(parts[2]);
            double const theta = 2 * pi * rng.uniform(base + i) - pi;
            r.helicality = norm(helicality_residual(field, x, theta, h));
            rows[i] = r;
        }
    });

    CsvTable t({"x1", "x2", "x3", "u1", "u2", "u3", "swirl", "div_fd",
                "helicality_residual_norm"});
    double umax = 0, rel_swirl = 0, rel_div = 0, hel = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const& r = rows[i];
        Vec3 const& x = probes[i];
        t.add_row({x.x, x.y, x.z, r.u.x, r.u.y, r.u.z, r.swirl, r.div,
                   r.helicality});
        double const un = norm(r.u);
        umax = std::max(umax, un);
        if (un > 0)
            rel_swirl = std::max(rel_swirl,
                                 std::fabs(r.swirl) / (un * norm(xi(x, h))));
        if (r.div_scale > 0)
            rel_div = std::max(rel_div, std::fabs(r.div) / r.div_scale);
        hel = std::max(hel, r.helicality);
    }
    json summary{{"command", "velocity-probe"},
                 {"kappa", sc.kappa},
                 {"seed", opt.seed},
                 {"probes", probes.size()},
                 {"max_speed", umax},
                 {"max_relative_swirl", rel_swirl},
                 {"max_relative_divergence", rel_div},
                 {"max_helicality_residual", hel},
                 {"max_relative_helicality_residual",
                  umax > 0 ? hel / umax : 0.0}};
    art.add("velocity_probe.csv", t.str());
    art.add("velocity_probe.json", summary);
    return exit_ok;
}

int decay_study(Scenario const& sc, Options const& opt, Artifacts& art)
{
    auto const state = initial_state(sc);
    VelocityEvalConfig cfg = sc.velocity;
    cfg.threads = opt.threads;
    DecayFit fit;
    double const exponent = decay_exponent(state.particles, cfg, &fit);
    CsvTable t({"r", "speed"});
    for (std::size_t i = 0; i < fit.radii.size(); ++i)
        t.add_row({fit.radii[i], fit.magnitudes[i]});
    json report{{"command", "decay-study"},
                {"kappa", sc.kappa},
                {"particles", state.particles.size()},
                {"exponent", exponent},
                {"support_radius", fit.support_radius},
                {"radii", fit.radii},
                {"magnitudes", fit.magnitudes}};
    art.add("decay.csv", t.str());
    art.add("decay.json", report);
    return exit_ok;
}

json background_json(std::optional<SteadyBackground> const& bg)
{
    if (!bg)
        return nullptr;
    auto const& p = bg->profile();
    return {{"r_inner", p.r_inner()},
            {"r_outer", p.r_outer()},
            {"mass", 2 * pi * p.weighted_integral()}};
}

json weak_json(WeakResidual const& r)
{
    return {{"residual", r.residual},
            {"time_term", r.time_term},
            {"nonlinear_term", r.nonlinear_term},
            {"initial_term", r.initial_term},
            {"velocity_l2", r.velocity_l2}};
}

int simulate(Scenario const& sc, Options const& opt, Artifacts& art)
{
    std::vector<Quartet> quartets;
    auto const initial = initial_state(sc, &quartets);
    SimulationConfig cfg = sc.simulate;
    cfg.eval_cfg.threads = opt.threads;
    auto const result = run(initial, cfg, quartets);
    auto const& rep = result.report;

    json records = json::array();
    std::vector<double> t, radius;
    for (auto const& r : rep.records)
    {
        records.push_back({{"t", r.t},
                           {"l1", r.l1},
                           {"l2", r.l2},
                           {"lp", r.lp},
                           {"linf", r.linf},
                           {"total_circulation", r.total_circulation},
                           {"support_radius", r.support_radius},
                           {"max_swirl", r.max_swirl},
                           {"max_helicality", r.max_helicality},
                           {"area_distortion", r.area_distortion},
                           {"area_distortion_mean", r.area_distortion_mean}});
        t.push_back(r.t);
        radius.push_back(r.support_radius);
    }
    json snaps = json::array();
    for (std::size_t k = 0; k < result.snapshots.size(); ++k)
    {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshots/snapshot_%05zu.csv", k);
        art.add(name, snapshot_csv(result.snapshots[k].particles));
        snaps.push_back({{"t", result.snapshots[k].t}, {"file", name}});
    }

    json diag{{"schema_version", Scenario::schema_version},
              {"command", "simulate"},
              {"kappa", sc.kappa},
              {"preset", sc.initial.preset},
              {"particles", initial.particles.size()},
              {"dt", cfg.dt},
              {"t_end", cfg.t_end},
              {"integrator", to_string(cfg.integrator)},
              {"blob_epsilon", cfg.eval_cfg.blob_epsilon},
              {"normalization", to_string(sc.kernel.normalization)},
              {"background", background_json(initial.background)},
              {"p", rep.p},
              {"records", records},
              {"circulation_constant", rep.circulation_constant},
              {"linf_constant", rep.linf_constant},
              {"lp_constant", rep.lp_constant},
              {"large_displacement_steps", rep.large_displacement_steps},
              {"halved_steps", rep.halved_steps},
              {"support_radius_drift",
               std::fabs(radius.back() - radius.front())},
              {"snapshots", snaps}};
    if (t.size() >= 3)
    {
        auto const env = gronwall_envelope(t, radius);
        diag["gronwall"] = {{"r0", env.r0},
                            {"rate", env.rate},
                            {"max_ratio", env.max_ratio},
                            {"within", env.within}};
    }
    else
    {
        diag["gronwall"] = nullptr;
    }
    if (sc.simulate_weak)
    {
        auto const psi
            = make_test_function(*sc.simulate_weak, cfg.t_end, sc.h());
        WeakFormConfig wcfg;
        wcfg.eval_cfg = cfg.eval_cfg;
        diag["weak_residual"]
            = weak_json(weak_residual(result.snapshots, psi, wcfg));
    }
    else
    {
        diag["weak_residual"] = nullptr;
    }
    art.add("diagnostics.json", diag);
    return exit_ok;
}

//! Reload a simulate output directory
std::vector<TrajectoryState>
load_series(fs::path const& dir, Scenario& sc)
{
    json const manifest
        = json::parse(read_text_file(dir / "diagnostics.json"), nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()
        || !manifest.contains("snapshots") || !manifest.contains("kappa"))
        throw ValidationError("invalid_manifest",
                              "'" + (dir / "diagnostics.json").string()
                                  + "' is not a simulate manifest");
    try
    {
        sc.kappa = manifest.at("kappa").get<double>();
        HelixParams const h(sc.kappa);
        sc.kernel.h = h;
        sc.kernel.normalization
            = manifest.at("normalization").get<std::string>() == "literal"
                  ? Normalization::literal
                  : Normalization::consistent;
        sc.velocity.kernel_cfg = sc.kernel;
        sc.velocity.blob_epsilon = manifest.at("blob_epsilon").get<double>();

        std::optional<SteadyBackground> bg;
        if (auto const& b = manifest.at("background"); !b.is_null())
        {
            bg = SteadyBackground(
                RadialProfile::with_mass(b.at("r_inner").get<double>(),
                                         b.at("r_outer").get<double>(),
                                         b.at("mass").get<double>()),
                h);
        }
        std::vector<TrajectoryState> out;
        for (auto const& s : manifest.at("snapshots"))
        {
            TrajectoryState st;
            st.t = s.at("t").get<double>();
            st.particles = parse_snapshot_csv(
                read_text_file(dir / s.at("file").get<std::string>()), h);
            st.background = bg;
            out.push_back(std::move(st));
        }
        return out;
    }
    catch (json::exception const& e)
    {
        throw ValidationError("invalid_manifest", e.what());
    }
}

int weakform_check(Scenario sc, Options const& opt, Artifacts& art)
{
    auto& wc = sc.weakform_check;
    std::string dir = opt.snapshots.empty() ? wc.snapshots : opt.snapshots;
    if (dir.empty())
        throw ValidationError("missing_snapshots",
                              "weakform-check needs a snapshot directory");
    auto const series = load_series(dir, sc);
    if (series.size() < 4)
        throw ValidationError("insufficient_snapshots",
                              "weak residual needs at least 4 snapshots");
    double const length = series.back().t - series.front().t;
    auto const psi = make_test_function(wc.psi, length, sc.h());

    WeakFormConfig wcfg;
    wcfg.eval_cfg = sc.velocity;
    wcfg.eval_cfg.threads = opt.threads;
    wcfg.p = wc.p;
    wcfg.theta_points = wc.theta_points;
    wcfg.near_theta_points = wc.near_theta_points;

    auto const res = weak_residual(series, psi, wcfg);
    auto const rep
        = splitting_report(series, psi, wc.cuts, wcfg, wc.refinement_levels);
    json table = json::array();
    for (auto const& row : rep.refinement)
        table.push_back(
            {{"delta", row.delta}, {"near", row.near}, {"ratio", row.ratio}});
    json report = weak_json(res);
    report["command"] = "weakform-check";
    report["kappa"] = sc.kappa;
    report["snapshots"] = series.size();
    report["test_function"] = {{"preset", wc.psi.preset},
                               {"support_radius", wc.psi.support_radius},
                               {"horizon", psi.horizon()}};
    report["delta"] = wc.cuts.delta;
    report["big_r"] = wc.cuts.big_r;
    report["p"] = wc.p;
    report["parts"] = {{"total", rep.parts.total},
                       {"near", rep.parts.near},
                       {"bulk", rep.parts.bulk},
                       {"far", rep.parts.far}};
    report["near_exponent"] = rep.near_exponent;
    report["far_times_r"] = rep.far_times_r;
    report["refinement_table"] = table;
    art.add("weakform.json", report);
    return exit_ok;
}

//---------------------------------------------------------------------------//
void write_error(std::ostream& err, std::string const& code, std::string const& what)
{
    json const e{{"error", {{"code", code}, {"message", what}}}};
    err << e.dump() << std::endl;
}

}  // namespace

//---------------------------------------------------------------------------//
int run_command(std::vector<std::string> const& args,
                std::ostream& out,
                std::ostream& err)
{
    CLI::App app{"Helical Euler vortex toolkit", "helix_euler"};
    app.require_subcommand(1, 1);
    Options opt;
    app.add_option("--config", opt.config, "Scenario JSON file");
    app.add_option("--out", opt.out, "Output directory (HELIX_EULER_OUT wins)");
    app.add_option("--seed", opt.seed, "Seed of the probe point generator");
    app.add_option("--threads", opt.threads, "Worker threads")
        ->check(CLI::PositiveNumber);

    struct Command
    {
        char const* name;
        char const* help;
        int (*fn)(Scenario const&, Options const&, Artifacts&);
    };
    static Command const table[]
        = {{"kernel-table", "Grid of G and K on both representations", kernel_table},
           {"kernel-verify", "Seeded series vs images comparison", kernel_verify},
           {"velocity-probe", "Velocity, swirl, divergence, helicality at probes", velocity_probe},
           {"decay-study", "Far-field decay exponent of the initial field", decay_study},
           {"simulate", "Particle run with snapshots and diagnostics", simulate},
           {"weakform-check", "Weak residual of a simulate output",
            [](Scenario const& sc, Options const& o, Artifacts& a) {
                return weakform_check(sc, o, a);
            }}};
    std::vector<CLI::App*> subs;
    for (auto const& c : table)
    {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        sub->add_option("overrides", opt.overrides, "key=value scenario overrides");
        if (std::string(c.name) == "kernel-verify"
            || std::string(c.name) == "velocity-probe")
            sub->add_option("--points", opt.points, "Number of seeded points")
                ->check(CLI::PositiveNumber);
        if (std::string(c.name) == "weakform-check")
            sub->add_option("--snapshots", opt.snapshots,
                            "Output directory of a simulate run");
        subs.push_back(sub);
    }

    try
    {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (CLI::ParseError const& e)
    {
        write_error(err, "invalid_arguments", e.what());
        return exit_validation;
    }

    std::size_t which = 0;
    while (!subs[which]->parsed())
        ++which;
    std::string const command = table[which].name;
    if (char const* env = std::getenv("HELIX_EULER_OUT"); env && *env)
        opt.out = env;

    try
    {
        std::string text;
        if (!opt.config.empty())
            text = read_text_file(opt.config);
        Scenario sc = load_scenario(text, command, opt.overrides);
        sc.velocity.threads = opt.threads;
        sc.simulate.eval_cfg.threads = opt.threads;

        Artifacts art;
        art.dir = opt.out;
        int const code = table[which].fn(sc, opt, art);
        for (auto const& [name, body] : art.files)
            write_text_file(art.dir / name, body);
        out << command << ": wrote";
        for (auto const& f : art.files)
        {
            if (f.first.rfind("snapshots/", 0) != 0)
                out << ' ' << (art.dir / f.first).string();
        }
        out << '\n';
        if (code == exit_numerical)
            write_error(err, "verification_failed",
                        command + " exceeded its tolerance");
        return code;
    }
    catch (IoError const& e)
    {
        write_error(err, e.code(), e.what());
        return exit_io;
    }
    catch (NumericalError const& e)
    {
        write_error(err, e.code(), e.what());
        return exit_numerical;
    }
    catch (Error const& e)
    {
        write_error(err, e.code(), e.what());
        return exit_validation;
    }
    catch (std::exception const& e)
    {
        write_error(err, "internal_error", e.what());
        return exit_internal;
    }
}

//---------------------------------------------------------------------------//
}  // namespace helix
