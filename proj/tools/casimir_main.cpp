// Command-line front end: force/correction/KK sweeps emitting CSV plus a
// JSON manifest that pins inputs, constants, and tolerances for each run.
//
// Exit codes: 0 success, 2 usage/validation/parse, 3 convergence failure,
// 4 I/O failure.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/constants.hpp"
#include "casimir/corrections.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/optics.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/spectral.hpp"
#include "casimir/thinfilm.hpp"

namespace {

using json = nlohmann::json;
namespace cas = casimir;
namespace opt = casimir::optics;
namespace lif = casimir::lifshitz;
namespace film = casimir::thinfilm;
namespace spec = casimir::spectral;

std::vector<std::string> g_argv;

// Shortest round-trip decimal form: locale-free and bit-stable across runs.
std::string fmt(double x) { return cas::num_str(x); }

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw cas::IoError("cannot open " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

// -------------------------------------------------------------- config --
//
// Flat `key=value` files mirroring the long flags of one subcommand.  The
// file's pairs are injected ahead of the explicit flags and every option
// takes its last occurrence, so the command line overrides the file.

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> load_config_args(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw cas::IoError("cannot open config " + path);
    std::vector<std::string> out;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';')
            continue;
        const auto eq = s.find('=');
        const std::string key = eq == std::string::npos ? "" : trim(s.substr(0, eq));
        if (key.empty())
            throw cas::ParseError(path + ":" + std::to_string(ln) +
                                  ": expected key=value");
        if (key == "config")
            throw cas::ValidationError("config files do not nest");
        const std::string val = trim(s.substr(eq + 1));
        out.push_back(val.empty() ? "--" + key : "--" + key + "=" + val);
    }
    return out;
}

// Pull `--config FILE` out of the raw arguments and splice the file's pairs
// in right after the subcommand name.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string cfg;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--config") {
            if (std::next(it) == args.end())
                throw cas::ValidationError("--config needs a file argument");
            cfg = *std::next(it);
            it = args.erase(it, std::next(it, 2));
        } else if (it->rfind("--config=", 0) == 0) {
            cfg = it->substr(9);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (!cfg.empty()) {
        const std::vector<std::string> extra = load_config_args(cfg);
        auto pos = args.begin();
        if (pos != args.end() && !pos->empty() && (*pos)[0] != '-')
            ++pos;
        args.insert(pos, extra.begin(), extra.end());
    }
    return args;
}

// ---------------------------------------------------------------- grids --

struct GridOpts {
    double single = 0.0;
    double lo = 0.0, hi = 0.0;
    int points = 20;
    std::string spacing = "log";
};

// Documentation stub: the real --config handling happens in apply_config()
// before CLI11 sees the arguments.
void add_config_help(CLI::App* sub) {
    static std::string sink;
    sub->add_option("--config", sink,
                    "flat key=value file mirroring this subcommand's flags "
                    "(explicit flags win)");
}

void add_grid_flags(CLI::App* sub, GridOpts& g, const std::string& name,
                    const std::string& what) {
    sub->add_option("--" + name, g.single, "single " + what)
        ->check(CLI::PositiveNumber);
    sub->add_option("--" + name + "-min", g.lo, "sweep start, " + what)
        ->check(CLI::PositiveNumber);
    sub->add_option("--" + name + "-max", g.hi, "sweep end, " + what)
        ->check(CLI::PositiveNumber);
    sub->add_option("--points", g.points, "sweep point count (default 20)");
    sub->add_option("--spacing", g.spacing, "log (default) or linear")
        ->check(CLI::IsMember({"log", "linear"}));
}

// count() sees values from both the command line and --config files.
std::vector<double> build_grid(const CLI::App& sub, const GridOpts& g,
                               const std::string& name) {
    const bool have_single = sub.count("--" + name) > 0;
    const bool have_lo = sub.count("--" + name + "-min") > 0;
    const bool have_hi = sub.count("--" + name + "-max") > 0;
    if (have_single) {
        if (have_lo || have_hi)
            throw cas::ValidationError("give either --" + name + " or --" +
                                       name + "-min/--" + name + "-max");
        return {g.single};
    }
    if (!have_lo || !have_hi)
        throw cas::ValidationError("need --" + name + " or both --" + name +
                                   "-min and --" + name + "-max");
    if (!(g.lo < g.hi))
        throw cas::ValidationError("--" + name + "-min must be below --" +
                                   name + "-max");
    if (g.points < 1)
        throw cas::ValidationError("--points must be >= 1");
    std::vector<double> out;
    if (g.points == 1)
        return {g.lo};
    for (int i = 0; i < g.points; ++i) {
        const double t = double(i) / (g.points - 1);
        out.push_back(g.spacing == "linear"
                          ? g.lo + (g.hi - g.lo) * t
                          : g.lo * std::pow(g.hi / g.lo, t));
    }
    return out;
}

json grid_json(const std::vector<double>& grid, const GridOpts& g) {
    json j;
    j["points"] = grid.size();
    j["first"] = grid.front();
    j["last"] = grid.back();
    j["spacing"] = grid.size() > 1 ? g.spacing : "single";
    return j;
}

// --------------------------------------------------------------- models --

struct ModelOpts {
    std::string model;
    double eps = 0.0;
    double omega_p = 0.0;
    double gamma = 0.0;
    std::string table;
    double low_omega_p = 0.0;
    double low_gamma = 0.0;
    double high_exponent = 3.0;
};

void add_model_flags(CLI::App* sub, ModelOpts& m) {
    sub->add_option("--model", m.model,
                    "constant | plasma | drude | vacuum | perfect")
        ->check(CLI::IsMember({"constant", "plasma", "drude", "vacuum",
                               "perfect"}));
    sub->add_option("--eps", m.eps, "constant model: eps(i xi) value");
    sub->add_option("--omega-p", m.omega_p,
                    "plasma/drude: plasma frequency, rad/s");
    sub->add_option("--gamma", m.gamma, "drude: relaxation rate, rad/s");
    sub->add_option("--table", m.table, "optical table CSV (see README)");
    sub->add_option("--low-omega-p", m.low_omega_p,
                    "low-frequency Drude tail omega_p (default: fit to the "
                    "two lowest rows)");
    sub->add_option("--low-gamma", m.low_gamma,
                    "low-frequency Drude tail gamma");
    sub->add_option("--high-exponent", m.high_exponent,
                    "high-frequency tail falls as omega^-p (default 3)");
}

opt::PermittivityModel build_model(const ModelOpts& m) {
    if (!m.table.empty()) {
        if (!m.model.empty())
            throw cas::ValidationError("give --model or --table, not both");
        opt::OpticalTable table = opt::load_table_file(m.table);
        if (m.low_omega_p > 0.0 || m.low_gamma > 0.0) {
            if (!(m.low_omega_p > 0.0) || !(m.low_gamma > 0.0))
                throw cas::ValidationError(
                    "--low-omega-p and --low-gamma go together");
            return opt::PermittivityModel::tabulated(
                std::move(table), opt::DrudeTail{m.low_omega_p, m.low_gamma},
                opt::PowerTail{m.high_exponent});
        }
        return opt::PermittivityModel::tabulated(
            std::move(table), opt::PowerTail{m.high_exponent});
    }
    if (m.model == "constant")
        return opt::PermittivityModel::constant(m.eps);
    if (m.model == "plasma")
        return opt::PermittivityModel::plasma(m.omega_p);
    if (m.model == "drude")
        return opt::PermittivityModel::drude(m.omega_p, m.gamma);
    if (m.model == "vacuum")
        return opt::PermittivityModel::vacuum();
    if (m.model == "perfect")
        return opt::PermittivityModel::perfect_conductor();
    throw cas::ValidationError("need --model or --table");
}

json model_json(const ModelOpts& m, const opt::PermittivityModel& built) {
    json j;
    j["describe"] = built.describe();
    if (!m.table.empty()) {
        j["table"] = m.table;
        j["table_fnv1a64"] = hex64(fnv1a64_file(m.table));
    }
    return j;
}

// ----------------------------------------------------------- quadrature --

void add_quad_flags(CLI::App* sub, cas::QuadratureSpec& q) {
    sub->add_option("--rel-tol", q.rel_tol, "relative tolerance (1e-6)");
    sub->add_option("--abs-tol", q.abs_tol, "absolute tolerance, Pa or N");
    sub->add_option("--max-subdiv", q.max_subdivisions,
                    "adaptive subdivision budget (256)");
    sub->add_option("--xi-cutoff", q.xi_cutoff_factor,
                    "frequency cutoff factor: xi_max = f c / d (30)");
    sub->add_option("--p-cutoff", q.p_cutoff,
                    "minimum angular-integral extent (20)");
}

json quad_json(const cas::QuadratureSpec& q) {
    return json{{"rel_tol", q.rel_tol},
                {"abs_tol", q.abs_tol},
                {"max_subdivisions", q.max_subdivisions},
                {"xi_cutoff_factor", q.xi_cutoff_factor},
                {"p_cutoff", q.p_cutoff}};
}

// --------------------------------------------------------------- output --

struct RunOutput {
    std::string path; // empty = stdout
    std::string header;
    std::vector<std::string> rows;
    json inputs;
    std::string command;
};

void finish(const RunOutput& out) {
    std::string body = out.header + "\n";
    for (const std::string& r : out.rows)
        body += r + "\n";
    if (out.path.empty()) {
        std::cout << body;
        return;
    }
    {
        std::ofstream f(out.path, std::ios::binary);
        if (!f || !(f << body) || !f.flush())
            throw cas::IoError("cannot write " + out.path);
    }
    json m;
    m["tool"] = "casimir";
    m["version"] = cas::version_string;
    m["command"] = out.command;
    m["argv"] = g_argv;
    m["constants"] = {{"hbar_J_s", cas::hbar},
                      {"c_m_s", cas::c_light},
                      {"elementary_charge_C", cas::elem_charge}};
    m["inputs"] = out.inputs;
    m["output"] = {{"csv", out.path}, {"rows", out.rows.size()}};
    const std::string mpath = out.path + ".manifest.json";
    std::ofstream f(mpath, std::ios::binary);
    if (!f || !(f << m.dump(2) << "\n") || !f.flush())
        throw cas::IoError("cannot write " + mpath);
}

// ------------------------------------------------------------- commands --

int run(int argc, char** argv) {
    CLI::App app{"Casimir attraction toolkit: ideal mirrors, real-material "
                 "half-spaces, thin films, optical-data continuation.\n"
                 "All forces and pressures are magnitudes of attraction (SI "
                 "units; --cgs appends cgs columns)."};
    app.name("casimir");
    app.require_subcommand(1);

    // ---- ideal ----
    auto* ideal = app.add_subcommand(
        "ideal", "perfect-mirror pressure (plates) or force (sphere)");
    add_config_help(ideal);

    GridOpts ideal_grid;
    add_grid_flags(ideal, ideal_grid, "d", "separation, m");
    std::string ideal_out;
    ideal->add_option("-o,--output", ideal_out, "CSV path (default stdout)");
    bool ideal_cgs = false;
    ideal->add_flag("--cgs", ideal_cgs, "append dyn/cm^2 column");
    std::string ideal_geom = "plates";
    ideal->add_option("--geometry", ideal_geom, "plates (default) or sphere")
        ->check(CLI::IsMember({"plates", "sphere"}));
    double ideal_radius = 0.0;
    ideal->add_option("--radius", ideal_radius, "sphere radius, m");
    ideal->callback([&] {
        const std::vector<double> grid = build_grid(*ideal, ideal_grid, "d");
        RunOutput out;
        out.command = "ideal";
        out.path = ideal_out;
        const bool sphere = ideal_geom == "sphere";
        if (sphere && !(ideal_radius > 0.0))
            throw cas::ValidationError("--geometry sphere needs --radius");
        out.header = sphere ? "d_m,force_n,err_n,evals"
                            : "d_m,pressure_pa,err_pa,evals";
        if (ideal_cgs)
            out.header += sphere ? ",force_dyn" : ",pressure_dyn_cm2";
        for (double d : grid) {
            const double v = sphere
                                 ? lif::ideal_sphere_force(d, ideal_radius)
                                 : lif::ideal_pressure(d);
            std::string row = fmt(d) + "," + fmt(v) + ",0,0";
            if (ideal_cgs)
                row += "," + fmt(sphere ? v * 1e5 : v * cas::pa_to_dyn_cm2);
            out.rows.push_back(row);
        }
        out.inputs = {{"geometry", ideal_geom},
                      {"separations", grid_json(grid, ideal_grid)}};
        if (sphere)
            out.inputs["radius_m"] = ideal_radius;
        finish(out);
    });

    // ---- lifshitz ----
    auto* lsh = app.add_subcommand(
        "lifshitz", "real-material half-space attraction (plates or sphere)");
    add_config_help(lsh);

    GridOpts lsh_grid;
    add_grid_flags(lsh, lsh_grid, "d", "separation, m");
    ModelOpts lsh_model;
    add_model_flags(lsh, lsh_model);
    cas::QuadratureSpec lsh_quad;
    add_quad_flags(lsh, lsh_quad);
    std::string lsh_out;
    lsh->add_option("-o,--output", lsh_out, "CSV path (default stdout)");
    bool lsh_cgs = false;
    lsh->add_flag("--cgs", lsh_cgs, "append cgs column");
    std::string lsh_geom = "plates";
    lsh->add_option("--geometry", lsh_geom, "plates (default) or sphere")
        ->check(CLI::IsMember({"plates", "sphere"}));
    double lsh_radius = 0.0;
    lsh->add_option("--radius", lsh_radius, "sphere radius, m");
    bool lsh_serial = false;
    lsh->add_flag("--serial", lsh_serial, "disable parallel sweep");
    lsh->callback([&] {
        const std::vector<double> grid = build_grid(*lsh, lsh_grid, "d");
        const opt::PermittivityModel model = build_model(lsh_model);
        const bool sphere = lsh_geom == "sphere";
        lif::Geometry geom = lif::ParallelPlates{};
        if (sphere) {
            if (!(lsh_radius > 0.0))
                throw cas::ValidationError("--geometry sphere needs --radius");
            geom = lif::SpherePlate{lsh_radius};
            if (grid.back() / lsh_radius > 0.01)
                std::cerr << "casimir: warning: proximity-force conversion "
                             "assumes d << R (max d/R = "
                          << fmt(grid.back() / lsh_radius) << ")\n";
        }
        const lif::ForceCurve curve = lif::force_curve(
            model, geom, grid, lsh_quad,
            lsh_serial ? opt::Execution::Serial : opt::Execution::Parallel);
        RunOutput out;
        out.command = "lifshitz";
        out.path = lsh_out;
        out.header = sphere ? "d_m,force_n,err_n,evals"
                            : "d_m,pressure_pa,err_pa,evals";
        if (lsh_cgs)
            out.header += sphere ? ",force_dyn" : ",pressure_dyn_cm2";
        for (const auto& p : curve.points) {
            std::string row = fmt(p.separation) + "," + fmt(p.value) + "," +
                              fmt(p.err) + "," + std::to_string(p.evals);
            if (lsh_cgs)
                row += "," + fmt(sphere ? p.value * 1e5
                                        : p.value * cas::pa_to_dyn_cm2);
            out.rows.push_back(row);
        }
        out.inputs = {{"model", model_json(lsh_model, model)},
                      {"geometry", lsh_geom},
                      {"separations", grid_json(grid, lsh_grid)},
                      {"quadrature", quad_json(lsh_quad)}};
        if (sphere)
            out.inputs["radius_m"] = lsh_radius;
        finish(out);
    });

    // ---- film ----
    auto* flm = app.add_subcommand(
        "film", "mirror + film-coated mirror; --fig2 emits the three-curve "
                "comparison");
    add_config_help(flm);

    GridOpts flm_grid;
    add_grid_flags(flm, flm_grid, "d", "mirror separation, m");
    ModelOpts flm_model;
    add_model_flags(flm, flm_model);
    cas::QuadratureSpec flm_quad;
    add_quad_flags(flm, flm_quad);
    std::string flm_out;
    flm->add_option("-o,--output", flm_out, "CSV path (default stdout)");
    double flm_thickness = -1.0;
    flm->add_option("--thickness", flm_thickness, "film thickness, m")
        ->required();
    bool flm_fig2 = false;
    flm->add_flag("--fig2", flm_fig2,
                  "emit no-film / film / perfect-film columns and their "
                  "effect ratio");
    bool flm_cgs = false;
    flm->add_flag("--cgs", flm_cgs, "append dyn/cm^2 column (plain mode)");
    bool flm_serial = false;
    flm->add_flag("--serial", flm_serial, "disable parallel sweep");
    flm->callback([&] {
        const std::vector<double> grid = build_grid(*flm, flm_grid, "d");
        const opt::PermittivityModel model = build_model(flm_model);
        const opt::Execution ex = flm_serial ? opt::Execution::Serial
                                             : opt::Execution::Parallel;
        RunOutput out;
        out.command = "film";
        out.path = flm_out;
        out.inputs = {{"film", model_json(flm_model, model)},
                      {"thickness_m", flm_thickness},
                      {"separations", grid_json(grid, flm_grid)},
                      {"quadrature", quad_json(flm_quad)}};
        if (flm_fig2) {
            if (flm_cgs)
                throw cas::ValidationError("--cgs is not defined for the "
                                           "--fig2 ratio table");
            const auto curve = film::film_comparison_curve(
                model, flm_thickness, grid, flm_quad, ex);
            out.header = "d_m,f_nofilm_pa,f_film_pa,f_perfect_pa,ratio";
            for (const auto& p : curve)
                out.rows.push_back(fmt(p.d) + "," + fmt(p.f_nofilm) + "," +
                                   fmt(p.f_film) + "," + fmt(p.f_perfect) +
                                   "," + fmt(p.ratio));
        } else {
            // plain sweep of the coated-cavity pressure
            std::vector<lif::PressureResult> res(grid.size());
            std::vector<std::string> failures(grid.size());
            const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic) if (ex == opt::Execution::Parallel)
            for (long i = 0; i < n; ++i) {
                try {
                    res[i] = film::film_pressure(
                        film::LayeredCavity(grid[i], flm_thickness, model),
                        flm_quad);
                } catch (const std::exception& e) {
                    failures[i] = e.what();
                }
            }
            for (size_t i = 0; i < failures.size(); ++i)
                if (!failures[i].empty())
                    throw cas::ValidationError("film sweep failed at d = " +
                                               fmt(grid[i]) + ": " +
                                               failures[i]);
            out.header = "d_m,pressure_pa,err_pa,evals";
            if (flm_cgs)
                out.header += ",pressure_dyn_cm2";
            for (size_t i = 0; i < grid.size(); ++i) {
                std::string row = fmt(grid[i]) + "," + fmt(res[i].pressure) +
                                  "," + fmt(res[i].err) + "," +
                                  std::to_string(res[i].evals);
                if (flm_cgs)
                    row += "," + fmt(res[i].pressure * cas::pa_to_dyn_cm2);
                out.rows.push_back(row);
            }
        }
        finish(out);
    });

    // ---- kk ----
    auto* kk = app.add_subcommand(
        "kk", "continue tabulated or model eps'' to the imaginary axis");
    add_config_help(kk);

    GridOpts kk_grid;
    add_grid_flags(kk, kk_grid, "xi", "imaginary frequency, rad/s");
    ModelOpts kk_model;
    add_model_flags(kk, kk_model);
    cas::QuadratureSpec kk_quad;
    add_quad_flags(kk, kk_quad);
    std::string kk_out;
    kk->add_option("-o,--output", kk_out, "CSV path (default stdout)");
    bool kk_serial = false;
    kk->add_flag("--serial", kk_serial, "disable parallel sweep");
    kk->callback([&] {
        const std::vector<double> grid = build_grid(*kk, kk_grid, "xi");
        const opt::PermittivityModel model = build_model(kk_model);
        const auto curve = opt::kk_curve(model, grid, kk_quad,
                                         kk_serial ? opt::Execution::Serial
                                                   : opt::Execution::Parallel);
        RunOutput out;
        out.command = "kk";
        out.path = kk_out;
        out.header = "xi_rad_s,eps,err";
        for (const auto& p : curve)
            out.rows.push_back(fmt(p.xi) + "," + fmt(p.eps) + "," +
                               fmt(p.err));
        out.inputs = {{"model", model_json(kk_model, model)},
                      {"frequencies", grid_json(grid, kk_grid)},
                      {"quadrature", quad_json(kk_quad)}};
        finish(out);
    });

    // ---- correct ----
    auto* cor = app.add_subcommand(
        "correct", "finite-conductivity and roughness factors applied to a "
                   "base pressure (default: ideal at --d)");
    add_config_help(cor);

    double cor_d = 0.0;
    cor->add_option("--d", cor_d, "separation, m")
        ->required()
        ->check(CLI::PositiveNumber);
    double cor_base = -1.0;
    cor->add_option("--base-pa", cor_base,
                    "base pressure, Pa (default: ideal mirrors at --d)");
    double cor_lambda_p = 0.0;
    cor->add_option("--lambda-p", cor_lambda_p, "plasma wavelength, m");
    double cor_rough = 0.0;
    cor->add_option("--roughness", cor_rough, "roughness amplitude, m");
    int cor_order = 2;
    cor->add_option("--order", cor_order, "conductivity series order (1|2)");
    std::string cor_out;
    cor->add_option("-o,--output", cor_out, "CSV path (default stdout)");
    cor->callback([&] {
        const double base =
            cor_base >= 0.0 ? cor_base : lif::ideal_pressure(cor_d);
        const cas::CorrectionReport rep = cas::apply_corrections(
            base, cor_lambda_p, cor_d, cor_order, cor_rough);
        std::string flags;
        for (const auto f : rep.flags) {
            if (!flags.empty())
                flags += ";";
            flags += cas::to_string(f);
        }
        RunOutput out;
        out.command = "correct";
        out.path = cor_out;
        out.header = "d_m,base_pa,conductivity_factor,roughness_factor,"
                     "corrected_pa,flags";
        out.rows.push_back(fmt(cor_d) + "," + fmt(base) + "," +
                           fmt(rep.conductivity) + "," + fmt(rep.roughness) +
                           "," + fmt(rep.corrected_pressure) + "," + flags);
        out.inputs = {{"d_m", cor_d},
                      {"base_pa", base},
                      {"lambda_p_m", cor_lambda_p},
                      {"roughness_m", cor_rough},
                      {"order", cor_order}};
        finish(out);
    });

    // ---- spectral (debug) ----
    auto* spc = app.add_subcommand(
        "spectral", "count / sum zeros of a real-coefficient polynomial "
                    "inside a circle (diagnostic)");
    add_config_help(spc);

    std::vector<double> spc_coeffs;
    spc->add_option("--coeffs", spc_coeffs,
                    "polynomial coefficients, ascending powers")
        ->required()
        ->delimiter(',');
    double spc_cre = 0.0, spc_cim = 0.0, spc_radius = 0.0;
    spc->add_option("--center-re", spc_cre, "contour center, real part");
    spc->add_option("--center-im", spc_cim, "contour center, imag part");
    spc->add_option("--radius", spc_radius, "contour radius")
        ->required()
        ->check(CLI::PositiveNumber);
    int spc_samples = 256;
    spc->add_option("--samples", spc_samples, "contour nodes (default 256)");
    std::string spc_out;
    spc->add_option("-o,--output", spc_out, "CSV path (default stdout)");
    spc->callback([&] {
        const auto f = spec::AnalyticFn::from_real_coeffs(spc_coeffs);
        const spec::Contour contour(
            spec::Circle{{spc_cre, spc_cim}, spc_radius}, spc_samples);
        const auto count = spec::count_zeros_poles(f, contour);
        const auto sum = spec::sum_zeros_poles(f, contour);
        RunOutput out;
        out.command = "spectral";
        out.path = spc_out;
        out.header = "count,count_residual,sum_re,sum_im,sum_residual";
        out.rows.push_back(std::to_string(count.count) + "," +
                           fmt(count.residual) + "," + fmt(sum.sum.real()) +
                           "," + fmt(sum.sum.imag()) + "," +
                           fmt(sum.residual));
        out.inputs = {{"coeffs", spc_coeffs},
                      {"center", {spc_cre, spc_cim}},
                      {"radius", spc_radius},
                      {"samples", spc_samples}};
        finish(out);
    });

    // last occurrence wins, so config-file values yield to explicit flags
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        for (CLI::Option* o : sub->get_options())
            o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::vector<std::string> args =
        apply_config(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end()); // CLI11 consumes back-to-front
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    g_argv.assign(argv, argv + argc);
    try {
        return run(argc, argv);
    } catch (const cas::ConvergenceError& e) {
        std::cerr << "casimir: " << e.what() << "\n";
        return 3;
    } catch (const cas::IoError& e) {
        std::cerr << "casimir: " << e.what() << "\n";
        return 4;
    } catch (const cas::Error& e) { // parse/validation/domain/model
        std::cerr << "casimir: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "casimir: internal error: " << e.what() << "\n";
        return 1;
    }
}
