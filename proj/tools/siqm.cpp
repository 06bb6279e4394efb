// Command-line front end: catalog listing, spectrum and state computation,
// multi-sector model verification, and level-diagram data emission.
//
// Exit codes: 0 success, 1 usage/config error, 2 verification or tolerance
// failure.  All outputs are deterministic for a fixed (config, seed).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "siqm/multisector.hpp"
#include "siqm/spectrum.hpp"
#include "siqm/tridiagonal.hpp"
#include "siqm/verify.hpp"

using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string family;
    std::vector<double> g;
    double x_min = -12.0;
    double x_max = 12.0;
    int n_points = 2401;
    long levels = 5;
    int partnerships = 2;
    double eta1 = 0.0;
    double physics_tol = 1e-3;
    double structural_tol = 1e-12;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 42;
    std::optional<double> broken_alignment;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12 significant digits; enough for stable re-emission round trips.
std::string fmt12(double v) {
    if (v == 0.0) v = 0.0;   // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double j12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

void parse_grid_spec(const std::string& spec, RunConfig& cfg) {
    double a, b;
    int n;
    char extra;
    if (std::sscanf(spec.c_str(), "%lf,%lf,%d%c", &a, &b, &n, &extra) != 3)
        throw ConfigError("--grid expects x_min,x_max,n_points");
    cfg.x_min = a;
    cfg.x_max = b;
    cfg.n_points = n;
}

void apply_config_file(const std::string& path, CLI::App* cmd, RunConfig& cfg,
                       std::string& grid_spec) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ojson doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    auto unset = [&](const std::string& flag) {
        auto* opt = cmd->get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    if (doc.contains("family") && unset("--family")) cfg.family = doc["family"];
    if (doc.contains("g") && unset("--g")) cfg.g = doc["g"].get<std::vector<double>>();
    if (doc.contains("grid") && unset("--grid")) {
        const auto& gr = doc["grid"];
        if (gr.is_array() && gr.size() == 3) {
            cfg.x_min = gr[0];
            cfg.x_max = gr[1];
            cfg.n_points = gr[2];
        } else if (gr.is_object()) {
            cfg.x_min = gr.value("x_min", cfg.x_min);
            cfg.x_max = gr.value("x_max", cfg.x_max);
            cfg.n_points = gr.value("n_points", cfg.n_points);
        } else {
            throw ConfigError("config key 'grid' must be [x_min,x_max,n] or an object");
        }
        grid_spec.clear();
    }
    if (doc.contains("levels") && unset("--levels")) cfg.levels = doc["levels"];
    if (doc.contains("partnerships") && unset("--partnerships"))
        cfg.partnerships = doc["partnerships"];
    if (doc.contains("sectors") && unset("--partnerships")) {
        long sectors = doc["sectors"];
        if (sectors < 2 || sectors % 2 != 0)
            throw ConfigError("config key 'sectors' must be a positive even count");
        cfg.partnerships = static_cast<int>(sectors / 2);
    }
    if (doc.contains("eta1") && unset("--eta1")) cfg.eta1 = doc["eta1"];
    if (doc.contains("physics_tol") && unset("--tol")) cfg.physics_tol = doc["physics_tol"];
    if (doc.contains("structural_tol")) cfg.structural_tol = doc["structural_tol"];
    if (doc.contains("format") && unset("--format")) cfg.format = doc["format"];
    if (doc.contains("out") && unset("--out")) cfg.out = doc["out"];
    if (doc.contains("seed") && unset("--seed")) cfg.seed = doc["seed"];
    if (doc.contains("broken_alignment") && unset("--broken-alignment"))
        cfg.broken_alignment = doc["broken_alignment"].get<double>();
}

void validate(const RunConfig& cfg, bool needs_family) {
    if (needs_family && cfg.family.empty()) throw ConfigError("--family is required");
    if (!(cfg.x_max > cfg.x_min)) throw ConfigError("grid requires x_max > x_min");
    if (cfg.n_points < 3) throw ConfigError("grid needs at least 3 points");
    if (cfg.levels < 1) throw ConfigError("--levels must be at least 1");
    if (cfg.partnerships < 1) throw ConfigError("--partnerships must be at least 1");
    if (cfg.physics_tol <= 0.0 || cfg.structural_tol <= 0.0)
        throw ConfigError("tolerances must be positive");
    if (cfg.format != "json" && cfg.format != "csv")
        throw ConfigError("--format must be json or csv");
    for (double v : cfg.g)
        if (!std::isfinite(v)) throw ConfigError("--g values must be finite");
    if (!std::isfinite(cfg.eta1)) throw ConfigError("--eta1 must be finite");
}

ojson make_meta(const char* command, const RunConfig& cfg) {
    ojson meta;
    meta["command"] = command;
    if (!cfg.family.empty()) meta["family"] = cfg.family;
    if (!cfg.g.empty()) {
        ojson gs = ojson::array();
        for (double v : cfg.g) gs.push_back(j12(v));
        meta["g"] = gs;
    }
    meta["grid"] = {{"x_min", j12(cfg.x_min)}, {"x_max", j12(cfg.x_max)},
                    {"n_points", cfg.n_points}};
    meta["levels"] = cfg.levels;
    meta["partnerships"] = cfg.partnerships;
    meta["eta1"] = j12(cfg.eta1);
    meta["physics_tol"] = j12(cfg.physics_tol);
    meta["structural_tol"] = j12(cfg.structural_tol);
    meta["seed"] = cfg.seed;
    meta["format"] = cfg.format;
    if (cfg.broken_alignment) meta["broken_alignment"] = j12(*cfg.broken_alignment);
    return meta;
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path: " + out_path);
    out << text;
}

void emit_json(const ojson& doc, const std::string& out_path) {
    emit_text(doc.dump(2) + "\n", out_path);
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

siqm::ParamValue to_param(const RunConfig& cfg, const siqm::SuperpotentialFamily& fam) {
    if (cfg.g.empty()) throw ConfigError("--g is required for this command");
    siqm::ParamValue g(cfg.g);
    fam.check_arity(g);
    return g;
}

// ---------------------------------------------------------------------------

int cmd_catalog(const RunConfig& cfg) {
    auto names = siqm::registered_family_names();
    if (cfg.format == "csv") {
        std::string text = csv_join({"name", "param_arity", "x_min", "x_max", "param_map"});
        for (const auto& name : names) {
            const auto& fam = siqm::lookup(name);
            auto bound = [](double v, const char* inf) {
                return std::isfinite(v) ? fmt12(v) : std::string(inf);
            };
            text += csv_join({fam.name, std::to_string(fam.param_arity),
                              bound(fam.domain.x_min, "-inf"), bound(fam.domain.x_max, "inf"),
                              fam.param_map_desc});
        }
        emit_text(text, cfg.out);
        return 0;
    }
    ojson doc;
    doc["meta"] = make_meta("catalog", cfg);
    ojson families = ojson::array();
    for (const auto& name : names) {
        const auto& fam = siqm::lookup(name);
        ojson entry;
        entry["name"] = fam.name;
        entry["param_arity"] = fam.param_arity;
        entry["domain"] = {
            {"x_min", std::isfinite(fam.domain.x_min) ? ojson(j12(fam.domain.x_min)) : ojson()},
            {"x_max", std::isfinite(fam.domain.x_max) ? ojson(j12(fam.domain.x_max)) : ojson()}};
        entry["param_map"] = fam.param_map_desc;
        entry["default_box"] = {{"x_min", j12(fam.default_box.x_min)},
                                {"x_max", j12(fam.default_box.x_max)},
                                {"n_points", fam.default_points}};
        families.push_back(std::move(entry));
    }
    doc["data"] = {{"families", std::move(families)}};
    emit_json(doc, cfg.out);
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    const auto& fam = siqm::lookup(cfg.family);
    auto g = to_param(cfg, fam);
    siqm::Grid grid(cfg.x_min, cfg.x_max, cfg.n_points);

    siqm::Spectrum exact = siqm::exact_energies(fam, g, cfg.levels);
    if (exact.entries.empty()) throw ConfigError("family binds no states at this parameter");
    if (exact.truncated)
        std::cerr << "notice: requested " << cfg.levels << " levels, family binds "
                  << exact.entries.size() << "; output truncated\n";

    auto T = siqm::build_tridiagonal(
        [&](double x) { return siqm::partner_potential(fam, g, x, siqm::Ordering::AdaggerA); },
        grid);
    siqm::Spectrum oracle =
        siqm::lowest_eigenvalues(T, static_cast<int>(exact.entries.size()));
    auto cmp = siqm::compare_spectra(exact, oracle, cfg.physics_tol);

    if (cfg.format == "csv") {
        std::string text = csv_join({"level", "exact_energy", "oracle_energy", "abs_diff"});
        for (std::size_t i = 0; i < exact.entries.size(); ++i)
            text += csv_join({std::to_string(exact.entries[i].level),
                              fmt12(exact.entries[i].energy),
                              fmt12(oracle.entries[i].energy), fmt12(cmp.abs_diffs[i])});
        emit_text(text, cfg.out);
    } else {
        ojson doc;
        doc["meta"] = make_meta("spectrum", cfg);
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < exact.entries.size(); ++i)
            rows.push_back({{"level", exact.entries[i].level},
                            {"exact_energy", j12(exact.entries[i].energy)},
                            {"oracle_energy", j12(oracle.entries[i].energy)},
                            {"abs_diff", j12(cmp.abs_diffs[i])}});
        doc["data"] = {{"rows", std::move(rows)},
                       {"max_abs_diff", j12(cmp.max_abs_diff)},
                       {"truncated", exact.truncated},
                       {"pass", cmp.pass}};
        emit_json(doc, cfg.out);
    }
    return cmp.pass ? 0 : 2;
}

int cmd_states(const RunConfig& cfg) {
    const auto& fam = siqm::lookup(cfg.family);
    auto g = to_param(cfg, fam);
    siqm::Grid grid(cfg.x_min, cfg.x_max, cfg.n_points);

    const long levels = cfg.levels;
    siqm::Spectrum exact = siqm::exact_energies(fam, g, levels);
    if (exact.truncated) {
        std::ostringstream msg;
        msg << "level " << levels << " exceeds the bound-state count "
            << exact.entries.size();
        throw siqm::LevelOutOfRange(msg.str());
    }

    auto T = siqm::build_tridiagonal(
        [&](double x) { return siqm::partner_potential(fam, g, x, siqm::Ordering::AdaggerA); },
        grid);
    siqm::Spectrum oracle = siqm::lowest_eigenvalues(T, static_cast<int>(levels));

    std::vector<siqm::Wavefunction> states;
    std::vector<int> nodes;
    std::vector<double> overlaps;
    for (long n = 1; n <= levels; ++n) {
        states.push_back(siqm::excited_state(fam, g, n, grid));
        nodes.push_back(states.back().node_count());
        auto vec = siqm::eigenvector(T, oracle.entries[n - 1].energy, grid);
        overlaps.push_back(std::fabs(states.back().overlap(vec)));
    }

    if (cfg.format == "csv") {
        std::vector<std::string> header{"x"};
        for (long n = 1; n <= levels; ++n) header.push_back("psi_" + std::to_string(n));
        std::string text = csv_join(header);
        for (int i = 0; i < grid.n_points; ++i) {
            std::vector<std::string> row{fmt12(grid.x(i))};
            for (const auto& s : states) row.push_back(fmt12(s.values[i]));
            text += csv_join(row);
        }
        text += '\n';
        text += csv_join({"level", "energy", "nodes", "oracle_overlap"});
        for (long n = 1; n <= levels; ++n)
            text += csv_join({std::to_string(n), fmt12(exact.entries[n - 1].energy),
                              std::to_string(nodes[n - 1]), fmt12(overlaps[n - 1])});
        emit_text(text, cfg.out);
    } else {
        ojson doc;
        doc["meta"] = make_meta("states", cfg);
        ojson xs = ojson::array();
        for (int i = 0; i < grid.n_points; ++i) xs.push_back(j12(grid.x(i)));
        ojson recs = ojson::array();
        for (long n = 1; n <= levels; ++n) {
            ojson vals = ojson::array();
            for (double v : states[n - 1].values) vals.push_back(j12(v));
            recs.push_back({{"level", n},
                            {"energy", j12(exact.entries[n - 1].energy)},
                            {"nodes", nodes[n - 1]},
                            {"oracle_overlap", j12(overlaps[n - 1])},
                            {"values", std::move(vals)}});
        }
        doc["data"] = {{"x", std::move(xs)}, {"states", std::move(recs)}};
        emit_json(doc, cfg.out);
    }
    return 0;
}

ojson degeneracy_to_json(const siqm::DegeneracyTable& table) {
    ojson sectors = ojson::array();
    for (const auto& sl : table.sectors) {
        ojson energies = ojson::array();
        for (double e : sl.energies) energies.push_back(j12(e));
        sectors.push_back({{"sector", sl.sector},
                           {"b_floor", j12(sl.b_floor)},
                           {"energies", std::move(energies)}});
    }
    ojson alignment = ojson::array();
    for (const auto& flag : table.alignment)
        alignment.push_back({{"lower", flag.lower},
                             {"upper", flag.upper},
                             {"same_partnership", flag.same_partnership},
                             {"n_compared", flag.n_compared},
                             {"n_matched", flag.n_matched},
                             {"aligned", flag.aligned}});
    return {{"sectors", std::move(sectors)},
            {"alignment", std::move(alignment)},
            {"all_aligned", table.all_aligned()}};
}

std::string degeneracy_to_csv(const siqm::DegeneracyTable& table) {
    std::string text = csv_join({"sector", "level", "energy"});
    for (const auto& sl : table.sectors)
        for (std::size_t i = 0; i < sl.energies.size(); ++i)
            text += csv_join({std::to_string(sl.sector), std::to_string(i + 1),
                              fmt12(sl.energies[i])});
    text += '\n';
    text += csv_join(
        {"lower", "upper", "same_partnership", "n_compared", "n_matched", "aligned"});
    for (const auto& flag : table.alignment)
        text += csv_join({std::to_string(flag.lower), std::to_string(flag.upper),
                          flag.same_partnership ? "true" : "false",
                          std::to_string(flag.n_compared), std::to_string(flag.n_matched),
                          flag.aligned ? "true" : "false"});
    return text;
}

int cmd_verify(const RunConfig& cfg) {
    const auto& fam = siqm::lookup(cfg.family);
    auto g = to_param(cfg, fam);
    siqm::Grid grid(cfg.x_min, cfg.x_max, cfg.n_points);

    auto model = siqm::build_model(fam, g, cfg.partnerships, grid, {.eta1 = cfg.eta1});
    siqm::VerifyOptions vopts;
    vopts.seed = cfg.seed;
    vopts.structural_tol = cfg.structural_tol;
    auto report = siqm::verify_superalgebra(model, vopts);
    auto bps = siqm::bps_states(model);
    auto table = siqm::degeneracy_table(model, static_cast<int>(cfg.levels), cfg.physics_tol);

    if (cfg.format == "csv") {
        std::string text = csv_join({"identity", "classification", "residual", "residual_fine",
                                     "ratio_min", "ratio_max", "pass"});
        for (const auto& id : report.identities)
            text += csv_join({id.name, id.classification, fmt12(id.residual),
                              id.residual_fine ? fmt12(*id.residual_fine) : "",
                              id.ratio_min ? fmt12(*id.ratio_min) : "",
                              id.ratio_max ? fmt12(*id.ratio_max) : "",
                              id.pass ? "true" : "false"});
        text += '\n';
        text += csv_join({"bps_sector", "energy", "shift_residual"});
        for (const auto& state : bps) {
            siqm::BlockVector v = siqm::BlockVector::zeros(model.n_sectors(), grid.n_points);
            v.sectors[state.sector - 1] = state.state.values;
            text += csv_join({std::to_string(state.sector), fmt12(state.energy),
                              fmt12(siqm::block_interior_sup(model.S.apply(v)))});
        }
        text += '\n';
        text += degeneracy_to_csv(table);
        emit_text(text, cfg.out);
    } else {
        ojson doc;
        doc["meta"] = make_meta("verify", cfg);
        ojson model_info;
        {
            ojson b = ojson::array(), eta = ojson::array(), z = ojson::array();
            for (double v : model.b) b.push_back(j12(v));
            for (double v : model.eta) eta.push_back(j12(v));
            for (int s = 0; s < model.n_sectors(); ++s)
                z.push_back(j12(model.Z.block(s, s)->get(0, 0)));
            model_info = {{"b", std::move(b)}, {"eta", std::move(eta)},
                          {"z_diagonal", std::move(z)}};
        }
        ojson identities = ojson::parse(siqm::algebra_report_to_json(report));
        ojson bps_arr = ojson::array();
        for (const auto& state : bps) {
            siqm::BlockVector v = siqm::BlockVector::zeros(model.n_sectors(), grid.n_points);
            v.sectors[state.sector - 1] = state.state.values;
            bps_arr.push_back({{"sector", state.sector},
                               {"energy", j12(state.energy)},
                               {"shift_residual",
                                j12(siqm::block_interior_sup(model.S.apply(v)))}});
        }
        doc["data"] = {{"model", std::move(model_info)},
                       {"algebra", std::move(identities)},
                       {"bps", std::move(bps_arr)},
                       {"degeneracy", degeneracy_to_json(table)}};
        emit_json(doc, cfg.out);
    }
    return report.all_pass() ? 0 : 2;
}

int cmd_figure(const RunConfig& cfg) {
    const auto& fam = siqm::lookup(cfg.family);
    auto g = to_param(cfg, fam);
    siqm::Grid grid(cfg.x_min, cfg.x_max, cfg.n_points);

    siqm::ModelOptions mopts{.eta1 = cfg.eta1,
                             .broken_eta_offset = cfg.broken_alignment.value_or(0.0)};
    auto model = siqm::build_model(fam, g, cfg.partnerships, grid, mopts);
    auto table = siqm::degeneracy_table(model, static_cast<int>(cfg.levels), cfg.physics_tol);

    if (cfg.format == "csv") {
        emit_text(degeneracy_to_csv(table), cfg.out);
    } else {
        ojson doc;
        doc["meta"] = make_meta("figure", cfg);
        doc["data"] = degeneracy_to_json(table);
        emit_json(doc, cfg.out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape-invariant supersymmetric quantum mechanics toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string grid_spec;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--family", cfg.family, "superpotential family name");
        cmd->add_option("--g", cfg.g, "family parameter(s), repeatable");
        cmd->add_option("--grid", grid_spec, "grid as x_min,x_max,n_points");
        cmd->add_option("--levels", cfg.levels, "number of levels");
        cmd->add_option("--partnerships", cfg.partnerships, "number of sector pairs (N)");
        cmd->add_option("--eta1", cfg.eta1, "central-charge parameter of the first partnership");
        cmd->add_option("--tol", cfg.physics_tol, "physics comparison tolerance");
        cmd->add_option("--format", cfg.format, "output format: json or csv");
        cmd->add_option("--out", cfg.out, "output path (default stdout)");
        cmd->add_option("--seed", cfg.seed, "RNG seed for test vectors");
        cmd->add_option("--config", config_path, "JSON config file (flags take precedence)");
        return cmd;
    };

    CLI::App* catalog = add_common(app.add_subcommand("catalog", "list registered families"));
    CLI::App* spectrum =
        add_common(app.add_subcommand("spectrum", "exact energies against the oracle"));
    CLI::App* states = add_common(app.add_subcommand("states", "stationary state profiles"));
    CLI::App* verify =
        add_common(app.add_subcommand("verify", "build a 2N-sector model and verify it"));
    CLI::App* figure =
        add_common(app.add_subcommand("figure", "level-diagram data with alignment flags"));
    figure->add_option("--broken-alignment", [&cfg](const std::vector<std::string>& vals) {
        cfg.broken_alignment = std::stod(vals.at(0));
        return true;
    }, "decouple eta from the ladder by this offset")->expected(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    CLI::App* active = catalog->parsed()   ? catalog
                       : spectrum->parsed() ? spectrum
                       : states->parsed()   ? states
                       : verify->parsed()   ? verify
                                            : figure;
    try {
        if (!config_path.empty()) apply_config_file(config_path, active, cfg, grid_spec);
        if (!grid_spec.empty()) parse_grid_spec(grid_spec, cfg);
        validate(cfg, active != catalog);

        if (active == catalog) return cmd_catalog(cfg);
        if (active == spectrum) return cmd_spectrum(cfg);
        if (active == states) return cmd_states(cfg);
        if (active == verify) return cmd_verify(cfg);
        return cmd_figure(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const siqm::UnknownFamily& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const siqm::ParameterDomainExit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const siqm::LevelOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const siqm::NonNormalizable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const siqm::ArityMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
