// Command-line front end: single eigenvalues and spectra (solve), quasi-exact
// catalogs (exact soft|hard), reference-table regeneration with diffs (table),
// analytic bounds (bounds), and AIM-vs-shooting comparison (oracle-check).
//
// Exit codes: 0 success, 1 invalid configuration, 2 partial results or diffs.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spectral/aim.hpp"
#include "spectral/bounds.hpp"
#include "spectral/errors.hpp"
#include "spectral/model.hpp"
#include "spectral/oracle.hpp"
#include "spectral/quasiexact.hpp"
#include "spectral/tables.hpp"

namespace {

using nlohmann::ordered_json;
using namespace spectral;

struct Common {
    std::string a = "0";
    std::string b = "1";
    int d = 3;
    int l = 0;
    std::string R;   // empty or "inf" = unconfined
    std::string n = "0";
    long digits = 18;
    long precision = 0;
    std::string r0;
    std::string format = "text";
    std::string output;
    std::string config;
    int jobs = 1;
};

struct SpecFlags {
    CLI::Option* a = nullptr;
    CLI::Option* b = nullptr;
    CLI::Option* d = nullptr;
    CLI::Option* l = nullptr;
    CLI::Option* R = nullptr;
    CLI::Option* dig = nullptr;
    CLI::Option* prec = nullptr;
};

void add_io_flags(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", c.output, "write output to this path instead of stdout");
}

SpecFlags add_spec_flags(CLI::App* sub, Common& c, bool with_R = true) {
    SpecFlags f;
    f.a = sub->add_option("--a", c.a, "Coulomb strength a (decimal string)")
              ->capture_default_str();
    f.b = sub->add_option("--b", c.b, "oscillator strength b (potential term b^2 r^2)")
              ->capture_default_str();
    f.d = sub->add_option("--d", c.d, "dimension, >= 2")->capture_default_str();
    f.l = sub->add_option("--l", c.l, "angular momentum, >= 0")->capture_default_str();
    if (with_R)
        f.R = sub->add_option("--R", c.R, "wall radius; omit or \"inf\" for no wall");
    f.dig = sub->add_option("--digits", c.digits, "requested stabilized digits")
                ->capture_default_str();
    f.prec = sub->add_option("--precision", c.precision, "working decimal digits");
    sub->add_option("--config", c.config, "key=value config file; explicit flags override");
    return f;
}

// "3" | "0..6" | "0,2,5"
std::vector<int> parse_states(const std::string& s) {
    std::vector<int> out;
    auto term = [](const std::string& t) {
        size_t pos = 0;
        int v = std::stoi(t, &pos);
        if (pos != t.size() || v < 0) throw DomainError("bad state index '" + t + "'");
        return v;
    };
    size_t dots = s.find("..");
    if (dots != std::string::npos) {
        int lo = term(s.substr(0, dots));
        int hi = term(s.substr(dots + 2));
        if (hi < lo) throw DomainError("empty state range '" + s + "'");
        for (int i = lo; i <= hi; ++i) out.push_back(i);
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(term(tok));
    if (out.empty()) throw DomainError("no states requested");
    return out;
}

SolveConfig build_config(const Common& c, const SpecFlags& f) {
    SolveConfig cfg;
    bool file = !c.config.empty();
    if (file) cfg = load_config(c.config);
    if (f.dig->count() || !file) cfg.digits = c.digits;
    if (f.prec->count()) cfg.spec.precision = c.precision;
    long pd = std::max({cfg.spec.precision, 2 * cfg.digits + 30, 80L});
    Precision p(pd);
    if (f.a->count() || !file) cfg.spec.a = BigReal(c.a, p);
    if (f.b->count() || !file) cfg.spec.b = BigReal(c.b, p);
    if (f.d->count() || !file) cfg.spec.d = c.d;
    if (f.l->count() || !file) cfg.spec.l = c.l;
    if (f.R && (f.R->count() || (!file && !c.R.empty()))) {
        if (c.R.empty() || c.R == "inf" || c.R == "none")
            cfg.spec.R.reset();
        else
            cfg.spec.R = BigReal(c.R, p);
    }
    if (cfg.digits < 1) throw DomainError("digits must be >= 1");
    cfg.spec.validate();
    return cfg;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output path '" + path + "'");
    out << text;
}

std::string render_text(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w(header.size());
    for (size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    std::ostringstream oss;
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) {
            oss << r[i];
            if (i + 1 < r.size()) oss << std::string(w[i] - r[i].size() + 2, ' ');
        }
        oss << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return oss.str();
}

std::string csv_safe(std::string s) {
    for (auto& ch : s)
        if (ch == ',' || ch == '\n') ch = ';';
    return s;
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream oss;
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) {
            oss << csv_safe(r[i]);
            if (i + 1 < r.size()) oss << ",";
        }
        oss << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return oss.str();
}

ordered_json spec_json(const SystemSpec& spec, long digits) {
    ordered_json j;
    j["a"] = spec.a.str_fixed(static_cast<int>(digits));
    j["b"] = spec.b.str_fixed(static_cast<int>(digits));
    j["d"] = spec.d;
    j["l"] = spec.l;
    if (spec.R)
        j["R"] = spec.R->str_fixed(static_cast<int>(digits));
    else
        j["R"] = "inf";
    j["precision"] = spec.precision;
    j["digits"] = digits;
    return j;
}

// ---- solve ------------------------------------------------------------------

int cmd_solve(const Common& c, const SpecFlags& f) {
    SolveConfig cfg = build_config(c, f);
    auto states = parse_states(c.n);
    AimOptions opts;
    if (!c.r0.empty())
        opts.r0 = BigReal(c.r0, Precision(std::max(80L, 2 * cfg.digits + 30)));

    int rc = 0;
    std::vector<EigenResult> results;
    try {
        results = find_eigenvalues(cfg.spec, states, cfg.digits, opts);
    } catch (const AimNoConvergence& ex) {
        results = ex.partial;
        rc = 2;
        std::cerr << "warning: " << ex.what() << "\n";
    }

    int dd = static_cast<int>(cfg.digits);
    std::vector<std::string> header{"n", "l", "d", "energy", "N", "r0", "status"};
    std::vector<std::vector<std::string>> rows;
    ordered_json jrows = ordered_json::array();
    for (int n : states) {
        const EigenResult* hit = nullptr;
        for (const auto& er : results)
            if (er.state.n == n) hit = &er;
        ordered_json jr;
        jr["n"] = n;
        jr["l"] = cfg.spec.l;
        jr["d"] = cfg.spec.d;
        if (hit) {
            rows.push_back({std::to_string(n), std::to_string(cfg.spec.l),
                            std::to_string(cfg.spec.d), hit->energy.str_fixed(dd),
                            std::to_string(hit->iterations), hit->seed_r0.str_fixed(6),
                            "ok"});
            jr["energy"] = hit->energy.str_fixed(dd);
            jr["iterations"] = hit->iterations;
            jr["r0"] = hit->seed_r0.str_fixed(6);
            jr["status"] = "ok";
        } else {
            rows.push_back({std::to_string(n), std::to_string(cfg.spec.l),
                            std::to_string(cfg.spec.d), "-", "-", "-", "unconverged"});
            jr["energy"] = nullptr;
            jr["status"] = "unconverged";
        }
        jrows.push_back(std::move(jr));
    }

    if (c.format == "json") {
        ordered_json j;
        j["command"] = "solve";
        j["spec"] = spec_json(cfg.spec, cfg.digits);
        j["results"] = std::move(jrows);
        emit(j.dump(2) + "\n", c.output);
    } else if (c.format == "csv") {
        emit(render_csv(header, rows), c.output);
    } else {
        emit(render_text(header, rows), c.output);
    }
    return rc;
}

// ---- exact ------------------------------------------------------------------

int cmd_exact_soft(const Common& c, const SpecFlags& f, int nprime) {
    SolveConfig cfg = build_config(c, f);
    if (cfg.spec.R) throw DomainError("exact soft: no wall radius applies");
    int k = cfg.spec.k();
    auto sols = soft_solutions(nprime, k, cfg.spec.b);
    int dd = static_cast<int>(cfg.digits);

    std::vector<std::string> header{"nprime", "a", "energy", "roots", "type"};
    std::vector<std::vector<std::string>> rows;
    ordered_json jrows = ordered_json::array();
    for (const auto& s : sols) {
        std::string roots = "-";
        ordered_json jroots = ordered_json::array();
        if (!s.node_radii.empty()) {
            std::ostringstream oss;
            for (size_t i = 0; i < s.node_radii.size(); ++i) {
                if (i) oss << " ";
                oss << s.node_radii[i].str_fixed(dd);
                jroots.push_back(s.node_radii[i].str_fixed(dd));
            }
            roots = oss.str();
        }
        rows.push_back({std::to_string(s.nprime), s.a.str_fixed(dd),
                        s.energy.str_fixed(dd), roots, state_type_name(s.state_type)});
        ordered_json jr;
        jr["nprime"] = s.nprime;
        jr["a"] = s.a.str_fixed(dd);
        jr["energy"] = s.energy.str_fixed(dd);
        jr["roots"] = std::move(jroots);
        jr["type"] = state_type_name(s.state_type);
        jrows.push_back(std::move(jr));
    }

    if (c.format == "json") {
        ordered_json j;
        j["command"] = "exact soft";
        j["k"] = k;
        j["b"] = cfg.spec.b.str_fixed(dd);
        j["solutions"] = std::move(jrows);
        emit(j.dump(2) + "\n", c.output);
    } else if (c.format == "csv") {
        emit(render_csv(header, rows), c.output);
    } else {
        emit(render_text(header, rows), c.output);
    }
    return 0;
}

int cmd_exact_hard(const Common& c, const SpecFlags& f, int nf) {
    SolveConfig cfg = build_config(c, f);
    int k = cfg.spec.k();
    std::vector<QuasiExactSolution> sols;
    try {
        sols = solve_hard_system(nf, k, cfg.spec.b);
    } catch (const NoSolutionFound& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    int dd = static_cast<int>(cfg.digits);

    std::vector<std::string> header{"a", "R", "energy", "nodes"};
    std::vector<std::vector<std::string>> rows;
    ordered_json jrows = ordered_json::array();
    for (const auto& s : sols) {
        rows.push_back({s.a.str_fixed(dd), s.R->str_fixed(dd), s.energy.str_fixed(dd),
                        std::to_string(s.state_type)});
        ordered_json jr;
        jr["a"] = s.a.str_fixed(dd);
        jr["R"] = s.R->str_fixed(dd);
        jr["energy"] = s.energy.str_fixed(dd);
        jr["nodes"] = s.state_type;
        jrows.push_back(std::move(jr));
    }

    if (c.format == "json") {
        ordered_json j;
        j["command"] = "exact hard";
        j["k"] = k;
        j["b"] = cfg.spec.b.str_fixed(dd);
        j["degree"] = nf;
        j["solutions"] = std::move(jrows);
        emit(j.dump(2) + "\n", c.output);
    } else if (c.format == "csv") {
        emit(render_csv(header, rows), c.output);
    } else {
        emit(render_text(header, rows), c.output);
    }
    return 0;
}

// ---- table ------------------------------------------------------------------

int cmd_table(const Common& c, const std::string& name) {
    TableReport rep = regenerate_table(name, c.jobs);
    if (c.format == "json") {
        ordered_json j;
        j["command"] = "table";
        j["table"] = rep.name;
        j["all_ok"] = rep.all_ok();
        ordered_json cells = ordered_json::array();
        for (const auto& cell : rep.cells) {
            ordered_json jc;
            jc["ok"] = cell.ok;
            jc["row"] = cell.row;
            jc["col"] = cell.col;
            jc["reference"] = cell.expected;
            jc["computed"] = cell.computed;
            jc["note"] = cell.note;
            cells.push_back(std::move(jc));
        }
        j["cells"] = std::move(cells);
        emit(j.dump(2) + "\n", c.output);
    } else if (c.format == "csv") {
        std::vector<std::string> header{"ok", "row", "col", "reference", "computed", "note"};
        std::vector<std::vector<std::string>> rows;
        for (const auto& cell : rep.cells)
            rows.push_back({cell.ok ? "ok" : "FAIL", cell.row, cell.col, cell.expected,
                            cell.computed, cell.note});
        emit(render_csv(header, rows), c.output);
    } else {
        emit(render_report(rep), c.output);
    }
    return rep.all_ok() ? 0 : 2;
}

// ---- bounds -----------------------------------------------------------------

int cmd_bounds(const Common& c, const SpecFlags& f) {
    SolveConfig cfg = build_config(c, f);
    if (cfg.spec.R) throw DomainError("bounds: derived for the unconfined potential only");
    auto states = parse_states(c.n);
    int n = states.front();
    BoundsReport rep = bounds_for_subspace(cfg.spec, cfg.spec.l, n);
    int dd = static_cast<int>(cfg.digits);

    std::vector<std::string> header{"bound", "value", "detail"};
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"envelope upper", rep.envelope_upper.str_fixed(dd),
                    "t* = " + rep.t_star.str_fixed(dd)});
    rows.push_back({"gauss upper (ground)", rep.gauss_upper.str_fixed(dd),
                    "alpha = " + rep.alpha_gauss.str_fixed(dd)});
    rows.push_back({"local-energy lower (ground)", rep.local_energy_lower.str_fixed(dd),
                    "alpha = " + rep.alpha_let.str_fixed(dd)});
    if (rep.heisenberg_lower)
        rows.push_back({"heisenberg lower (ground)", rep.heisenberg_lower->str_fixed(dd),
                        "r* = " + rep.r_heis->str_fixed(dd)});
    else
        rows.push_back({"heisenberg lower (ground)", "-", "requires d >= 3"});

    if (c.format == "json") {
        ordered_json j;
        j["command"] = "bounds";
        j["spec"] = spec_json(cfg.spec, cfg.digits);
        j["n"] = n;
        j["envelope_upper"] = rep.envelope_upper.str_fixed(dd);
        j["t_star"] = rep.t_star.str_fixed(dd);
        j["gauss_upper"] = rep.gauss_upper.str_fixed(dd);
        j["alpha_gauss"] = rep.alpha_gauss.str_fixed(dd);
        j["local_energy_lower"] = rep.local_energy_lower.str_fixed(dd);
        j["alpha_let"] = rep.alpha_let.str_fixed(dd);
        if (rep.heisenberg_lower) {
            j["heisenberg_lower"] = rep.heisenberg_lower->str_fixed(dd);
            j["r_heis"] = rep.r_heis->str_fixed(dd);
        } else {
            j["heisenberg_lower"] = nullptr;
        }
        emit(j.dump(2) + "\n", c.output);
    } else if (c.format == "csv") {
        emit(render_csv(header, rows), c.output);
    } else {
        emit(render_text(header, rows), c.output);
    }
    return 0;
}

// ---- oracle-check -----------------------------------------------------------

int cmd_oracle_check(const Common& c, const SpecFlags& f) {
    SolveConfig cfg = build_config(c, f);
    auto states = parse_states(c.n);
    long od = std::clamp(cfg.digits, 6L, 13L);
    int dd = static_cast<int>(cfg.digits);

    auto aim = find_eigenvalues(cfg.spec, states, cfg.digits);
    Precision p(cfg.spec.work_precision());
    BigReal tol_unit = pow(BigReal(10, p), -12L);

    int rc = 0;
    std::vector<std::string> header{"n", "aim", "oracle", "diff", "status"};
    std::vector<std::vector<std::string>> rows;
    ordered_json jrows = ordered_json::array();
    for (size_t i = 0; i < states.size(); ++i) {
        int n = states[i];
        EigenResult shot = shoot_eigenvalue(cfg.spec, n, od);
        BigReal diff = abs(aim[i].energy - shot.energy);
        BigReal tol = tol_unit * max(BigReal(1, p), abs(aim[i].energy));
        bool ok = diff <= tol;
        if (!ok) rc = 2;
        rows.push_back({std::to_string(n), aim[i].energy.str_fixed(dd),
                        shot.energy.str_fixed(static_cast<int>(od)), diff.str_sci(2),
                        ok ? "ok" : "DIFF"});
        ordered_json jr;
        jr["n"] = n;
        jr["aim"] = aim[i].energy.str_fixed(dd);
        jr["oracle"] = shot.energy.str_fixed(static_cast<int>(od));
        jr["diff"] = diff.str_sci(2);
        jr["status"] = ok ? "ok" : "diff";
        jrows.push_back(std::move(jr));
    }

    if (c.format == "json") {
        ordered_json j;
        j["command"] = "oracle-check";
        j["spec"] = spec_json(cfg.spec, cfg.digits);
        j["oracle_digits"] = od;
        j["results"] = std::move(jrows);
        emit(j.dump(2) + "\n", c.output);
    } else if (c.format == "csv") {
        emit(render_csv(header, rows), c.output);
    } else {
        emit(render_text(header, rows), c.output);
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "spectral solver for the d-dimensional radial Schrodinger equation with "
        "V(r) = a/r + b^2 r^2, optionally confined inside an impenetrable wall"};
    app.require_subcommand(1);
    Common c;

    auto* solve = app.add_subcommand("solve", "compute eigenvalues by the asymptotic iteration method");
    SpecFlags fsolve = add_spec_flags(solve, c);
    solve->add_option("--n", c.n, "state index, range \"0..6\", or comma list")
        ->capture_default_str();
    solve->add_option("--r0", c.r0, "override the iteration anchor point");
    add_io_flags(solve, c);

    auto* exact = app.add_subcommand("exact", "quasi-exact closed-form solutions");
    exact->require_subcommand(1);
    int nprime = 0, nf = 0;
    auto* soft = exact->add_subcommand("soft", "polynomial solutions without a wall");
    SpecFlags fsoft = add_spec_flags(soft, c, /*with_R=*/false);
    soft->add_option("--nprime", nprime, "polynomial degree")->required();
    add_io_flags(soft, c);
    auto* hard = exact->add_subcommand("hard", "wall radius / coupling pairs");
    SpecFlags fhard = add_spec_flags(hard, c, /*with_R=*/false);
    hard->add_option("--n", nf, "interior polynomial degree")->required();
    add_io_flags(hard, c);

    auto* table = app.add_subcommand("table", "regenerate a reference table and diff it");
    std::string tname;
    table->add_option("name", tname, "table name")
        ->required()
        ->check(CLI::IsMember({"I", "II", "III", "IV", "V"}));
    table->add_option("--jobs", c.jobs, "worker threads for independent cells")
        ->capture_default_str();
    add_io_flags(table, c);

    auto* bounds = app.add_subcommand("bounds", "analytic upper and lower energy bounds");
    SpecFlags fbounds = add_spec_flags(bounds, c, /*with_R=*/false);
    bounds->add_option("--n", c.n, "state index for the envelope bound")
        ->capture_default_str();
    add_io_flags(bounds, c);

    auto* ocheck = app.add_subcommand("oracle-check", "compare AIM against direct integration");
    SpecFlags focheck = add_spec_flags(ocheck, c);
    ocheck->add_option("--n", c.n, "state index, range, or comma list")
        ->capture_default_str();
    add_io_flags(ocheck, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(solve)) return cmd_solve(c, fsolve);
        if (app.got_subcommand(exact)) {
            if (exact->got_subcommand(soft)) return cmd_exact_soft(c, fsoft, nprime);
            return cmd_exact_hard(c, fhard, nf);
        }
        if (app.got_subcommand(table)) return cmd_table(c, tname);
        if (app.got_subcommand(bounds)) return cmd_bounds(c, fbounds);
        if (app.got_subcommand(ocheck)) return cmd_oracle_check(c, focheck);
    } catch (const NoSolutionFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
