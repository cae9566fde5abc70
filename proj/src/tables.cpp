#include "spectral/tables.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "spectral/aim.hpp"
#include "spectral/errors.hpp"
#include "spectral/quasiexact.hpp"

namespace spectral {

namespace {

// ---- embedded reference values ---------------------------------------------

const std::vector<Table3Entry> kTable3 = {
    {0, 2, "3.496523195977584904"},   {1, 2, "7.236061809572725332"},
    {2, 2, "11.087207289903431629"},  {3, 2, "14.987686167769085806"},
    {4, 2, "18.914845906356635037"},  {5, 2, "22.858359294293599064"},
    {6, 2, "26.812770333469636285"},  {0, 3, "4.057877007967971193"},
    {1, 3, "7.909673791067402644"},   {2, 3, "11.819201619422902597"},
    {3, 3, "15.755974584087041187"},  {4, 3, "19.708234144818473335"},
    {5, 3, "23.670343578651163274"},  {6, 3, "27.639205893933559031"},
    {0, 4, "4.855342290384481116"},   {1, 4, "8.759375855335329641"},
    {2, 4, "12.696079483403726859"},  {3, 4, "16.649791569971972988"},
    {4, 4, "20.613775425537580344"},  {5, 4, "24.584567825802389703"},
    {6, 4, "28.560170841418040482"},  {0, 5, "5.735130562770478606"},
    {1, 5, "9.666978698978433146"},   {2, 5, "13.619220040408034056"},
    {3, 5, "17.582990605777455161"},  {4, 5, "21.554094076075464896"},
    {5, 5, "25.530235189253178567"},  {6, 5, "29.510030701250179290"},
    {0, 6, "6.653839972029922498"},   {1, 6, "10.602367239032036476"},
    {2, 6, "14.564582581426144447"},  {3, 6, "18.535063827411992187"},
    {4, 6, "22.511033550195534839"},  {5, 6, "26.490890406969728329"},
    {6, 6, "30.473632062108310237"},  {0, 7, "7.594350931424006160"},
    {1, 7, "11.553756993287284639"},  {2, 7, "15.522859985850837447"},
    {3, 7, "19.498137514526264446"},  {4, 7, "23.477664734542715807"},
    {5, 7, "27.460281139971802109"},  {6, 7, "31.445236047407720108"},
};

const char* kTable4Radius = "1.447082228754501502";

const std::vector<Table4Entry> kTable4 = {
    {0, 0, "9.000000000000000001"},   {1, 1, "24.305412213817055207"},
    {2, 2, "48.570802600950511528"},  {3, 3, "82.052426304188379099"},
    {4, 4, "124.845251820221004239"}, {5, 6, "238.517551072045582565"},
};

const std::vector<Table5Entry> kTable5 = {
    {0, 0, 2, "9.298213743966306503"},   {0, 1, 2, "17.056214768511049448"},
    {0, 2, 2, "28.503765718945267353"},  {0, 3, 2, "42.737355022574771999"},
    {0, 4, 2, "59.564456107008915084"},  {0, 5, 2, "78.892555598221694492"},
    {0, 0, 3, "12.550092461190652257"},  {0, 1, 3, "22.410590350956293454"},
    {0, 2, 3, "35.288239785280558264"},  {0, 3, 3, "50.833639418866620375"},
    {0, 4, 3, "68.920051722100849182"},  {0, 5, 3, "89.475411786048045561"},
    {0, 0, 4, "17.056214768511049448"},  {0, 1, 4, "28.503765718945267353"},
    {0, 2, 4, "42.737355022574771999"},  {0, 3, 4, "59.564456107008915084"},
    {0, 4, 4, "78.892555598221694492"},  {0, 5, 4, "100.663030250522172574"},
};

// duplicated Table V entries asserting E(n,l;d) = E(n,l+1;d-2)
struct EquivPair {
    int i, j;  // indices into kTable5
};
const std::vector<EquivPair> kTable5Equiv = {
    {1, 12}, {2, 13}, {3, 14}, {4, 15}, {5, 16},
};

int decimals(const char* s) {
    const char* dot = nullptr;
    for (const char* p = s; *p; ++p)
        if (*p == '.') dot = p;
    if (!dot) return 0;
    int n = 0;
    for (const char* p = dot + 1; *p; ++p) ++n;
    return n;
}

TableCell num_cell(std::string row, std::string col, const char* ref_str,
                   const BigReal& computed, const BigReal& tol,
                   std::string note = std::string()) {
    TableCell c;
    c.row = std::move(row);
    c.col = std::move(col);
    c.expected = ref_str;
    c.computed = computed.str_fixed(decimals(ref_str));
    BigReal ref(ref_str, Precision(60));
    BigReal diff = abs(computed - ref);
    c.ok = diff <= tol;
    std::ostringstream oss;
    oss << "diff " << diff.str_sci(2);
    if (!note.empty()) oss << "; " << note;
    c.note = oss.str();
    return c;
}

TableCell value_cell(std::string row, std::string col, std::string display,
                     const BigReal& ref, const BigReal& computed,
                     const BigReal& tol, int show_decimals,
                     std::string note = std::string()) {
    TableCell c;
    c.row = std::move(row);
    c.col = std::move(col);
    c.expected = std::move(display);
    c.computed = computed.str_fixed(show_decimals);
    BigReal diff = abs(computed - ref);
    c.ok = diff <= tol;
    std::ostringstream oss;
    oss << "diff " << diff.str_sci(2);
    if (!note.empty()) oss << "; " << note;
    c.note = oss.str();
    return c;
}

TableCell fail_cell(std::string row, std::string col, std::string why) {
    TableCell c;
    c.row = std::move(row);
    c.col = std::move(col);
    c.expected = "(value)";
    c.computed = "(none)";
    c.note = std::move(why);
    c.ok = false;
    return c;
}

void run_tasks(std::vector<std::function<void()>>& tasks, int jobs) {
    if (jobs <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<size_t> next{0};
    int nw = std::min<int>(jobs, static_cast<int>(tasks.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nw));
    for (int i = 0; i < nw; ++i)
        pool.emplace_back([&] {
            for (;;) {
                size_t t = next.fetch_add(1);
                if (t >= tasks.size()) break;
                tasks[t]();
            }
        });
    for (auto& w : pool) w.join();
}

// ---- Table I: termination conditions as printed ----------------------------

EPoly printed_condition(int nprime, int k, const BigReal& b, Precision prec) {
    auto num = [&](long v) { return BigReal(v, prec); };
    const BigReal b2 = b * b, b3 = b * b * b;
    std::vector<BigReal> c;
    switch (nprime) {
        case 0:
            c = {num(0), num(1)};
            break;
        case 1:
            c = {-2 * b * num(k - 1), num(0), num(1)};
            break;
        case 2:
            c = {num(0), -4 * b * num(2L * k - 1), num(0), num(1)};
            break;
        case 3:
            c = {36 * b2 * num(static_cast<long>(k) * k - 1), num(0),
                 -20 * b * num(k), num(0), num(1)};
            break;
        case 4:
            c = {num(0), 32 * b2 * num(8L * k * k + 8 * k - 7), num(0),
                 -20 * b * num(2L * k + 1), num(0), num(1)};
            break;
        case 5:
            c = {-1800 * b3 * num(static_cast<long>(k - 1) * (k + 1) * (k + 3)),
                 num(0), 4 * b2 * num(259L * k * (k + 2) - 65), num(0),
                 -70 * b * num(k + 1), num(0), num(1)};
            break;
        default:
            throw DomainError("printed_condition: only degrees 0..5 are tabulated");
    }
    return EPoly{std::move(c)};
}

const char* kPrintedForms[6] = {
    "a = 0",
    "a^2 - 2b(k-1) = 0",
    "a(a^2 - 4b(2k-1)) = 0",
    "a^4 - 20a^2bk + 36b^2(k^2-1) = 0",
    "a(a^4 - 20a^2b(2k+1) + 32b^2(8k^2+8k-7)) = 0",
    "a^6 - 70a^4b(k+1) + 4a^2b^2(259k(k+2)-65) - 1800b^3(k-1)(k+1)(k+3) = 0",
};

TableReport table1(int) {
    TableReport rep;
    rep.name = "I";
    Precision prec(60);
    const int ks[] = {2, 3, 5, 7, 9, 12};
    const long bnum[] = {1, 1, 3, 7};
    const long bden[] = {4, 1, 1, 1};
    const BigReal tol = pow(BigReal(10, prec), -40L);

    for (int np = 0; np <= 5; ++np) {
        BigReal worst(prec);
        bool ok = true;
        for (int ik = 0; ik < 6; ++ik) {
            for (int ib = 0; ib < 4; ++ib) {
                BigReal b = BigReal(bnum[ib], prec) / bden[ib];
                EPoly mine = soft_condition(np, ks[ik], b).poly_a;
                EPoly printed = printed_condition(np, ks[ik], b, prec);
                BigReal scale = max(BigReal(1, prec), coeff_max_abs(printed));
                int deg = std::max(mine.degree(), printed.degree());
                for (int i = 0; i <= deg; ++i) {
                    BigReal diff = abs(mine.coeff(static_cast<size_t>(i)) -
                                       printed.coeff(static_cast<size_t>(i))) /
                                   scale;
                    worst = max(worst, diff);
                    if (diff > tol) ok = false;
                }
            }
        }
        TableCell c;
        c.row = "degree " + std::to_string(np);
        c.col = "condition";
        c.expected = kPrintedForms[np];
        c.computed = "determinant recurrence";
        c.ok = ok;
        c.note = "coefficient match on k in {2,3,5,7,9,12}, b in {1/4,1,3,7}; max rel diff " +
                 worst.str_sci(2);
        rep.cells.push_back(std::move(c));
    }
    return rep;
}

// ---- Table II: quasi-exact parameters for V = a/r + r^2 --------------------

struct T2Row {
    int nprime;
    std::function<BigReal(Precision)> a_ref;
    const char* a_disp;
    std::vector<const char*> radii;
    int nodes;
};

std::vector<T2Row> t2_rows() {
    auto lit = [](const char* s) {
        return [s](Precision p) { return BigReal(s, p); };
    };
    auto surd = [](long u, long sgn, long v) {
        // sqrt(u + sgn*6*sqrt(v))
        return [u, sgn, v](Precision p) {
            return sqrt(BigReal(u, p) + sgn * 6 * sqrt(BigReal(v, p)));
        };
    };
    std::vector<T2Row> rows;
    rows.push_back({0, [](Precision p) { return BigReal(p); }, "0", {}, 0});
    rows.push_back({1, [](Precision p) { return BigReal(2, p); }, "2", {}, 0});
    rows.push_back({2, [](Precision p) { return 2 * sqrt(BigReal(5, p)); },
                    "2*sqrt(5)", {}, 0});
    rows.push_back({3, surd(30, 1, 17), "sqrt(30+6*sqrt(17))", {}, 0});
    rows.push_back({3, surd(30, -1, 17), "sqrt(30-6*sqrt(17))",
                    {"1.4470822287545015022"}, 1});
    rows.push_back({4, surd(70, 1, 57), "sqrt(70+6*sqrt(57))", {}, 0});
    rows.push_back({4, surd(70, -1, 57), "sqrt(70-6*sqrt(57))",
                    {"1.6532645408016027964"}, 1});
    rows.push_back({5, lit("14.450001026965667202"), "14.450001026965667202", {}, 0});
    rows.push_back({5, lit("8.0506612725179184966"), "8.0506612725179184966",
                    {"1.8409981334569487873"}, 1});
    rows.push_back({5, lit("2.5267218675333722705"), "2.5267218675333722705",
                    {"1.1462887538950250086", "2.2162512210167737363"}, 2});
    return rows;
}

TableReport table2(int) {
    TableReport rep;
    rep.name = "II";
    Precision prec(60);
    const BigReal b1(1, prec);
    const BigReal tol = pow(BigReal(10, prec), -18L);

    std::vector<std::vector<QuasiExactSolution>> per_np(6);
    for (int np = 0; np <= 5; ++np) per_np[static_cast<size_t>(np)] = soft_solutions(np, 3, b1);

    for (const auto& row : t2_rows()) {
        const auto& sols = per_np[static_cast<size_t>(row.nprime)];
        BigReal aref = row.a_ref(prec);
        const QuasiExactSolution* best = nullptr;
        for (const auto& s : sols)
            if (!best || abs(s.a - aref) < abs(best->a - aref)) best = &s;
        std::string rl = "n'=" + std::to_string(row.nprime);
        if (!best) {
            rep.cells.push_back(fail_cell(rl, "a", "no solution produced"));
            continue;
        }
        std::string note = state_type_name(best->state_type);
        if (best->state_type != row.nodes) {
            note += " (expected " + state_type_name(row.nodes) + ")";
        }
        TableCell ac = value_cell(rl, "a", row.a_disp, aref, best->a, tol, 20, note);
        if (best->state_type != row.nodes) ac.ok = false;
        rep.cells.push_back(std::move(ac));
        for (size_t i = 0; i < row.radii.size(); ++i) {
            std::string col = row.radii.size() > 1
                                  ? "root R" + std::to_string(i + 1)
                                  : "root R";
            if (i < best->node_radii.size()) {
                rep.cells.push_back(num_cell(rl + " a=" + row.a_disp, col,
                                             row.radii[i], best->node_radii[i],
                                             tol));
            } else {
                rep.cells.push_back(fail_cell(rl + " a=" + row.a_disp, col,
                                              "missing polynomial root"));
            }
        }
    }
    return rep;
}

// ---- Tables III-V: eigenvalue reproductions --------------------------------

SystemSpec unit_spec(int d, int l) {
    SystemSpec spec;
    Precision p(60);
    spec.a = BigReal(1, p);
    spec.b = BigReal(1, p);
    spec.d = d;
    spec.l = l;
    spec.precision = 40;
    return spec;
}

TableReport table3(int jobs) {
    TableReport rep;
    rep.name = "III";
    rep.cells.resize(kTable3.size());
    Precision prec(60);
    const BigReal tol = pow(BigReal(10, prec), -17L);

    std::vector<std::function<void()>> tasks;
    for (int d = 2; d <= 7; ++d) {
        tasks.push_back([&rep, &tol, d] {
            size_t base = static_cast<size_t>(d - 2) * 7;
            try {
                SystemSpec spec = unit_spec(d, 0);
                auto eig = find_eigenvalues(spec, {0, 1, 2, 3, 4, 5, 6}, 18);
                for (int n = 0; n <= 6; ++n) {
                    const auto& e = kTable3[base + static_cast<size_t>(n)];
                    rep.cells[base + static_cast<size_t>(n)] = num_cell(
                        "n=" + std::to_string(n), "d=" + std::to_string(d), e.e18,
                        eig[static_cast<size_t>(n)].energy, tol,
                        "N=" + std::to_string(eig[static_cast<size_t>(n)].iterations));
                }
            } catch (const std::exception& ex) {
                for (int n = 0; n <= 6; ++n)
                    rep.cells[base + static_cast<size_t>(n)] =
                        fail_cell("n=" + std::to_string(n),
                                  "d=" + std::to_string(d), ex.what());
            }
        });
    }
    run_tasks(tasks, jobs);
    return rep;
}

TableReport table4(int) {
    TableReport rep;
    rep.name = "IV";
    Precision prec(80);
    const BigReal tol = pow(BigReal(10, prec), -17L);

    SystemSpec spec;
    spec.a = sqrt(30 - 6 * sqrt(BigReal(17, prec)));
    spec.b = BigReal(1, prec);
    spec.d = 3;
    spec.l = 0;
    spec.R = BigReal(kTable4Radius, prec);
    spec.precision = 40;

    std::vector<EigenResult> eig;
    try {
        eig = find_eigenvalues(spec, {0, 1, 2, 3, 4, 5, 6}, 18);
    } catch (const std::exception& ex) {
        for (const auto& e : kTable4)
            rep.cells.push_back(fail_cell("n=" + std::to_string(e.label_n),
                                          "E(d=3)", ex.what()));
        return rep;
    }

    for (const auto& e : kTable4) {
        std::string note = "N=" + std::to_string(eig[static_cast<size_t>(e.actual_n)].iterations);
        if (e.label_n != e.actual_n) {
            note += "; tabulated as n=" + std::to_string(e.label_n) +
                    " but is the rank-" + std::to_string(e.actual_n) +
                    " eigenvalue here; rank 5 is " + eig[5].energy.str_fixed(18);
        }
        rep.cells.push_back(num_cell("n=" + std::to_string(e.label_n), "E(d=3)",
                                     e.e18,
                                     eig[static_cast<size_t>(e.actual_n)].energy,
                                     tol, note));
    }
    return rep;
}

TableReport table5(int jobs) {
    TableReport rep;
    rep.name = "V";
    rep.cells.resize(kTable5.size() + kTable5Equiv.size());
    Precision prec(60);
    const BigReal tol = pow(BigReal(10, prec), -17L);

    std::vector<BigReal> energies(kTable5.size());
    std::vector<std::function<void()>> tasks;
    for (size_t i = 0; i < kTable5.size(); ++i) {
        tasks.push_back([&rep, &energies, &tol, i] {
            const auto& e = kTable5[i];
            std::string row = "n=" + std::to_string(e.n) + " l=" + std::to_string(e.l);
            std::string col = "d=" + std::to_string(e.d);
            try {
                SystemSpec spec = unit_spec(e.d, e.l);
                spec.R = BigReal(1, Precision(60));
                auto eig = find_eigenvalues(spec, {e.n}, 18);
                energies[i] = eig[0].energy;
                rep.cells[i] = num_cell(row, col, e.e18, eig[0].energy, tol,
                                        "N=" + std::to_string(eig[0].iterations));
            } catch (const std::exception& ex) {
                rep.cells[i] = fail_cell(row, col, ex.what());
            }
        });
    }
    run_tasks(tasks, jobs);

    for (size_t q = 0; q < kTable5Equiv.size(); ++q) {
        const auto& pr = kTable5Equiv[q];
        const auto& ei = kTable5[static_cast<size_t>(pr.i)];
        const auto& ej = kTable5[static_cast<size_t>(pr.j)];
        TableCell c;
        c.row = "E(" + std::to_string(ei.n) + "," + std::to_string(ei.l) +
                ";d=" + std::to_string(ei.d) + ")";
        c.col = "= E(" + std::to_string(ej.n) + "," + std::to_string(ej.l) +
                ";d=" + std::to_string(ej.d) + ")";
        c.expected = "equal";
        BigReal diff = abs(energies[static_cast<size_t>(pr.i)] -
                           energies[static_cast<size_t>(pr.j)]);
        c.computed = "diff " + diff.str_sci(2);
        c.ok = diff <= tol && !energies[static_cast<size_t>(pr.i)].is_zero();
        c.note = "(d,l) -> (d-2,l+1) invariance";
        rep.cells[kTable5.size() + q] = std::move(c);
    }
    return rep;
}

}  // namespace

bool TableReport::all_ok() const {
    for (const auto& c : cells)
        if (!c.ok) return false;
    return !cells.empty();
}

std::vector<std::string> table_names() { return {"I", "II", "III", "IV", "V"}; }

const std::vector<Table3Entry>& table3_entries() { return kTable3; }
const std::vector<Table4Entry>& table4_entries() { return kTable4; }
const char* table4_radius_literal() { return kTable4Radius; }
const std::vector<Table5Entry>& table5_entries() { return kTable5; }

TableReport regenerate_table(const std::string& name, int jobs) {
    if (name == "I") return table1(jobs);
    if (name == "II") return table2(jobs);
    if (name == "III") return table3(jobs);
    if (name == "IV") return table4(jobs);
    if (name == "V") return table5(jobs);
    throw DomainError("regenerate_table: unknown table '" + name + "'");
}

std::string render_report(const TableReport& rep) {
    size_t wr = 3, wc = 3, we = 8, wv = 8;
    for (const auto& c : rep.cells) {
        wr = std::max(wr, c.row.size());
        wc = std::max(wc, c.col.size());
        we = std::max(we, c.expected.size());
        wv = std::max(wv, c.computed.size());
    }
    auto pad = [](const std::string& s, size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    std::ostringstream oss;
    oss << "table " << rep.name << ": "
        << (rep.all_ok() ? "all entries match" : "MISMATCHES PRESENT") << "\n";
    oss << pad("ok", 5) << pad("row", wr + 2) << pad("col", wc + 2)
        << pad("reference", we + 2) << pad("computed", wv + 2) << "note\n";
    for (const auto& c : rep.cells) {
        oss << pad(c.ok ? "ok" : "FAIL", 5) << pad(c.row, wr + 2)
            << pad(c.col, wc + 2) << pad(c.expected, we + 2)
            << pad(c.computed, wv + 2) << c.note << "\n";
    }
    return oss.str();
}

}  // namespace spectral
