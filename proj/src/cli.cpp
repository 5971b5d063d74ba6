#include "pm/cli.hpp"

#include "pm/dataio.hpp"
#include "pm/moonshine.hpp"
#include "pm/qseries.hpp"
#include "pm/rademacher.hpp"
#include "pm/weil.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <memory>
#include <ostream>

namespace pm {

namespace {

struct Options {
    std::string data_dir;
    bool machine = false;
    unsigned workers = 0;

    long m = 1, r = 0, order = 10;
    std::string gen = "S";
    std::vector<long> matrix;
    int branch = 1;

    std::string lambdency;
    long D0 = -3, r0 = -1, level = 1, h = 1, v = 0;
    long cmax = 1024, dmax = 21;
    double tol = 0.2;
    std::string out_file;
    long progress_every = 0;

    std::string class_name = "1A";
    std::string source = "table";
    bool check = false;

    long d0 = 0;
    std::string lambency;
};

void print_report(const Report& rep, const Options& o, std::ostream& out)
{
    for (auto& l : rep.lines)
        out << l.str(o.machine) << '\n';
    if (!o.machine)
        out << fmt::format("{} checks, {} failed\n", rep.lines.size(), rep.failures());
}

void emit(const PmdDocument& doc, const Options& o, std::ostream& out)
{
    std::string text = emit_pmd(doc);
    if (o.out_file.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_file);
    if (!f)
        throw DomainError("cannot write " + o.out_file);
    f << text;
}

std::function<void(long, long)> progress_printer(const Options& o, std::ostream& err)
{
    if (o.progress_every <= 0)
        return {};
    auto count = std::make_shared<long>(0);
    long every = o.progress_every;
    return [count, every, &err](long c, long cmax) {
        if (++*count % every == 0)
            err << fmt::format("shells: {} done, c={} of {}\n", *count, c, cmax) << std::flush;
    };
}

std::string cplx(Complex z)
{
    return fmt::format("{:+.12f}{:+.12f}i", z.real(), z.imag());
}

int cmd_theta(const Options& o, std::ostream& out)
{
    QSeries t = theta_null(o.m, o.r, o.order);
    for (auto& line : format_series(t))
        out << line << '\n';
    return 0;
}

int cmd_weil(const Options& o, std::ostream& out)
{
    WeilMatrix M;
    if (!o.matrix.empty()) {
        if (o.matrix.size() != 4)
            throw DomainError("--matrix takes a,b,c,d");
        MetaplecticElement g{o.matrix[0], o.matrix[1], o.matrix[2], o.matrix[3], o.branch};
        if (g.a * g.d - g.b * g.c != 1)
            throw DomainError("--matrix must have determinant 1");
        M = rho(o.m, g);
    } else if (o.gen == "S") {
        M = gen_S(o.m);
    } else if (o.gen == "T") {
        M = gen_T(o.m);
    } else {
        throw DomainError("--gen is S or T");
    }
    for (long s = 0; s < M.dim(); ++s)
        for (long r = 0; r < M.dim(); ++r)
            out << fmt::format("{} {} {}\n", s, r, cplx(M(s, r)));
    return 0;
}

void print_diagnostics(const std::map<DR, CoefficientDiagnostics>& d, double scale, std::ostream& err)
{
    err << "# D r value tail distance\n";
    for (auto& [k, x] : d)
        err << fmt::format("# {} {} {:.6f} {:.3g} {:.3g}\n", k.first, k.second, x.value * scale,
                           x.last_shell * scale, x.distance);
}

int cmd_rademacher(const Options& o, std::ostream& out, std::ostream& err)
{
    if (!o.lambdency.empty()) {
        Dataset ds(o.data_dir);
        Lambdency L = ds.lambdency(o.lambdency);
        NormalizedSum ns = normalized_sum(L, o.level, o.h, o.v, o.cmax, o.dmax, o.tol, o.workers,
                                          progress_printer(o, err));
        print_diagnostics(ns.diagnostics, L.C_D0r0, err);
        for (auto& k : ns.failures)
            err << fmt::format("FAIL  {} rademacher (D={}, r={}) not within {} of an integer\n",
                               L.str(), k.first, k.second, o.tol * L.C_D0r0);
        emit(coefficient_document(L.str(), {{"R", ns.rounded.scaled(L.C_D0r0)}},
                                  fmt::format("rademacher sum, n={} h={} v={} cmax={}", o.level,
                                              o.h, o.v, o.cmax)),
             o, out);
        return ns.ok() ? 0 : 1;
    }
    // raw sum without normalization
    RademacherSpec spec;
    spec.m = o.m;
    spec.D0 = o.D0;
    spec.r0 = o.r0 >= 0 ? o.r0 : smallest_root(o.D0, o.m);
    spec.n = o.level;
    spec.h = o.h;
    spec.v = o.v;
    spec.cmax = o.cmax;
    spec.dmax = o.dmax;
    spec.tol = o.tol;
    spec.workers = o.workers;
    spec.progress = progress_printer(o, err);
    std::vector<DR> targets;
    for (long D = 0; D <= o.dmax; ++D)
        for (long r : sqrt_classes(D, o.m))
            targets.push_back({D, r});
    auto res = rademacher_raw(spec, targets);
    out << "# D r value imag tail doubling distance\n";
    for (auto& [k, d] : res.diagnostics)
        out << fmt::format("{} {} {:.9f} {:.3g} {:.3g} {:.3g} {:.3g}\n", k.first, k.second, d.value,
                           d.imag, d.last_shell, d.doubling_delta, d.distance);
    return 0;
}

int cmd_mt(const Options& o, std::ostream& out, std::ostream& err)
{
    Dataset ds(o.data_dir);
    Lambdency L = ds.lambdency(o.lambdency);
    ClassSpec cs = ds.class_spec(L.str(), o.class_name);
    cs.class_name = o.class_name;
    AssembleOptions ao;
    if (o.source == "rademacher")
        ao.source = Source::rademacher;
    else if (o.source != "table")
        throw DomainError("--source is rademacher or table");
    ao.cmax = o.cmax;
    ao.dmax = o.dmax;
    ao.tol = o.tol;
    ao.workers = o.workers;
    ao.progress = progress_printer(o, err);
    MTSeries f = assemble(ds, L, cs, ao);
    emit(coefficient_document(L.str(), {{o.class_name, f.form}},
                              fmt::format("{} assembly", source_name(f.provenance))),
         o, out);
    if (!o.check)
        return 0;
    Report rep = compare_with_table(f, ds.table(L.str()).at(o.class_name), o.class_name,
                                    ds.beyond(L.str(), o.class_name));
    print_report(rep, o, err);
    return rep.ok() ? 0 : 1;
}

int cmd_verify(const std::string& what, const Options& o, std::ostream& out)
{
    Dataset ds(o.data_dir);
    Report rep;
    auto want = [&](const std::string& lam) {
        if (!o.lambdency.empty())
            return Lambdency::parse(lam).str() == Lambdency::parse(o.lambdency).str();
        return o.d0 == 0 || Lambdency::parse(lam).D0 == o.d0;
    };
    if (what == "tables") {
        for (auto& lam : ds.tabulated())
            if (want(lam))
                rep.append(table_integrity(ds, lam));
    } else if (what == "relations") {
        for (long D0 : {-3L, -4L})
            if (o.d0 == 0 || o.d0 == D0)
                rep.append(relation_suite(ds, D0));
    } else if (what == "congruences") {
        for (auto& l : congruence_suite(ds).lines)
            if (want(l.lambdency))
                rep.lines.push_back(l);
    } else if (what == "parity") {
        for (auto& l : parity_suite(ds).lines)
            if (want(l.lambdency))
                rep.lines.push_back(l);
    } else if (what == "cyclic") {
        for (auto& l : cyclic_suite(ds).lines)
            if (want(l.lambdency))
                rep.lines.push_back(l);
    }
    if (rep.lines.empty())
        throw DomainError("nothing to verify for the given selection");
    print_report(rep, o, out);
    return rep.ok() ? 0 : 1;
}

int cmd_sturm(const Options& o, std::ostream& out)
{
    Dataset ds(o.data_dir);
    bool all_ok = true, any = false;
    for (auto& row : ds.sturm()) {
        Lambdency L = Lambdency::parse(fmt::format("{}:{}", row.D0, row.lambency));
        if (o.d0 != 0 && row.D0 != o.d0)
            continue;
        if (!o.lambency.empty() && Lambency::parse(o.lambency).str() != L.ell.str())
            continue;
        any = true;
        SturmAccount a = sturm_accounting(ds, L, row.k);
        bool ok = a.N == row.N && a.n == row.n && a.h == row.h && a.B == row.B;
        all_ok = all_ok && ok;
        if (o.machine)
            out << fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", ok ? "PASS" : "FAIL", L.str(), a.k,
                               a.N, a.n, a.h, a.B.get_str());
        else
            out << fmt::format("{:<14} k={} N={} B={}  (n={} h={}){}\n", L.str(), a.k, a.N,
                               a.B.get_str(), a.n, a.h, ok ? "" : "  MISMATCH with table");
    }
    if (!any)
        throw DomainError("no Sturm row for the given selection");
    return all_ok ? 0 : 1;
}

int cmd_info(const Options& o, std::ostream& out)
{
    Dataset ds(o.data_dir);
    if (!o.machine)
        out << fmt::format("{:<16} {:<12} {:>6} {:>10} {:>3}  {}\n", "lambdency", "group", "C(0,0)",
                           "C(D0,r0)", "r0", "tables");
    for (long D0 : {-3L, -4L})
        for (auto& L : ds.lambdencies(D0)) {
            if (o.d0 != 0 && D0 != o.d0)
                continue;
            std::string tabs;
            if (ds.has_table(L.str()))
                tabs += fmt::format("coefficients({})", ds.table_columns(L.str()).size());
            if (ds.has_characters(L.str()))
                tabs += " characters";
            if (o.machine)
                out << fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", L.str(), L.group_name, L.C_00,
                                   L.C_D0r0, L.r0, tabs);
            else
                out << fmt::format("{:<16} {:<12} {:>6} {:>10} {:>3}  {}\n", L.str(), L.group_name,
                                   L.C_00, L.C_D0r0, L.r0, tabs);
        }
    return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    o.data_dir = default_data_dir();
    CLI::App app{"penumbral moonshine computations and checks"};
    app.require_subcommand(1);
    app.add_option("--data-dir", o.data_dir, "data directory (default: $PM_DATA_DIR or built-in)");
    app.add_flag("--machine", o.machine, "one tab-separated record per line");
    app.add_option("--workers", o.workers, "threads for Rademacher sums (0 = all cores)");

    auto* theta = app.add_subcommand("theta", "print the theta null series of index m, residue r");
    theta->add_option("--m", o.m)->required();
    theta->add_option("--r", o.r)->required();
    theta->add_option("--order", o.order, "number of q-powers");

    auto* weil = app.add_subcommand("weil", "print a Weil representation matrix");
    weil->add_option("--m", o.m)->required();
    weil->add_option("--gen", o.gen, "S or T");
    weil->add_option("--matrix", o.matrix, "a,b,c,d of an SL2(Z) element")->delimiter(',');
    weil->add_option("--branch", o.branch, "+1 or -1");

    auto* rad = app.add_subcommand("rademacher", "compute a Rademacher sum");
    rad->set_help_flag("--help", "print this help");
    rad->add_option("--lambdency", o.lambdency, "D0:lambency; normalized output");
    rad->add_option("--m", o.m);
    rad->add_option("--D0", o.D0);
    rad->add_option("--r0", o.r0);
    rad->add_option("--level", o.level, "n of Gamma0(n)");
    rad->add_option("--h", o.h);
    rad->add_option("--v", o.v);
    rad->add_option("--cmax", o.cmax);
    rad->add_option("--dmax", o.dmax);
    rad->add_option("--tol", o.tol);
    rad->add_option("--out", o.out_file);
    rad->add_option("--progress", o.progress_every, "report every N shells");

    auto* mt = app.add_subcommand("mt", "assemble a McKay-Thompson series");
    mt->add_option("--lambdency", o.lambdency)->required();
    mt->add_option("--class", o.class_name);
    mt->add_option("--source", o.source, "rademacher or table");
    mt->add_option("--cmax", o.cmax);
    mt->add_option("--dmax", o.dmax);
    mt->add_option("--tol", o.tol);
    mt->add_option("--out", o.out_file);
    mt->add_option("--progress", o.progress_every, "report every N shells");
    mt->add_flag("--check", o.check, "compare with the shipped table");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    std::string what;
    for (const char* name : {"congruences", "relations", "parity", "tables", "cyclic"}) {
        auto* sub = verify->add_subcommand(name);
        sub->add_option("--d0", o.d0);
        sub->add_option("--lambdency", o.lambdency);
        sub->callback([&what, name] { what = name; });
    }

    auto* sturm = app.add_subcommand("sturm", "Sturm-bound accounting");
    sturm->add_option("--d0", o.d0);
    sturm->add_option("--lambency", o.lambency);

    auto* info = app.add_subcommand("info", "lambdencies, groups and constants");
    info->add_option("--d0", o.d0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        if (theta->parsed())
            return cmd_theta(o, out);
        if (weil->parsed())
            return cmd_weil(o, out);
        if (rad->parsed())
            return cmd_rademacher(o, out, err);
        if (mt->parsed())
            return cmd_mt(o, out, err);
        if (verify->parsed())
            return cmd_verify(what, o, out);
        if (sturm->parsed())
            return cmd_sturm(o, out);
        if (info->parsed())
            return cmd_info(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << app.help();
    return 2;
}

} // namespace pm
