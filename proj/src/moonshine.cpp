#include "pm/moonshine.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <set>

namespace fs = std::filesystem;

namespace pm {

const char* source_name(Source s)
{
    return s == Source::rademacher ? "rademacher" : "table";
}

std::string CheckLine::str(bool machine) const
{
    const char* verdict = pass ? "PASS" : "FAIL";
    if (machine)
        return fmt::format("{}\t{}\t{}\t{}\t{}\t{}", verdict, lambdency, check, location, expected,
                           got);
    std::string s = fmt::format("{}  {:<16} {:<12} {}", verdict, lambdency, check, location);
    if (!expected.empty() || !got.empty())
        s += fmt::format("  expected={} got={}", expected, got);
    return s;
}

bool Report::ok() const
{
    return failures() == 0;
}

size_t Report::failures() const
{
    return static_cast<size_t>(
        std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.pass; }));
}

void Report::add(bool pass, std::string lambdency, std::string check, std::string location,
                 std::string expected, std::string got)
{
    lines.push_back({pass, std::move(lambdency), std::move(check), std::move(location),
                     std::move(expected), std::move(got)});
}

void Report::append(const Report& o)
{
    lines.insert(lines.end(), o.lines.begin(), o.lines.end());
}

namespace {

std::string canonical(const std::string& lam)
{
    return Lambdency::parse(lam).str();
}

std::vector<fs::path> pmd_files(const fs::path& dir)
{
    std::vector<fs::path> out;
    if (!fs::is_directory(dir))
        return out;
    for (auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".pmd")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

bool label_has(const std::string& label, const std::string& member)
{
    if (label == member)
        return true;
    auto mem = expand_class_label(label);
    return std::find(mem.begin(), mem.end(), member) != mem.end();
}

std::string section_lambdency(const PmdSection& sec)
{
    auto sp = sec.name.find(' ');
    if (sp == std::string::npos)
        throw ParseError("section '" + sec.name + "' names no lambdency");
    return canonical(sec.name.substr(sp + 1));
}

std::vector<std::string> split_columns(const std::string& s)
{
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace

std::string lambency_for_level(long D0, long m)
{
    std::vector<std::string> hits;
    for (auto& e : fricke_genus_zero_table()) {
        Lambency L = Lambency::parse(e.label);
        if (L.m == m && L.admits(D0))
            hits.push_back(L.str());
    }
    if (hits.size() != 1)
        throw DomainError(fmt::format("no unique admissible lambency of level {} for D0={} ({} found)",
                                      m, D0, hits.size()));
    return hits.front();
}

Dataset::Dataset(const std::string& dir) : dir_(dir)
{
    fs::path root(dir);
    if (!fs::is_directory(root))
        throw DomainError("data directory not found: " + dir);

    groups_ = parse_groups(load_pmd_file((root / "groups.pmd").string()));
    sturm_ = parse_sturm(load_pmd_file((root / "sturm.pmd").string()));
    lambencies_ = parse_lambencies(load_pmd_file((root / "lambencies.pmd").string()));
    parity_ = parse_parity(load_pmd_file((root / "parity.pmd").string()));
    power_ = parse_power_maps(load_pmd_file((root / "power_maps.pmd").string()));
    for (long D0 : {-3L, -4L}) {
        auto p = root / fmt::format("relations_{}.pmd", D0);
        if (fs::exists(p))
            relations_[D0] = parse_relations(load_pmd_file(p.string()));
    }

    for (auto& p : pmd_files(root / "coefficients")) {
        auto doc = load_pmd_file(p.string());
        for (auto& blk : parse_coeff_table(doc)) {
            std::string key = blk.lambdency.str();
            auto& cols = columns_[key];
            auto& tab = tables_[key];
            // column order as printed, across parts
            for (auto& sec : doc.sections)
                if (section_lambdency(sec) == key)
                    for (auto& c : split_columns(sec.require("columns")))
                        if (!tab.count(c) && blk.forms.count(c) &&
                            std::find(cols.begin(), cols.end(), c) == cols.end())
                            cols.push_back(c);
            for (auto& [c, cells] : blk.beyond)
                for (auto& [k, v] : cells)
                    beyond_[key][c][k] = v;
            for (auto& [c, f] : blk.forms) {
                if (tab.count(c) && !(tab.at(c) == f))
                    throw ParseError(fmt::format("{}: column {} of {} is given twice, differently",
                                                 p.string(), c, key));
                tab[c] = f;
            }
        }
    }

    for (auto& p : pmd_files(root / "theta")) {
        auto doc = load_pmd_file(p.string());
        theta_[canonical(doc.header_value("lambdency") ? *doc.header_value("lambdency") : "")] =
            parse_theta_table(doc);
    }
    for (auto& p : pmd_files(root / "singular")) {
        auto doc = load_pmd_file(p.string());
        auto* lam = doc.header_value("lambdency");
        if (!lam)
            throw ParseError(p.string() + ": no lambdency header");
        singular_[canonical(*lam)] = parse_singular_table(doc);
    }
    for (auto& p : pmd_files(root / "characters")) {
        auto doc = load_pmd_file(p.string());
        auto* lamp = doc.header_value("lambdency");
        if (!lamp)
            throw ParseError(p.string() + ": no lambdency header");
        std::string lam = canonical(*lamp);
        auto cells = parse_characters(doc);
        auto th = theta_.count(lam) ? theta_.at(lam) : std::map<std::string, std::vector<ThetaTerm>>{};
        auto& out = classes_[lam];
        for (auto& sec : doc.sections)
            for (auto& rec : sec.records) {
                const auto& cc = cells.at(rec.cells[0]);
                ClassSpec cs;
                cs.class_name = rec.cells[0];
                cs.n = cc.n;
                cs.h = cc.h;
                cs.v = cc.v;
                cs.special_matrix = cc.special;
                if (th.count(cs.class_name))
                    cs.theta_corrections = th.at(cs.class_name);
                out.push_back(cs);
            }
    }
}

Lambdency Dataset::lambdency(const std::string& text) const
{
    Lambdency L = Lambdency::parse(text);
    for (auto& g : groups_)
        if (g.D0 == L.D0 && g.m == L.m()) {
            if (lambency_for_level(g.D0, g.m) != L.ell.str())
                continue;
            L.group_name = g.group;
            L.C_00 = g.C00;
            L.C_D0r0 = g.CD0;
            return L;
        }
    throw DomainError("lambdency " + L.str() + " is not in the group tables");
}

std::vector<Lambdency> Dataset::lambdencies(long D0) const
{
    std::vector<Lambdency> out;
    for (auto& g : groups_)
        if (g.D0 == D0)
            out.push_back(lambdency(fmt::format("{}:{}", D0, lambency_for_level(D0, g.m))));
    return out;
}

std::vector<std::string> Dataset::tabulated() const
{
    std::vector<std::string> out;
    for (auto& [k, v] : tables_)
        out.push_back(k);
    return out;
}

bool Dataset::has_table(const std::string& lam) const
{
    return tables_.count(canonical(lam)) > 0;
}

const std::map<std::string, VectorForm>& Dataset::table(const std::string& lam) const
{
    auto it = tables_.find(canonical(lam));
    if (it == tables_.end())
        throw DomainError("no coefficient table for " + lam);
    return it->second;
}

const std::vector<std::string>& Dataset::table_columns(const std::string& lam) const
{
    auto it = columns_.find(canonical(lam));
    if (it == columns_.end())
        throw DomainError("no coefficient table for " + lam);
    return it->second;
}

const std::map<DR, mpq_class>& Dataset::beyond(const std::string& lam,
                                               const std::string& column) const
{
    static const std::map<DR, mpq_class> none;
    auto it = beyond_.find(canonical(lam));
    if (it == beyond_.end() || !it->second.count(column))
        return none;
    return it->second.at(column);
}

bool Dataset::has_characters(const std::string& lam) const
{
    return classes_.count(canonical(lam)) > 0;
}

const std::vector<ClassSpec>& Dataset::classes(const std::string& lam) const
{
    auto it = classes_.find(canonical(lam));
    if (it == classes_.end())
        throw DomainError("no characters table for " + lam);
    return it->second;
}

ClassSpec Dataset::class_spec(const std::string& lam, const std::string& label) const
{
    std::string key = canonical(lam);
    auto it = classes_.find(key);
    if (it == classes_.end()) {
        // groups without a characters table are trivial
        if (label == "1A") {
            ClassSpec cs;
            cs.class_name = "1A";
            return cs;
        }
        throw DomainError("no characters table for " + lam);
    }
    for (auto& cs : it->second)
        if (cs.class_name == label)
            return cs;
    for (auto& cs : it->second)
        if (label_has(cs.class_name, label))
            return cs;
    throw DomainError(fmt::format("class {} not in the characters table of {}", label, lam));
}

const std::map<std::string, std::vector<ThetaTerm>>& Dataset::theta_table(const std::string& lam) const
{
    static const std::map<std::string, std::vector<ThetaTerm>> none;
    auto it = theta_.find(canonical(lam));
    return it == theta_.end() ? none : it->second;
}

const std::vector<SingularEntry>& Dataset::singular(const std::string& lam) const
{
    auto it = singular_.find(canonical(lam));
    if (it == singular_.end())
        throw DomainError("no singular-part table for " + lam);
    return it->second;
}

std::vector<std::string> Dataset::singular_lambdencies() const
{
    std::vector<std::string> out;
    for (auto& [k, v] : singular_)
        out.push_back(k);
    return out;
}

const std::vector<RelationDescriptor>& Dataset::relations(long D0) const
{
    auto it = relations_.find(D0);
    if (it == relations_.end())
        throw DomainError(fmt::format("no relation table for D0={}", D0));
    return it->second;
}

RationalMatrix special_matrix_A()
{
    RationalMatrix A(6, std::vector<mpq_class>(6, mpq_class(0)));
    const mpq_class half(-1, 2);
    for (int r = 0; r < 6; ++r)
        A[r][r] = (r % 3 == 0) ? mpq_class(1) : half;
    return A;
}

MTSeries assemble_rademacher(const Lambdency& lam, const ClassSpec& cls, const AssembleOptions& opt,
                             AssembleDiagnostics* diag)
{
    if (lam.D0 != -3)
        throw DomainError("Rademacher assembly covers D0=-3 only; use source=table");
    long m = lam.m();
    long C = lam.C_D0r0;
    NormalizedSum ns = normalized_sum(lam, cls.n, cls.h, cls.v, opt.cmax, opt.dmax, opt.tol,
                                      opt.workers, opt.progress);
    if (diag)
        diag->sum = ns;
    // theta corrections may have fractional kappa, so round C R + sum kappa theta as a whole
    VectorForm corr(m, opt.dmax, 1);
    for (auto& t : cls.theta_corrections)
        corr = corr.plus(theta_vector_scaled(m, t.k2, opt.dmax).scaled(t.kappa));
    VectorForm F(m, opt.dmax, 1);
    std::vector<DR> bad;
    for (auto& [k, val] : ns.value) {
        double y = val * C + (k.first >= 0 ? corr.coeff(k.first, k.second).get_d() : 0.0);
        double yr = std::nearbyint(y);
        if (std::abs(y - yr) < opt.tol * C)
            F.set_raw(k.first, k.second, mpq_class(static_cast<long>(yr)));
        else
            bad.push_back(k);
    }
    if (!bad.empty()) {
        auto k = bad.front();
        double y = ns.value.at(k) * C + (k.first >= 0 ? corr.coeff(k.first, k.second).get_d() : 0.0);
        throw DomainError(fmt::format(
            "{} {}: {} coefficient(s) not integral; first at (D={}, r={}): {:.4f}",
            lam.str(), cls.class_name, bad.size(), k.first, k.second, y));
    }
    if (cls.special_matrix) {
        if (m != 3)
            throw DomainError("the A matrix is only defined for index 3");
        F = apply_matrix(special_matrix_A(), F);
    }
    MTSeries out;
    out.lambdency = lam;
    out.class_spec = cls;
    out.provenance = Source::rademacher;
    out.form = F;
    return out;
}

MTSeries assemble(const Dataset& ds, const Lambdency& lam, const ClassSpec& cls,
                  const AssembleOptions& opt)
{
    if (opt.source == Source::rademacher)
        return assemble_rademacher(lam, cls, opt);
    const auto& tab = ds.table(lam.str());
    MTSeries out;
    out.lambdency = lam;
    out.class_spec = cls;
    out.provenance = Source::table;
    if (tab.count(cls.class_name)) {
        out.form = tab.at(cls.class_name);
        return out;
    }
    for (auto& mem : expand_class_label(cls.class_name))
        if (tab.count(mem)) {
            out.form = tab.at(mem);
            return out;
        }
    throw DomainError(fmt::format("no column for {} in the table of {}", cls.class_name, lam.str()));
}

Report compare_with_table(const MTSeries& computed, const VectorForm& table,
                          const std::string& column, const std::map<DR, mpq_class>& beyond)
{
    Report rep;
    const VectorForm& f = computed.form;
    std::string lam = computed.lambdency.str();
    if (f.m() != table.m())
        throw DomainError("compare_with_table: index mismatch");
    long m = f.m();
    long top = std::min(f.dmax(), table.dmax());
    long n = 0;
    for (long D = -4 * m; D <= top; ++D)
        for (long r = 0; r <= m; ++r) {
            if (mod(D - r * r, 4 * m) != 0)
                continue;
            ++n;
            if (f.coeff(D, r) != table.coeff(D, r))
                rep.add(false, lam, "table-match", fmt::format("{} (D={}, r={})", column, D, r),
                        table.coeff(D, r).get_str(), f.coeff(D, r).get_str());
        }
    long extra = 0;
    for (auto& [k, want] : beyond) {
        if (k.first > f.dmax())
            continue;
        ++extra;
        if (f.coeff(k.first, k.second) != want)
            rep.add(false, lam, "table-match", fmt::format("{} (D={}, r={})", column, k.first, k.second),
                    want.get_str(), f.coeff(k.first, k.second).get_str());
    }
    if (rep.ok())
        rep.add(true, lam, "table-match",
                fmt::format("{} {} coefficients, D<={}{}", column, n, top,
                            extra ? fmt::format(", and {} listed above", extra) : ""));
    return rep;
}

Report table_integrity(const Dataset& ds, const std::string& lam_text)
{
    Report rep;
    Lambdency L = Lambdency::parse(lam_text);
    std::optional<Lambdency> G;
    try {
        G = ds.lambdency(lam_text);
    } catch (const DomainError&) {
    }
    std::string lam = L.str();
    const auto& tab = ds.table(lam);
    struct Check {
        const char* name;
        std::function<CheckResult(const VectorForm&)> fn;
    };
    std::vector<Check> checks{
        {"support", [](const VectorForm& f) { return check_support(f); }},
        {"parity", [](const VectorForm& f) { return check_parity(f); }},
        {"symmetry", [&](const VectorForm& f) { return check_symmetry(f, L.ell); }},
        {"optimality", [&](const VectorForm& f) { return check_optimality(f, L.D0); }},
        {"lambency", [&](const VectorForm& f) { return check_lambency_condition(f, L.D0, L.ell); }},
        {"C(1,1)=0",
         [](const VectorForm& f) {
             if (f.dmax() < 1 || f.coeff(1, 1) == 0)
                 return CheckResult{};
             return CheckResult{false, "C(1,1) = " + f.coeff(1, 1).get_str()};
         }},
    };
    for (auto& ch : checks) {
        size_t bad = 0;
        for (auto& col : ds.table_columns(lam)) {
            CheckResult r = ch.fn(tab.at(col));
            if (!r.ok) {
                ++bad;
                rep.add(false, lam, ch.name, col, "", r.detail);
            }
        }
        if (!bad)
            rep.add(true, lam, ch.name, fmt::format("{} columns", tab.size()));
    }

    if (G && tab.count("1A")) {
        const auto& f = tab.at("1A");
        auto c0 = f.coeff(G->D0, G->r0);
        rep.add(c0 == G->C_D0r0, lam, "constants", fmt::format("1A C({},{})", G->D0, G->r0),
                std::to_string(G->C_D0r0), c0.get_str());
        if (f.dmax() >= 0) {
            auto c00 = f.coeff(0, 0);
            rep.add(c00 == G->C_00, lam, "constants", "1A C(0,0)", std::to_string(G->C_00),
                    c00.get_str());
        }
    }

    // every class named by the tables is a character-table class
    if (ds.has_characters(lam)) {
        const auto& cls = ds.classes(lam);
        auto known = [&](const std::string& label) {
            for (auto& mem : expand_class_label(label)) {
                bool hit = false;
                for (auto& c : cls)
                    hit = hit || label_has(c.class_name, mem);
                if (!hit)
                    return false;
            }
            return true;
        };
        std::vector<std::string> missing;
        for (auto& col : ds.table_columns(lam))
            if (!known(col))
                missing.push_back("coefficients:" + col);
        for (auto& [label, terms] : ds.theta_table(lam))
            if (!known(label))
                missing.push_back("theta:" + label);
        bool has_sing = false;
        for (auto& s : ds.singular_lambdencies())
            has_sing = has_sing || s == lam;
        if (has_sing)
            for (auto& e : ds.singular(lam))
                if (!known(e.class_label))
                    missing.push_back("singular:" + e.class_label);
        if (missing.empty())
            rep.add(true, lam, "classes", "all table labels are character-table classes");
        for (auto& m : missing)
            rep.add(false, lam, "classes", m, "a class of the characters table", "unknown");
    }
    return rep;
}

Report congruence_check(const MTSeries& gp, const MTSeries& g, long p, long bound,
                        std::optional<long> sturm)
{
    if (gp.lambdency.str() != g.lambdency.str())
        throw DomainError("congruence_check: lambdency mismatch");
    if (p < 2)
        throw DomainError("congruence_check: p must be a prime");
    Report rep;
    std::string lam = g.lambdency.str();
    std::string tag = fmt::format("{}/{} p={}", g.class_spec.class_name, gp.class_spec.class_name, p);
    long m = g.form.m();
    long top = std::min({bound, g.form.dmax(), gp.form.dmax()});
    long n = 0;
    for (long D = -4 * m; D <= top; ++D)
        for (long r = 0; r < 2 * m; ++r) {
            if (mod(D - r * r, 4 * m) != 0)
                continue;
            ++n;
            mpq_class a = g.form.coeff(D, r), b = gp.form.coeff(D, r);
            mpq_class d = a - b;
            if (d.get_den() != 1 || mpz_class(d.get_num() % p) != 0)
                rep.add(false, lam, "congruence", fmt::format("{} (D={}, r={})", tag, D, r),
                        fmt::format("{} = {} mod {}", a.get_str(), b.get_str(), p), d.get_str());
        }
    if (rep.ok()) {
        std::string proof = sturm ? fmt::format(", Sturm bound {} {}", *sturm,
                                               top >= *sturm ? "reached" : "not reached")
                                  : "";
        rep.add(true, lam, "congruence", fmt::format("{} {} coefficients, D<={}{}", tag, n, top, proof));
    }
    return rep;
}

namespace {

std::optional<long> sturm_for(const Dataset& ds, const std::string& lam)
{
    for (auto& s : ds.sturm())
        if (canonical(fmt::format("{}:{}", s.D0, s.lambency)) == lam)
            return s.B;
    return std::nullopt;
}

} // namespace

Report congruence_suite(const Dataset& ds)
{
    Report rep;
    for (auto& [sec, entries] : ds.power_maps()) {
        std::string lam = canonical(sec);
        if (!ds.has_table(lam)) {
            rep.add(false, lam, "congruence", "power maps given but no table");
            continue;
        }
        Lambdency L = ds.lambdency(lam);
        const auto& tab = ds.table(lam);
        for (auto& e : entries) {
            if (!tab.count(e.g) || !tab.count(e.gp)) {
                rep.add(false, lam, "congruence", fmt::format("{}/{} p={}", e.g, e.gp, e.p),
                        "both columns tabulated", "missing column");
                continue;
            }
            MTSeries a{L, {}, tab.at(e.g), Source::table};
            MTSeries b{L, {}, tab.at(e.gp), Source::table};
            a.class_spec.class_name = e.g;
            b.class_spec.class_name = e.gp;
            rep.append(congruence_check(b, a, e.p, std::min(a.form.dmax(), b.form.dmax()),
                                        sturm_for(ds, lam)));
        }
    }
    return rep;
}

namespace {

using Gauss = std::pair<mpq_class, mpq_class>;    // re, im

Gauss weight(RelationWeight w, long s)
{
    switch (w) {
    case RelationWeight::one:
        return {1, 0};
    case RelationWeight::I:
        return {mod(s * s, 3) == 0 ? mpq_class(1) : mpq_class(-1, 2), 0};
    case RelationWeight::alt: {
        // (-1)^(s/2 + 1) = i^(s + 2)
        switch (mod(s + 2, 4)) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
        }
    }
    default:
        throw InternalError("weight: explicit relations carry their own terms");
    }
}

// first mismatch, or empty; n counts the coefficients compared
std::optional<std::string> relation_mismatch(const RelationDescriptor& rel, const VectorForm& L,
                                             const VectorForm& R, long& n)
{
    long ml = L.m();
    n = 0;
    for (long r = 0; r < 2 * ml; ++r) {
        std::vector<std::pair<Gauss, long>> terms;
        if (rel.weight == RelationWeight::explicit_terms) {
            auto it = rel.terms.find(r);
            if (it == rel.terms.end())
                continue;
            for (auto& [sg, s] : it->second)
                terms.push_back({{mpq_class(sg), 0}, s});
        } else {
            for (long s = 0; s < rel.modulus; ++s)
                if (mod(s - r, rel.congruence) == 0)
                    terms.push_back({weight(rel.weight, s), s});
        }
        QSeries lhs = L.component(r);
        QSeries re = QSeries::zero(), im = QSeries::zero();
        for (auto& [w, s] : terms) {
            QSeries t = substitute_q_power(R.component(s), rel.argument);
            if (w.first != 0)
                re = re + scale(t, w.first * rel.scale);
            if (w.second != 0)
                im = im + scale(t, w.second * rel.scale);
        }
        if (terms.empty())
            re = QSeries::zero(substitute_q_power(R.component(0), rel.argument).order());
        for (long D = -4 * ml; D <= L.dmax(); ++D) {
            if (mod(D - r * r, 4 * ml) != 0)
                continue;
            mpq_class e(D, 4 * ml);
            e.canonicalize();
            if (!re.known(e) || !im.known(e) || !lhs.known(e))
                break;
            ++n;
            if (lhs.coefficient(e) != re.coefficient(e) || im.coefficient(e) != 0)
                return fmt::format("(D={}, r={}): {} vs {}{}", D, r, lhs.coefficient(e).get_str(),
                                   re.coefficient(e).get_str(),
                                   im.coefficient(e) != 0 ? " + " + im.coefficient(e).get_str() + "i"
                                                          : "");
        }
    }
    return std::nullopt;
}

} // namespace

Report relation_check(const RelationDescriptor& rel, const std::map<std::string, VectorForm>& lhs,
                      const std::map<std::string, VectorForm>& rhs)
{
    Report rep;
    std::string lam = canonical(rel.lhs);
    std::string check = "relation";
    for (auto& row : rel.rows)
        for (auto& gm : expand_class_label(row.g)) {
            std::string where = fmt::format("{} <- {} {}", gm, canonical(rel.rhs),
                                            fmt::format("{}", fmt::join(row.h, "|")));
            if (!lhs.count(gm)) {
                rep.add(false, lam, check, where, "lhs column", "missing");
                continue;
            }
            bool ok = false;
            long best_n = 0;
            std::string first;
            std::string used;
            for (auto& alt : row.h) {
                for (auto& hm : expand_class_label(alt)) {
                    if (!rhs.count(hm)) {
                        if (first.empty())
                            first = hm + " missing";
                        continue;
                    }
                    long n = 0;
                    auto bad = relation_mismatch(rel, lhs.at(gm), rhs.at(hm), n);
                    if (!bad && n > 0) {
                        ok = true;
                        best_n = n;
                        used = hm;
                        break;
                    }
                    if (first.empty())
                        first = bad ? hm + " " + *bad : hm + " no overlap";
                }
                if (ok)
                    break;
            }
            if (ok)
                rep.add(true, lam, check, fmt::format("{} via {}, {} coefficients", where, used, best_n));
            else
                rep.add(false, lam, check, where, "coefficientwise identity", first);
        }
    return rep;
}

Report relation_suite(const Dataset& ds, long D0)
{
    Report rep;
    for (auto& rel : ds.relations(D0))
        rep.append(relation_check(rel, ds.table(rel.lhs), ds.table(rel.rhs)));
    return rep;
}

Report parity_check(const QSeries& fbreve, const std::vector<std::pair<mpq_class, long>>& recipe,
                    long modulus, long bound, const std::string& label)
{
    if (modulus < 1)
        throw DomainError("parity_check: modulus must be positive");
    if (!fbreve.known(mpq_class(bound)))
        throw DomainError(fmt::format("parity_check: series not known through {}", bound));
    std::map<long, mpq_class> c;
    for (auto& [e, v] : fbreve.terms()) {
        mpq_class x(e, fbreve.denom());
        x.canonicalize();
        if (x > bound)
            continue;
        if (x.get_den() != 1)
            throw DomainError("parity_check: non-integral exponent");
        c[x.get_num().get_si()] += v;
    }
    for (auto& [k, s] : recipe) {
        if (s < 1)
            throw DomainError("parity_check: scale must be positive");
        for (long n = 0; s * n * n <= bound; ++n)
            c[s * n * n] += n == 0 ? k : 2 * k;
    }
    Report rep;
    for (auto& [e, v] : c)
        if (v.get_den() != 1 || mpz_class(v.get_num() % modulus) != 0)
            rep.add(false, label, "parity", fmt::format("q^{}", e),
                    fmt::format("0 mod {}", modulus), v.get_str());
    if (rep.ok())
        rep.add(true, label, "parity", fmt::format("exponents <= {} vanish mod {}", bound, modulus));
    return rep;
}

Report parity_suite(const Dataset& ds)
{
    Report rep;
    for (auto& rc : ds.parity()) {
        std::string lam = canonical(rc.lambdency);
        const auto& tab = ds.table(lam);
        for (auto& cls : rc.classes) {
            if (!tab.count(cls)) {
                rep.add(false, lam, "parity", cls, "tabulated column", "missing");
                continue;
            }
            QSeries f = scalar_collapse(tab.at(cls).truncated(rc.dmax));
            Report r = parity_check(f, rc.terms, rc.modulus, rc.dmax, lam);
            for (auto& l : r.lines)
                l.location = cls + " " + l.location;
            rep.append(r);
        }
    }
    return rep;
}

long cyclic_power(const std::string& label, long N)
{
    long d = class_order(label);
    auto mem = expand_class_label(label);
    if (mem.size() != 1)
        throw DomainError("cyclic_power: merged label " + label);
    if (N < 1 || N % d != 0)
        throw DomainError(fmt::format("cyclic_power: order {} does not divide {}", d, N));
    long idx = mem.front().back() - 'A';
    long u = 0;
    for (long x = 1, seen = -1; x <= d; ++x)
        if (gcd(x % d, d) == 1 && ++seen == idx) {
            u = x % d;
            break;
        } else if (x == d)
            throw DomainError("cyclic_power: no class " + label + " in a cyclic group");
    return (N / d) * u % N;
}

CyclicDecomposition decompose_cyclic(const std::map<std::string, VectorForm>& family, long N)
{
    CyclicDecomposition out;
    out.order = N;
    out.columns.assign(N, "");
    for (auto& [label, f] : family) {
        long k = cyclic_power(label, N);
        if (!out.columns[k].empty())
            throw DomainError("decompose_cyclic: classes " + out.columns[k] + " and " + label +
                              " are the same power");
        out.columns[k] = label;
    }
    for (long k = 0; k < N; ++k)
        if (out.columns[k].empty())
            throw DomainError(fmt::format("decompose_cyclic: no class for g^{}", k));
    const VectorForm& f0 = family.at(out.columns[0]);
    long m = f0.m();
    long top = f0.dmax();
    long low = 0;
    for (auto& [label, f] : family) {
        if (f.m() != m)
            throw DomainError("decompose_cyclic: index mismatch");
        top = std::min(top, f.dmax());
        auto sup = f.support_discriminants();
        if (!sup.empty())
            low = std::min(low, sup.front());
    }
    for (long D = low; D <= top; ++D)
        for (long r = 0; r < 2 * m; ++r) {
            if (mod(D - r * r, 4 * m) != 0)
                continue;
            std::vector<mpq_class> mult(N);
            bool integral = true;
            for (long j = 0; j < N; ++j) {
                std::complex<long double> s = 0;
                for (long k = 0; k < N; ++k) {
                    long double x = family.at(out.columns[k]).coeff(D, r).get_d();
                    long double ang = -2.0L * M_PIl * static_cast<long double>(mod(j * k, N)) / N;
                    s += x * std::complex<long double>(std::cos(ang), std::sin(ang));
                }
                long double re = s.real(), im = s.imag();
                long double rr = std::nearbyint(re);
                // N * multiplicity is an exact algebraic sum; anything else is a failure
                if (std::abs(im) > 1e-6L * std::max<long double>(1, std::abs(re)) ||
                    std::abs(re - rr) > 1e-6L * std::max<long double>(1, std::abs(re)))
                    integral = false;
                mpq_class q(mpz_class(static_cast<long>(rr)), N);
                q.canonicalize();
                mult[j] = q;
                if (q.get_den() != 1)
                    integral = false;
            }
            out.multiplicities[{D, r}] = mult;
            if (!integral)
                out.nonintegral.push_back({D, r});
        }
    return out;
}

Report cyclic_suite(const Dataset& ds)
{
    Report rep;
    for (auto& g : ds.groups()) {
        if (g.group.size() < 2 || g.group[0] != 'Z' ||
            g.group.find(':') != std::string::npos)
            continue;
        long N = std::stol(g.group.substr(1));
        std::string lam = fmt::format("{}:{}", g.D0, lambency_for_level(g.D0, g.m));
        if (!ds.has_table(lam)) {
            rep.add(false, lam, "cyclic", g.group, "a coefficient table", "missing");
            continue;
        }
        auto dec = decompose_cyclic(ds.table(lam), N);
        for (auto& k : dec.nonintegral) {
            std::vector<std::string> v;
            for (auto& q : dec.multiplicities.at(k))
                v.push_back(q.get_str());
            rep.add(false, lam, "cyclic", fmt::format("(D={}, r={})", k.first, k.second),
                    "integers", fmt::format("({})", fmt::join(v, ",")));
        }
        if (dec.nonintegral.empty())
            rep.add(true, lam, "cyclic",
                    fmt::format("{}: {} gradings integral", g.group, dec.multiplicities.size()));
    }
    return rep;
}

SturmAccount sturm_accounting(const Dataset& ds, const Lambdency& lam, long k)
{
    SturmAccount a;
    a.lambdency = lam.str();
    a.k = k;
    for (auto& cs : ds.classes(lam.str())) {
        // the element order, which the "A." cells do not show as n
        long n = class_order(cs.class_name);
        long N = n * cs.h;
        if (N > a.N || (N == a.N && n > a.n)) {
            a.N = N;
            a.n = n;
            a.h = cs.h;
        }
    }
    a.B = sturm_bound(k, lam.m(), a.N);
    return a;
}

Report sturm_suite(const Dataset& ds)
{
    Report rep;
    for (auto& row : ds.sturm()) {
        Lambdency L = Lambdency::parse(fmt::format("{}:{}", row.D0, row.lambency));
        SturmAccount a = sturm_accounting(ds, L, row.k);
        std::string want = fmt::format("k={} N={} n={} h={} B={}", row.k, row.N, row.n, row.h, row.B);
        std::string got = fmt::format("k={} N={} n={} h={} B={}", a.k, a.N, a.n, a.h, a.B.get_str());
        rep.add(want == got, L.str(), "sturm", "accounting", want, got);
    }
    return rep;
}

} // namespace pm
