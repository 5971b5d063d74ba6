#include "pm/dataio.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <cstring>
#include <set>
#include <sstream>

#ifndef PM_DEFAULT_DATA_DIR
#define PM_DEFAULT_DATA_DIR "data"
#endif

namespace pm {

namespace {

std::string trim(const std::string& s)
{
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

struct KindSchema {
    const char* section;
    std::set<std::string> props;
};

const std::map<std::string, KindSchema>& schemas()
{
    static const std::map<std::string, KindSchema> s = {
        {"coefficients", {"coefficients", {"columns", "dmax", "complete"}}},
        {"characters", {"characters", {}}},
        {"theta_corrections", {"theta", {}}},
        {"singular_parts", {"singular", {}}},
        {"lambencies", {"lambencies", {}}},
        {"groups", {"groups", {}}},
        {"sturm", {"sturm", {}}},
        {"parity", {"parity", {"classes", "modulus", "dmax"}}},
        {"relations",
         {"relation",
          {"lhs", "rhs", "argument", "scale", "modulus", "congruence", "weight", "terms"}}},
        {"power_maps", {"power_maps", {}}},
    };
    return s;
}

const std::set<std::string> header_keys = {"kind", "lambdency", "provenance", "values"};

[[noreturn]] void fail(const std::string& src, size_t line, const std::string& msg)
{
    throw ParseError(fmt::format("{}:{}: {}", src, line, msg));
}

long to_long(const std::string& s, const std::string& src, size_t line)
{
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0' || errno)
        fail(src, line, fmt::format("malformed integer '{}'", s));
    return v;
}

mpq_class to_rational(const std::string& s, const std::string& src, size_t line)
{
    bool ok = !s.empty();
    for (size_t i = 0; i < s.size() && ok; ++i) {
        char c = s[i];
        ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
             ((c == '-' || c == '+') && i == 0);
    }
    if (!ok || s.find('/') == 0 || s.back() == '/')
        fail(src, line, fmt::format("malformed rational '{}'", s));
    try {
        mpq_class q(s[0] == '+' ? s.substr(1) : s);
        if (q.get_den() == 0)
            fail(src, line, "zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(src, line, fmt::format("malformed rational '{}'", s));
    }
}

} // namespace

const std::string* PmdSection::prop(const std::string& key) const
{
    for (auto& [k, v] : props)
        if (k == key)
            return &v;
    return nullptr;
}

const std::string& PmdSection::require(const std::string& key) const
{
    if (auto p = prop(key))
        return *p;
    throw ParseError(fmt::format("section [{}]: missing property '{}'", name, key));
}

const std::string* PmdDocument::header_value(const std::string& key) const
{
    for (auto& [k, v] : header)
        if (k == key)
            return &v;
    return nullptr;
}

const std::string& PmdDocument::kind() const
{
    if (auto k = header_value("kind"))
        return *k;
    throw ParseError(source + ": document has no kind");
}

PmdDocument load_pmd(const std::string& text, const std::string& source, Schema mode)
{
    PmdDocument doc;
    doc.source = source;
    if (!text.empty() && text.back() != '\n') {
        size_t lines = static_cast<size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
        fail(source, lines, "stream ends mid-line (truncated?)");
    }
    auto warn_or_fail = [&](size_t line, const std::string& msg) {
        if (mode == Schema::strict)
            fail(source, line, msg);
        doc.warnings.push_back(fmt::format("{}:{}: {}", source, line, msg));
    };

    std::istringstream in(text);
    std::string raw;
    size_t lineno = 0;
    const KindSchema* schema = nullptr;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        if (line[0] == '[') {
            if (line.back() != ']')
                fail(source, lineno, "unterminated section header");
            PmdSection s;
            s.name = trim(line.substr(1, line.size() - 2));
            if (s.name.empty())
                fail(source, lineno, "empty section name");
            if (!schema) {
                auto k = doc.header_value("kind");
                if (!k)
                    fail(source, lineno, "section before 'kind' header");
                auto it = schemas().find(*k);
                if (it == schemas().end())
                    warn_or_fail(lineno, "unknown kind '" + *k + "'");
                else
                    schema = &it->second;
            }
            if (schema && split_ws(s.name)[0] != schema->section)
                warn_or_fail(lineno, "unexpected section '" + s.name + "'");
            doc.sections.push_back(std::move(s));
            continue;
        }
        auto toks = split_ws(line);
        if (toks.size() >= 2 && toks[1] == "=") {
            auto eq = line.find('=');
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (val.empty())
                fail(source, lineno, "property '" + key + "' has no value");
            if (doc.sections.empty()) {
                if (!header_keys.count(key))
                    warn_or_fail(lineno, "unknown header key '" + key + "'");
                doc.header.emplace_back(key, val);
            } else {
                auto& sec = doc.sections.back();
                if (!sec.records.empty())
                    fail(source, lineno, "property after records in [" + sec.name + "]");
                if (schema && !schema->props.count(key))
                    warn_or_fail(lineno, "unknown property '" + key + "'");
                sec.props.emplace_back(key, val);
            }
            continue;
        }
        if (doc.sections.empty())
            fail(source, lineno, "record outside any section");
        doc.sections.back().records.push_back({lineno, std::move(toks)});
    }
    if (!doc.header_value("kind"))
        warn_or_fail(lineno, "missing 'kind' header");
    return doc;
}

PmdDocument load_pmd_file(const std::string& path, Schema mode)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_pmd(ss.str(), path, mode);
}

std::string emit_pmd(const PmdDocument& doc)
{
    std::string out;
    for (auto& [k, v] : doc.header)
        out += k + " = " + v + "\n";
    for (auto& s : doc.sections) {
        out += "\n[" + s.name + "]\n";
        for (auto& [k, v] : s.props)
            out += k + " = " + v + "\n";
        for (auto& r : s.records) {
            std::string line;
            for (auto& c : r.cells)
                line += (line.empty() ? "" : "  ") + c;
            out += line + "\n";
        }
    }
    return out;
}

CharacterCell parse_character_cell(const std::string& text)
{
    CharacterCell cell;
    std::string t = trim(text);
    for (const char* pre : {"A\xC2\xB7", "A*"}) {
        std::string p(pre);
        if (t.rfind(p, 0) == 0) {
            cell.special = true;
            t = t.substr(p.size());
            break;
        }
    }
    if (cell.special && t.size() >= 2 && t.front() == '(' && t.back() == ')')
        t = t.substr(1, t.size() - 2);
    auto num = [&](const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
            throw ParseError("character cell '" + text + "': malformed integer '" + s + "'");
        long v = std::stol(s);
        if (v < 1)
            throw ParseError("character cell '" + text + "': fields must be positive");
        return v;
    };
    auto bar = t.find('|');
    if (bar == std::string::npos) {
        cell.n = num(t);
        return cell;
    }
    cell.n = num(t.substr(0, bar));
    std::string rest = t.substr(bar + 1);
    auto us = rest.find('_');
    if (us == std::string::npos) {
        cell.h = num(rest);
    } else {
        cell.h = num(rest.substr(0, us));
        cell.v = num(rest.substr(us + 1));
    }
    return cell;
}

std::vector<ThetaTerm> parse_theta_correction(const std::string& text)
{
    std::vector<ThetaTerm> out;
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    if (t.empty())
        return out;
    size_t i = 0;
    while (i < t.size()) {
        std::string kappa;
        if (t[i] == '+' || t[i] == '-')
            kappa += t[i++];
        while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '/'))
            kappa += t[i++];
        if (i >= t.size() || t[i] != '(')
            throw ParseError("theta correction '" + text + "': expected '('");
        auto close = t.find(')', i);
        if (close == std::string::npos)
            throw ParseError("theta correction '" + text + "': missing ')'");
        std::string k2 = t.substr(i + 1, close - i - 1);
        i = close + 1;
        if (kappa.empty() || kappa == "+")
            kappa = "1";
        else if (kappa == "-")
            kappa = "-1";
        ThetaTerm term;
        term.kappa = to_rational(kappa, "theta correction '" + text + "'", 1);
        term.k2 = to_long(k2, "theta correction '" + text + "'", 1);
        long k = 1;
        while (k * k < term.k2)
            ++k;
        if (k * k != term.k2)
            throw ParseError("theta correction '" + text + "': " + k2 + " is not a square");
        out.push_back(term);
    }
    return out;
}

std::vector<std::string> expand_class_label(const std::string& label)
{
    size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i])))
        ++i;
    if (i == 0 || i == label.size())
        throw ParseError("malformed class label '" + label + "'");
    std::vector<std::string> out;
    for (size_t j = i; j < label.size(); ++j) {
        if (!std::isupper(static_cast<unsigned char>(label[j])))
            throw ParseError("malformed class label '" + label + "'");
        out.push_back(label.substr(0, i) + label[j]);
    }
    return out;
}

long class_order(const std::string& label)
{
    size_t i = 0;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i])))
        ++i;
    if (i == 0)
        throw ParseError("malformed class label '" + label + "'");
    return std::stol(label.substr(0, i));
}

std::vector<CoefficientBlock> parse_coeff_table(const PmdDocument& doc)
{
    if (doc.kind() != "coefficients")
        throw ParseError(doc.source + ": not a coefficients document");
    bool rational = false;
    if (auto v = doc.header_value("values"))
        rational = *v == "rational";
    std::string prov = doc.header_value("provenance") ? *doc.header_value("provenance") : "";
    std::vector<CoefficientBlock> out;
    for (auto& sec : doc.sections) {
        auto words = split_ws(sec.name);
        if (words.size() != 2 || words[0] != "coefficients")
            throw ParseError(fmt::format("{}: bad section [{}]", doc.source, sec.name));
        CoefficientBlock blk;
        blk.lambdency = Lambdency::parse(words[1]);
        blk.provenance = prov;
        long m = blk.lambdency.m();
        auto cols = split_ws(sec.require("columns"));
        long dmax = to_long(sec.require("dmax"), doc.source, 0);
        // rows above `complete` list only some cells; the rest are unknown
        long complete = dmax;
        if (auto c = sec.prop("complete"))
            complete = to_long(*c, doc.source, 0);
        if (complete > dmax)
            throw ParseError(fmt::format("{}: complete={} exceeds dmax={}", doc.source, complete, dmax));
        for (auto& c : cols) {
            expand_class_label(c);
            if (blk.forms.count(c))
                throw ParseError(doc.source + ": duplicate column " + c);
            blk.forms.emplace(c, VectorForm(m, complete, 1));
        }
        for (auto& rec : sec.records) {
            if (rec.cells.size() != cols.size() + 2)
                fail(doc.source, rec.line,
                     fmt::format("expected {} cells, found {}", cols.size() + 2, rec.cells.size()));
            long r = to_long(rec.cells[0], doc.source, rec.line);
            long D = to_long(rec.cells[1], doc.source, rec.line);
            if (mod(D - r * r, 4 * m) != 0)
                fail(doc.source, rec.line,
                     fmt::format("D={} is not congruent to r^2={} mod {}", D, r * r, 4 * m));
            if (D > dmax)
                fail(doc.source, rec.line, fmt::format("D={} exceeds dmax={}", D, dmax));
            for (size_t j = 0; j < cols.size(); ++j) {
                const std::string& cell = rec.cells[j + 2];
                if (cell == ".") {
                    if (D > complete)
                        blk.beyond[cols[j]][{D, mod(r, 2 * m)}] = 0;
                    continue;
                }
                mpq_class v;
                if (rational) {
                    v = to_rational(cell, doc.source, rec.line);
                } else {
                    mpz_class z;
                    bool ok = z.set_str(cell[0] == '+' ? cell.substr(1) : cell, 10) == 0;
                    if (!ok)
                        fail(doc.source, rec.line, "non-integer cell '" + cell + "'");
                    v = z;
                }
                if (D > complete)
                    blk.beyond[cols[j]][{D, mod(r, 2 * m)}] = v;
                else
                    blk.forms.at(cols[j]).set(D, r, v);
            }
        }
        out.push_back(std::move(blk));
    }
    return out;
}

PmdDocument coefficient_document(const std::string& lambdency,
                                 const std::map<std::string, VectorForm>& forms,
                                 const std::string& provenance)
{
    if (forms.empty())
        throw DomainError("coefficient_document: no forms");
    PmdDocument doc;
    doc.header = {{"kind", "coefficients"}, {"lambdency", lambdency},
                  {"provenance", provenance}, {"values", "rational"}};
    PmdSection s;
    s.name = "coefficients " + lambdency;
    std::string cols;
    long m = forms.begin()->second.m();
    long dmax = forms.begin()->second.dmax();
    std::set<long> Ds;
    for (auto& [c, f] : forms) {
        cols += (cols.empty() ? "" : " ") + c;
        if (f.m() != m || f.dmax() != dmax)
            throw DomainError("coefficient_document: forms disagree on m or dmax");
        for (long D : f.support_discriminants())
            Ds.insert(D);
    }
    s.props = {{"columns", cols}, {"dmax", std::to_string(dmax)}};
    for (long r = 0; r <= m; ++r) {
        for (long D : Ds) {
            if (mod(D - r * r, 4 * m) != 0)
                continue;
            PmdRecord rec;
            rec.cells = {std::to_string(r), std::to_string(D)};
            bool any = false;
            for (auto& [c, f] : forms) {
                mpq_class v = f.coeff(D, r);
                any |= v != 0;
                rec.cells.push_back(v == 0 ? "." : v.get_str());
            }
            if (any)
                s.records.push_back(std::move(rec));
        }
    }
    doc.sections.push_back(std::move(s));
    return doc;
}

std::vector<SingularToken> tokenize_singular(const std::string& expr)
{
    std::vector<SingularToken> out;
    size_t i = 0;
    while (i < expr.size()) {
        char c = expr[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j])))
                ++j;
            out.push_back({SingularToken::number, expr.substr(i, j - i)});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            // juxtaposed symbols ("isqrt(2)") split on the known names, longest first
            static const char* known[] = {"omega", "sqrt", "xi", "q", "i"};
            std::string w;
            for (const char* k : known)
                if (expr.compare(i, std::strlen(k), k) == 0) {
                    w = k;
                    break;
                }
            if (w.empty()) {
                size_t j = i;
                while (j < expr.size() && std::isalpha(static_cast<unsigned char>(expr[j])))
                    ++j;
                throw ParseError("singular part '" + expr + "': unknown symbol '" +
                                 expr.substr(i, j - i) + "'");
            }
            out.push_back({SingularToken::symbol, w});
            i += w.size();
        } else if (std::string("+-*/^()").find(c) != std::string::npos) {
            out.push_back({SingularToken::op, std::string(1, c)});
            ++i;
        } else {
            throw ParseError("singular part '" + expr + "': unexpected character");
        }
    }
    int depth = 0;
    for (auto& t : out) {
        if (t.text == "(")
            ++depth;
        if (t.text == ")" && --depth < 0)
            break;
    }
    if (depth != 0)
        throw ParseError("singular part '" + expr + "': unbalanced parentheses");
    return out;
}

std::vector<SingularEntry> parse_singular_table(const PmdDocument& doc)
{
    if (doc.kind() != "singular_parts")
        throw ParseError(doc.source + ": not a singular_parts document");
    std::vector<SingularEntry> out;
    for (auto& sec : doc.sections)
        for (auto& rec : sec.records) {
            if (rec.cells.size() < 3)
                fail(doc.source, rec.line, "expected class, cusp and expression");
            SingularEntry e;
            e.class_label = rec.cells[0];
            expand_class_label(e.class_label);
            e.cusp = to_rational(rec.cells[1], doc.source, rec.line);
            for (size_t j = 2; j < rec.cells.size(); ++j)
                e.expression += (j > 2 ? " " : "") + rec.cells[j];
            e.tokens = tokenize_singular(e.expression);
            out.push_back(std::move(e));
        }
    return out;
}

std::map<std::string, CharacterCell> parse_characters(const PmdDocument& doc)
{
    if (doc.kind() != "characters")
        throw ParseError(doc.source + ": not a characters document");
    std::map<std::string, CharacterCell> out;
    for (auto& sec : doc.sections)
        for (auto& rec : sec.records) {
            if (rec.cells.size() != 2)
                fail(doc.source, rec.line, "expected class and cell");
            expand_class_label(rec.cells[0]);
            try {
                out[rec.cells[0]] = parse_character_cell(rec.cells[1]);
            } catch (const ParseError& e) {
                fail(doc.source, rec.line, e.what());
            }
        }
    return out;
}

std::map<std::string, std::vector<ThetaTerm>> parse_theta_table(const PmdDocument& doc)
{
    if (doc.kind() != "theta_corrections")
        throw ParseError(doc.source + ": not a theta_corrections document");
    std::map<std::string, std::vector<ThetaTerm>> out;
    for (auto& sec : doc.sections)
        for (auto& rec : sec.records) {
            if (rec.cells.size() < 2)
                fail(doc.source, rec.line, "expected class and correction");
            std::string expr;
            for (size_t j = 1; j < rec.cells.size(); ++j)
                expr += rec.cells[j];
            expand_class_label(rec.cells[0]);
            try {
                out[rec.cells[0]] = parse_theta_correction(expr);
            } catch (const ParseError& e) {
                fail(doc.source, rec.line, e.what());
            }
        }
    return out;
}

std::vector<GroupRow> parse_groups(const PmdDocument& doc)
{
    std::vector<GroupRow> out;
    for (auto& sec : doc.sections) {
        auto w = split_ws(sec.name);
        if (w.size() != 2 || w[0] != "groups")
            throw ParseError(doc.source + ": bad section [" + sec.name + "]");
        long D0 = to_long(w[1], doc.source, 0);
        for (auto& rec : sec.records) {
            if (rec.cells.size() != 4)
                fail(doc.source, rec.line, "expected level, group, C(0,0), C(D0,r0)");
            out.push_back({D0, to_long(rec.cells[0], doc.source, rec.line), rec.cells[1],
                           to_long(rec.cells[2], doc.source, rec.line),
                           to_long(rec.cells[3], doc.source, rec.line)});
        }
    }
    return out;
}

std::vector<SturmRow> parse_sturm(const PmdDocument& doc)
{
    std::vector<SturmRow> out;
    for (auto& sec : doc.sections)
        for (auto& rec : sec.records) {
            if (rec.cells.size() != 7)
                fail(doc.source, rec.line, "expected D0 lambency k N n h B");
            SturmRow r;
            r.D0 = to_long(rec.cells[0], doc.source, rec.line);
            r.lambency = rec.cells[1];
            r.k = to_long(rec.cells[2], doc.source, rec.line);
            r.N = to_long(rec.cells[3], doc.source, rec.line);
            r.n = to_long(rec.cells[4], doc.source, rec.line);
            r.h = to_long(rec.cells[5], doc.source, rec.line);
            r.B = to_long(rec.cells[6], doc.source, rec.line);
            out.push_back(r);
        }
    return out;
}

std::vector<LambencyRow> parse_lambencies(const PmdDocument& doc)
{
    std::vector<LambencyRow> out;
    for (auto& sec : doc.sections)
        for (auto& rec : sec.records) {
            LambencyRow r;
            r.label = rec.cells[0];
            for (size_t j = 1; j < rec.cells.size(); ++j)
                r.d0.push_back(to_long(rec.cells[j], doc.source, rec.line));
            out.push_back(r);
        }
    return out;
}

std::vector<RelationDescriptor> parse_relations(const PmdDocument& doc)
{
    if (doc.kind() != "relations")
        throw ParseError(doc.source + ": not a relations document");
    std::vector<RelationDescriptor> out;
    for (auto& sec : doc.sections) {
        RelationDescriptor d;
        d.lhs = sec.require("lhs");
        d.rhs = sec.require("rhs");
        d.argument = to_long(sec.require("argument"), doc.source, 0);
        d.scale = to_rational(sec.require("scale"), doc.source, 0);
        d.modulus = to_long(sec.require("modulus"), doc.source, 0);
        d.congruence = to_long(sec.require("congruence"), doc.source, 0);
        const std::string& w = sec.require("weight");
        if (w == "one")
            d.weight = RelationWeight::one;
        else if (w == "alt")
            d.weight = RelationWeight::alt;
        else if (w == "I")
            d.weight = RelationWeight::I;
        else if (w == "explicit")
            d.weight = RelationWeight::explicit_terms;
        else
            throw ParseError(doc.source + ": unknown weight '" + w + "'");
        if (d.weight == RelationWeight::explicit_terms) {
            for (auto& item : split_ws(sec.require("terms"))) {
                auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw ParseError(doc.source + ": bad terms item '" + item + "'");
                long r = to_long(item.substr(0, colon), doc.source, 0);
                std::stringstream ss(item.substr(colon + 1));
                std::string t;
                while (std::getline(ss, t, ',')) {
                    if (t.size() < 2 || (t[0] != '+' && t[0] != '-'))
                        throw ParseError(doc.source + ": term needs an explicit sign: " + t);
                    d.terms[r].push_back({t[0] == '+' ? 1 : -1, to_long(t.substr(1), doc.source, 0)});
                }
            }
        }
        for (auto& rec : sec.records) {
            if (rec.cells.size() != 2)
                fail(doc.source, rec.line, "expected g and h");
            RelationRow row;
            row.g = rec.cells[0];
            expand_class_label(row.g);
            std::stringstream ss(rec.cells[1]);
            std::string h;
            while (std::getline(ss, h, '|')) {
                expand_class_label(h);
                row.h.push_back(h);
            }
            d.rows.push_back(row);
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::map<std::string, std::vector<PowerMapEntry>> parse_power_maps(const PmdDocument& doc)
{
    std::map<std::string, std::vector<PowerMapEntry>> out;
    for (auto& sec : doc.sections) {
        auto w = split_ws(sec.name);
        if (w.size() != 2 || w[0] != "power_maps")
            throw ParseError(doc.source + ": bad section [" + sec.name + "]");
        for (auto& rec : sec.records) {
            if (rec.cells.size() != 3)
                fail(doc.source, rec.line, "expected g g^p p");
            out[w[1]].push_back({rec.cells[0], rec.cells[1],
                                 to_long(rec.cells[2], doc.source, rec.line)});
        }
    }
    return out;
}

std::vector<ParityRecipe> parse_parity(const PmdDocument& doc)
{
    std::vector<ParityRecipe> out;
    for (auto& sec : doc.sections) {
        auto w = split_ws(sec.name);
        if (w.size() != 2 || w[0] != "parity")
            throw ParseError(doc.source + ": bad section [" + sec.name + "]");
        ParityRecipe p;
        p.lambdency = w[1];
        p.classes = split_ws(sec.require("classes"));
        p.modulus = to_long(sec.require("modulus"), doc.source, 0);
        p.dmax = to_long(sec.require("dmax"), doc.source, 0);
        for (auto& rec : sec.records) {
            if (rec.cells.size() != 2)
                fail(doc.source, rec.line, "expected coefficient and scale");
            p.terms.push_back({to_rational(rec.cells[0], doc.source, rec.line),
                               to_long(rec.cells[1], doc.source, rec.line)});
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string default_data_dir()
{
    if (const char* env = std::getenv("PM_DATA_DIR"); env && *env)
        return env;
    return PM_DEFAULT_DATA_DIR;
}

} // namespace pm
