#pragma once

#include "pm/arith.hpp"
#include "pm/jacobi.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pm {

// Line-oriented data format: "#" comments, "key = value" properties,
// "[name]" section headers, whitespace-separated record cells.
struct PmdRecord {
    size_t line = 0;
    std::vector<std::string> cells;
    bool operator==(const PmdRecord& o) const { return cells == o.cells; }
};

using PmdProps = std::vector<std::pair<std::string, std::string>>;

struct PmdSection {
    std::string name;
    PmdProps props;
    std::vector<PmdRecord> records;

    const std::string* prop(const std::string& key) const;
    const std::string& require(const std::string& key) const;
    bool operator==(const PmdSection& o) const
    {
        return name == o.name && props == o.props && records == o.records;
    }
};

struct PmdDocument {
    std::string source;    // file name or "<memory>", for messages
    PmdProps header;
    std::vector<PmdSection> sections;
    std::vector<std::string> warnings;

    const std::string* header_value(const std::string& key) const;
    const std::string& kind() const;
    bool operator==(const PmdDocument& o) const
    {
        return header == o.header && sections == o.sections;
    }
};

struct ParseError : DomainError {
    using DomainError::DomainError;
};

enum class Schema { strict, lenient };

PmdDocument load_pmd(const std::string& text, const std::string& source = "<memory>",
                     Schema mode = Schema::strict);
PmdDocument load_pmd_file(const std::string& path, Schema mode = Schema::strict);
std::string emit_pmd(const PmdDocument& doc);

// "n", "n|h", "n|h_v", optionally prefixed "A·" (or "A*") for the special matrix
struct CharacterCell {
    long n = 1, h = 1, v = 1;
    bool special = false;
    bool operator==(const CharacterCell& o) const
    {
        return n == o.n && h == o.h && v == o.v && special == o.special;
    }
};
CharacterCell parse_character_cell(const std::string& text);

// kappa * theta_m(k2 tau)
struct ThetaTerm {
    mpq_class kappa;
    long k2 = 1;
    bool operator==(const ThetaTerm& o) const { return kappa == o.kappa && k2 == o.k2; }
};
std::vector<ThetaTerm> parse_theta_correction(const std::string& text);

// "12JKOPR" -> 12J 12K 12O 12P 12R
std::vector<std::string> expand_class_label(const std::string& label);
long class_order(const std::string& label);

struct CoefficientBlock {
    Lambdency lambdency;
    std::string provenance;
    std::map<std::string, VectorForm> forms;    // per class column, complete through dmax
    // listed cells above the `complete` bound, keyed (D, r)
    std::map<std::string, std::map<std::pair<long, long>, mpq_class>> beyond;
};
// one block per [coefficients ...] section
std::vector<CoefficientBlock> parse_coeff_table(const PmdDocument& doc);
// the inverse: a single-lambdency block as a coefficients document
PmdDocument coefficient_document(const std::string& lambdency,
                                 const std::map<std::string, VectorForm>& forms,
                                 const std::string& provenance);

struct SingularToken {
    enum Kind { number, symbol, op } kind;
    std::string text;
    bool operator==(const SingularToken& o) const { return kind == o.kind && text == o.text; }
};
struct SingularEntry {
    std::string class_label;
    mpq_class cusp;
    std::string expression;
    std::vector<SingularToken> tokens;
};
std::vector<SingularEntry> parse_singular_table(const PmdDocument& doc);
std::vector<SingularToken> tokenize_singular(const std::string& expr);

std::map<std::string, CharacterCell> parse_characters(const PmdDocument& doc);
std::map<std::string, std::vector<ThetaTerm>> parse_theta_table(const PmdDocument& doc);

struct GroupRow {
    long D0 = 0, m = 0;
    std::string group;
    long C00 = 0, CD0 = 0;
};
std::vector<GroupRow> parse_groups(const PmdDocument& doc);

struct SturmRow {
    long D0 = 0;
    std::string lambency;
    long k = 0, N = 0, n = 0, h = 0, B = 0;
};
std::vector<SturmRow> parse_sturm(const PmdDocument& doc);

struct LambencyRow {
    std::string label;
    std::vector<long> d0;
};
std::vector<LambencyRow> parse_lambencies(const PmdDocument& doc);

enum class RelationWeight { one, alt, I, explicit_terms };

struct RelationRow {
    std::string g;
    std::vector<std::string> h;    // alternatives
};

struct RelationDescriptor {
    std::string lhs, rhs;
    long argument = 1;
    mpq_class scale = 1;
    long modulus = 2, congruence = 2;
    RelationWeight weight = RelationWeight::one;
    std::map<long, std::vector<std::pair<int, long>>> terms;    // lhs r -> (sign, s)
    std::vector<RelationRow> rows;
};
std::vector<RelationDescriptor> parse_relations(const PmdDocument& doc);

struct PowerMapEntry {
    std::string g, gp;
    long p = 2;
};
std::map<std::string, std::vector<PowerMapEntry>> parse_power_maps(const PmdDocument& doc);

struct ParityRecipe {
    std::string lambdency;
    std::vector<std::string> classes;
    long modulus = 2;
    long dmax = 0;
    std::vector<std::pair<mpq_class, long>> terms;    // coeff * theta(scale tau)
};
std::vector<ParityRecipe> parse_parity(const PmdDocument& doc);

// data directory: $PM_DATA_DIR if set, otherwise the compiled-in default
std::string default_data_dir();

} // namespace pm
