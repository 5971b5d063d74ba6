#include "pm/dataio.hpp"

#include "doctest.h"

#include <filesystem>

using namespace pm;
namespace fs = std::filesystem;

namespace {

mpq_class Q(long n, long d = 1)
{
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

const char* small_table = R"(kind = coefficients
provenance = test

[coefficients -3:1]
columns = 1A 3A
dmax = 9
1  -3  2  2
0   0  248  14
0   4  54000  -54
1   5  -171990  .
1   9  -8192000  -20
)";

std::vector<fs::path> shipped_files()
{
    std::vector<fs::path> out;
    for (auto& e : fs::recursive_directory_iterator(default_data_dir()))
        if (e.path().extension() == ".pmd")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}

TEST_SUITE("dataio") {

TEST_CASE("character cells")
{
    CHECK(parse_character_cell("3|3_2") == CharacterCell{3, 3, 2, false});
    CHECK(parse_character_cell("7") == CharacterCell{7, 1, 1, false});
    CHECK(parse_character_cell("24|12_11") == CharacterCell{24, 12, 11, false});
    CHECK(parse_character_cell("4|2") == CharacterCell{4, 2, 1, false});
    CHECK(parse_character_cell("A*3").special);
    CHECK_THROWS_AS(parse_character_cell("3|x"), ParseError);
    CHECK_THROWS_AS(parse_character_cell("0"), ParseError);
}

TEST_CASE("theta corrections")
{
    CHECK(parse_theta_correction("18(9)") == std::vector<ThetaTerm>{{18, 9}});
    CHECK(parse_theta_correction("1/2(9)-3/2(81)") ==
          std::vector<ThetaTerm>{{Q(1, 2), 9}, {Q(-3, 2), 81}});
    CHECK(parse_theta_correction("-1(4)+3(36)") == std::vector<ThetaTerm>{{-1, 4}, {3, 36}});
    CHECK_THROWS_AS(parse_theta_correction("2(5)"), ParseError);
    CHECK_THROWS_AS(parse_theta_correction("2(9"), ParseError);
}

TEST_CASE("class labels")
{
    CHECK(expand_class_label("12JKOPR") ==
          std::vector<std::string>{"12J", "12K", "12O", "12P", "12R"});
    CHECK(expand_class_label("1A") == std::vector<std::string>{"1A"});
    CHECK(class_order("24CD") == 24);
    CHECK_THROWS_AS(expand_class_label("A"), ParseError);
    CHECK_THROWS_AS(expand_class_label("12"), ParseError);
}

TEST_CASE("coefficient tables")
{
    auto doc = load_pmd(small_table);
    auto blocks = parse_coeff_table(doc);
    REQUIRE(blocks.size() == 1);
    auto& f = blocks[0].forms.at("1A");
    CHECK(f.coeff(-3, 1) == 2);
    CHECK(f.coeff(0, 0) == 248);
    CHECK(f.coeff(9, 1) == -8192000);
    CHECK(blocks[0].forms.at("3A").coeff(5, 1) == 0);
    CHECK(f.dmax() == 9);
}

TEST_CASE("shipped tables load")
{
    auto a = parse_coeff_table(load_pmd_file(default_data_dir() + "/coefficients/cff_-3_1_part1.pmd"));
    CHECK(a.at(0).forms.at("1A").coeff(-3, 1) == 2);
    auto b = parse_coeff_table(load_pmd_file(default_data_dir() + "/coefficients/cff_-4_1_part1.pmd"));
    CHECK(b.at(0).forms.at("1A").coeff(0, 0) == -492);
}

TEST_CASE("rows off the support are rejected")
{
    std::string bad = small_table;
    bad += "0   3  1  1\n";
    CHECK_THROWS_AS(parse_coeff_table(load_pmd(bad)), ParseError);
}

TEST_CASE("singular parts")
{
    auto sing = parse_singular_table(load_pmd_file(default_data_dir() + "/singular/sng_-4_1.pmd"));
    bool saw12 = false, saw2 = false;
    for (auto& e : sing) {
        if (e.class_label == "12AB" && e.cusp == Q(1, 24)) {
            saw12 = true;
            CHECK(e.expression == "(4i)/q");
        }
        if (e.class_label == "2A" && e.cusp == Q(1, 4)) {
            saw2 = true;
            CHECK(e.expression == "-(2i)/q^4");
        }
    }
    CHECK(saw12);
    CHECK(saw2);
    auto toks = tokenize_singular("(i-1)/q");
    REQUIRE(toks.size() == 7);
    CHECK(toks[1] == SingularToken{SingularToken::symbol, "i"});
    auto t2 = tokenize_singular("isqrt(2)");
    CHECK(t2[0] == SingularToken{SingularToken::symbol, "i"});
    CHECK(t2[1] == SingularToken{SingularToken::symbol, "sqrt"});
    CHECK_THROWS_AS(tokenize_singular("(2z)/q"), ParseError);
    CHECK_THROWS_AS(tokenize_singular("(2i/q"), ParseError);
}

TEST_CASE("emit and load round trip on every shipped document")
{
    auto files = shipped_files();
    CHECK(files.size() > 40);
    for (auto& p : files) {
        CAPTURE(p.string());
        auto d = load_pmd_file(p.string());
        auto text = emit_pmd(d);
        auto d2 = load_pmd(text);
        CHECK(d2 == d);
        // stable output
        CHECK(emit_pmd(d2) == text);
    }
}

TEST_CASE("truncated and malformed streams are rejected with a location")
{
    std::string t = small_table;
    t.pop_back();
    try {
        load_pmd(t, "cut.pmd");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("cut.pmd:11") != std::string::npos);
    }
    CHECK_THROWS_AS(load_pmd("kind = coefficients\n[coefficients -3:1\n"), ParseError);
    CHECK_THROWS_AS(load_pmd("1 2 3\n"), ParseError);
    CHECK_THROWS_AS(load_pmd("kind = nonsense\n[x]\n"), ParseError);
    auto lenient = load_pmd("kind = nonsense\n[x]\n", "<memory>", Schema::lenient);
    CHECK_FALSE(lenient.warnings.empty());
}

TEST_CASE("coefficient document round trip")
{
    auto blocks = parse_coeff_table(load_pmd(small_table));
    auto doc = coefficient_document("-3:1", blocks[0].forms, "test");
    auto again = parse_coeff_table(load_pmd(emit_pmd(doc)));
    REQUIRE(again.size() == 1);
    for (auto& [k, f] : blocks[0].forms)
        CHECK(again[0].forms.at(k) == f);
}

TEST_CASE("group, sturm and relation documents")
{
    auto dir = default_data_dir();
    auto groups = parse_groups(load_pmd_file(dir + "/groups.pmd"));
    CHECK(groups.front().group == "Th");
    CHECK(groups.front().C00 == 248);
    CHECK(groups.front().CD0 == 2);
    auto sturm = parse_sturm(load_pmd_file(dir + "/sturm.pmd"));
    CHECK(sturm.size() == 11);
    auto rel = parse_relations(load_pmd_file(dir + "/relations_-3.pmd"));
    CHECK(rel.front().lhs == "-3:1");
    CHECK(rel.front().argument == 3);
    CHECK(rel.front().scale == Q(1, 2));
    CHECK(rel.front().weight == RelationWeight::explicit_terms);
    auto pm = parse_power_maps(load_pmd_file(dir + "/power_maps.pmd"));
    CHECK(pm.count("-3:1"));
    auto par = parse_parity(load_pmd_file(dir + "/parity.pmd"));
    CHECK(par.front().classes == std::vector<std::string>{"15A", "15B"});
}

}
