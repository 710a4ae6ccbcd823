#include <stdexcept>

#include <doctest.h>

#include "streval/parse.hpp"

using namespace streval;

namespace {

TableIR name_age_table() {
    TableIR t;
    t.headers = {"Name", "Age"};
    t.rows = {{Scalar::from_text("Bob"), Scalar::integer(30)}};
    return t;
}

} // namespace

TEST_CASE("json tree: appendix walkthrough shape") {
    auto outcome = parse(Format::JsonTree, R"({"user": ["Alice"]})");
    REQUIRE(outcome.ok());
    const TreeNode& root = outcome.result.tree();
    REQUIRE(root.kind() == NodeKind::Root);
    REQUIRE(root.children().size() == 1);
    const TreeNode& user = root.children()[0];
    CHECK(user.kind() == NodeKind::Dict);
    CHECK(*user.key() == "user");
    REQUIRE(user.children().size() == 1);
    const TreeNode& list = user.children()[0];
    CHECK(list.kind() == NodeKind::List);
    REQUIRE(list.children().size() == 1);
    const TreeNode& leaf = list.children()[0];
    CHECK(leaf.kind() == NodeKind::Value);
    CHECK(*leaf.index() == 0);
    CHECK(*leaf.scalar() == Scalar::from_text("Alice"));
    CHECK(node_count(root) == 4);
}

TEST_CASE("json tree: malformed input yields bottom, not an exception") {
    auto outcome = parse(Format::JsonTree, R"({"user": ["Alice")");
    CHECK_FALSE(outcome.ok());
    CHECK_FALSE(outcome.diagnostics.empty());
    CHECK(parse(Format::JsonTree, "").ok() == false);
    CHECK(parse(Format::JsonTree, "{]").ok() == false);
}

TEST_CASE("parse rejects invalid utf8 with a hard error") {
    CHECK_THROWS_AS(parse(Format::JsonTree, "\xFF\xFE"), std::invalid_argument);
}

TEST_CASE("json tree: empty containers and scalar typing") {
    auto outcome = parse(Format::JsonTree, R"({"a": [], "b": {}, "c": "30", "d": 2.0})");
    REQUIRE(outcome.ok());
    const auto& kids = outcome.result.tree().children();
    REQUIRE(kids.size() == 4);
    CHECK(*kids[0].children()[0].scalar() == Scalar::empty_container());
    CHECK(*kids[1].children()[0].scalar() == Scalar::empty_container());
    CHECK(*kids[2].children()[0].scalar() == Scalar::integer(30));
    CHECK(*kids[3].children()[0].scalar() == Scalar::integer(2));
}

TEST_CASE("json tree: duplicate keys keep the last value") {
    auto outcome = parse(Format::JsonTree, R"({"a": 1, "a": 2})");
    REQUIRE(outcome.ok());
    REQUIRE(outcome.result.tree().children().size() == 1);
    CHECK(*outcome.result.tree().children()[0].children()[0].scalar() ==
          Scalar::integer(2));
}

TEST_CASE("markdown table: appendix example") {
    const char* text = "| Name | Age |\n| --- | --- |\n| Bob | 30 |\n";
    auto outcome = parse(Format::MarkdownTable, text);
    REQUIRE(outcome.ok());
    CHECK(outcome.result.table() == name_age_table());
}

TEST_CASE("markdown table: separator and shape errors are fatal") {
    CHECK_FALSE(parse(Format::MarkdownTable, "| a | b |\n| 1 | 2 |\n").ok());
    CHECK_FALSE(parse(Format::MarkdownTable, "| a | b |\n| --- | --- |\n| 1 |\n").ok());
    CHECK_FALSE(parse(Format::MarkdownTable, "plain prose\n").ok());
    CHECK_FALSE(parse(Format::MarkdownTable, "| a | a |\n| --- | --- |\n").ok());
}

TEST_CASE("markdown table: escaped pipes and alignment colons") {
    const char* text = "| col | note |\n| :-- | --: |\n| a\\|b | c\\\\d |\n";
    auto outcome = parse(Format::MarkdownTable, text);
    REQUIRE(outcome.ok());
    CHECK(outcome.result.table().rows[0][0] == Scalar::from_text("a|b"));
    CHECK(outcome.result.table().rows[0][1] == Scalar::from_text("c\\d"));
}

TEST_CASE("csv: dialect basics") {
    auto outcome = parse(Format::Csv, "Name,Age\nBob,30\n");
    REQUIRE(outcome.ok());
    CHECK(outcome.result.table() == name_age_table());

    // Quoted commas, escaped quotes, CRLF endings.
    auto quoted = parse(Format::Csv, "a,b\r\n\"x,y\",\"he said \"\"hi\"\"\"\r\n");
    REQUIRE(quoted.ok());
    CHECK(quoted.result.table().rows[0][0] == Scalar::from_text("x,y"));
    CHECK(quoted.result.table().rows[0][1] == Scalar::from_text("he said \"hi\""));
}

TEST_CASE("csv: ragged rows and stray quotes are fatal") {
    CHECK_FALSE(parse(Format::Csv, "a,b\n1\n").ok());
    CHECK_FALSE(parse(Format::Csv, "a,b\n1,2,3\n").ok());
    CHECK_FALSE(parse(Format::Csv, "a,b\n\"x,2\n").ok());
    CHECK_FALSE(parse(Format::Csv, "a,b\nx\"y,2\n").ok());
    CHECK_FALSE(parse(Format::Csv, "").ok());
}

TEST_CASE("html table: basic shape and entities") {
    const char* text =
        "<table><thead><tr><th>Name</th><th>Age</th></tr></thead>"
        "<tbody><tr><td>Bob</td><td>30</td></tr></tbody></table>";
    auto outcome = parse(Format::HtmlTable, text);
    REQUIRE(outcome.ok());
    CHECK(outcome.result.table() == name_age_table());

    auto entities = parse(Format::HtmlTable,
                          "<table><tr><th>k</th></tr>"
                          "<tr><td>a &amp; b &lt;c&gt; &#65;</td></tr></table>");
    REQUIRE(entities.ok());
    CHECK(entities.result.table().rows[0][0] == Scalar::from_text("a & b <c> A"));
}

TEST_CASE("html table: merged cells and nested markup are fatal") {
    CHECK_FALSE(parse(Format::HtmlTable,
                      "<table><tr><th colspan=\"2\">a</th></tr></table>")
                    .ok());
    CHECK_FALSE(parse(Format::HtmlTable,
                      "<table><tr><td rowspan='2'>a</td></tr></table>")
                    .ok());
    CHECK_FALSE(parse(Format::HtmlTable,
                      "<table><tr><td><b>a</b></td></tr></table>")
                    .ok());
    CHECK_FALSE(parse(Format::HtmlTable, "<div>no table</div>").ok());
}

TEST_CASE("html table: empty table keeps its empty header row") {
    TableIR empty;
    const std::string text = serialize(Format::HtmlTable, IRDoc(empty));
    auto outcome = parse(Format::HtmlTable, text);
    REQUIRE(outcome.ok());
    CHECK(ir_equal(outcome.result, IRDoc(empty)));
}

TEST_CASE("latex table: tabular environment with escapes") {
    const char* text =
        "\\begin{tabular}{ll}\n"
        "Name & Share \\\\\n"
        "\\hline\n"
        "A \\& B & 40\\% \\\\\n"
        "backslash\\textbackslash{}path & under\\_score \\\\\n"
        "\\end{tabular}\n";
    auto outcome = parse(Format::LatexTable, text);
    REQUIRE(outcome.ok());
    const TableIR& t = outcome.result.table();
    CHECK(t.headers == std::vector<std::string>{"Name", "Share"});
    CHECK(t.rows[0][0] == Scalar::from_text("A & B"));
    CHECK(t.rows[0][1] == Scalar::from_text("40%"));
    CHECK(t.rows[1][0] == Scalar::from_text("backslash\\path"));
    CHECK(t.rows[1][1] == Scalar::from_text("under_score"));
}

TEST_CASE("latex table: unsupported commands and shapes are fatal") {
    CHECK_FALSE(parse(Format::LatexTable, "no environment").ok());
    CHECK_FALSE(
        parse(Format::LatexTable, "\\begin{tabular}{l}\\textbf{x} \\\\\n\\end{tabular}").ok());
    CHECK_FALSE(parse(Format::LatexTable,
                      "\\begin{tabular}{l}\n\\begin{tabular}{l}\n\\end{tabular}\\end{tabular}")
                    .ok());
    CHECK_FALSE(parse(Format::LatexTable, "\\begin{tabular}{l}\na & b \\\\\nc \\\\\n\\end{tabular}").ok());
}

TEST_CASE("xml tree: elements, attributes, and lists") {
    auto outcome = parse(Format::XmlTree,
                         "<root>\n  <user>\n    <item>Alice</item>\n  </user>\n</root>\n");
    REQUIRE(outcome.ok());
    auto expected = parse(Format::JsonTree, R"({"user": ["Alice"]})");
    CHECK(ir_equal(outcome.result, expected.result));

    auto attrs = parse(Format::XmlTree, "<user id=\"7\">Bob</user>");
    REQUIRE(attrs.ok());
    auto expected_attrs =
        parse(Format::JsonTree, R"({"user": {"@id": 7, "#text": "Bob"}})");
    CHECK(ir_equal(attrs.result, expected_attrs.result));
}

TEST_CASE("xml tree: malformed markup yields bottom") {
    CHECK_FALSE(parse(Format::XmlTree, "<root><a>1</root>").ok());
    CHECK_FALSE(parse(Format::XmlTree, "<root>text <a>1</a></root>").ok());
    CHECK_FALSE(parse(Format::XmlTree, "not xml at all").ok());
    CHECK_FALSE(parse(Format::XmlTree, "<root").ok());
}

TEST_CASE("json list and xml list: record encoding") {
    auto from_json = parse(Format::JsonList,
                           R"([{"Name": "Bob", "Age": 30}, {"Name": "Eve"}])");
    REQUIRE(from_json.ok());
    const TableIR& t = from_json.result.table();
    CHECK(t.headers == std::vector<std::string>{"Name", "Age"});
    CHECK(t.rows[1][1].is_null()); // missing key becomes a null cell

    auto from_xml = parse(Format::XmlList,
                          "<records><record><Name>Bob</Name><Age>30</Age></record>"
                          "<record><Name>Eve</Name></record></records>");
    REQUIRE(from_xml.ok());
    CHECK(ir_equal(from_json.result, from_xml.result));
}

TEST_CASE("json list: non-record shapes are fatal") {
    CHECK_FALSE(parse(Format::JsonList, R"({"a": 1})").ok());
    CHECK_FALSE(parse(Format::JsonList, R"([1, 2])").ok());
    CHECK_FALSE(parse(Format::JsonList, R"([{"a": {"b": 1}}])").ok());
    CHECK(parse(Format::JsonList, "[]").ok()); // degenerate empty table
}

TEST_CASE("multibyte utf8 survives every format") {
    // cafe with accent, euro sign, CJK, emoji
    const std::string exotic = "caf\xC3\xA9 \xE2\x82\xAC \xE4\xB8\xAD \xF0\x9F\x98\x80";
    auto tree = parse(Format::JsonTree, "{\"note\": \"" + exotic + "\"}");
    REQUIRE(tree.ok());
    for (Format f : {Format::JsonTree, Format::XmlTree}) {
        auto reparsed = parse(f, serialize(f, tree.result));
        REQUIRE(reparsed.ok());
        CHECK(ir_equal(reparsed.result, tree.result));
    }

    TableIR t;
    t.headers = {"k"};
    t.rows = {{Scalar::from_text(exotic)}};
    for (Format f : {Format::Csv, Format::HtmlTable, Format::MarkdownTable,
                     Format::LatexTable, Format::JsonList, Format::XmlList}) {
        auto reparsed = parse(f, serialize(f, IRDoc(t)));
        REQUIRE(reparsed.ok());
        CHECK(ir_equal(reparsed.result, IRDoc(t)));
    }

    // json unicode escapes decode to the same scalar
    auto escaped = parse(Format::JsonTree, R"({"note": "caf\u00e9"})");
    auto literal = parse(Format::JsonTree, "{\"note\": \"caf\xC3\xA9\"}");
    REQUIRE(escaped.ok());
    CHECK(ir_equal(escaped.result, literal.result));
}

TEST_CASE("latex serialization of the worked table re-parses equal") {
    TableIR t = name_age_table();
    auto reparsed = parse(Format::LatexTable, serialize(Format::LatexTable, IRDoc(t)));
    REQUIRE(reparsed.ok());
    CHECK(reparsed.result.table() == t);
}

TEST_CASE("deep nesting hits the depth cap instead of the stack") {
    std::string deep(100000, '[');
    deep += std::string(100000, ']');
    auto outcome = parse(Format::JsonTree, deep);
    CHECK_FALSE(outcome.ok());

    std::string deep_xml;
    for (int i = 0; i < 5000; ++i)
        deep_xml += "<a>";
    for (int i = 0; i < 5000; ++i)
        deep_xml += "</a>";
    CHECK_FALSE(parse(Format::XmlTree, deep_xml).ok());
}

TEST_CASE("serialize: track mismatch and bottom are hard errors") {
    auto tree = parse(Format::JsonTree, R"({"a": 1})").result;
    CHECK_THROWS_AS(serialize(Format::Csv, tree), std::invalid_argument);
    CHECK_THROWS_AS(serialize(Format::JsonTree, IRDoc::bottom()), std::invalid_argument);
    TableIR t = name_age_table();
    CHECK_THROWS_AS(serialize(Format::XmlTree, IRDoc(t)), std::invalid_argument);
}

TEST_CASE("serialize: fixed json style with sorted keys") {
    auto doc = parse(Format::JsonTree, R"({"b": 2, "a": 1})");
    REQUIRE(doc.ok());
    CHECK(serialize(Format::JsonTree, doc.result) == "{\n  \"a\": 1,\n  \"b\": 2\n}");
}

TEST_CASE("serialize: fixed xml and csv styles") {
    auto doc = parse(Format::JsonTree, R"({"user": ["Alice"]})");
    REQUIRE(doc.ok());
    CHECK(serialize(Format::XmlTree, doc.result) ==
          "<root>\n  <user>\n    <item>Alice</item>\n  </user>\n</root>\n");

    TableIR t = name_age_table();
    CHECK(serialize(Format::Csv, IRDoc(t)) == "Name,Age\nBob,30\n");
    CHECK(serialize(Format::MarkdownTable, IRDoc(t)) ==
          "| Name | Age |\n| --- | --- |\n| Bob | 30 |\n");
}
