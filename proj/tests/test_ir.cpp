#include <doctest.h>

#include "streval/ir.hpp"
#include "streval/parse.hpp"
#include "streval/rng.hpp"
#include "support/random_docs.hpp"

using namespace streval;

namespace {

TreeNode user_alice_tree() {
    // {"user": ["Alice"]} -> ROOT -> DICT(user) -> LIST -> VALUE(Alice, 0)
    return TreeNode::root({TreeNode::dict(
        "user", {TreeNode::list({TreeNode::value(Scalar::from_text("Alice"))})})});
}

} // namespace

TEST_CASE("node_count matches the four-level walkthrough") {
    CHECK(node_count(user_alice_tree()) == 4);
    CHECK(node_count(TreeNode::root()) == 1);
    // [1, 2] -> ROOT -> LIST -> VALUE, VALUE
    TreeNode pair = TreeNode::root({TreeNode::list(
        {TreeNode::value(Scalar::integer(1)), TreeNode::value(Scalar::integer(2))})});
    CHECK(node_count(pair) == 4);
}

TEST_CASE("node_count is one plus the sum over children") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        TreeNode t = testing::random_small_tree(rng, 12);
        std::size_t total = 1;
        for (const auto& c : t.children())
            total += node_count(c);
        CHECK(node_count(t) == total);
    }
}

TEST_CASE("tree invariants hold for generated trees") {
    SplitMix64 rng(12);
    for (int i = 0; i < 500; ++i) {
        TreeNode t = testing::random_small_tree(rng, 10);
        CHECK_FALSE(validate_tree(t).has_value());
    }
}

TEST_CASE("validate_tree rejects malformed nodes") {
    TreeNode bad_value = TreeNode::value(Scalar::integer(1));
    CHECK(validate_tree(bad_value).has_value()); // VALUE root is not ROOT

    TreeNode root = TreeNode::root({TreeNode::value(Scalar::integer(1))});
    root.mutable_children().front().set_key("stray");
    // VALUE with a key is fine per the schema (key unused), but an index
    // outside a list is not; fabricate one via list then re-root.
    TreeNode list = TreeNode::list({TreeNode::value(Scalar::integer(1))});
    TreeNode stolen = list.children().front(); // carries index 0
    TreeNode wrong = TreeNode::root({});
    wrong.mutable_children().push_back(stolen);
    CHECK(validate_tree(wrong).has_value());
}

TEST_CASE("canonicalize sorts dictionary entries and keeps list order") {
    TreeNode ba = TreeNode::root({
        TreeNode::dict("b", {TreeNode::value(Scalar::integer(1))}),
        TreeNode::dict("a", {TreeNode::value(Scalar::integer(2))}),
    });
    TreeNode ab = TreeNode::root({
        TreeNode::dict("a", {TreeNode::value(Scalar::integer(2))}),
        TreeNode::dict("b", {TreeNode::value(Scalar::integer(1))}),
    });
    CHECK(canonicalize(ba) == canonicalize(ab));

    TreeNode list = TreeNode::root({TreeNode::list(
        {TreeNode::value(Scalar::from_text("b")), TreeNode::value(Scalar::from_text("a"))})});
    CHECK(canonicalize(list) == list);
}

TEST_CASE("canonicalize is idempotent and preserves node count") {
    SplitMix64 rng(13);
    for (int i = 0; i < 300; ++i) {
        TreeNode t = testing::random_small_tree(rng, 10);
        TreeNode once = canonicalize(t);
        CHECK(node_count(once) == node_count(t));
        CHECK(canonicalize(once) == once);
        CHECK_FALSE(validate_tree(once).has_value());
    }
}

TEST_CASE("embed_table node count follows 2 + n + 1 + m + m*n") {
    TableIR t;
    t.headers = {"Name", "Age"};
    t.rows = {{Scalar::from_text("Bob"), Scalar::integer(30)}};
    CHECK(node_count(embed_table(t)) == 8);

    TableIR empty;
    CHECK(node_count(embed_table(empty)) == 3);

    TableIR copy = t;
    CHECK(embed_table(copy) == embed_table(t));
}

TEST_CASE("embed_table is injective on distinct tables") {
    SplitMix64 rng(14);
    std::vector<TableIR> tables;
    for (int i = 0; i < 60; ++i)
        tables.push_back(testing::random_small_table(rng));
    // Tables that differ only in header spelling must embed differently.
    TableIR a;
    a.headers = {"30"};
    TableIR b;
    b.headers = {"030"};
    tables.push_back(a);
    tables.push_back(b);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        for (std::size_t j = i + 1; j < tables.size(); ++j) {
            if (tables[i] == tables[j])
                continue;
            CHECK_FALSE(ir_equal(IRDoc(embed_table(tables[i])),
                                 IRDoc(embed_table(tables[j]))));
        }
    }
}

TEST_CASE("ir_equal: canonicalization, bottom, and determinism") {
    auto p1 = parse(Format::JsonTree, R"({"a":1,"b":2})");
    auto p2 = parse(Format::JsonTree, R"({"b":2,"a":1})");
    CHECK(ir_equal(p1.result, p2.result));

    auto q1 = parse(Format::JsonTree, R"({"user": ["Alice"]})");
    auto q2 = parse(Format::JsonTree, R"({"user": ["Alice"]})");
    CHECK(ir_equal(q1.result, q2.result));

    CHECK_FALSE(ir_equal(q1.result, IRDoc::bottom()));
    CHECK(ir_equal(IRDoc::bottom("x"), IRDoc::bottom("y")));
}

TEST_CASE("debug dump golden") {
    const std::string expected = "tree\n"
                                 "0 ROOT\n"
                                 "1 DICT key=user\n"
                                 "2 LIST\n"
                                 "3 VALUE index=0 value=text:Alice\n";
    CHECK(debug_dump(IRDoc(user_alice_tree())) == expected);

    TableIR t;
    t.headers = {"Name", "Age"};
    t.rows = {{Scalar::from_text("Bob"), Scalar::integer(30)}};
    const std::string table_expected = "table cols=2 rows=1\n"
                                       "header 0 Name\n"
                                       "header 1 Age\n"
                                       "cell 0 0 text:Bob\n"
                                       "cell 0 1 int:30\n";
    CHECK(debug_dump(IRDoc(t)) == table_expected);
    CHECK(debug_dump(IRDoc::bottom("unbalanced")) == "bottom unbalanced\n");
}
