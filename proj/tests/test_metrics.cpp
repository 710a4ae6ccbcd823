#include <doctest.h>

#include "streval/metrics.hpp"
#include "streval/parse.hpp"
#include "streval/rng.hpp"
#include "support/oracle_ted.hpp"
#include "support/random_docs.hpp"

using namespace streval;

namespace {

TreeNode json_tree(const char* text) {
    auto outcome = parse(Format::JsonTree, text);
    REQUIRE(outcome.ok());
    return canonicalize(outcome.result.tree());
}

} // namespace

TEST_CASE("ted on the worked examples agrees with the enumeration oracle") {
    TreeNode alice = json_tree(R"({"user":["Alice"]})");
    TreeNode bob = json_tree(R"({"user":["Bob"]})");
    TreeNode bare = TreeNode::root();

    // Oracle values computed first, then frozen.
    CHECK(testing::oracle_ted(alice, bob) == 1);
    CHECK(testing::oracle_ted(alice, bare) == 3);

    CHECK(ted(alice, alice) == 0);
    CHECK(ted(alice, bob) == 1);
    CHECK(ted(alice, bare) == 3);
    CHECK(ted(bare, alice) == 3);
}

TEST_CASE("ted equals the enumeration oracle on random small trees") {
    SplitMix64 rng(101);
    for (int i = 0; i < 400; ++i) {
        TreeNode a = canonicalize(testing::random_small_tree(rng, 8));
        TreeNode b = canonicalize(testing::random_small_tree(rng, 8));
        const std::size_t expected = testing::oracle_ted(a, b);
        CHECK(ted(a, b) == expected);
        CHECK(ted(b, a) == expected);
    }
}

TEST_CASE("ted equals the enumeration oracle on larger trees too") {
    SplitMix64 rng(107);
    for (int i = 0; i < 60; ++i) {
        TreeNode a = canonicalize(testing::random_small_tree(rng, 10));
        TreeNode b = canonicalize(testing::random_small_tree(rng, 10));
        CHECK(ted(a, b) == testing::oracle_ted(a, b));
    }
}

TEST_CASE("ted satisfies the metric axioms on small trees") {
    SplitMix64 rng(102);
    for (int i = 0; i < 120; ++i) {
        TreeNode a = canonicalize(testing::random_small_tree(rng, 7));
        TreeNode b = canonicalize(testing::random_small_tree(rng, 7));
        TreeNode c = canonicalize(testing::random_small_tree(rng, 7));
        const std::size_t ab = ted(a, b);
        const std::size_t bc = ted(b, c);
        const std::size_t ac = ted(a, c);
        CHECK(ab == ted(b, a));
        CHECK(ac <= ab + bc);
        CHECK(ted(a, a) == 0);
        if (ab == 0)
            CHECK(a == b); // zero distance iff label-identical
    }
}

TEST_CASE("nted normalizes against the larger tree") {
    IRDoc alice = parse(Format::JsonTree, R"({"user":["Alice"]})").result;
    IRDoc bob = parse(Format::JsonTree, R"({"user":["Bob"]})").result;
    CHECK(nted(alice, alice) == 1.0);
    CHECK(nted(alice, bob) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(nted(alice, IRDoc::bottom()) == 0.0);
    CHECK(nted(IRDoc::bottom(), alice) == 0.0);

    TableIR t;
    t.headers = {"Name"};
    t.rows = {{Scalar::from_text("Bob")}};
    CHECK(nted(IRDoc(t), IRDoc(t)) == 1.0);
}

TEST_CASE("flatten on the worked examples") {
    IRDoc alice = parse(Format::JsonTree, R"({"user":["Alice"]})").result;
    TripleSet triples = flatten(alice);
    REQUIRE(triples.size() == 1);
    CHECK(triples.begin()->path == "root/user");
    CHECK(triples.begin()->key == "0");
    CHECK(triples.begin()->value == Scalar::from_text("Alice"));

    TableIR t;
    t.headers = {"Name", "Age"};
    t.rows = {{Scalar::from_text("Bob"), Scalar::integer(30)}};
    TripleSet table_triples = flatten(IRDoc(t));
    CHECK(table_triples.size() == 4);
    CHECK(table_triples.count(SemanticTriple{"header", "Name", Scalar::raw_text("Name")}));
    CHECK(table_triples.count(SemanticTriple{"header", "Age", Scalar::raw_text("Age")}));
    CHECK(table_triples.count(SemanticTriple{"row/0", "Name", Scalar::from_text("Bob")}));
    CHECK(table_triples.count(SemanticTriple{"row/0", "Age", Scalar::integer(30)}));

    CHECK(flatten(IRDoc::bottom()).empty());
}

TEST_CASE("flatten records empty containers and nested paths") {
    IRDoc doc = parse(Format::JsonTree, R"({"a": {"x": 1}, "b": []})").result;
    TripleSet triples = flatten(doc);
    CHECK(triples.size() == 2);
    CHECK(triples.count(SemanticTriple{"root/a", "x", Scalar::integer(1)}));
    CHECK(triples.count(SemanticTriple{"root", "b", Scalar::empty_container()}));
}

TEST_CASE("csa on the worked examples") {
    IRDoc a = parse(Format::JsonTree, R"({"a":1,"b":2})").result;
    IRDoc b = parse(Format::JsonTree, R"({"a":1,"b":3})").result;
    CHECK(csa(a, a) == 1.0);
    CHECK(csa(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // Correct value at the wrong path scores zero.
    IRDoc p = parse(Format::JsonTree, R"({"a":{"x":1}})").result;
    IRDoc q = parse(Format::JsonTree, R"({"b":{"x":1}})").result;
    CHECK(csa(p, q) == 0.0);

    CHECK(csa(a, IRDoc::bottom()) == 0.0);
    CHECK(csa(IRDoc::bottom(), a) == 0.0);

    // Identity of emptiness.
    CHECK(csa(IRDoc(TreeNode::root()), IRDoc(TreeNode::root())) == 1.0);
}

TEST_CASE("csa and nted are symmetric and bounded") {
    SplitMix64 rng(103);
    for (int i = 0; i < 100; ++i) {
        IRDoc a{testing::random_small_tree(rng, 9)};
        IRDoc b{testing::random_small_tree(rng, 9)};
        const double c1 = csa(a, b);
        const double n1 = nted(a, b);
        CHECK(c1 == csa(b, a));
        CHECK(n1 == nted(b, a));
        CHECK(c1 >= 0.0);
        CHECK(c1 <= 1.0);
        CHECK(n1 >= 0.0);
        CHECK(n1 <= 1.0);
        CHECK(nted(a, a) == 1.0);
        CHECK(csa(a, a) == 1.0);
    }
}

TEST_CASE("key permutation changes neither csa nor nted") {
    SplitMix64 rng(104);
    for (int i = 0; i < 100; ++i) {
        TreeNode t = testing::random_object_tree(rng, 3, 6);
        TreeNode shuffled = t;
        auto& kids = shuffled.mutable_children();
        for (std::size_t k = kids.size(); k > 1; --k)
            std::swap(kids[k - 1], kids[rng.below(k)]);
        IRDoc a{t};
        IRDoc b{shuffled};
        CHECK(csa(a, b) == 1.0);
        CHECK(nted(a, b) == 1.0);
    }
}

TEST_CASE("csa strictly penalizes hallucinated and omitted leaves") {
    SplitMix64 rng(105);
    for (int i = 0; i < 100; ++i) {
        TreeNode t = testing::random_object_tree(rng, 2, 6);
        IRDoc orig{t};

        TreeNode with_extra = t;
        with_extra.mutable_children().push_back(
            TreeNode::dict("hallucinated_field", {TreeNode::value(Scalar::integer(999))}));
        CHECK(csa(orig, IRDoc{with_extra}) < 1.0);

        TreeNode with_missing = t;
        auto& kids = with_missing.mutable_children();
        kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(rng.below(kids.size())));
        CHECK(csa(orig, IRDoc{with_missing}) < 1.0);
    }
}

TEST_CASE("table csa ignores column order but not row order") {
    TableIR t;
    t.headers = {"A", "B"};
    t.rows = {{Scalar::integer(1), Scalar::integer(2)},
              {Scalar::integer(3), Scalar::integer(4)}};

    TableIR swapped_cols;
    swapped_cols.headers = {"B", "A"};
    swapped_cols.rows = {{Scalar::integer(2), Scalar::integer(1)},
                         {Scalar::integer(4), Scalar::integer(3)}};
    CHECK(csa(IRDoc(t), IRDoc(swapped_cols)) == 1.0);

    TableIR swapped_rows = t;
    std::swap(swapped_rows.rows[0], swapped_rows.rows[1]);
    CHECK(csa(IRDoc(t), IRDoc(swapped_rows)) < 1.0);
}
