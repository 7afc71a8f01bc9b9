// Copyright 2026 the ikqe authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ikqe/graph.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support/synth.hpp"

using namespace ikqe;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

std::vector<EntityId> to_vec(std::span<const EntityId> s) {
    return {s.begin(), s.end()};
}

TEST(LoadGraph, ReadsTriplesAndInfersCounts) {
    auto path = write_temp("ikqe_load_basic.tsv", "0\t0\t1\n1\t0\t2\n");
    KnowledgeGraph g = load_graph(path.string());
    EXPECT_EQ(g.num_entities(), 3u);
    EXPECT_EQ(g.num_relations(), 1u);
    EXPECT_EQ(g.num_triples(), 2u);
    EXPECT_TRUE(g.has_edge(0, 0, 1));
    EXPECT_TRUE(g.has_edge(1, 0, 2));
    std::filesystem::remove(path);
}

TEST(LoadGraph, EmptyFileWithExplicitCounts) {
    auto path = write_temp("ikqe_load_empty.tsv", "");
    KnowledgeGraph g = load_graph(path.string(), 5, 2);
    EXPECT_EQ(g.num_entities(), 5u);
    EXPECT_EQ(g.num_relations(), 2u);
    EXPECT_EQ(g.num_triples(), 0u);
    std::filesystem::remove(path);
}

TEST(LoadGraph, MalformedLineReportsLineNumber) {
    auto path = write_temp("ikqe_load_bad.tsv", "0\t0\t1\nnot a triple\n");
    try {
        load_graph(path.string());
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::filesystem::remove(path);
}

TEST(LoadGraph, IdBeyondSuppliedCountRejected) {
    auto path = write_temp("ikqe_load_range.tsv", "0\t0\t9\n");
    EXPECT_THROW(load_graph(path.string(), 5, 1), Error);
    std::filesystem::remove(path);
}

TEST(LoadGraph, DuplicateTripleRejectedWithCount) {
    auto path = write_temp("ikqe_load_dup.tsv", "0\t0\t1\n0\t0\t1\n");
    try {
        load_graph(path.string());
        FAIL() << "expected Error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("1 duplicate"), std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST(AddInverseRelations, SingleTriple) {
    KnowledgeGraph g(2, 1, {{0, 0, 1}});
    KnowledgeGraph gi = add_inverse_relations(g);
    EXPECT_EQ(gi.num_relations(), 2u);
    EXPECT_EQ(gi.num_triples(), 2u);
    EXPECT_TRUE(gi.has_edge(0, 0, 1));
    EXPECT_TRUE(gi.has_edge(1, 1, 0));
}

TEST(AddInverseRelations, EmptyGraphDoublesRelationCount) {
    KnowledgeGraph g(4, 3, {});
    KnowledgeGraph gi = add_inverse_relations(g);
    EXPECT_EQ(gi.num_relations(), 6u);
    EXPECT_EQ(gi.num_triples(), 0u);
}

TEST(AddInverseRelations, SecondApplicationRejected) {
    KnowledgeGraph g(2, 1, {{0, 0, 1}});
    KnowledgeGraph gi = add_inverse_relations(g);
    EXPECT_THROW(add_inverse_relations(gi), Error);
}

TEST(AddInverseRelations, InverseAdjacencyIsTransposedForward) {
    KnowledgeGraph g(3, 1, {{0, 0, 1}, {2, 0, 1}});
    KnowledgeGraph gi = add_inverse_relations(g);
    EXPECT_EQ(gi.num_triples(), 4u);
    for (EntityId e = 0; e < 3; ++e) {
        EXPECT_EQ(to_vec(gi.neighbors(e, 0, Direction::In)),
                  to_vec(gi.neighbors(e, 1, Direction::Out)));
        EXPECT_EQ(to_vec(gi.neighbors(e, 0, Direction::Out)),
                  to_vec(gi.neighbors(e, 1, Direction::In)));
    }
}

TEST(Neighbors, SortedListsAndTranspose) {
    KnowledgeGraph g(3, 1, {{0, 0, 2}, {0, 0, 1}});
    EXPECT_EQ(to_vec(g.neighbors(0, 0, Direction::Out)), (std::vector<EntityId>{1, 2}));
    EXPECT_TRUE(g.neighbors(1, 0, Direction::Out).empty());
    EXPECT_EQ(to_vec(g.neighbors(2, 0, Direction::In)), (std::vector<EntityId>{0}));
}

TEST(Neighbors, InvalidIdsThrow) {
    KnowledgeGraph g(3, 1, {{0, 0, 1}});
    EXPECT_THROW(g.neighbors(3, 0, Direction::Out), std::out_of_range);
    EXPECT_THROW(g.neighbors(0, 1, Direction::Out), std::out_of_range);
}

TEST(CsrInvariants, InEqualsTransposedOutOnRandomGraphs) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        KnowledgeGraph g = ikqe::testing::random_graph(60, 5, 400, seed);
        std::size_t out_total = 0, in_total = 0;
        for (RelationId r = 0; r < g.num_relations(); ++r) {
            for (EntityId e = 0; e < g.num_entities(); ++e) {
                auto out_adj = g.neighbors(e, r, Direction::Out);
                out_total += out_adj.size();
                in_total += g.neighbors(e, r, Direction::In).size();
                EXPECT_TRUE(std::is_sorted(out_adj.begin(), out_adj.end()));
                // Transpose check by full enumeration.
                for (EntityId t : out_adj) {
                    auto back = g.neighbors(t, r, Direction::In);
                    EXPECT_TRUE(std::binary_search(back.begin(), back.end(), e));
                }
            }
        }
        EXPECT_EQ(out_total, g.num_triples());
        EXPECT_EQ(in_total, g.num_triples());
    }
}

TEST(InduceSubgraph, TriangleKeepsOnlyInternalEdges) {
    KnowledgeGraph g(3, 1, {{0, 0, 1}, {1, 0, 2}, {2, 0, 0}});
    InducedSubgraph sub = induce_subgraph(g, {0, 1});
    EXPECT_EQ(sub.graph.num_entities(), 2u);
    EXPECT_EQ(sub.graph.num_triples(), 1u);
    EXPECT_TRUE(sub.graph.has_edge(sub.old_to_new[0], 0, sub.old_to_new[1]));
}

TEST(InduceSubgraph, KeepAllIsIdentity) {
    KnowledgeGraph g = ikqe::testing::random_graph(20, 3, 60, 11);
    std::vector<EntityId> all(g.num_entities());
    for (EntityId e = 0; e < g.num_entities(); ++e) all[e] = e;
    InducedSubgraph sub = induce_subgraph(g, all);
    EXPECT_EQ(sub.graph.num_triples(), g.num_triples());
    for (EntityId e = 0; e < g.num_entities(); ++e) {
        EXPECT_EQ(sub.old_to_new[e], e);
        EXPECT_EQ(sub.new_to_old[e], e);
    }
    EXPECT_EQ(sub.graph.triples(), g.triples());
}

TEST(InduceSubgraph, MatchesBruteForceFilter) {
    KnowledgeGraph g = ikqe::testing::random_graph(50, 4, 500, 23);
    Rng rng(5);
    std::vector<EntityId> keep;
    for (EntityId e = 0; e < 50; ++e)
        if (rng.next_coin(0.4)) keep.push_back(e);
    if (keep.empty()) keep.push_back(0);
    InducedSubgraph sub = induce_subgraph(g, keep);
    std::size_t expected = 0;
    std::vector<bool> in_keep(50, false);
    for (EntityId e : keep) in_keep[e] = true;
    for (const Triple& t : g.triples())
        if (in_keep[t.head] && in_keep[t.tail]) ++expected;
    EXPECT_EQ(sub.graph.num_triples(), expected);
}

TEST(InduceSubgraph, EmptyKeepRejected) {
    KnowledgeGraph g(3, 1, {{0, 0, 1}});
    EXPECT_THROW(induce_subgraph(g, {}), Error);
}

TEST(RelationEntityIndex, ReachableMatchesInAdjacency) {
    KnowledgeGraph g = ikqe::testing::random_graph(40, 4, 200, 3);
    RelationEntityIndex index(g);
    for (RelationId r = 0; r < g.num_relations(); ++r)
        for (EntityId e = 0; e < g.num_entities(); ++e)
            EXPECT_EQ(index.reachable(r, e), !g.neighbors(e, r, Direction::In).empty());
}

}  // namespace
