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

#pragma once

// Synthetic graph generators shared by the test and acceptance suites.

#include <set>
#include <vector>

#include "ikqe/graph.hpp"
#include "ikqe/rng.hpp"

namespace ikqe::testing {

// Uniform random multigraph with `num_edges` distinct triples, no self loops.
inline KnowledgeGraph random_graph(std::size_t num_entities, std::size_t num_relations,
                                   std::size_t num_edges, std::uint64_t seed) {
    Rng rng(seed);
    std::set<Triple> triples;
    std::size_t guard = 0;
    while (triples.size() < num_edges && guard < num_edges * 50 + 1000) {
        ++guard;
        auto h = static_cast<EntityId>(rng.next_below(num_entities));
        auto t = static_cast<EntityId>(rng.next_below(num_entities));
        auto r = static_cast<RelationId>(rng.next_below(num_relations));
        if (h == t) continue;
        triples.insert({h, r, t});
    }
    return KnowledgeGraph(num_entities, num_relations,
                          std::vector<Triple>(triples.begin(), triples.end()));
}

// Block-typed graph: entities carry a latent type; each relation links one
// source type to one destination type with the given density. Link structure
// is then strongly predictable from incident relation types, which is the
// regime where token-based entity encodings work well.
struct TypedGraphSpec {
    std::size_t num_types = 6;
    std::size_t entities_per_type = 50;
    std::size_t num_relations = 8;
    double density = 0.25;
    std::uint64_t seed = 7;
};

inline KnowledgeGraph typed_graph(const TypedGraphSpec& spec) {
    Rng rng(spec.seed);
    const std::size_t n = spec.num_types * spec.entities_per_type;
    std::vector<std::pair<std::size_t, std::size_t>> relation_types;
    for (std::size_t r = 0; r < spec.num_relations; ++r) {
        std::size_t src = rng.next_below(spec.num_types);
        std::size_t dst = rng.next_below(spec.num_types);
        if (spec.num_types > 1) {
            while (dst == src) dst = rng.next_below(spec.num_types);
        }
        relation_types.emplace_back(src, dst);
    }
    std::set<Triple> triples;
    for (std::size_t r = 0; r < spec.num_relations; ++r) {
        auto [src_type, dst_type] = relation_types[r];
        for (std::size_t i = 0; i < spec.entities_per_type; ++i) {
            for (std::size_t j = 0; j < spec.entities_per_type; ++j) {
                if (!rng.next_coin(spec.density)) continue;
                auto h = static_cast<EntityId>(src_type * spec.entities_per_type + i);
                auto t = static_cast<EntityId>(dst_type * spec.entities_per_type + j);
                triples.insert({h, static_cast<RelationId>(r), t});
            }
        }
    }
    return KnowledgeGraph(n, spec.num_relations,
                          std::vector<Triple>(triples.begin(), triples.end()));
}

}  // namespace ikqe::testing
