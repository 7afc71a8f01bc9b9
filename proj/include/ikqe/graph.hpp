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

// Relation-typed multigraph with per-relation CSR adjacency in both
// directions. Immutable after construction; safe to share across readers.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "ikqe/common.hpp"

namespace ikqe {

enum class Direction { Out, In };

class KnowledgeGraph {
public:
    KnowledgeGraph() = default;

    // Triples are sorted, checked for duplicates and id range, then indexed.
    KnowledgeGraph(std::size_t num_entities, std::size_t num_relations,
                   std::vector<Triple> triples, bool has_inverse_relations = false)
        : num_entities_(num_entities),
          num_relations_(num_relations),
          triples_(std::move(triples)),
          has_inverse_relations_(has_inverse_relations) {
        std::sort(triples_.begin(), triples_.end());
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            const Triple& t = triples_[i];
            if (t.head >= num_entities_ || t.tail >= num_entities_)
                throw Error("entity id out of range: (" + format(t) + ") with " +
                            std::to_string(num_entities_) + " entities");
            if (t.relation >= num_relations_)
                throw Error("relation id out of range: (" + format(t) + ") with " +
                            std::to_string(num_relations_) + " relations");
            if (i > 0 && triples_[i - 1] == t) ++duplicates_;
        }
        if (duplicates_ > 0)
            throw Error("duplicate triples rejected: " + std::to_string(duplicates_) +
                        " duplicate(s) in input");
        build_csr();
    }

    std::size_t num_entities() const { return num_entities_; }
    std::size_t num_relations() const { return num_relations_; }
    std::size_t num_triples() const { return triples_.size(); }
    const std::vector<Triple>& triples() const { return triples_; }
    bool has_inverse_relations() const { return has_inverse_relations_; }

    // Sorted, duplicate-free adjacency list of `source` under `relation`.
    std::span<const EntityId> neighbors(EntityId source, RelationId relation,
                                        Direction dir) const {
        if (source >= num_entities_) throw std::out_of_range("entity id out of range");
        if (relation >= num_relations_) throw std::out_of_range("relation id out of range");
        const Csr& csr = dir == Direction::Out ? out_[relation] : in_[relation];
        return {csr.neighbors.data() + csr.offsets[source],
                csr.neighbors.data() + csr.offsets[source + 1]};
    }

    bool has_edge(EntityId head, RelationId relation, EntityId tail) const {
        auto adj = neighbors(head, relation, Direction::Out);
        return std::binary_search(adj.begin(), adj.end(), tail);
    }

    std::size_t degree(EntityId e, RelationId r, Direction dir) const {
        return neighbors(e, r, dir).size();
    }

private:
    struct Csr {
        std::vector<std::uint64_t> offsets;  // num_entities + 1
        std::vector<EntityId> neighbors;
    };

    static std::string format(const Triple& t) {
        return std::to_string(t.head) + "," + std::to_string(t.relation) + "," +
               std::to_string(t.tail);
    }

    void build_csr() {
        out_.assign(num_relations_, Csr{});
        in_.assign(num_relations_, Csr{});
        // Out lists fill in sorted order straight from the (h, r, t)-sorted
        // triples; in lists from a (t, r, h)-sorted copy. Both end up sorted
        // and duplicate-free.
        fill_direction(out_, triples_, /*out=*/true);
        std::vector<Triple> by_tail = triples_;
        std::sort(by_tail.begin(), by_tail.end(), [](const Triple& a, const Triple& b) {
            if (a.tail != b.tail) return a.tail < b.tail;
            if (a.relation != b.relation) return a.relation < b.relation;
            return a.head < b.head;
        });
        fill_direction(in_, by_tail, /*out=*/false);
    }

    void fill_direction(std::vector<Csr>& side, const std::vector<Triple>& triples, bool out) {
        std::vector<std::uint64_t> counts(num_relations_ * num_entities_, 0);
        for (const Triple& t : triples)
            ++counts[std::size_t{t.relation} * num_entities_ + (out ? t.head : t.tail)];
        for (RelationId r = 0; r < num_relations_; ++r) {
            Csr& csr = side[r];
            csr.offsets.assign(num_entities_ + 1, 0);
            for (std::size_t e = 0; e < num_entities_; ++e)
                csr.offsets[e + 1] =
                    csr.offsets[e] + counts[std::size_t{r} * num_entities_ + e];
            csr.neighbors.assign(csr.offsets[num_entities_], 0);
        }
        std::vector<std::uint64_t> cursor(num_relations_ * num_entities_, 0);
        for (const Triple& t : triples) {
            EntityId key = out ? t.head : t.tail;
            Csr& csr = side[t.relation];
            csr.neighbors[csr.offsets[key] + cursor[std::size_t{t.relation} * num_entities_ + key]++] =
                out ? t.tail : t.head;
        }
    }

    std::size_t num_entities_ = 0;
    std::size_t num_relations_ = 0;
    std::vector<Triple> triples_;
    std::vector<Csr> out_, in_;
    std::size_t duplicates_ = 0;
    bool has_inverse_relations_ = false;
};

// Reads `head<TAB>relation<TAB>tail` lines (any run of blanks accepted as the
// separator). Counts default to max id + 1.
inline KnowledgeGraph load_graph(const std::string& path,
                                 std::optional<std::size_t> entity_count = std::nullopt,
                                 std::optional<std::size_t> relation_count = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    std::vector<Triple> triples;
    std::string line;
    std::size_t line_no = 0;
    std::uint64_t max_entity = 0, max_relation = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::int64_t h, r, t;
        if (!(ss >> h >> r >> t) || h < 0 || r < 0 || t < 0)
            throw ParseError("malformed triple line: '" + line + "'", line_no);
        std::string rest;
        if (ss >> rest) throw ParseError("trailing tokens after triple: '" + line + "'", line_no);
        triples.push_back({static_cast<EntityId>(h), static_cast<RelationId>(r),
                           static_cast<EntityId>(t)});
        max_entity = std::max<std::uint64_t>(max_entity, std::max(h, t));
        max_relation = std::max<std::uint64_t>(max_relation, r);
        any = true;
    }
    std::size_t ne = entity_count.value_or(any ? max_entity + 1 : 0);
    std::size_t nr = relation_count.value_or(any ? max_relation + 1 : 0);
    return KnowledgeGraph(ne, nr, std::move(triples));
}

inline void save_graph(const KnowledgeGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write graph file: " + path);
    for (const Triple& t : g.triples())
        out << t.head << '\t' << t.relation << '\t' << t.tail << '\n';
}

// Adds (t, r + |R|, h) for every (h, r, t). Rejects a second application.
inline KnowledgeGraph add_inverse_relations(const KnowledgeGraph& g) {
    if (g.has_inverse_relations())
        throw Error("inverse relations already materialized");
    std::vector<Triple> triples = g.triples();
    const auto base = static_cast<RelationId>(g.num_relations());
    triples.reserve(triples.size() * 2);
    for (std::size_t i = 0, n = triples.size(); i < n; ++i) {
        const Triple& t = triples[i];
        triples.push_back({t.tail, static_cast<RelationId>(t.relation + base), t.head});
    }
    return KnowledgeGraph(g.num_entities(), g.num_relations() * 2, std::move(triples),
                          /*has_inverse_relations=*/true);
}

struct InducedSubgraph {
    KnowledgeGraph graph;
    std::vector<EntityId> old_to_new;  // npos() where dropped
    std::vector<EntityId> new_to_old;

    static constexpr EntityId npos() { return static_cast<EntityId>(-1); }
};

// Keeps exactly the triples with both endpoints in `keep` and re-indexes the
// kept entities densely in ascending old-id order.
inline InducedSubgraph induce_subgraph(const KnowledgeGraph& g,
                                       const std::vector<EntityId>& keep) {
    if (keep.empty()) throw Error("induce_subgraph: empty keep set");
    InducedSubgraph result;
    result.old_to_new.assign(g.num_entities(), InducedSubgraph::npos());
    std::vector<EntityId> sorted_keep = keep;
    std::sort(sorted_keep.begin(), sorted_keep.end());
    sorted_keep.erase(std::unique(sorted_keep.begin(), sorted_keep.end()), sorted_keep.end());
    for (EntityId e : sorted_keep) {
        if (e >= g.num_entities()) throw std::out_of_range("keep entity out of range");
        result.old_to_new[e] = static_cast<EntityId>(result.new_to_old.size());
        result.new_to_old.push_back(e);
    }
    std::vector<Triple> triples;
    for (const Triple& t : g.triples()) {
        EntityId h = result.old_to_new[t.head], ta = result.old_to_new[t.tail];
        if (h != InducedSubgraph::npos() && ta != InducedSubgraph::npos())
            triples.push_back({h, t.relation, ta});
    }
    result.graph = KnowledgeGraph(result.new_to_old.size(), g.num_relations(),
                                  std::move(triples), g.has_inverse_relations());
    return result;
}

// Per-relation tail reachability: reachable(r, t) iff some (h, r, t) exists.
class RelationEntityIndex {
public:
    explicit RelationEntityIndex(const KnowledgeGraph& g)
        : num_entities_(g.num_entities()),
          reachable_(g.num_relations() * g.num_entities(), 0) {
        for (const Triple& t : g.triples())
            reachable_[std::size_t{t.relation} * num_entities_ + t.tail] = 1;
    }

    bool reachable(RelationId r, EntityId t) const {
        return reachable_[std::size_t{r} * num_entities_ + t] != 0;
    }

    std::size_t num_entities() const { return num_entities_; }

private:
    std::size_t num_entities_;
    std::vector<std::uint8_t> reachable_;
};

}  // namespace ikqe
