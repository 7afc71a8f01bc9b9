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

// Fuzzy sets over entities and the differentiation-free query executor.
// Product logic:  C(x,y) = x*y,  D(x,y) = x + y - x*y,  N(x) = 1 - x.
// Goedel logic:   C = min, D = max; negation reuses N(x) = 1 - x.
// With binary membership vectors and the traversal projector, execute()
// computes exactly the classical answer set of every pattern.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ikqe/common.hpp"
#include "ikqe/graph.hpp"
#include "ikqe/query.hpp"
#include "ikqe/rng.hpp"

namespace ikqe {

struct FuzzySet {
    std::vector<double> values;  // one membership in [0,1] per entity

    FuzzySet() = default;
    explicit FuzzySet(std::size_t num_entities, double fill = 0.0)
        : values(num_entities, fill) {}

    static FuzzySet one_hot(std::size_t num_entities, EntityId e) {
        FuzzySet s(num_entities);
        if (e >= num_entities) throw std::out_of_range("one_hot entity out of range");
        s.values[e] = 1.0;
        return s;
    }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    // Entities with strictly positive membership, ascending.
    std::vector<EntityId> support() const {
        std::vector<EntityId> s;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] > 0.0) s.push_back(static_cast<EntityId>(i));
        return s;
    }

    void check_valid() const {
        for (double v : values)
            if (!(v >= 0.0 && v <= 1.0))
                throw Error("fuzzy membership outside [0,1]: " + std::to_string(v));
    }
};

enum class Logic { Product, Goedel };

inline Logic logic_from_string(const std::string& s) {
    if (s == "product" || s == "prod") return Logic::Product;
    if (s == "goedel" || s == "godel" || s == "min") return Logic::Goedel;
    throw Error("unknown logic: '" + s + "'");
}

inline const char* to_string(Logic l) {
    return l == Logic::Product ? "product" : "goedel";
}

inline void check_same_length(const FuzzySet& x, const FuzzySet& y) {
    if (x.size() != y.size())
        throw Error("fuzzy set length mismatch: " + std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()));
}

inline FuzzySet t_norm(Logic logic, const FuzzySet& x, const FuzzySet& y) {
    check_same_length(x, y);
    FuzzySet out(x.size());
    if (logic == Logic::Product) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
    }
    return out;
}

inline FuzzySet t_conorm(Logic logic, const FuzzySet& x, const FuzzySet& y) {
    check_same_length(x, y);
    FuzzySet out(x.size());
    if (logic == Logic::Product) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i] - x[i] * y[i];
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], y[i]);
    }
    return out;
}

inline FuzzySet negate(const FuzzySet& x) {
    FuzzySet out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = 1.0 - x[i];
    return out;
}

// Relation projection plug-in point. Implementations must return a valid
// fuzzy set of the same length.
class Projector {
public:
    virtual ~Projector() = default;
    virtual FuzzySet project(const KnowledgeGraph& g, const FuzzySet& input,
                             RelationId relation) const = 0;
};

// Exact traversal: out[t] = max over edges (h, r, t) of input[h]. The max
// aggregation keeps binary inputs binary, so this is the set-image oracle.
class TraversalProjector : public Projector {
public:
    FuzzySet project(const KnowledgeGraph& g, const FuzzySet& input,
                     RelationId relation) const override {
        if (relation >= g.num_relations())
            throw std::out_of_range("projection relation out of range");
        FuzzySet out(g.num_entities());
        for (EntityId t = 0; t < g.num_entities(); ++t) {
            double best = 0.0;
            for (EntityId h : g.neighbors(t, relation, Direction::In))
                best = std::max(best, input[h]);
            out[t] = best;
        }
        return out;
    }
};

// Appendix-style last-hop lookup: ignores the input mass and returns the
// relation's reachable-tail indicator row.
class RelationLookupProjector : public Projector {
public:
    explicit RelationLookupProjector(const RelationEntityIndex& index) : index_(index) {}

    FuzzySet project(const KnowledgeGraph& g, const FuzzySet&,
                     RelationId relation) const override {
        FuzzySet out(g.num_entities());
        for (EntityId t = 0; t < g.num_entities(); ++t)
            out[t] = index_.reachable(relation, t) ? 1.0 : 0.0;
        return out;
    }

private:
    const RelationEntityIndex& index_;
};

// Runs the DAG: anchors start one-hot, ops apply in topological order, the
// target's fuzzy set is returned.
inline FuzzySet execute(const QueryDag& dag, const KnowledgeGraph& g,
                        const Projector& projector, Logic logic) {
    const std::size_t n = g.num_entities();
    std::vector<FuzzySet> values(dag.nodes.size());
    for (std::size_t i = 0; i < dag.nodes.size(); ++i)
        if (dag.nodes[i].kind == NodeKind::Anchor) {
            if (dag.nodes[i].anchor >= n) throw std::out_of_range("query anchor out of range");
            values[i] = FuzzySet::one_hot(n, dag.nodes[i].anchor);
        }
    for (const QueryOp& op : dag.ops) {
        switch (op.kind) {
            case OpKind::Projection:
                values[op.output] = projector.project(g, values[op.inputs[0]], op.relation);
                break;
            case OpKind::Negation:
                values[op.output] = negate(values[op.inputs[0]]);
                break;
            case OpKind::Intersection: {
                FuzzySet acc = values[op.inputs[0]];
                for (std::size_t i = 1; i < op.inputs.size(); ++i)
                    acc = t_norm(logic, acc, values[op.inputs[i]]);
                values[op.output] = std::move(acc);
                break;
            }
            case OpKind::Union: {
                FuzzySet acc = values[op.inputs[0]];
                for (std::size_t i = 1; i < op.inputs.size(); ++i)
                    acc = t_conorm(logic, acc, values[op.inputs[i]]);
                values[op.output] = std::move(acc);
                break;
            }
        }
        values[op.output].check_valid();
    }
    return std::move(values[dag.target]);
}

// Exact answer set of a query on a graph (binary traversal execution).
inline std::vector<EntityId> traversal_answers(const QueryDag& dag, const KnowledgeGraph& g) {
    return execute(dag, g, TraversalProjector(), Logic::Product).support();
}

struct HeuristicResult {
    FuzzySet class_mask;              // 1.0 for entities consistent with the last hops
    std::vector<EntityId> ranking;    // class-1 entities shuffled, then class-0 shuffled
    FuzzySet ranked_scores;           // (|E| - position) / |E|, encodes the ranking
};

// Edge-type heuristic: execute() with the relation-lookup projector, then a
// two-class ranking with a random shuffle inside each class.
inline HeuristicResult heuristic_scores(const QueryDag& dag, const KnowledgeGraph& g,
                                        const RelationEntityIndex& index,
                                        std::uint64_t seed) {
    HeuristicResult result;
    result.class_mask = execute(dag, g, RelationLookupProjector(index), Logic::Product);
    std::vector<EntityId> positives, negatives;
    for (EntityId e = 0; e < g.num_entities(); ++e)
        (result.class_mask[e] > 0.5 ? positives : negatives).push_back(e);
    Rng rng(seed);
    rng.shuffle(positives);
    rng.shuffle(negatives);
    result.ranking = std::move(positives);
    result.ranking.insert(result.ranking.end(), negatives.begin(), negatives.end());
    result.ranked_scores = FuzzySet(g.num_entities());
    const double n = static_cast<double>(g.num_entities());
    for (std::size_t pos = 0; pos < result.ranking.size(); ++pos)
        result.ranked_scores[result.ranking[pos]] = (n - static_cast<double>(pos)) / n;
    return result;
}

}  // namespace ikqe
