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

// The closed family of 14 query patterns, represented as rooted DAGs of
// anchors, projections and logic operators. Samplers, decoders and metrics
// are all keyed by the pattern, so arbitrary FOL DAGs are rejected unless
// they match one of the canonical templates.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ikqe/common.hpp"

namespace ikqe {

enum class QueryType : std::uint8_t {
    OneP, TwoP, ThreeP, TwoI, ThreeI, Ip, Pi, TwoU, Up,
    TwoIn, ThreeIn, Inp, Pin, Pni,
};

inline constexpr std::array<QueryType, 14> kAllQueryTypes = {
    QueryType::OneP, QueryType::TwoP, QueryType::ThreeP, QueryType::TwoI,
    QueryType::ThreeI, QueryType::Ip, QueryType::Pi, QueryType::TwoU,
    QueryType::Up, QueryType::TwoIn, QueryType::ThreeIn, QueryType::Inp,
    QueryType::Pin, QueryType::Pni,
};

// EPFO patterns (no negation), in report column order.
inline constexpr std::array<QueryType, 9> kEpfoQueryTypes = {
    QueryType::OneP, QueryType::TwoP, QueryType::ThreeP, QueryType::TwoI,
    QueryType::ThreeI, QueryType::Pi, QueryType::Ip, QueryType::TwoU, QueryType::Up,
};

inline constexpr std::array<QueryType, 5> kNegationQueryTypes = {
    QueryType::TwoIn, QueryType::ThreeIn, QueryType::Inp, QueryType::Pin, QueryType::Pni,
};

inline const char* to_string(QueryType t) {
    switch (t) {
        case QueryType::OneP: return "1p";
        case QueryType::TwoP: return "2p";
        case QueryType::ThreeP: return "3p";
        case QueryType::TwoI: return "2i";
        case QueryType::ThreeI: return "3i";
        case QueryType::Ip: return "ip";
        case QueryType::Pi: return "pi";
        case QueryType::TwoU: return "2u";
        case QueryType::Up: return "up";
        case QueryType::TwoIn: return "2in";
        case QueryType::ThreeIn: return "3in";
        case QueryType::Inp: return "inp";
        case QueryType::Pin: return "pin";
        case QueryType::Pni: return "pni";
    }
    return "?";
}

inline QueryType query_type_from_string(const std::string& s) {
    for (QueryType t : kAllQueryTypes)
        if (s == to_string(t)) return t;
    throw Error("unknown query type: '" + s + "'");
}

inline bool is_epfo(QueryType t) {
    return std::find(kNegationQueryTypes.begin(), kNegationQueryTypes.end(), t) ==
           kNegationQueryTypes.end();
}

struct PatternShape {
    std::size_t num_anchors;
    std::size_t num_relations;
};

inline PatternShape pattern_shape(QueryType t) {
    switch (t) {
        case QueryType::OneP: return {1, 1};
        case QueryType::TwoP: return {1, 2};
        case QueryType::ThreeP: return {1, 3};
        case QueryType::TwoI: return {2, 2};
        case QueryType::ThreeI: return {3, 3};
        case QueryType::Ip: return {2, 3};
        case QueryType::Pi: return {2, 3};
        case QueryType::TwoU: return {2, 2};
        case QueryType::Up: return {2, 3};
        case QueryType::TwoIn: return {2, 2};
        case QueryType::ThreeIn: return {3, 3};
        case QueryType::Inp: return {2, 3};
        case QueryType::Pin: return {2, 3};
        case QueryType::Pni: return {2, 3};
    }
    throw Error("unknown query type");
}

enum class NodeKind : std::uint8_t { Anchor, Variable, Target };
enum class OpKind : std::uint8_t { Projection, Intersection, Union, Negation };

struct QueryNode {
    NodeKind kind;
    EntityId anchor = 0;  // meaningful only for NodeKind::Anchor
};

struct QueryOp {
    OpKind kind;
    RelationId relation = 0;  // meaningful only for OpKind::Projection
    std::vector<std::uint32_t> inputs;
    std::uint32_t output;
};

struct QueryDag {
    QueryType type = QueryType::OneP;
    std::vector<QueryNode> nodes;
    std::vector<QueryOp> ops;  // topological order; each op produces one node
    std::uint32_t target = 0;
    std::vector<EntityId> anchors;       // canonical template order
    std::vector<RelationId> relations;   // canonical template order

    friend bool operator==(const QueryDag& a, const QueryDag& b) {
        return a.type == b.type && a.anchors == b.anchors && a.relations == b.relations;
    }
};

namespace detail {

class DagBuilder {
public:
    std::uint32_t anchor(EntityId e) {
        dag.nodes.push_back({NodeKind::Anchor, e});
        return static_cast<std::uint32_t>(dag.nodes.size() - 1);
    }

    std::uint32_t proj(RelationId r, std::uint32_t in) {
        return op(OpKind::Projection, r, {in});
    }
    std::uint32_t neg(std::uint32_t in) { return op(OpKind::Negation, 0, {in}); }
    std::uint32_t and_(std::vector<std::uint32_t> ins) {
        return op(OpKind::Intersection, 0, std::move(ins));
    }
    std::uint32_t or_(std::vector<std::uint32_t> ins) {
        return op(OpKind::Union, 0, std::move(ins));
    }

    QueryDag finish(QueryType type, std::uint32_t target,
                    std::vector<EntityId> anchors, std::vector<RelationId> relations) {
        dag.type = type;
        dag.target = target;
        dag.nodes[target].kind = NodeKind::Target;
        dag.anchors = std::move(anchors);
        dag.relations = std::move(relations);
        return std::move(dag);
    }

private:
    std::uint32_t op(OpKind kind, RelationId r, std::vector<std::uint32_t> ins) {
        dag.nodes.push_back({NodeKind::Variable, 0});
        auto out = static_cast<std::uint32_t>(dag.nodes.size() - 1);
        dag.ops.push_back({kind, r, std::move(ins), out});
        return out;
    }

    QueryDag dag;
};

}  // namespace detail

// Builds the canonical DAG of `type`. Anchor and relation lists must match
// the pattern shape exactly; their order is the template order, which makes
// (type, anchors, relations) a complete wire format.
inline QueryDag from_pattern(QueryType type, const std::vector<EntityId>& a,
                             const std::vector<RelationId>& r) {
    PatternShape shape = pattern_shape(type);
    if (a.size() != shape.num_anchors)
        throw Error(std::string("pattern ") + to_string(type) + " needs " +
                    std::to_string(shape.num_anchors) + " anchors, got " +
                    std::to_string(a.size()));
    if (r.size() != shape.num_relations)
        throw Error(std::string("pattern ") + to_string(type) + " needs " +
                    std::to_string(shape.num_relations) + " relations, got " +
                    std::to_string(r.size()));

    detail::DagBuilder b;
    std::uint32_t t = 0;
    switch (type) {
        case QueryType::OneP:
            t = b.proj(r[0], b.anchor(a[0]));
            break;
        case QueryType::TwoP:
            t = b.proj(r[1], b.proj(r[0], b.anchor(a[0])));
            break;
        case QueryType::ThreeP:
            t = b.proj(r[2], b.proj(r[1], b.proj(r[0], b.anchor(a[0]))));
            break;
        case QueryType::TwoI:
            t = b.and_({b.proj(r[0], b.anchor(a[0])), b.proj(r[1], b.anchor(a[1]))});
            break;
        case QueryType::ThreeI:
            t = b.and_({b.proj(r[0], b.anchor(a[0])), b.proj(r[1], b.anchor(a[1])),
                        b.proj(r[2], b.anchor(a[2]))});
            break;
        case QueryType::Ip: {
            auto v = b.and_({b.proj(r[0], b.anchor(a[0])), b.proj(r[1], b.anchor(a[1]))});
            t = b.proj(r[2], v);
            break;
        }
        case QueryType::Pi:
            t = b.and_({b.proj(r[1], b.proj(r[0], b.anchor(a[0]))),
                        b.proj(r[2], b.anchor(a[1]))});
            break;
        case QueryType::TwoU:
            t = b.or_({b.proj(r[0], b.anchor(a[0])), b.proj(r[1], b.anchor(a[1]))});
            break;
        case QueryType::Up: {
            auto v = b.or_({b.proj(r[0], b.anchor(a[0])), b.proj(r[1], b.anchor(a[1]))});
            t = b.proj(r[2], v);
            break;
        }
        case QueryType::TwoIn:
            t = b.and_({b.proj(r[0], b.anchor(a[0])), b.neg(b.proj(r[1], b.anchor(a[1])))});
            break;
        case QueryType::ThreeIn:
            t = b.and_({b.proj(r[0], b.anchor(a[0])), b.proj(r[1], b.anchor(a[1])),
                        b.neg(b.proj(r[2], b.anchor(a[2])))});
            break;
        case QueryType::Inp: {
            auto v = b.and_({b.proj(r[0], b.anchor(a[0])),
                             b.neg(b.proj(r[1], b.anchor(a[1])))});
            t = b.proj(r[2], v);
            break;
        }
        case QueryType::Pin:
            t = b.and_({b.proj(r[1], b.proj(r[0], b.anchor(a[0]))),
                        b.neg(b.proj(r[2], b.anchor(a[1])))});
            break;
        case QueryType::Pni:
            t = b.and_({b.neg(b.proj(r[1], b.proj(r[0], b.anchor(a[0])))),
                        b.proj(r[2], b.anchor(a[1]))});
            break;
    }
    return b.finish(type, t, a, r);
}

// Structural validation. Throws Error naming the first violated property.
inline void validate(const QueryDag& dag) {
    const std::size_t n = dag.nodes.size();
    std::size_t targets = 0;
    for (const QueryNode& node : dag.nodes)
        if (node.kind == NodeKind::Target) ++targets;
    if (targets != 1) throw Error("query DAG must have exactly one target node");
    if (dag.target >= n || dag.nodes[dag.target].kind != NodeKind::Target)
        throw Error("target index does not point at the target node");

    std::vector<int> producer(n, -1);
    for (std::size_t i = 0; i < dag.ops.size(); ++i) {
        const QueryOp& op = dag.ops[i];
        if (op.output >= n) throw Error("op output out of range");
        if (dag.nodes[op.output].kind == NodeKind::Anchor)
            throw Error("anchor node has an incoming operator edge");
        if (producer[op.output] != -1) throw Error("node produced by more than one op");
        producer[op.output] = static_cast<int>(i);
        switch (op.kind) {
            case OpKind::Projection:
            case OpKind::Negation:
                if (op.inputs.size() != 1)
                    throw Error("projection/negation must have exactly one input");
                break;
            case OpKind::Intersection:
            case OpKind::Union:
                if (op.inputs.size() < 2)
                    throw Error("intersection/union must have arity >= 2");
                break;
        }
        for (std::uint32_t in : op.inputs)
            if (in >= n) throw Error("op input out of range");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (dag.nodes[i].kind != NodeKind::Anchor && producer[i] == -1)
            throw Error("non-anchor node has no producing op");

    // Acyclicity + topological order: every op must consume only nodes that
    // are anchors or outputs of earlier ops.
    std::vector<bool> produced(n, false);
    for (std::size_t i = 0; i < n; ++i)
        if (dag.nodes[i].kind == NodeKind::Anchor) produced[i] = true;
    for (const QueryOp& op : dag.ops) {
        for (std::uint32_t in : op.inputs)
            if (!produced[in]) throw Error("ops not in topological order (cycle or orphan)");
        produced[op.output] = true;
    }

    // Target must be forward-reachable from every anchor.
    for (std::size_t a = 0; a < n; ++a) {
        if (dag.nodes[a].kind != NodeKind::Anchor) continue;
        std::vector<bool> reach(n, false);
        reach[a] = true;
        for (const QueryOp& op : dag.ops) {
            for (std::uint32_t in : op.inputs)
                if (reach[in]) reach[op.output] = true;
        }
        if (!reach[dag.target]) throw Error("target not reachable from an anchor");
    }

    // Canonical check: rebuilding from (type, anchors, relations) must give
    // the same wiring.
    QueryDag canon = from_pattern(dag.type, dag.anchors, dag.relations);
    if (canon.nodes.size() != dag.nodes.size() || canon.ops.size() != dag.ops.size())
        throw Error("DAG does not match its pattern template");
    for (std::size_t i = 0; i < dag.ops.size(); ++i) {
        const QueryOp &x = dag.ops[i], &y = canon.ops[i];
        if (x.kind != y.kind || x.inputs != y.inputs || x.output != y.output ||
            (x.kind == OpKind::Projection && x.relation != y.relation))
            throw Error("DAG does not match its pattern template");
    }
    for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
        if (dag.nodes[i].kind != canon.nodes[i].kind) throw Error("DAG nodes mismatch template");
        if (dag.nodes[i].kind == NodeKind::Anchor &&
            dag.nodes[i].anchor != canon.nodes[i].anchor)
            throw Error("DAG anchors mismatch template");
    }
}

// The set R_Q of relations used by the query.
inline std::vector<RelationId> relation_set(const QueryDag& dag) {
    std::vector<RelationId> rels = dag.relations;
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
    return rels;
}

// Relations of the projections feeding the target; for union-topped queries
// this is the union over branches. Used by the edge-type heuristic.
inline std::vector<RelationId> last_hop_relations(const QueryDag& dag) {
    std::vector<RelationId> out;
    // Walk backwards from the target through non-projection ops.
    std::vector<std::uint32_t> frontier = {dag.target};
    std::vector<std::uint32_t> next;
    while (!frontier.empty()) {
        next.clear();
        for (std::uint32_t node : frontier) {
            for (const QueryOp& op : dag.ops) {
                if (op.output != node) continue;
                if (op.kind == OpKind::Projection) {
                    out.push_back(op.relation);
                } else {
                    for (std::uint32_t in : op.inputs) next.push_back(in);
                }
            }
        }
        frontier = next;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct QueryInstance {
    QueryDag dag;
    std::vector<EntityId> easy;  // sorted ascending
    std::vector<EntityId> hard;  // sorted ascending, disjoint from easy

    friend bool operator==(const QueryInstance&, const QueryInstance&) = default;
};

}  // namespace ikqe
