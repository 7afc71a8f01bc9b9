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

// Textual query DSL:
//
//   expr     := anchor | projection | conjunction | disjunction | negation
//   anchor   := "e" <int>
//   projection   := "P(" relation "," expr ")"
//   relation := "r" <int>
//   conjunction  := "AND(" expr ("," expr)+ ")"
//   disjunction  := "OR("  expr ("," expr)+ ")"
//   negation := "NOT(" expr ")"
//
// Parsed expressions are accepted only if they match one of the 14 pattern
// templates (AND/OR treated as commutative); the result is the canonical DAG.

#include <array>
#include <cstddef>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "ikqe/common.hpp"
#include "ikqe/query.hpp"

namespace ikqe {

namespace detail {

struct Expr {
    enum Kind { Anchor, Proj, And, Or, Not } kind;
    std::uint64_t id = 0;  // entity id (Anchor) or relation id (Proj)
    std::vector<std::unique_ptr<Expr>> kids;
};

class DslParser {
public:
    explicit DslParser(const std::string& text) : text_(text) {}

    std::unique_ptr<Expr> parse() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input after expression");
        return e;
    }

private:
    std::unique_ptr<Expr> parse_expr() {
        skip_ws();
        if (match_keyword("P")) return parse_call(Expr::Proj);
        if (match_keyword("AND")) return parse_call(Expr::And);
        if (match_keyword("OR")) return parse_call(Expr::Or);
        if (match_keyword("NOT")) return parse_call(Expr::Not);
        if (peek() == 'e') {
            ++pos_;
            auto e = std::make_unique<Expr>();
            e->kind = Expr::Anchor;
            e->id = parse_int("entity id");
            return e;
        }
        fail("expected P(, AND(, OR(, NOT( or e<id>");
    }

    std::unique_ptr<Expr> parse_call(Expr::Kind kind) {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        expect('(');
        if (kind == Expr::Proj) {
            skip_ws();
            if (peek() != 'r') fail("expected r<id> as first projection argument");
            ++pos_;
            e->id = parse_int("relation id");
            expect(',');
            e->kids.push_back(parse_expr());
        } else {
            e->kids.push_back(parse_expr());
            skip_ws();
            while (peek() == ',') {
                ++pos_;
                e->kids.push_back(parse_expr());
                skip_ws();
            }
        }
        expect(')');
        if (kind == Expr::Not && e->kids.size() != 1) fail("NOT takes exactly one argument");
        if ((kind == Expr::And || kind == Expr::Or) && e->kids.size() < 2)
            fail("AND/OR take at least two arguments");
        return e;
    }

    std::uint64_t parse_int(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        std::uint64_t value = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) fail(std::string("expected ") + what);
        return value;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool match_keyword(const std::string& kw) {
        skip_ws();
        if (text_.compare(pos_, kw.size(), kw) != 0) return false;
        std::size_t after = pos_ + kw.size();
        std::size_t probe = after;
        while (probe < text_.size() && text_[probe] == ' ') ++probe;
        if (probe >= text_.size() || text_[probe] != '(') return false;
        pos_ = after;
        return true;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("query DSL: " + msg, 1, pos_);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

// Template expression with slot ids instead of concrete entities/relations.
inline std::unique_ptr<Expr> slot_anchor(std::uint64_t slot) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Anchor;
    e->id = slot;
    return e;
}
inline std::unique_ptr<Expr> slot_proj(std::uint64_t slot, std::unique_ptr<Expr> in) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Proj;
    e->id = slot;
    e->kids.push_back(std::move(in));
    return e;
}
inline std::unique_ptr<Expr> make_node(Expr::Kind kind,
                                       std::vector<std::unique_ptr<Expr>> kids) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->kids = std::move(kids);
    return e;
}

inline std::unique_ptr<Expr> template_expr(QueryType t) {
    using K = Expr::Kind;
    auto vec = [](auto&&... xs) {
        std::vector<std::unique_ptr<Expr>> v;
        (v.push_back(std::move(xs)), ...);
        return v;
    };
    switch (t) {
        case QueryType::OneP: return slot_proj(0, slot_anchor(0));
        case QueryType::TwoP: return slot_proj(1, slot_proj(0, slot_anchor(0)));
        case QueryType::ThreeP:
            return slot_proj(2, slot_proj(1, slot_proj(0, slot_anchor(0))));
        case QueryType::TwoI:
            return make_node(K::And, vec(slot_proj(0, slot_anchor(0)),
                                         slot_proj(1, slot_anchor(1))));
        case QueryType::ThreeI:
            return make_node(K::And, vec(slot_proj(0, slot_anchor(0)),
                                         slot_proj(1, slot_anchor(1)),
                                         slot_proj(2, slot_anchor(2))));
        case QueryType::Ip:
            return slot_proj(2, make_node(K::And, vec(slot_proj(0, slot_anchor(0)),
                                                      slot_proj(1, slot_anchor(1)))));
        case QueryType::Pi:
            return make_node(K::And, vec(slot_proj(1, slot_proj(0, slot_anchor(0))),
                                         slot_proj(2, slot_anchor(1))));
        case QueryType::TwoU:
            return make_node(K::Or, vec(slot_proj(0, slot_anchor(0)),
                                        slot_proj(1, slot_anchor(1))));
        case QueryType::Up:
            return slot_proj(2, make_node(K::Or, vec(slot_proj(0, slot_anchor(0)),
                                                     slot_proj(1, slot_anchor(1)))));
        case QueryType::TwoIn:
            return make_node(K::And,
                             vec(slot_proj(0, slot_anchor(0)),
                                 make_node(K::Not, vec(slot_proj(1, slot_anchor(1))))));
        case QueryType::ThreeIn:
            return make_node(K::And,
                             vec(slot_proj(0, slot_anchor(0)), slot_proj(1, slot_anchor(1)),
                                 make_node(K::Not, vec(slot_proj(2, slot_anchor(2))))));
        case QueryType::Inp:
            return slot_proj(
                2, make_node(K::And,
                             vec(slot_proj(0, slot_anchor(0)),
                                 make_node(K::Not, vec(slot_proj(1, slot_anchor(1)))))));
        case QueryType::Pin:
            return make_node(K::And,
                             vec(slot_proj(1, slot_proj(0, slot_anchor(0))),
                                 make_node(K::Not, vec(slot_proj(2, slot_anchor(1))))));
        case QueryType::Pni:
            return make_node(
                K::And,
                vec(make_node(K::Not, vec(slot_proj(1, slot_proj(0, slot_anchor(0))))),
                    slot_proj(2, slot_anchor(1))));
    }
    throw Error("unknown query type");
}

struct SlotBindings {
    std::vector<EntityId> anchors;
    std::vector<RelationId> relations;
};

// Unify a parsed expression with a slot template; AND/OR are commutative so
// template children are tried in every permutation (arity <= 3).
inline bool unify(const Expr& parsed, const Expr& tmpl, SlotBindings& out) {
    if (parsed.kind != tmpl.kind) return false;
    switch (tmpl.kind) {
        case Expr::Anchor:
            out.anchors[tmpl.id] = static_cast<EntityId>(parsed.id);
            return true;
        case Expr::Proj:
            out.relations[tmpl.id] = static_cast<RelationId>(parsed.id);
            return unify(*parsed.kids[0], *tmpl.kids[0], out);
        case Expr::Not:
            return unify(*parsed.kids[0], *tmpl.kids[0], out);
        case Expr::And:
        case Expr::Or: {
            if (parsed.kids.size() != tmpl.kids.size()) return false;
            std::vector<std::size_t> perm(tmpl.kids.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                SlotBindings trial = out;
                bool ok = true;
                for (std::size_t i = 0; i < perm.size() && ok; ++i)
                    ok = unify(*parsed.kids[i], *tmpl.kids[perm[i]], trial);
                if (ok) {
                    out = trial;
                    return true;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            return false;
        }
    }
    return false;
}

}  // namespace detail

// Parses DSL text and classifies it against the 14 templates. Throws
// ParseError on bad syntax and Error when the structure matches no template.
inline QueryDag parse_query(const std::string& text) {
    detail::DslParser parser(text);
    auto expr = parser.parse();
    for (QueryType t : kAllQueryTypes) {
        PatternShape shape = pattern_shape(t);
        detail::SlotBindings bindings;
        bindings.anchors.assign(shape.num_anchors, 0);
        bindings.relations.assign(shape.num_relations, 0);
        auto tmpl = detail::template_expr(t);
        if (detail::unify(*expr, *tmpl, bindings))
            return from_pattern(t, bindings.anchors, bindings.relations);
    }
    throw Error("query structure matches none of the 14 pattern templates: " + text);
}

// Canonical DSL text for a DAG; parse_query(render(dag)) == dag.
inline std::string render(const QueryDag& dag) {
    // Emit by walking the producing ops backwards from the target.
    std::vector<int> producer(dag.nodes.size(), -1);
    for (std::size_t i = 0; i < dag.ops.size(); ++i)
        producer[dag.ops[i].output] = static_cast<int>(i);

    auto emit = [&](auto&& self, std::uint32_t node) -> std::string {
        if (dag.nodes[node].kind == NodeKind::Anchor)
            return "e" + std::to_string(dag.nodes[node].anchor);
        const QueryOp& op = dag.ops[static_cast<std::size_t>(producer[node])];
        switch (op.kind) {
            case OpKind::Projection:
                return "P(r" + std::to_string(op.relation) + ", " +
                       self(self, op.inputs[0]) + ")";
            case OpKind::Negation:
                return "NOT(" + self(self, op.inputs[0]) + ")";
            case OpKind::Intersection:
            case OpKind::Union: {
                std::string s = op.kind == OpKind::Intersection ? "AND(" : "OR(";
                for (std::size_t i = 0; i < op.inputs.size(); ++i) {
                    if (i) s += ", ";
                    s += self(self, op.inputs[i]);
                }
                return s + ")";
            }
        }
        return "";
    };
    return emit(emit, dag.target);
}

}  // namespace ikqe
