#include "kgfe/graph.hpp"

#include <algorithm>

namespace kgfe {

std::string_view trim(std::string_view text) {
    const auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
    };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

std::uint32_t LabelTable::intern(std::string_view label) {
    const std::string_view key = trim(label);
    if (key.empty()) {
        throw InvalidInput("empty label");
    }
    if (auto it = index_.find(key); it != index_.end()) {
        return it->second;
    }
    const auto id = static_cast<std::uint32_t>(labels_.size());
    labels_.emplace_back(key);
    index_.emplace(labels_.back(), id);
    return id;
}

std::optional<std::uint32_t> LabelTable::find(std::string_view label) const {
    if (auto it = index_.find(trim(label)); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

const std::string& LabelTable::label(std::uint32_t id) const {
    if (id >= labels_.size()) {
        throw InvalidInput("label id out of range: " + std::to_string(id));
    }
    return labels_[id];
}

std::span<const Edge> KnowledgeGraph::out_edges(EntityId entity) const {
    if (entity.value >= entity_count()) {
        throw InvalidInput("entity id out of range: " + std::to_string(entity.value));
    }
    const auto begin = offsets_[entity.value];
    const auto end = offsets_[entity.value + 1];
    return {edges_.data() + begin, end - begin};
}

const std::string& KnowledgeGraph::entity_label(EntityId entity) const {
    return entities_.label(entity.value);
}

const std::string& KnowledgeGraph::relation_label(RelationId relation) const {
    return relations_.label(relation.value);
}

std::optional<EntityId> KnowledgeGraph::find_entity(std::string_view label) const {
    if (auto id = entities_.find(label)) return EntityId{*id};
    return std::nullopt;
}

std::optional<RelationId> KnowledgeGraph::find_relation(std::string_view label) const {
    if (auto id = relations_.find(label)) return RelationId{*id};
    return std::nullopt;
}

EntityId GraphBuilder::intern_entity(std::string_view label) {
    return EntityId{entities_.intern(label)};
}

RelationId GraphBuilder::intern_relation(std::string_view label) {
    return RelationId{relations_.intern(label)};
}

void GraphBuilder::add_triple(std::string_view head, std::string_view relation,
                              std::string_view tail) {
    const EntityId h = intern_entity(head);
    const RelationId r = intern_relation(relation);
    const EntityId t = intern_entity(tail);
    if (seen_.insert(TripleKey{h.value, r.value, t.value}).second) {
        triples_.push_back(Triple{h, r, t});
    }
}

KnowledgeGraph GraphBuilder::build() {
    KnowledgeGraph graph;
    graph.entities_ = std::move(entities_);
    graph.relations_ = std::move(relations_);

    std::sort(triples_.begin(), triples_.end());

    const std::size_t n = graph.entities_.size();
    graph.offsets_.assign(n + 1, 0);
    for (const Triple& t : triples_) {
        ++graph.offsets_[t.head.value + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) {
        graph.offsets_[i] += graph.offsets_[i - 1];
    }
    graph.edges_.reserve(triples_.size());
    for (const Triple& t : triples_) {
        graph.edges_.push_back(Edge{t.relation, t.tail});
    }

    *this = GraphBuilder{};
    return graph;
}

}  // namespace kgfe
