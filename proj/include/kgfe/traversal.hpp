#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kgfe/graph.hpp"

namespace kgfe {

// Grounded source entities for a query.
using Context = std::vector<EntityId>;

// Per-entity hop counts from a context, with one parent link per reached
// entity for shortest-path reconstruction. Unreached entities keep the
// kUnreached sentinel; it is never folded into a numeric distance here.
class DistanceMap {
public:
    static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

    std::size_t size() const noexcept { return dist_.size(); }
    bool reached(EntityId entity) const { return hops(entity) != kUnreached; }

    // Hop count from the nearest context entity, or kUnreached.
    std::uint32_t hops(EntityId entity) const {
        check(entity);
        return dist_[entity.value];
    }

    // Predecessor on one shortest path; absent for sources and unreached.
    std::optional<std::pair<EntityId, RelationId>> parent(EntityId entity) const {
        check(entity);
        if (parent_entity_[entity.value] == kUnreached) return std::nullopt;
        return std::make_pair(EntityId{parent_entity_[entity.value]},
                              RelationId{parent_relation_[entity.value]});
    }

private:
    friend DistanceMap multi_source_bfs(const KnowledgeGraph&, std::span<const EntityId>);

    explicit DistanceMap(std::size_t n)
        : dist_(n, kUnreached), parent_entity_(n, kUnreached), parent_relation_(n, 0) {}

    void check(EntityId entity) const {
        if (entity.value >= dist_.size()) {
            throw InvalidInput("entity id out of range: " + std::to_string(entity.value));
        }
    }

    std::vector<std::uint32_t> dist_;
    std::vector<std::uint32_t> parent_entity_;
    std::vector<std::uint32_t> parent_relation_;
};

// Relation labels along one shortest path; nodes has one more entry than
// relations and nodes.front() lies in the context.
struct RelationPath {
    std::vector<RelationId> relations;
    std::vector<EntityId> nodes;

    std::size_t length() const noexcept { return relations.size(); }
};

// Directed hop counts from any context entity, following outgoing edges only.
// Sources are visited in ascending id order and neighbours in adjacency
// order, so the parent links (and thus paths) are reproducible.
DistanceMap multi_source_bfs(const KnowledgeGraph& graph, std::span<const EntityId> context);

// Hop count if the entity was reached, alpha otherwise.
double geometric_surprise(const DistanceMap& distances, EntityId entity, double alpha);

// Path selected by the first-parent-wins rule; absent when unreached.
std::optional<RelationPath> shortest_relation_path(const KnowledgeGraph& graph,
                                                   const DistanceMap& distances, EntityId entity);

// Longest finite shortest-path distance over all ordered pairs.
std::uint32_t diameter(const KnowledgeGraph& graph);

}  // namespace kgfe
