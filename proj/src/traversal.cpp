#include "kgfe/traversal.hpp"

#include <algorithm>

namespace kgfe {

namespace {

// Core loop shared by multi_source_bfs and diameter. `queue` doubles as the
// visit-order scratch; dist entries must be kUnreached on entry except for
// the seeded sources.
void bfs_from(const KnowledgeGraph& graph, std::span<const std::uint32_t> sources,
              std::vector<std::uint32_t>& dist, std::vector<std::uint32_t>& queue,
              std::uint32_t* parent_entity, std::uint32_t* parent_relation) {
    queue.clear();
    for (const auto s : sources) {
        dist[s] = 0;
        queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        const std::uint32_t du = dist[u];
        for (const Edge& edge : graph.out_edges(EntityId{u})) {
            const std::uint32_t v = edge.tail.value;
            if (dist[v] != DistanceMap::kUnreached) continue;
            dist[v] = du + 1;
            if (parent_entity) {
                parent_entity[v] = u;
                parent_relation[v] = edge.relation.value;
            }
            queue.push_back(v);
        }
    }
}

}  // namespace

DistanceMap multi_source_bfs(const KnowledgeGraph& graph, std::span<const EntityId> context) {
    if (context.empty()) {
        throw InvalidInput("context must contain at least one entity");
    }
    std::vector<std::uint32_t> sources;
    sources.reserve(context.size());
    for (const EntityId c : context) {
        if (c.value >= graph.entity_count()) {
            throw InvalidInput("context entity id out of range: " + std::to_string(c.value));
        }
        sources.push_back(c.value);
    }
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

    DistanceMap map(graph.entity_count());
    std::vector<std::uint32_t> queue;
    queue.reserve(graph.entity_count());
    bfs_from(graph, sources, map.dist_, queue, map.parent_entity_.data(),
             map.parent_relation_.data());
    return map;
}

double geometric_surprise(const DistanceMap& distances, EntityId entity, double alpha) {
    if (!(alpha > 0.0)) {
        throw InvalidInput("alpha must be positive");
    }
    const std::uint32_t d = distances.hops(entity);
    return d == DistanceMap::kUnreached ? alpha : static_cast<double>(d);
}

std::optional<RelationPath> shortest_relation_path(const KnowledgeGraph& graph,
                                                   const DistanceMap& distances, EntityId entity) {
    if (distances.size() != graph.entity_count()) {
        throw InvalidInput("distance map does not match this graph");
    }
    const std::uint32_t d = distances.hops(entity);
    if (d == DistanceMap::kUnreached) {
        return std::nullopt;
    }
    RelationPath path;
    path.relations.reserve(d);
    path.nodes.reserve(d + 1);
    EntityId node = entity;
    path.nodes.push_back(node);
    while (auto link = distances.parent(node)) {
        path.relations.push_back(link->second);
        node = link->first;
        path.nodes.push_back(node);
    }
    std::reverse(path.relations.begin(), path.relations.end());
    std::reverse(path.nodes.begin(), path.nodes.end());
    return path;
}

std::uint32_t diameter(const KnowledgeGraph& graph) {
    const std::size_t n = graph.entity_count();
    std::vector<std::uint32_t> dist(n, DistanceMap::kUnreached);
    std::vector<std::uint32_t> queue;
    queue.reserve(n);
    std::uint32_t longest = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (graph.out_edges(EntityId{s}).empty()) continue;
        const std::uint32_t source[] = {s};
        bfs_from(graph, source, dist, queue, nullptr, nullptr);
        for (const auto v : queue) {
            longest = std::max(longest, dist[v]);
        }
        for (const auto v : queue) {
            dist[v] = DistanceMap::kUnreached;
        }
    }
    return longest;
}

}  // namespace kgfe
