#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kgfe/error.hpp"

namespace kgfe {

// Dense ids, assigned contiguously from 0 in interning order.
struct EntityId {
    std::uint32_t value = 0;
    friend bool operator==(EntityId, EntityId) = default;
    friend std::strong_ordering operator<=>(EntityId, EntityId) = default;
};

struct RelationId {
    std::uint32_t value = 0;
    friend bool operator==(RelationId, RelationId) = default;
    friend std::strong_ordering operator<=>(RelationId, RelationId) = default;
};

// Outgoing half-edge. Declaration order gives the (relation, tail) sort key.
struct Edge {
    RelationId relation;
    EntityId tail;
    friend bool operator==(Edge, Edge) = default;
    friend std::strong_ordering operator<=>(Edge, Edge) = default;
};

struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;
    friend bool operator==(Triple, Triple) = default;
    friend std::strong_ordering operator<=>(Triple, Triple) = default;
};

// Strips ASCII whitespace from both ends of a label.
std::string_view trim(std::string_view text);

// Label <-> dense id table. Labels are opaque UTF-8, trimmed on intern.
class LabelTable {
public:
    // Returns the existing id for a known label, otherwise the next dense id.
    // Throws InvalidInput if the label is empty after trimming.
    std::uint32_t intern(std::string_view label);

    std::optional<std::uint32_t> find(std::string_view label) const;
    const std::string& label(std::uint32_t id) const;
    std::size_t size() const noexcept { return labels_.size(); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> index_;
};

class GraphBuilder;

// Interned directed multigraph, immutable once built. Adjacency lists are
// sorted by (relation, tail) so iteration order is identical across runs.
class KnowledgeGraph {
public:
    KnowledgeGraph() : offsets_(1, 0) {}

    std::size_t entity_count() const noexcept { return entities_.size(); }
    std::size_t relation_count() const noexcept { return relations_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    // Sorted outgoing edges. Throws InvalidInput when the id is out of range.
    std::span<const Edge> out_edges(EntityId entity) const;

    const std::string& entity_label(EntityId entity) const;
    const std::string& relation_label(RelationId relation) const;
    std::optional<EntityId> find_entity(std::string_view label) const;
    std::optional<RelationId> find_relation(std::string_view label) const;

    // Visits triples in storage order: head id ascending, then (relation, tail).
    template <typename Fn>
    void for_each_triple(Fn&& fn) const {
        for (std::uint32_t head = 0; head + 1 < offsets_.size(); ++head) {
            for (std::uint32_t k = offsets_[head]; k < offsets_[head + 1]; ++k) {
                fn(Triple{EntityId{head}, edges_[k].relation, edges_[k].tail});
            }
        }
    }

private:
    friend class GraphBuilder;

    LabelTable entities_;
    LabelTable relations_;
    std::vector<std::uint32_t> offsets_;  // entity_count() + 1 entries
    std::vector<Edge> edges_;
};

// Single-threaded construction phase. Duplicate triples are stored once.
class GraphBuilder {
public:
    EntityId intern_entity(std::string_view label);
    RelationId intern_relation(std::string_view label);

    // Interns all three labels as needed; exact duplicates are ignored.
    void add_triple(std::string_view head, std::string_view relation, std::string_view tail);

    std::size_t entity_count() const noexcept { return entities_.size(); }
    std::size_t relation_count() const noexcept { return relations_.size(); }
    std::size_t edge_count() const noexcept { return triples_.size(); }

    // Finalizes the adjacency structure. The builder is left empty.
    KnowledgeGraph build();

private:
    struct TripleKey {
        std::uint32_t head, relation, tail;
        friend bool operator==(TripleKey, TripleKey) = default;
    };
    struct TripleKeyHash {
        std::size_t operator()(TripleKey k) const noexcept {
            std::uint64_t x = (std::uint64_t{k.head} << 32) ^ (std::uint64_t{k.relation} << 21) ^ k.tail;
            x *= 0x9E3779B97F4A7C15ull;
            return static_cast<std::size_t>(x ^ (x >> 29));
        }
    };

    LabelTable entities_;
    LabelTable relations_;
    std::vector<Triple> triples_;
    std::unordered_set<TripleKey, TripleKeyHash> seen_;
};

}  // namespace kgfe
