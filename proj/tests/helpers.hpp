#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "kgfe/graph.hpp"
#include "kgfe/ingest.hpp"

namespace kgfe::test {

// Political leadership fixture: two leaders, a reified position node, a
// successor/predecessor cycle, and one disconnected entity.
inline GraphBuilder canada_builder() {
    GraphBuilder builder;
    builder.add_triple("Canada", "hasLeader", "Trudeau");
    builder.add_triple("Canada", "hasLeader", "Harper");
    builder.add_triple("Trudeau", "holdsPosition", "PrimeMinister");
    builder.add_triple("Harper", "holdsPosition", "PrimeMinister");
    builder.add_triple("Trudeau", "successor", "Harper");
    builder.add_triple("Harper", "predecessor", "Trudeau");
    builder.intern_entity("Biden");
    return builder;
}

inline KnowledgeGraph canada_graph() {
    GraphBuilder builder = canada_builder();
    return builder.build();
}

inline constexpr const char* kCanadaTsv =
    "Canada\thasLeader\tTrudeau\n"
    "Canada\thasLeader\tHarper\n"
    "Trudeau\tholdsPosition\tPrimeMinister\n"
    "Harper\tholdsPosition\tPrimeMinister\n"
    "Trudeau\tsuccessor\tHarper\n"
    "Harper\tpredecessor\tTrudeau\n"
    "Biden\n";

class TempFile {
public:
    TempFile(const std::string& content, const std::string& suffix) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("kgfe_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++) + suffix);
        std::ofstream out(path_, std::ios::binary);
        out << content;
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path_, ec);
    }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

struct RawDigraph {
    std::uint32_t nodes = 0;
    std::vector<std::array<std::uint32_t, 3>> edges;  // head, relation, tail
};

inline RawDigraph random_digraph(std::mt19937_64& rng, std::uint32_t max_nodes = 12,
                                 double edge_prob = 0.2, std::uint32_t relations = 3) {
    std::uniform_int_distribution<std::uint32_t> node_count(1, max_nodes);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    RawDigraph g;
    g.nodes = node_count(rng);
    std::uniform_int_distribution<std::uint32_t> rel(0, relations - 1);
    for (std::uint32_t u = 0; u < g.nodes; ++u) {
        for (std::uint32_t v = 0; v < g.nodes; ++v) {
            if (u == v) continue;
            if (coin(rng) < edge_prob) {
                g.edges.push_back({u, rel(rng), v});
            }
        }
    }
    return g;
}

// Interns entity labels up front so EntityId{i} corresponds to node i.
inline KnowledgeGraph to_graph(const RawDigraph& g) {
    GraphBuilder builder;
    std::vector<std::string> names(g.nodes);
    for (std::uint32_t i = 0; i < g.nodes; ++i) {
        names[i] = "e" + std::to_string(i);
        builder.intern_entity(names[i]);
    }
    for (const auto& e : g.edges) {
        builder.add_triple(names[e[0]], "r" + std::to_string(e[1]), names[e[2]]);
    }
    return builder.build();
}

// Exhaustive simple-path enumeration; -1 marks unreachable nodes. Serves as
// the distance oracle, so it must stay independent of the BFS under test.
inline std::vector<std::int64_t> brute_force_distances(const RawDigraph& g,
                                                       const std::vector<std::uint32_t>& sources) {
    std::vector<std::vector<std::uint32_t>> adj(g.nodes);
    for (const auto& e : g.edges) {
        adj[e[0]].push_back(e[2]);
    }
    std::vector<std::int64_t> best(g.nodes, -1);
    std::vector<bool> on_path(g.nodes, false);
    const auto record = [&](std::uint32_t v, std::int64_t depth) {
        if (best[v] == -1 || depth < best[v]) best[v] = depth;
    };
    const std::function<void(std::uint32_t, std::int64_t)> dfs = [&](std::uint32_t u,
                                                                     std::int64_t depth) {
        record(u, depth);
        on_path[u] = true;
        for (const std::uint32_t v : adj[u]) {
            if (!on_path[v]) dfs(v, depth + 1);
        }
        on_path[u] = false;
    };
    for (const std::uint32_t s : sources) {
        dfs(s, 0);
    }
    return best;
}

// Canonical label-level form: equal strings mean equal graphs regardless of
// interning order.
inline std::string labeled_repr(const KnowledgeGraph& graph) {
    std::vector<std::string> entity_labels;
    for (std::uint32_t e = 0; e < graph.entity_count(); ++e) {
        entity_labels.push_back(graph.entity_label(EntityId{e}));
    }
    std::vector<std::string> relation_labels;
    for (std::uint32_t r = 0; r < graph.relation_count(); ++r) {
        relation_labels.push_back(graph.relation_label(RelationId{r}));
    }
    std::vector<std::string> triples;
    graph.for_each_triple([&](const Triple& t) {
        triples.push_back(graph.entity_label(t.head) + "\t" + graph.relation_label(t.relation) +
                          "\t" + graph.entity_label(t.tail));
    });
    std::sort(entity_labels.begin(), entity_labels.end());
    std::sort(relation_labels.begin(), relation_labels.end());
    std::sort(triples.begin(), triples.end());
    std::ostringstream out;
    out << "entities:";
    for (const auto& s : entity_labels) out << ' ' << s;
    out << "\nrelations:";
    for (const auto& s : relation_labels) out << ' ' << s;
    out << "\ntriples:\n";
    for (const auto& s : triples) out << s << '\n';
    return out.str();
}

inline std::string write_tsv_string(const KnowledgeGraph& graph) {
    std::ostringstream out;
    write_tsv(graph, out);
    return out.str();
}

}  // namespace kgfe::test
