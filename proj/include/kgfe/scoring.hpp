#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgfe/complexity.hpp"
#include "kgfe/graph.hpp"
#include "kgfe/traversal.hpp"

namespace kgfe {

enum class Mode { Pragmatic, Epistemic };

struct ScoringParams {
    double alpha = 1.0;   // disconnection penalty, > 0
    double lambda = 1.0;  // complexity weight, >= 0
    Mode mode = Mode::Pragmatic;
};

// Per-candidate score bundle. distance and path are absent together, in
// which case s_geo carries alpha and k is maximal.
struct ScoreCard {
    EntityId entity;
    std::optional<std::uint32_t> distance;
    double s_geo = 0.0;
    double k = 0.0;
    double f = 0.0;
    std::optional<RelationPath> path;
};

// s_geo + lambda * k. Rejects negative lambda and k outside [0, 1].
double free_energy(double s_geo, double k, double lambda);

// One BFS and one relation corpus shared across every candidate scored
// against the same context. Read-only after construction.
class Scorer {
public:
    Scorer(const KnowledgeGraph& graph, std::span<const EntityId> context, ScoringParams params);

    const KnowledgeGraph& graph() const noexcept { return graph_; }
    const DistanceMap& distances() const noexcept { return distances_; }
    const ScoringParams& params() const noexcept { return params_; }

    ScoreCard score(EntityId entity) const;

    // Sorted per params().mode: pragmatic ascends by f, epistemic descends by
    // s_geo with unreached candidates last. Ties break on ascending id.
    std::vector<ScoreCard> rank(std::span<const EntityId> candidates) const;

private:
    ScoreCard make_card(EntityId entity, std::optional<RelationPath> path, double k) const;

    const KnowledgeGraph& graph_;
    ScoringParams params_;
    DistanceMap distances_;
    PathComplexityEstimator estimator_;
};

ScoreCard score_entity(const KnowledgeGraph& graph, std::span<const EntityId> context,
                       EntityId entity, const ScoringParams& params);

std::vector<ScoreCard> rank_candidates(const KnowledgeGraph& graph,
                                       std::span<const EntityId> context,
                                       std::span<const EntityId> candidates,
                                       const ScoringParams& params);

// Exploration ordering regardless of params.mode.
std::vector<ScoreCard> epistemic_rank(const KnowledgeGraph& graph,
                                      std::span<const EntityId> context,
                                      std::span<const EntityId> candidates,
                                      const ScoringParams& params);

}  // namespace kgfe
