#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crn/graph_model.hpp"

namespace crn {

/// Vertex weights indexed by VertexId; all entries must be non-negative.
using WeightMap = std::vector<double>;

struct MwisResult {
    std::vector<VertexId> members;  // ascending
    double total_weight = 0.0;
};

inline constexpr std::size_t kExactSizeGuard = 50;
inline constexpr std::size_t kLocalSizeGuard = 4096;

double total_weight(std::span<const VertexId> members, std::span<const double> weights);

/// Branch-and-bound maximum weighted independent set of H restricted to `subset`.
/// Zero-weight vertices are never selected. Among maximum-weight sets the
/// lexicographically smallest (ascending id sequence) is returned. Throws
/// std::length_error when |subset| exceeds `size_guard`.
MwisResult exact_mwis(const ExtendedGraph& h, std::span<const VertexId> subset,
                      std::span<const double> weights, std::size_t size_guard = kExactSizeGuard);

/// Exact MWIS over a LocalLeader's candidate set A_r(v). Same contract as
/// exact_mwis with a guard sized for growth-bounded neighborhoods.
MwisResult local_mwis(const ExtendedGraph& h, std::span<const VertexId> candidates,
                      std::span<const double> weights, std::size_t size_guard = kLocalSizeGuard);

struct PtasStats {
    std::vector<std::size_t> stopping_radii;  // r-bar of every ball that was committed
};

/// Centralized robust PTAS on H with rho = 1 + epsilon. Ties for the heaviest
/// remaining vertex go to the smallest id.
MwisResult robust_ptas(const ExtendedGraph& h, std::span<const double> weights, double epsilon,
                       PtasStats* stats = nullptr);

/// Strategy-decision back end used by the learning loop.
class MwisSolver {
public:
    virtual ~MwisSolver() = default;
    virtual MwisResult solve(const ExtendedGraph& h, std::span<const double> weights) = 0;
};

class ExactSolver final : public MwisSolver {
public:
    explicit ExactSolver(std::size_t size_guard = kExactSizeGuard) : size_guard_(size_guard) {}
    MwisResult solve(const ExtendedGraph& h, std::span<const double> weights) override;

private:
    std::size_t size_guard_;
};

class CentralizedPtasSolver final : public MwisSolver {
public:
    explicit CentralizedPtasSolver(double epsilon) : epsilon_(epsilon) {}
    MwisResult solve(const ExtendedGraph& h, std::span<const double> weights) override;

private:
    double epsilon_;
};

}  // namespace crn
