#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "anonkit/reductions.hpp"

namespace anonkit {

/// All assignments under which every clause has exactly one true literal.
std::vector<std::vector<bool>> enumerate_1in3_sat(const CnfFormula& phi);

bool is_1in3_satisfied(const CnfFormula& phi, const std::vector<bool>& assignment);

/// A maximum-cardinality coordinate-disjoint subset of the triples, as
/// indices into inst.triples. Exhaustive branch-and-bound.
std::vector<int> max_3dm_bruteforce(const ThreeDMInstance& inst);

/// Every feasible matching (including the empty one), as sorted index lists.
std::vector<std::vector<int>> enumerate_3dm_matchings(const ThreeDMInstance& inst);

enum class BlockKind { Star, Triangle };

/// One block of an edge partition: three edge indices forming a 4-star
/// around `center`, or a triangle (center is -1).
struct PartitionBlock {
    BlockKind kind = BlockKind::Star;
    int center = -1;
    std::array<int, 3> edge_ids = {-1, -1, -1};
};

struct EdgePartition {
    std::vector<PartitionBlock> blocks;
};

/// Backtracking edge partition into 4-stars (and triangles when allowed).
/// Deterministic: the lowest-indexed uncovered edge is resolved first, star
/// centers are tried lower endpoint first, and a degree-one vertex forces its
/// edge into a star centered at the other endpoint.
std::optional<EdgePartition> edge_partition_search(const Graph& g, bool allow_triangles);

/// Partition into triangles only (the diversity reductions' target shape).
std::optional<EdgePartition> triangle_partition_search(const Graph& g);

/// Invokes the visitor on every partition; return false from the visitor to
/// stop early.
void enumerate_edge_partitions(const Graph& g, bool allow_triangles,
                               const std::function<bool(const EdgePartition&)>& visit);

/// True iff the blocks disjointly cover every edge and each block really is a
/// triangle or a 4-star consistent with its label.
bool verify_edge_partition(const Graph& g, const EdgePartition& partition);

enum class GadgetClassification { TruePartitioned, FalsePartitioned, Invalid };

/// Applies the true/false dichotomy to one variable gadget: true-partitioned
/// when every top-tree shared edge sits in a star centered inside the gadget
/// and every bottom-tree shared edge in a star centered outside; mirrored for
/// false-partitioned; anything else is invalid.
GadgetClassification classify_gadget_partition(const Graph& g, const GadgetRegistry& registry,
                                               const EdgePartition& partition, int variable);

/// The truth assignment a partition induces over the registry's variables,
/// or nullopt if any gadget classifies as invalid. Indexed by variable; the
/// flag is meaningful only for variables that own a gadget.
std::optional<std::vector<bool>> partition_assignment(const Graph& g,
                                                      const GadgetRegistry& registry,
                                                      const EdgePartition& partition,
                                                      int variable_count);

}  // namespace anonkit
