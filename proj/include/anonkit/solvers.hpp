#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "anonkit/core.hpp"
#include "anonkit/hierarchy.hpp"

namespace anonkit {

/// Optimal 2-anonymity through simplex matching: build the row hypergraph,
/// solve the matching exactly, and read each chosen edge back as a group.
/// With a hierarchy, edge costs are generalization costs and the returned
/// total_cost is the optimal generalization cost of the grouping (the
/// anonymized rows are still rendered in the suppression model).
AnonymizationSolution solve_2_anonymity(const Database& db,
                                        const GeneralizationHierarchy* h = nullptr);

/// Exact minimum over all partitions into groups of size k..2k-1, by subset
/// dynamic programming over row-index bitmasks. The group-size cap is safe:
/// any larger group splits into such groups at no extra cost.
AnonymizationSolution brute_force_k_anonymity(const Database& db, int k);

/// Optimal k-anonymity by halving recursion: a multiset S with |S| >= 2k
/// splits into T and S-T with |T| in [ceil(|S|/2), min(ceil(|S|/2)+2k, |S|-k)];
/// bases of size k..2k-1 become single groups. Subproblems are memoized on
/// the multiset of row contents, so heavily duplicated databases stay cheap.
AnonymizationSolution solve_k_anonymity_dnc(const Database& db, int k);

/// Output of the kernelization pass.
struct KernelizationResult {
    Database kernel;
    /// Pure groups of k identical rows peeled off the input, as original row
    /// indices (each group's rows share one content).
    std::vector<RowGroup> extracted_groups;
    /// Original index of each kernel row, in kernel order.
    std::vector<int> kernel_row_origin;
    /// Instrumentation: number of cell reads/writes performed.
    long long cells_touched = 0;
};

/// Peels pure groups of k rows off any row content whose remaining
/// multiplicity exceeds T = k * 2k * 2^columns, leaving a kernel of at most
/// 2k^2 (2c)^columns rows. Runs in O(n * columns) cell operations.
KernelizationResult kernelize(const Database& db, int k);

/// Kernelize, solve the kernel by divide and conquer, then add the extracted
/// pure groups back (they contribute no stars, so the cost is unchanged).
AnonymizationSolution solve_k_anonymity_kernelized(const Database& db, int k);

}  // namespace anonkit
