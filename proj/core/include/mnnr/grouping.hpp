#pragma once

#include "mnnr/geometry.hpp"
#include "mnnr/point_process.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace mnnr {

/// Nearest neighbour of every atom under a boundary policy.
struct NearestNeighbourMap {
    std::vector<std::size_t> nn_index;
    std::vector<double> nn_distance;

    std::size_t size() const { return nn_index.size(); }
};

/// Atom class in a grouping.
enum class GroupClass : char { single = 'S', pair = 'P', triplet = 'T' };

/// Partition of a pattern's atoms into singles, mutual-nearest-neighbour pairs
/// and (for K = 3) triplets. Index sets are sorted; pairs are stored as
/// (low, high), triplets ascending.
struct GroupingResult {
    std::vector<std::size_t> singles;
    std::vector<std::array<std::size_t, 2>> pairs;
    std::vector<std::array<std::size_t, 3>> triplets;

    std::size_t atom_count() const { return singles.size() + 2 * pairs.size() + 3 * triplets.size(); }

    friend bool operator==(const GroupingResult&, const GroupingResult&) = default;
};

/// Per-atom view of a grouping: class and up to two partners (npos if absent).
struct AtomRole {
    GroupClass group = GroupClass::single;
    std::size_t partner1 = static_cast<std::size_t>(-1);
    std::size_t partner2 = static_cast<std::size_t>(-1);
};

std::vector<AtomRole> atom_roles(const GroupingResult& grouping, std::size_t n_atoms);

/// Grid-accelerated nearest-neighbour map; ties go to the lowest index.
/// Throws std::domain_error for fewer than two atoms or coincident atoms.
NearestNeighbourMap build_nn_map(const PointPattern& pattern, const BoundaryPolicy& policy);

/// Singles and mutual-nearest-neighbour pairs.
GroupingResult classify_k2(const PointPattern& pattern, const NearestNeighbourMap& nn);

/// Extends a K = 2 grouping: every pair adopts, among the singles whose
/// nearest neighbour is one of its members, the one closest to that member.
/// Single pass; a single that loses is not offered to any other pair.
GroupingResult classify_k3(const PointPattern& pattern, const GroupingResult& k2,
                           const NearestNeighbourMap& nn);

/// Convenience wrapper valid for any atom count: 0 atoms give an empty
/// grouping and a lone atom is a single.
GroupingResult classify(const PointPattern& pattern, const BoundaryPolicy& policy, int k = 2);

enum class Subprocess { singles, pairs };

/// Restriction of `pattern` to one class; original indices are kept as provenance.
PointPattern subpattern(const PointPattern& pattern, const GroupingResult& grouping, Subprocess which);

/// Sorted indices of the atoms in pairs.
std::vector<std::size_t> pair_members(const GroupingResult& grouping);

}  // namespace mnnr
