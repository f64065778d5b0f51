#include "mnnr/grouping.hpp"

#include "mnnr/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mnnr {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::vector<AtomRole> atom_roles(const GroupingResult& grouping, std::size_t n_atoms) {
    std::vector<AtomRole> roles(n_atoms);
    for (const auto& [a, b] : grouping.pairs) {
        roles.at(a) = {GroupClass::pair, b, kNone};
        roles.at(b) = {GroupClass::pair, a, kNone};
    }
    for (const auto& t : grouping.triplets) {
        for (std::size_t k = 0; k < 3; ++k)
            roles.at(t[k]) = {GroupClass::triplet, t[(k + 1) % 3], t[(k + 2) % 3]};
    }
    return roles;
}

NearestNeighbourMap build_nn_map(const PointPattern& pattern, const BoundaryPolicy& policy) {
    if (pattern.size() < 2) throw std::domain_error("build_nn_map: need at least two atoms");
    validate_policy(policy, pattern.window());

    const CellGrid grid(pattern.points(), pattern.window(), policy);
    NearestNeighbourMap nn;
    nn.nn_index.resize(pattern.size());
    nn.nn_distance.resize(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const auto hit = grid.nearest(pattern[i], i);
        if (hit.squared_distance == 0.0)
            throw std::domain_error("build_nn_map: coincident atoms " + std::to_string(i) + " and " +
                                    std::to_string(hit.index));
        nn.nn_index[i] = hit.index;
        nn.nn_distance[i] = std::sqrt(hit.squared_distance);
    }
    return nn;
}

GroupingResult classify_k2(const PointPattern& pattern, const NearestNeighbourMap& nn) {
    if (nn.size() != pattern.size()) throw std::domain_error("classify_k2: nn map size mismatch");
    GroupingResult out;
    for (std::size_t i = 0; i < nn.size(); ++i) {
        const std::size_t j = nn.nn_index[i];
        if (j >= nn.size()) throw std::domain_error("classify_k2: nn index out of range");
        if (nn.nn_index[j] == i) {
            if (i < j) out.pairs.push_back({i, j});
        } else {
            out.singles.push_back(i);
        }
    }
    return out;
}

GroupingResult classify_k3(const PointPattern& pattern, const GroupingResult& k2,
                           const NearestNeighbourMap& nn) {
    if (nn.size() != pattern.size()) throw std::domain_error("classify_k3: nn map size mismatch");
    if (k2.atom_count() != pattern.size() || !k2.triplets.empty())
        throw std::domain_error("classify_k3: expects a K=2 grouping of the same pattern");

    std::vector<std::size_t> pair_of(pattern.size(), kNone);
    for (std::size_t p = 0; p < k2.pairs.size(); ++p) {
        pair_of[k2.pairs[p][0]] = p;
        pair_of[k2.pairs[p][1]] = p;
    }

    // Closest eligible single per pair; ties go to the lower index since
    // singles are scanned in ascending order.
    std::vector<std::size_t> winner(k2.pairs.size(), kNone);
    for (std::size_t s : k2.singles) {
        const std::size_t p = pair_of[nn.nn_index[s]];
        if (p == kNone) continue;
        if (winner[p] == kNone || nn.nn_distance[s] < nn.nn_distance[winner[p]]) winner[p] = s;
    }

    GroupingResult out;
    std::vector<bool> attached(pattern.size(), false);
    for (std::size_t p = 0; p < k2.pairs.size(); ++p) {
        if (winner[p] == kNone) {
            out.pairs.push_back(k2.pairs[p]);
            continue;
        }
        std::array<std::size_t, 3> t{k2.pairs[p][0], k2.pairs[p][1], winner[p]};
        std::sort(t.begin(), t.end());
        out.triplets.push_back(t);
        attached[winner[p]] = true;
    }
    for (std::size_t s : k2.singles)
        if (!attached[s]) out.singles.push_back(s);
    std::sort(out.triplets.begin(), out.triplets.end());
    return out;
}

GroupingResult classify(const PointPattern& pattern, const BoundaryPolicy& policy, int k) {
    if (k != 2 && k != 3) throw std::domain_error("classify: group size must be 2 or 3");
    if (pattern.size() < 2) {
        GroupingResult out;
        if (pattern.size() == 1) out.singles.push_back(0);
        return out;
    }
    const auto nn = build_nn_map(pattern, policy);
    auto k2 = classify_k2(pattern, nn);
    if (k == 2) return k2;
    return classify_k3(pattern, k2, nn);
}

std::vector<std::size_t> pair_members(const GroupingResult& grouping) {
    std::vector<std::size_t> members;
    members.reserve(2 * grouping.pairs.size());
    for (const auto& [a, b] : grouping.pairs) {
        members.push_back(a);
        members.push_back(b);
    }
    std::sort(members.begin(), members.end());
    return members;
}

PointPattern subpattern(const PointPattern& pattern, const GroupingResult& grouping,
                        Subprocess which) {
    const double lambda = pattern.density_lambda();
    const double singles_share = 1.0 - 1.0 / (2.0 - gamma_constant());
    if (which == Subprocess::singles)
        return pattern.restricted(grouping.singles, lambda * singles_share);
    return pattern.restricted(pair_members(grouping), lambda * (1.0 - singles_share));
}

}  // namespace mnnr
