#pragma once
// Path search over a Network. Widths are per-link values indexed by LinkId;
// a link with width <= kRateTolerance is treated as absent.
//
// Ties are always broken by (primary key, hop count, lexicographically
// smallest node sequence), so every query is deterministic.

#include <optional>
#include <span>
#include <vector>

#include "coflow/network.hpp"

namespace coflow {

/// Minimum width over the links of `path` (+inf for an empty path).
double bottleneck(const Path& path, std::span<const double> width);

/// Widest path: maximises the bottleneck width, then minimises hops.
/// nullopt when src and dst are disconnected under positive widths.
std::optional<Path> max_capacity_path(const Network& net, NodeId src, NodeId dst, std::span<const double> width);

/// Widest path under available bandwidth, fewest hops among the widest.
std::optional<Path> shortest_max_capacity_path(const Network& net, NodeId src, NodeId dst);

/// Fewest-hop path over links with positive width.
std::optional<Path> shortest_path(const Network& net, NodeId src, NodeId dst, std::span<const double> width);

/// Up to K loopless paths in nondecreasing hop count, over links with
/// positive available bandwidth.
std::vector<Path> k_shortest_paths(const Network& net, NodeId src, NodeId dst, int k);

/// Up to K loopless paths in nonincreasing bottleneck order. Each deviation
/// follows the widest spur path regardless of length.
std::vector<Path> k_max_capacity_paths(const Network& net, NodeId src, NodeId dst, int k);

/// Up to K loopless paths ordered by (bottleneck desc, hops asc). Each
/// deviation takes the shortest spur that keeps the best reachable bottleneck.
std::vector<Path> k_shortest_max_capacity_paths(const Network& net, NodeId src, NodeId dst, int k);

/// Number of shortest (fewest-hop) paths from src to dst over all links.
double count_shortest_paths(const Network& net, NodeId src, NodeId dst);

/// The index-th (0-based) shortest path in lexicographic node order.
Path nth_shortest_path(const Network& net, NodeId src, NodeId dst, double index);

}  // namespace coflow
