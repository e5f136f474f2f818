#include "coflow/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

namespace coflow {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t at(NodeId n) { return static_cast<std::size_t>(n.value); }
std::size_t at(LinkId l) { return static_cast<std::size_t>(l.value); }

// Links and nodes excluded from a search (Yen spur computations).
struct Mask {
    std::vector<char> node_blocked;
    std::vector<char> link_blocked;

    explicit Mask(const Network& net) : node_blocked(net.node_count(), 0), link_blocked(net.link_count(), 0) {}
};

// Effective width of a link under an optional cap; <= tolerance means unusable.
double effective(std::span<const double> width, LinkId l, double cap) { return std::min(width[at(l)], cap); }

bool usable(const Mask& mask, LinkId l, NodeId next) {
    return !mask.link_blocked[at(l)] && !mask.node_blocked[at(next)];
}

// Max achievable bottleneck from src to dst (0 when unreachable).
double widest_value(const Network& net, NodeId src, NodeId dst, std::span<const double> width, double cap,
                    const Mask& mask) {
    std::vector<double> best(net.node_count(), 0.0);
    std::priority_queue<std::pair<double, std::int32_t>> heap;
    best[at(src)] = kInf;
    heap.emplace(kInf, src.value);
    while (!heap.empty()) {
        auto [w, u] = heap.top();
        heap.pop();
        if (w < best[static_cast<std::size_t>(u)]) continue;
        if (u == dst.value) return w;
        for (const Adjacent& adj : net.neighbors(NodeId{u})) {
            if (!usable(mask, adj.link, adj.node)) continue;
            const double e = effective(width, adj.link, cap);
            if (e <= kRateTolerance) continue;
            const double nw = std::min(w, e);
            if (nw > best[at(adj.node)]) {
                best[at(adj.node)] = nw;
                heap.emplace(nw, adj.node.value);
            }
        }
    }
    return 0.0;
}

// Fewest-hop, lexicographically smallest path over links with effective width >= threshold.
std::optional<Path> shortest_with_threshold(const Network& net, NodeId src, NodeId dst,
                                            std::span<const double> width, double cap, double threshold,
                                            const Mask& mask) {
    auto ok = [&](const Adjacent& adj) {
        if (!usable(mask, adj.link, adj.node)) return false;
        const double e = effective(width, adj.link, cap);
        return e > kRateTolerance && e >= threshold;
    };
    // BFS distances to dst, then walk greedily from src over the smallest-id neighbour.
    std::vector<int> dist(net.node_count(), -1);
    std::queue<NodeId> q;
    dist[at(dst)] = 0;
    q.push(dst);
    while (!q.empty()) {
        const NodeId u = q.front();
        q.pop();
        if (u == src) break;
        for (const Adjacent& adj : net.neighbors(u)) {
            if (dist[at(adj.node)] >= 0 || !ok(adj)) continue;
            // The source may be masked only as an intermediate; it is always a legal start.
            dist[at(adj.node)] = dist[at(u)] + 1;
            q.push(adj.node);
        }
    }
    if (dist[at(src)] < 0) return std::nullopt;
    std::vector<NodeId> nodes{src};
    NodeId cur = src;
    while (cur != dst) {
        for (const Adjacent& adj : net.neighbors(cur)) {
            if (dist[at(adj.node)] == dist[at(cur)] - 1 && ok(adj)) {
                cur = adj.node;
                break;
            }
        }
        nodes.push_back(cur);
    }
    return Path::from_nodes(net, std::move(nodes));
}

std::optional<Path> widest_then_shortest(const Network& net, NodeId src, NodeId dst, std::span<const double> width,
                                         double cap, const Mask& mask) {
    if (src == dst) throw Error("path query with identical endpoints");
    const double w = widest_value(net, src, dst, width, cap, mask);
    if (w <= kRateTolerance) return std::nullopt;
    return shortest_with_threshold(net, src, dst, width, cap, w, mask);
}

enum class SpurRule { kShortest, kWidest, kShortestWidest };

// Yen's deviation scheme. `key` orders paths (smaller is better).
template <typename Key>
std::vector<Path> yen(const Network& net, NodeId src, NodeId dst, int k, std::span<const double> width,
                      SpurRule rule, Key key) {
    std::vector<Path> found;
    if (k <= 0) return found;
    if (src == dst) throw Error("path query with identical endpoints");
    Mask empty(net);
    std::optional<Path> first = rule == SpurRule::kShortest
                                    ? shortest_with_threshold(net, src, dst, width, kInf, 0.0, empty)
                                    : widest_then_shortest(net, src, dst, width, kInf, empty);
    if (!first) return found;
    found.push_back(*first);

    using Ranked = std::pair<decltype(key(*first)), Path>;
    std::set<Ranked> candidates;

    while (static_cast<int>(found.size()) < k) {
        const Path& prev = found.back();
        for (std::size_t i = 0; i + 1 < prev.nodes().size(); ++i) {
            const NodeId spur = prev.nodes()[i];
            Mask mask(net);
            std::vector<NodeId> root(prev.nodes().begin(), prev.nodes().begin() + static_cast<long>(i) + 1);
            for (const Path& p : found) {
                if (p.nodes().size() > i + 1 && std::equal(root.begin(), root.end(), p.nodes().begin())) {
                    mask.link_blocked[at(p.links()[i])] = 1;
                }
            }
            for (std::size_t j = 0; j < i; ++j) mask.node_blocked[at(root[j])] = 1;

            double root_width = kInf;
            for (std::size_t j = 0; j < i; ++j) root_width = std::min(root_width, width[at(prev.links()[j])]);

            std::optional<Path> spur_path;
            switch (rule) {
                case SpurRule::kShortest:
                    spur_path = shortest_with_threshold(net, spur, dst, width, kInf, 0.0, mask);
                    break;
                case SpurRule::kWidest:
                    spur_path = widest_then_shortest(net, spur, dst, width, kInf, mask);
                    break;
                case SpurRule::kShortestWidest:
                    spur_path = widest_then_shortest(net, spur, dst, width, root_width, mask);
                    break;
            }
            if (!spur_path) continue;
            std::vector<NodeId> nodes = root;
            nodes.insert(nodes.end(), spur_path->nodes().begin() + 1, spur_path->nodes().end());
            Path total = Path::from_nodes(net, std::move(nodes));
            if (std::find(found.begin(), found.end(), total) != found.end()) continue;
            auto rank = key(total);
            candidates.emplace(std::move(rank), std::move(total));
        }
        if (candidates.empty()) break;
        found.push_back(candidates.begin()->second);
        candidates.erase(candidates.begin());
    }
    std::stable_sort(found.begin(), found.end(), [&](const Path& a, const Path& b) { return key(a) < key(b); });
    return found;
}

}  // namespace

double bottleneck(const Path& path, std::span<const double> width) {
    double w = kInf;
    for (LinkId l : path.links()) w = std::min(w, width[at(l)]);
    return w;
}

std::optional<Path> max_capacity_path(const Network& net, NodeId src, NodeId dst, std::span<const double> width) {
    if (width.size() != net.link_count()) throw Error("width vector size does not match link count");
    return widest_then_shortest(net, src, dst, width, kInf, Mask(net));
}

std::optional<Path> shortest_max_capacity_path(const Network& net, NodeId src, NodeId dst) {
    const std::vector<double> avail = net.available_all();
    return widest_then_shortest(net, src, dst, avail, kInf, Mask(net));
}

std::optional<Path> shortest_path(const Network& net, NodeId src, NodeId dst, std::span<const double> width) {
    if (src == dst) throw Error("path query with identical endpoints");
    return shortest_with_threshold(net, src, dst, width, kInf, 0.0, Mask(net));
}

std::vector<Path> k_shortest_paths(const Network& net, NodeId src, NodeId dst, int k) {
    const std::vector<double> avail = net.available_all();
    return yen(net, src, dst, k, avail, SpurRule::kShortest,
               [](const Path& p) { return std::make_tuple(p.hops(), p.nodes()); });
}

std::vector<Path> k_max_capacity_paths(const Network& net, NodeId src, NodeId dst, int k) {
    const std::vector<double> avail = net.available_all();
    return yen(net, src, dst, k, avail, SpurRule::kWidest, [&](const Path& p) {
        return std::make_tuple(-bottleneck(p, avail), p.hops(), p.nodes());
    });
}

std::vector<Path> k_shortest_max_capacity_paths(const Network& net, NodeId src, NodeId dst, int k) {
    const std::vector<double> avail = net.available_all();
    return yen(net, src, dst, k, avail, SpurRule::kShortestWidest, [&](const Path& p) {
        return std::make_tuple(-bottleneck(p, avail), p.hops(), p.nodes());
    });
}

double count_shortest_paths(const Network& net, NodeId src, NodeId dst) {
    // Path counts can overflow 64-bit integers on large fabrics; a double is exact far enough.
    std::vector<int> dist(net.node_count(), -1);
    std::vector<double> count(net.node_count(), 0.0);
    std::queue<NodeId> q;
    dist[at(src)] = 0;
    count[at(src)] = 1.0;
    q.push(src);
    while (!q.empty()) {
        const NodeId u = q.front();
        q.pop();
        for (const Adjacent& adj : net.neighbors(u)) {
            if (dist[at(adj.node)] < 0) {
                dist[at(adj.node)] = dist[at(u)] + 1;
                q.push(adj.node);
            }
            if (dist[at(adj.node)] == dist[at(u)] + 1) count[at(adj.node)] += count[at(u)];
        }
    }
    return count[at(dst)];
}

Path nth_shortest_path(const Network& net, NodeId src, NodeId dst, double index) {
    // Counts of shortest continuations from each node towards dst.
    std::vector<int> dist(net.node_count(), -1);
    std::vector<double> count(net.node_count(), 0.0);
    std::queue<NodeId> q;
    dist[at(dst)] = 0;
    count[at(dst)] = 1.0;
    q.push(dst);
    while (!q.empty()) {
        const NodeId u = q.front();
        q.pop();
        for (const Adjacent& adj : net.neighbors(u)) {
            if (dist[at(adj.node)] < 0) {
                dist[at(adj.node)] = dist[at(u)] + 1;
                q.push(adj.node);
            }
            if (dist[at(adj.node)] == dist[at(u)] + 1) count[at(adj.node)] += count[at(u)];
        }
    }
    if (dist[at(src)] < 0) throw Error("nth_shortest_path: endpoints disconnected");
    if (index < 0 || index >= count[at(src)]) throw Error("nth_shortest_path: index out of range");
    std::vector<NodeId> nodes{src};
    NodeId cur = src;
    while (cur != dst) {
        for (const Adjacent& adj : net.neighbors(cur)) {
            if (dist[at(adj.node)] != dist[at(cur)] - 1) continue;
            if (index < count[at(adj.node)]) {
                cur = adj.node;
                break;
            }
            index -= count[at(adj.node)];
        }
        nodes.push_back(cur);
    }
    return Path::from_nodes(net, std::move(nodes));
}

}  // namespace coflow
