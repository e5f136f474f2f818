#include "coflow/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace coflow {

std::string_view role_name(Role role) {
    switch (role) {
        case Role::kHost: return "host";
        case Role::kTor: return "tor";
        case Role::kAggregation: return "aggregation";
        case Role::kCore: return "core";
    }
    return "unknown";
}

Role parse_role(std::string_view name) {
    if (name == "host") return Role::kHost;
    if (name == "tor") return Role::kTor;
    if (name == "aggregation") return Role::kAggregation;
    if (name == "core") return Role::kCore;
    throw Error("unknown node role '" + std::string(name) + "'");
}

std::int64_t to_units(double rate) {
    if (!std::isfinite(rate)) throw Error("non-finite bandwidth value");
    return std::llround(rate / kBandwidthQuantum);
}

double from_units(std::int64_t units) { return static_cast<double>(units) * kBandwidthQuantum; }

NodeId Network::add_node(Role role) {
    roles_.push_back(role);
    adjacency_.emplace_back();
    return NodeId{static_cast<std::int32_t>(roles_.size() - 1)};
}

LinkId Network::add_link(NodeId u, NodeId v, double capacity) {
    if (!contains(u) || !contains(v)) throw Error("link endpoint out of range");
    if (u == v) throw Error("self-loop at node " + std::to_string(u.value));
    if (!(capacity > 0.0) || !std::isfinite(capacity)) throw Error("link capacity must be positive");
    if (find_link(u, v)) {
        throw Error("parallel link " + std::to_string(u.value) + "-" + std::to_string(v.value));
    }
    const LinkId id{static_cast<std::int32_t>(links_.size())};
    links_.push_back(Link{u, v, capacity});
    available_units_.push_back(to_units(capacity));
    auto insert_sorted = [](std::vector<Adjacent>& adj, Adjacent a) {
        auto pos = std::lower_bound(adj.begin(), adj.end(), a,
                                    [](const Adjacent& x, const Adjacent& y) { return x.node < y.node; });
        adj.insert(pos, a);
    };
    insert_sorted(adjacency_[index(u)], Adjacent{v, id});
    insert_sorted(adjacency_[index(v)], Adjacent{u, id});
    return id;
}

std::optional<LinkId> Network::find_link(NodeId a, NodeId b) const {
    if (!contains(a) || !contains(b)) return std::nullopt;
    const auto& adj = adjacency_[index(a)];
    auto pos = std::lower_bound(adj.begin(), adj.end(), b,
                                [](const Adjacent& x, NodeId n) { return x.node < n; });
    if (pos != adj.end() && pos->node == b) return pos->link;
    return std::nullopt;
}

std::vector<NodeId> Network::hosts() const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < roles_.size(); ++i) {
        if (roles_[i] == Role::kHost) out.push_back(NodeId{static_cast<std::int32_t>(i)});
    }
    return out;
}

double Network::available(LinkId l) const {
    return std::max(0.0, from_units(available_units_.at(index(l))));
}

std::vector<double> Network::available_all() const {
    std::vector<double> out(links_.size());
    for (std::size_t i = 0; i < links_.size(); ++i) {
        out[i] = std::max(0.0, from_units(available_units_[i]));
    }
    return out;
}

double Network::bottleneck(const Path& path) const {
    double width = std::numeric_limits<double>::infinity();
    for (LinkId l : path.links()) width = std::min(width, available(l));
    return width;
}

void Network::set_available(LinkId l, double rate) {
    if (rate < -kRateTolerance || rate > capacity(l) + kRateTolerance) {
        throw Error("available bandwidth outside [0, capacity] on link " + std::to_string(l.value));
    }
    available_units_.at(index(l)) = to_units(std::clamp(rate, 0.0, capacity(l)));
}

void Network::reset_available() {
    for (std::size_t i = 0; i < links_.size(); ++i) available_units_[i] = to_units(links_[i].capacity);
}

void Network::allocate_along(const Path& path, double rate) {
    if (!(rate >= 0.0)) throw Error("negative allocation");
    const std::int64_t units = to_units(rate);
    for (LinkId l : path.links()) {
        if (from_units(available_units_.at(index(l))) + kRateTolerance < rate) {
            std::ostringstream msg;
            msg << "over-allocation on link " << l.value << ": requested " << rate << " Gb/s, available "
                << available(l);
            throw Error(msg.str());
        }
    }
    for (LinkId l : path.links()) available_units_[index(l)] -= units;
}

void Network::release_along(const Path& path, double rate) {
    if (!(rate >= 0.0)) throw Error("negative release");
    const std::int64_t units = to_units(rate);
    for (LinkId l : path.links()) {
        if (from_units(available_units_.at(index(l)) + units) > capacity(l) + kRateTolerance) {
            throw Error("release exceeds capacity on link " + std::to_string(l.value));
        }
    }
    for (LinkId l : path.links()) available_units_[index(l)] += units;
}

Path Path::from_nodes(const Network& net, std::vector<NodeId> nodes) {
    if (nodes.size() < 2) throw Error("a path needs at least two nodes");
    Path p;
    std::vector<NodeId> seen = nodes;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw Error("path repeats a node");
    p.links_.reserve(nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        auto l = net.find_link(nodes[i], nodes[i + 1]);
        if (!l) {
            throw Error("nodes " + std::to_string(nodes[i].value) + " and " +
                        std::to_string(nodes[i + 1].value) + " are not adjacent");
        }
        p.links_.push_back(*l);
    }
    p.nodes_ = std::move(nodes);
    return p;
}

bool Path::uses(LinkId l) const { return std::find(links_.begin(), links_.end(), l) != links_.end(); }

std::string to_string(const Path& path) {
    std::string out = "[";
    for (std::size_t i = 0; i < path.nodes().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(path.nodes()[i].value);
    }
    return out + "]";
}

std::size_t fat_tree_node_count(int k, int alpha_over) {
    const auto kk = static_cast<std::size_t>(k);
    return static_cast<std::size_t>(alpha_over) * kk * kk * kk / 4 + kk * kk + (kk / 2) * (kk / 2);
}

Network fat_tree(int k, int alpha_over, double link_capacity) {
    if (k < 2 || k % 2 != 0) throw Error("fat_tree: k must be a positive even integer, got " + std::to_string(k));
    if (alpha_over < 1) throw Error("fat_tree: alpha_over must be >= 1");
    const int half = k / 2;
    const int hosts_per_tor = alpha_over * half;
    const int tors = k * half;

    Network net;
    std::vector<NodeId> host_ids, tor_ids, agg_ids, core_ids;
    for (int i = 0; i < tors * hosts_per_tor; ++i) host_ids.push_back(net.add_node(Role::kHost));
    for (int i = 0; i < tors; ++i) tor_ids.push_back(net.add_node(Role::kTor));
    for (int i = 0; i < tors; ++i) agg_ids.push_back(net.add_node(Role::kAggregation));
    for (int i = 0; i < half * half; ++i) core_ids.push_back(net.add_node(Role::kCore));

    for (int t = 0; t < tors; ++t) {
        for (int h = 0; h < hosts_per_tor; ++h) {
            net.add_link(host_ids[static_cast<std::size_t>(t * hosts_per_tor + h)],
                         tor_ids[static_cast<std::size_t>(t)], link_capacity);
        }
    }
    for (int pod = 0; pod < k; ++pod) {
        for (int t = 0; t < half; ++t) {
            for (int a = 0; a < half; ++a) {
                net.add_link(tor_ids[static_cast<std::size_t>(pod * half + t)],
                             agg_ids[static_cast<std::size_t>(pod * half + a)], link_capacity);
            }
        }
    }
    for (int c = 0; c < half * half; ++c) {
        const int a = c / half;
        for (int pod = 0; pod < k; ++pod) {
            net.add_link(agg_ids[static_cast<std::size_t>(pod * half + a)], core_ids[static_cast<std::size_t>(c)],
                         link_capacity);
        }
    }
    return net;
}

}  // namespace coflow
