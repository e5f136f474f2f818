#pragma once
// Capacitated datacenter network: nodes, undirected links with a canonical
// orientation, and mutable per-link available bandwidth.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coflow {

/// Absolute tolerance for every bandwidth feasibility comparison, in Gb/s.
inline constexpr double kRateTolerance = 1e-9;

/// Available bandwidth is tracked in integer multiples of this quantum (Gb/s)
/// so that allocations and releases commute exactly.
inline constexpr double kBandwidthQuantum = 1e-12;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Role : std::uint8_t { kHost, kTor, kAggregation, kCore };

std::string_view role_name(Role role);
Role parse_role(std::string_view name);

struct NodeId {
    std::int32_t value = -1;
    friend auto operator<=>(NodeId, NodeId) = default;
};

struct LinkId {
    std::int32_t value = -1;
    friend auto operator<=>(LinkId, LinkId) = default;
};

struct Link {
    NodeId u;
    NodeId v;
    double capacity = 0.0;

    NodeId other(NodeId n) const { return n == u ? v : u; }
};

struct Adjacent {
    NodeId node;
    LinkId link;
};

class Path;

class Network {
  public:
    NodeId add_node(Role role);
    /// Adds the physical link u-v; rejects self-loops, parallel links and
    /// nonpositive capacity. The link starts fully available.
    LinkId add_link(NodeId u, NodeId v, double capacity);

    std::size_t node_count() const { return roles_.size(); }
    std::size_t link_count() const { return links_.size(); }

    Role role(NodeId n) const { return roles_.at(index(n)); }
    const Link& link(LinkId l) const { return links_.at(index(l)); }
    std::span<const Link> links() const { return links_; }
    /// Neighbours sorted by node id.
    std::span<const Adjacent> neighbors(NodeId n) const { return adjacency_.at(index(n)); }
    std::optional<LinkId> find_link(NodeId a, NodeId b) const;
    std::vector<NodeId> hosts() const;
    bool contains(NodeId n) const { return n.value >= 0 && index(n) < roles_.size(); }

    double capacity(LinkId l) const { return link(l).capacity; }
    double available(LinkId l) const;
    /// Available bandwidth of every link, indexed by LinkId.
    std::vector<double> available_all() const;
    /// Minimum available bandwidth over the links of a path.
    double bottleneck(const Path& path) const;

    void set_available(LinkId l, double rate);
    void reset_available();

    /// Takes `rate` from every link of the path. Over-allocation beyond
    /// kRateTolerance throws and leaves the network unchanged.
    void allocate_along(const Path& path, double rate);
    /// Returns `rate` to every link of the path; exact inverse of allocate_along.
    void release_along(const Path& path, double rate);

    /// Raw fixed-point availability; equal snapshots mean byte-identical state.
    const std::vector<std::int64_t>& availability_units() const { return available_units_; }

  private:
    static std::size_t index(NodeId n) { return static_cast<std::size_t>(n.value); }
    static std::size_t index(LinkId l) { return static_cast<std::size_t>(l.value); }

    std::vector<Role> roles_;
    std::vector<Link> links_;
    std::vector<std::int64_t> available_units_;
    std::vector<std::vector<Adjacent>> adjacency_;
};

std::int64_t to_units(double rate);
double from_units(std::int64_t units);

/// A simple route: consecutive nodes adjacent, no repeated node.
class Path {
  public:
    Path() = default;
    /// Validates adjacency and simplicity against `net`.
    static Path from_nodes(const Network& net, std::vector<NodeId> nodes);

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<LinkId>& links() const { return links_; }
    std::size_t hops() const { return links_.size(); }
    bool empty() const { return nodes_.empty(); }
    NodeId source() const { return nodes_.front(); }
    NodeId destination() const { return nodes_.back(); }
    bool uses(LinkId l) const;

    friend bool operator==(const Path& a, const Path& b) { return a.nodes_ == b.nodes_; }
    friend auto operator<=>(const Path& a, const Path& b) { return a.nodes_ <=> b.nodes_; }

  private:
    std::vector<NodeId> nodes_;
    std::vector<LinkId> links_;
};

std::string to_string(const Path& path);

/// k-pod FatTree whose racks hold alpha_over * k/2 hosts. Node ids are
/// assigned hosts first, then ToR, aggregation and core switches. Core c
/// connects to aggregation switch c / (k/2) of every pod.
Network fat_tree(int k, int alpha_over, double link_capacity);

/// alpha_over * k^3/4 + k^2 + (k/2)^2
std::size_t fat_tree_node_count(int k, int alpha_over);

}  // namespace coflow
