#include "coflow/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coflow {

using nlohmann::json;

std::string topology_to_json(const Network& net, int indent) {
    json j;
    j["nodes"] = json::array();
    for (std::size_t n = 0; n < net.node_count(); ++n) {
        const NodeId id{static_cast<std::int32_t>(n)};
        j["nodes"].push_back({{"id", id.value}, {"role", std::string(role_name(net.role(id)))}});
    }
    j["links"] = json::array();
    for (std::size_t l = 0; l < net.link_count(); ++l) {
        const LinkId id{static_cast<std::int32_t>(l)};
        const Link& link = net.link(id);
        j["links"].push_back(
            {{"u", link.u.value}, {"v", link.v.value}, {"capacity", link.capacity}, {"available", net.available(id)}});
    }
    return j.dump(indent);
}

Network topology_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        Network net;
        const auto& nodes = j.at("nodes");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].at("id").get<int>() != static_cast<int>(i)) {
                throw Error("topology: node ids must be dense and in order (entry " + std::to_string(i) + ")");
            }
            net.add_node(parse_role(nodes[i].at("role").get<std::string>()));
        }
        for (const auto& l : j.at("links")) {
            const LinkId id = net.add_link(NodeId{l.at("u").get<std::int32_t>()}, NodeId{l.at("v").get<std::int32_t>()},
                                           l.at("capacity").get<double>());
            if (l.contains("available")) {
                const double a = l.at("available").get<double>();
                if (a < 0.0 || a > net.capacity(id) + kRateTolerance) {
                    throw Error("topology: link " + std::to_string(id.value) + " availability out of range");
                }
                net.set_available(id, a);
            }
        }
        return net;
    } catch (const json::exception& e) {
        throw Error(std::string("topology: ") + e.what());
    }
}

std::string coflow_to_json(const Coflow& coflow, int indent) {
    json j;
    j["flows"] = json::array();
    for (const Flow& f : coflow.flows) {
        j["flows"].push_back({{"src", f.src.value}, {"dst", f.dst.value}, {"volume", f.volume}});
    }
    return j.dump(indent);
}

Coflow coflow_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        Coflow c;
        int id = 0;
        for (const auto& f : j.at("flows")) {
            c.flows.push_back(make_flow(id++, NodeId{f.at("src").get<std::int32_t>()}, NodeId{f.at("dst").get<std::int32_t>()},
                                        f.at("volume").get<double>()));
        }
        return c;
    } catch (const json::exception& e) {
        throw Error(std::string("coflow: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << contents;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace coflow
