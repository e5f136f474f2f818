#pragma once
// JSON topology and coflow fixtures.
//
//   topology: {"nodes":[{"id":0,"role":"host"},...],
//              "links":[{"u":0,"v":32,"capacity":10,"available":10},...]}
//   coflow:   {"flows":[{"src":0,"dst":5,"volume":100},...]}

#include <string>

#include "coflow/coflow.hpp"
#include "coflow/network.hpp"

namespace coflow {

std::string topology_to_json(const Network& net, int indent = -1);
/// Throws coflow::Error on malformed input (node ids must be 0..n-1 in order).
Network topology_from_json(const std::string& text);

std::string coflow_to_json(const Coflow& coflow, int indent = -1);
/// Flow ids are assigned in file order; residual starts at the volume.
Coflow coflow_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace coflow
