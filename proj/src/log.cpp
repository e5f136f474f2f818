#include "coflow/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace coflow {
namespace {

LogLevel from_env() {
    const char* env = std::getenv("COFLOW_LOG");
    if (!env) return LogLevel::kWarn;
    const std::string v(env);
    if (v == "error") return LogLevel::kError;
    if (v == "info") return LogLevel::kInfo;
    if (v == "debug") return LogLevel::kDebug;
    return LogLevel::kWarn;
}

std::atomic<LogLevel>& level() {
    static std::atomic<LogLevel> l{from_env()};
    return l;
}

}  // namespace

LogLevel log_level() { return level().load(); }
void set_log_level(LogLevel l) { level().store(l); }

void log_message(LogLevel l, std::string_view message) {
    if (static_cast<int>(l) > static_cast<int>(log_level())) return;
    static std::mutex mu;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "[coflow " << names[static_cast<int>(l)] << "] " << message << "\n";
}

}  // namespace coflow
