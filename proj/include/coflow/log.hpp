#pragma once
// Minimal stderr logging. Verbosity comes from COFLOW_LOG
// (error | warn | info | debug); the default is warn.

#include <string_view>

namespace coflow {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

LogLevel log_level();
void set_log_level(LogLevel level);
void log_message(LogLevel level, std::string_view message);

inline void log_warn(std::string_view message) { log_message(LogLevel::kWarn, message); }
inline void log_info(std::string_view message) { log_message(LogLevel::kInfo, message); }
inline void log_debug(std::string_view message) { log_message(LogLevel::kDebug, message); }

}  // namespace coflow
