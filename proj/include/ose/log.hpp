#pragma once

#include <string_view>

namespace ose::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Current threshold. Initialized once from the OSE_LOG environment
/// variable (error|warn|info|debug); defaults to warn.
Level level() noexcept;
void set_level(Level level) noexcept;

void write(Level level, std::string_view message);

inline void error(std::string_view message) { write(Level::kError, message); }
inline void warn(std::string_view message) { write(Level::kWarn, message); }
inline void info(std::string_view message) { write(Level::kInfo, message); }
inline void debug(std::string_view message) { write(Level::kDebug, message); }

} // namespace ose::log
