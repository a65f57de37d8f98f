#include "ose/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string>

namespace ose::log {

namespace {

Level parse_env() noexcept {
    const char* raw = std::getenv("OSE_LOG");
    if (raw == nullptr) return Level::kWarn;
    std::string value(raw);
    if (value == "error") return Level::kError;
    if (value == "warn") return Level::kWarn;
    if (value == "info") return Level::kInfo;
    if (value == "debug") return Level::kDebug;
    return Level::kWarn;
}

std::atomic<Level>& threshold() noexcept {
    static std::atomic<Level> value{parse_env()};
    return value;
}

const char* tag(Level level) noexcept {
    switch (level) {
    case Level::kError: return "error";
    case Level::kWarn: return "warn";
    case Level::kInfo: return "info";
    case Level::kDebug: return "debug";
    }
    return "?";
}

} // namespace

Level level() noexcept { return threshold().load(std::memory_order_relaxed); }

void set_level(Level level) noexcept { threshold().store(level, std::memory_order_relaxed); }

void write(Level level, std::string_view message) {
    if (static_cast<int>(level) > static_cast<int>(threshold().load(std::memory_order_relaxed))) {
        return;
    }
    std::cerr << "[" << tag(level) << "] " << message << "\n";
}

} // namespace ose::log
