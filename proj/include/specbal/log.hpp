#pragma once

// Minimal stderr logger gated by the SPECBAL_LOG environment variable
// (error|warn|info|debug, default warn).

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <utility>

namespace specbal::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

inline Level threshold() {
    static const Level lvl = [] {
        const char* env = std::getenv("SPECBAL_LOG");
        if (env == nullptr) return Level::kWarn;
        if (std::strcmp(env, "error") == 0) return Level::kError;
        if (std::strcmp(env, "warn") == 0) return Level::kWarn;
        if (std::strcmp(env, "info") == 0) return Level::kInfo;
        if (std::strcmp(env, "debug") == 0) return Level::kDebug;
        return Level::kWarn;
    }();
    return lvl;
}

template <typename... Args>
void emit(Level lvl, const char* tag, const char* fmt, Args&&... args) {
    if (lvl > threshold()) return;
    std::fprintf(stderr, "[%s] ", tag);
    std::fprintf(stderr, fmt, std::forward<Args>(args)...);
    std::fputc('\n', stderr);
}

template <typename... Args>
void error(const char* fmt, Args&&... args) {
    emit(Level::kError, "error", fmt, std::forward<Args>(args)...);
}
template <typename... Args>
void warn(const char* fmt, Args&&... args) {
    emit(Level::kWarn, "warn", fmt, std::forward<Args>(args)...);
}
template <typename... Args>
void info(const char* fmt, Args&&... args) {
    emit(Level::kInfo, "info", fmt, std::forward<Args>(args)...);
}
template <typename... Args>
void debug(const char* fmt, Args&&... args) {
    emit(Level::kDebug, "debug", fmt, std::forward<Args>(args)...);
}

}  // namespace specbal::log
