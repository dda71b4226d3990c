#include "k12/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace k12::log {

namespace {
std::atomic<bool> g_quiet{false};
std::mutex g_mutex;

const char* level_name(Level level) {
    switch (level) {
        case Level::info: return "INFO";
        case Level::warn: return "WARN";
        case Level::error: return "ERROR";
    }
    return "INFO";
}
} // namespace

void emit(Level level, std::string_view stage, std::string_view msg) {
    if (level == Level::info && g_quiet.load()) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::cerr << level_name(level) << '\t' << stage << '\t' << msg << '\n';
}

void info(std::string_view stage, std::string_view msg) { emit(Level::info, stage, msg); }
void warn(std::string_view stage, std::string_view msg) { emit(Level::warn, stage, msg); }
void error(std::string_view stage, std::string_view msg) { emit(Level::error, stage, msg); }

void set_quiet(bool quiet) { g_quiet.store(quiet); }

} // namespace k12::log
