#pragma once

#include <string>
#include <string_view>

namespace k12::log {

enum class Level { info, warn, error };

// Log lines go to stderr as "LEVEL<TAB>stage<TAB>message".
void emit(Level level, std::string_view stage, std::string_view msg);

void info(std::string_view stage, std::string_view msg);
void warn(std::string_view stage, std::string_view msg);
void error(std::string_view stage, std::string_view msg);

// Suppresses info-level output (tests).
void set_quiet(bool quiet);

} // namespace k12::log
