#pragma once

#include <string_view>

// Minimal stderr logger; the level comes from MIXAR_LOG (error, warn, info, debug).
namespace mixar::log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level level();
void write(Level lvl, std::string_view msg);

inline void warn(std::string_view msg) { write(Level::Warn, msg); }
inline void info(std::string_view msg) { write(Level::Info, msg); }
inline void debug(std::string_view msg) { write(Level::Debug, msg); }

}  // namespace mixar::log
