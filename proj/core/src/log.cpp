#include "log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace mixar::log {

Level level() {
  static const Level lvl = [] {
    const char* env = std::getenv("MIXAR_LOG");
    const std::string v = env ? env : "warn";
    if (v == "error") return Level::Error;
    if (v == "info") return Level::Info;
    if (v == "debug") return Level::Debug;
    return Level::Warn;
  }();
  return lvl;
}

void write(Level lvl, std::string_view msg) {
  if (static_cast<int>(lvl) > static_cast<int>(level())) return;
  static std::mutex mutex;
  static constexpr const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard lock(mutex);
  std::cerr << "[mixar " << names[static_cast<int>(lvl)] << "] " << msg << '\n';
}

}  // namespace mixar::log
