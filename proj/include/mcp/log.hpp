#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace mcp::log {

enum class Level { Off = 0, Info = 1, Debug = 2 };

inline Level level() {
  static Level lv = [] {
    const char* e = std::getenv("MCP_LOG");
    if (!e) return Level::Off;
    if (std::strcmp(e, "debug") == 0) return Level::Debug;
    if (std::strcmp(e, "info") == 0) return Level::Info;
    return Level::Off;
  }();
  return lv;
}

inline bool enabled(Level lv) { return static_cast<int>(level()) >= static_cast<int>(lv); }

inline void write(Level lv, const std::string& msg) {
  if (enabled(lv)) std::fprintf(stderr, "[mcp] %s\n", msg.c_str());
}

inline void info(const std::string& msg) { write(Level::Info, msg); }
inline void debug(const std::string& msg) { write(Level::Debug, msg); }

}  // namespace mcp::log
