#include "voltgrid/common.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

namespace voltgrid {

namespace {

LogLevel parse_env_level() {
  const char* v = std::getenv("VOLTGRID_LOG");
  if (!v) return LogLevel::kInfo;
  if (std::strcmp(v, "error") == 0) return LogLevel::kError;
  if (std::strcmp(v, "warn") == 0) return LogLevel::kWarn;
  if (std::strcmp(v, "info") == 0) return LogLevel::kInfo;
  if (std::strcmp(v, "debug") == 0) return LogLevel::kDebug;
  return LogLevel::kInfo;
}

LogLevel g_level = parse_env_level();
std::mutex g_log_mutex;

const char* level_name(LogLevel lvl) {
  switch (lvl) {
    case LogLevel::kError: return "error";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kInfo: return "info";
    case LogLevel::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_level() { return g_level; }
void set_log_level(LogLevel lvl) { g_level = lvl; }

void log_msg(LogLevel lvl, const char* fmt, ...) {
  if (static_cast<int>(lvl) > static_cast<int>(g_level)) return;
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::fprintf(stderr, "[voltgrid:%s] ", level_name(lvl));
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

void parallel_chunks(std::size_t n, int chunks,
                     const std::function<void(std::size_t, std::size_t, int)>& fn) {
  if (chunks < 1) chunks = 1;
  if (n == 0) return;
  if (chunks == 1 || n == 1) {
    fn(0, n, 0);
    return;
  }
  const std::size_t per = (n + chunks - 1) / static_cast<std::size_t>(chunks);
  std::vector<std::thread> workers;
  for (int c = 0; c < chunks; ++c) {
    const std::size_t begin = per * static_cast<std::size_t>(c);
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + per);
    workers.emplace_back([=, &fn] { fn(begin, end, c); });
  }
  for (auto& w : workers) w.join();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace voltgrid
