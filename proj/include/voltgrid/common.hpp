#pragma once

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace voltgrid {

// ---------------------------------------------------------------------------
// Logging. Verbosity comes from the VOLTGRID_LOG env var:
//   error < warn < info (default) < debug
// ---------------------------------------------------------------------------

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

LogLevel log_level();
void set_log_level(LogLevel lvl);
void log_msg(LogLevel lvl, const char* fmt, ...);

#define VG_ERROR(...) ::voltgrid::log_msg(::voltgrid::LogLevel::kError, __VA_ARGS__)
#define VG_WARN(...) ::voltgrid::log_msg(::voltgrid::LogLevel::kWarn, __VA_ARGS__)
#define VG_INFO(...) ::voltgrid::log_msg(::voltgrid::LogLevel::kInfo, __VA_ARGS__)
#define VG_DEBUG(...) ::voltgrid::log_msg(::voltgrid::LogLevel::kDebug, __VA_ARGS__)

// ---------------------------------------------------------------------------
// Seed derivation. All stochastic streams in the project are derived from a
// master seed through this chain, so that any sub-stream is a pure function
// of (master seed, purpose, indices) and runs can be resumed statelessly.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a) {
  return splitmix64(seed ^ splitmix64(a));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  return mix_seed(mix_seed(seed, a, b), c);
}

// Stable stream tags (values are part of the reproducibility contract).
namespace seed_tag {
inline constexpr std::uint64_t kInit = 0x11;
inline constexpr std::uint64_t kEpisode = 0x22;
inline constexpr std::uint64_t kAction = 0x33;
inline constexpr std::uint64_t kShuffle = 0x44;
inline constexpr std::uint64_t kSynthesis = 0x55;
}  // namespace seed_tag

// FNV-1a, used for content hashes in manifests (not cryptographic).
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

// ---------------------------------------------------------------------------
// Deterministic fork/join over fixed chunks. Results are independent of
// thread scheduling because chunk boundaries depend only on (n, chunks).
// ---------------------------------------------------------------------------

void parallel_chunks(std::size_t n, int chunks,
                     const std::function<void(std::size_t begin, std::size_t end, int chunk)>& fn);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace voltgrid
