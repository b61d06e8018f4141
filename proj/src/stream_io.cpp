#include "sxt/stream_io.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "sxt/errors.hpp"

namespace sxt {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'X', 'T', 'S'};

void put_u32(std::ofstream& out, uint32_t v) {
  const char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                     static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  out.write(b, 4);
}

void put_u64(std::ofstream& out, uint64_t v) {
  put_u32(out, static_cast<uint32_t>(v));
  put_u32(out, static_cast<uint32_t>(v >> 32));
}

struct Reader {
  std::ifstream in;
  std::filesystem::path path;

  [[noreturn]] void bad(const std::string& what) {
    throw validation_error(path.string() + ": " + what);
  }

  uint32_t u32(const char* what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
      bad(std::string("truncated file while reading ") + what);
    }
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) |
           (static_cast<uint32_t>(b[3]) << 24);
  }

  uint64_t u64(const char* what) {
    const uint64_t lo = u32(what);
    const uint64_t hi = u32(what);
    return lo | (hi << 32);
  }
};

}  // namespace

void write_stream_file(const std::filesystem::path& path,
                       const ScheduledMatrix& sm) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path.string() + ": cannot open for writing");
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kStreamVersion);
  put_u32(out, sm.pe_count);
  put_u32(out, sm.num_windows);
  put_u32(out, sm.k0);
  put_u32(out, sm.d);
  for (uint32_t pe = 0; pe < sm.pe_count; ++pe) {
    for (uint32_t q : sm.pointers[pe].q) put_u32(out, q);
    for (uint64_t word : sm.streams[pe]) put_u64(out, word);
  }
  if (!out) throw io_error(path.string() + ": write failed");
}

ScheduledMatrix read_stream_file(const std::filesystem::path& path) {
  Reader r{std::ifstream(path, std::ios::binary), path};
  if (!r.in) throw io_error(path.string() + ": cannot open file");
  std::error_code ec;
  const uint64_t file_size = std::filesystem::file_size(path, ec);
  if (ec) throw io_error(path.string() + ": " + ec.message());

  char magic[4];
  if (!r.in.read(magic, 4)) r.bad("truncated file while reading magic");
  if (std::memcmp(magic, kMagic.data(), 4) != 0) {
    r.bad("bad magic; not a scheduled stream file");
  }
  const uint32_t version = r.u32("version");
  if (version != kStreamVersion) {
    r.bad("unsupported version " + std::to_string(version));
  }

  ScheduledMatrix sm;
  sm.pe_count = r.u32("PE count");
  sm.num_windows = r.u32("window count");
  sm.k0 = r.u32("k0");
  sm.d = r.u32("d");
  if (sm.pe_count == 0 || sm.pe_count > (1u << 20)) {
    r.bad("implausible PE count " + std::to_string(sm.pe_count));
  }
  if (sm.k0 == 0 || sm.k0 > (1u << 14)) {
    r.bad("k0 " + std::to_string(sm.k0) + " outside the 14-bit column field");
  }
  if (sm.d == 0) r.bad("d must be >= 1");
  if (sm.num_windows > (1u << 26)) {
    r.bad("implausible window count " + std::to_string(sm.num_windows));
  }
  if (4ull * (sm.num_windows + 1ull) * sm.pe_count > file_size) {
    r.bad("header promises more pointer entries than the file holds");
  }

  sm.streams.resize(sm.pe_count);
  sm.pointers.resize(sm.pe_count);
  for (uint32_t pe = 0; pe < sm.pe_count; ++pe) {
    auto& q = sm.pointers[pe].q;
    q.resize(static_cast<size_t>(sm.num_windows) + 1);
    for (auto& v : q) v = r.u32("pointer list");
    if (q.front() != 0) {
      r.bad("PE " + std::to_string(pe) + ": Q[0] must be 0");
    }
    for (size_t j = 1; j < q.size(); ++j) {
      if (q[j] < q[j - 1]) {
        r.bad("PE " + std::to_string(pe) + ": Q not nondecreasing at entry " +
              std::to_string(j));
      }
    }
    if (8ull * q.back() > file_size) {
      r.bad("PE " + std::to_string(pe) + ": Q promises " +
            std::to_string(q.back()) + " slots beyond the file size");
    }
    auto& stream = sm.streams[pe];
    stream.resize(q.back());
    for (auto& word : stream) word = r.u64("slot words");
  }
  if (r.in.peek() != std::ifstream::traits_type::eof()) {
    r.bad("trailing bytes after final PE stream");
  }
  return sm;
}

}  // namespace sxt
