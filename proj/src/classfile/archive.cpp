#include "testability/classfile/archive.hpp"

#include <zlib.h>

#include <fstream>
#include <iterator>

#include "testability/core/errors.hpp"

namespace testability::classfile {
namespace {

constexpr std::uint32_t kEndOfCentralDir = 0x06054b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kLocalHeader = 0x04034b50;

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  if (at + 2 > b.size()) throw MalformedClassFile("truncated archive");
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  if (at + 4 > b.size()) throw MalformedClassFile("truncated archive");
  return std::uint32_t{b[at]} | (std::uint32_t{b[at + 1]} << 8) |
         (std::uint32_t{b[at + 2]} << 16) | (std::uint32_t{b[at + 3]} << 24);
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> in, std::size_t expected,
                                      const std::string& name) {
  std::vector<std::uint8_t> out(expected);
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw MalformedClassFile("zlib init failed");
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) {
    throw MalformedClassFile("cannot inflate archive entry " + name);
  }
  return out;
}

}  // namespace

std::vector<ArchiveEntry> read_class_entries(std::span<const std::uint8_t> archive) {
  // The end record sits in the last 22 + 65535 bytes (comment may follow it).
  if (archive.size() < 22) throw MalformedClassFile("archive too small");
  std::size_t eocd = archive.size() - 22;
  while (le32(archive, eocd) != kEndOfCentralDir) {
    if (eocd == 0 || archive.size() - eocd > 22 + 65535) {
      throw MalformedClassFile("no end of central directory record");
    }
    --eocd;
  }
  const std::uint16_t entries = le16(archive, eocd + 10);
  std::size_t pos = le32(archive, eocd + 16);

  std::vector<ArchiveEntry> out;
  for (std::uint16_t i = 0; i < entries; ++i) {
    if (le32(archive, pos) != kCentralHeader) throw MalformedClassFile("bad central directory");
    const std::uint16_t method = le16(archive, pos + 10);
    const std::uint32_t csize = le32(archive, pos + 20);
    const std::uint32_t usize = le32(archive, pos + 24);
    const std::uint16_t name_len = le16(archive, pos + 28);
    const std::uint16_t extra_len = le16(archive, pos + 30);
    const std::uint16_t comment_len = le16(archive, pos + 32);
    const std::uint32_t local = le32(archive, pos + 42);
    if (pos + 46 + name_len > archive.size()) throw MalformedClassFile("truncated archive");
    std::string name(reinterpret_cast<const char*>(archive.data() + pos + 46), name_len);
    pos += 46u + name_len + extra_len + comment_len;

    if (!name.ends_with(".class")) continue;
    if (csize == 0xFFFFFFFF || usize == 0xFFFFFFFF) {
      throw MalformedClassFile("zip64 entries are not supported: " + name);
    }
    if (le32(archive, local) != kLocalHeader) throw MalformedClassFile("bad local header: " + name);
    const std::size_t data = local + 30u + le16(archive, local + 26) + le16(archive, local + 28);
    if (data + csize > archive.size()) throw MalformedClassFile("truncated archive entry " + name);
    const auto raw = archive.subspan(data, csize);
    ArchiveEntry entry{name, {}};
    if (method == 0) {
      entry.bytes.assign(raw.begin(), raw.end());
    } else if (method == 8) {
      entry.bytes = inflate_raw(raw, usize, name);
    } else {
      throw MalformedClassFile("unsupported compression method " + std::to_string(method) +
                               " for " + name);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testability::classfile
