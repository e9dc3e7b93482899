#include "dfp/pcap.hpp"

#include <array>
#include <istream>
#include <ostream>

#include "dfp/errors.hpp"

namespace dfp {

namespace {

constexpr std::uint32_t kMagicMicro = 0xa1b2c3d4u;
constexpr std::uint32_t kMagicMicroSwapped = 0xd4c3b2a1u;
constexpr std::uint32_t kMagicNano = 0xa1b23c4du;
constexpr std::uint32_t kMagicNanoSwapped = 0x4d3cb2a1u;

// Guard against absurd record lengths from corrupt files.
constexpr std::uint32_t kMaxRecordBytes = 256u * 1024 * 1024;

std::uint32_t swap32(std::uint32_t v) {
  return ((v & 0x000000ffu) << 24) | ((v & 0x0000ff00u) << 8) |
         ((v & 0x00ff0000u) >> 8) | ((v & 0xff000000u) >> 24);
}

std::uint32_t load_u32(const std::uint8_t* p, bool swapped) {
  // pcap fields are in the writer's byte order; we read little-endian and
  // swap when the magic says the writer disagreed with us.
  std::uint32_t v = static_cast<std::uint32_t>(p[0]) |
                    (static_cast<std::uint32_t>(p[1]) << 8) |
                    (static_cast<std::uint32_t>(p[2]) << 16) |
                    (static_cast<std::uint32_t>(p[3]) << 24);
  return swapped ? swap32(v) : v;
}

}  // namespace

PcapReader::PcapReader(std::istream& in) : in_(in) {
  std::array<std::uint8_t, 24> header{};
  in_.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in_.gcount() != static_cast<std::streamsize>(header.size())) {
    throw ParseError("pcap: truncated global header at offset 0", 0);
  }

  const std::uint32_t magic = load_u32(header.data(), false);
  switch (magic) {
    case kMagicMicro: swapped_ = false; nanos_ = false; break;
    case kMagicMicroSwapped: swapped_ = true; nanos_ = false; break;
    case kMagicNano: swapped_ = false; nanos_ = true; break;
    case kMagicNanoSwapped: swapped_ = true; nanos_ = true; break;
    default:
      throw ParseError("pcap: bad magic at offset 0", 0);
  }
  link_type_ = load_u32(header.data() + 20, swapped_);
  offset_ = header.size();
}

std::optional<RawPacket> PcapReader::next() {
  std::array<std::uint8_t, 16> rec{};
  in_.read(reinterpret_cast<char*>(rec.data()), rec.size());
  const std::streamsize got = in_.gcount();
  if (got == 0) return std::nullopt;  // clean EOF
  if (got != static_cast<std::streamsize>(rec.size())) {
    throw ParseError("pcap: truncated record header at offset " + std::to_string(offset_),
                     static_cast<std::size_t>(offset_));
  }

  const std::uint32_t ts_sec = load_u32(rec.data(), swapped_);
  const std::uint32_t ts_frac = load_u32(rec.data() + 4, swapped_);
  const std::uint32_t incl_len = load_u32(rec.data() + 8, swapped_);
  const std::uint32_t orig_len = load_u32(rec.data() + 12, swapped_);
  if (incl_len > kMaxRecordBytes) {
    throw ParseError("pcap: unreasonable record length " + std::to_string(incl_len) +
                         " at offset " + std::to_string(offset_),
                     static_cast<std::size_t>(offset_));
  }

  RawPacket pkt;
  pkt.bytes.resize(incl_len);
  in_.read(reinterpret_cast<char*>(pkt.bytes.data()), incl_len);
  if (in_.gcount() != static_cast<std::streamsize>(incl_len)) {
    throw ParseError("pcap: truncated packet body at offset " + std::to_string(offset_ + 16),
                     static_cast<std::size_t>(offset_ + 16));
  }
  offset_ += 16 + incl_len;

  pkt.frame_number = ++frames_;
  pkt.timestamp.seconds = ts_sec;
  pkt.timestamp.nanos = nanos_ ? ts_frac : ts_frac * 1000u;
  pkt.link_type = link_type_;
  pkt.original_length = orig_len;
  return pkt;
}

std::vector<RawPacket> read_pcap(std::istream& in) {
  PcapReader reader(in);
  std::vector<RawPacket> packets;
  while (auto pkt = reader.next()) packets.push_back(std::move(*pkt));
  return packets;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff),
                         static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

void put_u16(std::ostream& out, std::uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(bytes, 2);
}

}  // namespace

void write_pcap(const std::vector<RawPacket>& packets, std::ostream& out,
                std::uint32_t link_type) {
  put_u32(out, kMagicMicro);
  put_u16(out, 2);      // version 2.4
  put_u16(out, 4);
  put_u32(out, 0);      // thiszone
  put_u32(out, 0);      // sigfigs
  put_u32(out, 65535);  // snaplen
  put_u32(out, link_type);
  for (const RawPacket& pkt : packets) {
    put_u32(out, static_cast<std::uint32_t>(pkt.timestamp.seconds));
    put_u32(out, pkt.timestamp.nanos / 1000u);
    put_u32(out, static_cast<std::uint32_t>(pkt.bytes.size()));
    const std::uint32_t orig =
        pkt.original_length != 0 ? pkt.original_length
                                 : static_cast<std::uint32_t>(pkt.bytes.size());
    put_u32(out, orig);
    out.write(reinterpret_cast<const char*>(pkt.bytes.data()),
              static_cast<std::streamsize>(pkt.bytes.size()));
  }
  if (!out) throw DataError("pcap: write failure");
}

}  // namespace dfp
