#ifndef DFP_PCAP_HPP
#define DFP_PCAP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace dfp {

struct Timestamp {
  std::int64_t seconds = 0;
  std::uint32_t nanos = 0;

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
};

struct RawPacket {
  std::uint32_t frame_number = 0;  // 1-based, file order
  Timestamp timestamp;
  std::uint32_t link_type = 0;  // pcap network field; Ethernet = 1
  std::vector<std::uint8_t> bytes;  // captured octets (incl_len of them)
  std::uint32_t original_length = 0;

  friend bool operator==(const RawPacket&, const RawPacket&) = default;
};

// Classic pcap (not pcapng), all four magics: 0xa1b2c3d4 / byte-swapped,
// and the nanosecond variants 0xa1b23c4d / byte-swapped. ParseErrors carry
// the byte offset of the offending header or record.
class PcapReader {
 public:
  explicit PcapReader(std::istream& in);  // reads and validates the global header

  // One packet per call; nullopt at a clean EOF. Truncated record headers or
  // bodies throw ParseError.
  std::optional<RawPacket> next();

  std::uint32_t link_type() const { return link_type_; }
  bool nanosecond_resolution() const { return nanos_; }
  bool byte_swapped() const { return swapped_; }

 private:
  std::istream& in_;
  std::uint32_t link_type_ = 0;
  bool swapped_ = false;
  bool nanos_ = false;
  std::uint64_t offset_ = 0;
  std::uint32_t frames_ = 0;
};

std::vector<RawPacket> read_pcap(std::istream& in);

// Classic-pcap writer, native byte order with microsecond timestamps.
// Fixture and synthetic-corpus generation both ride on this.
void write_pcap(const std::vector<RawPacket>& packets, std::ostream& out,
                std::uint32_t link_type = 1);

}  // namespace dfp

#endif
