#ifndef DFP_DISSECT_HPP
#define DFP_DISSECT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>

#include "dfp/feature_value.hpp"
#include "dfp/pcap.hpp"
#include "dfp/schema.hpp"

namespace dfp {

// Positions of the full-24 fields inside canonical_schema(kFull24); the
// dissector fills a fixed array in this order.
enum FieldIndex : std::size_t {
  kFieldHttpRequestNumber = 0,
  kFieldHttpPrevRequestIn,
  kFieldUdpSrcPort,
  kFieldUdpStream,
  kFieldUdpLength,
  kFieldUdpDstPort,
  kFieldUdpChecksum,
  kFieldTcpSrcPort,
  kFieldTcpStream,
  kFieldTcpDstPort,
  kFieldTcpWindowSize,
  kFieldTcpAck,
  kFieldTcpWindowScaleFactor,
  kFieldTcpWindowSizeValue,
  kFieldIpLen,
  kFieldIpDscp,
  kFieldIpHdrLen,
  kFieldIpDsfield,
  kFieldIpId,
  kFieldIpTtl,
  kFieldIpProto,
  kFieldTcpTsVal,
  kFieldTcpTsEcr,
  kFullFieldCount,
};

struct Endpoint {
  std::uint32_t ip = 0;
  std::uint16_t port = 0;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

// Per-capture conversation state: dense 0-based stream ordinals per
// transport (direction-insensitive, first-appearance order), the window
// scaling observed per TCP stream direction, and per-stream HTTP request
// counters. One tracker per capture file; dissection order matters.
class ConversationTracker {
 public:
  enum class Transport { kTcp, kUdp };

  std::int64_t stream_index(Transport transport, Endpoint a, Endpoint b);

  struct WindowScale {
    bool syn_seen = false;
    std::optional<int> shift;  // set when the SYN carried the option
  };
  // State for packets sent by `src` on this stream.
  WindowScale& window_scale(std::int64_t tcp_stream, Endpoint src);

  struct HttpState {
    std::int64_t request_count = 0;
    std::uint32_t last_request_frame = 0;
  };
  HttpState& http_state(std::int64_t tcp_stream) { return http_[tcp_stream]; }

 private:
  struct ConvKey {
    Endpoint lo, hi;
    friend auto operator<=>(const ConvKey&, const ConvKey&) = default;
  };
  std::map<ConvKey, std::int64_t> tcp_streams_, udp_streams_;
  std::int64_t next_tcp_ = 0, next_udp_ = 0;
  std::map<std::pair<std::int64_t, Endpoint>, WindowScale> window_scale_;
  std::unordered_map<std::int64_t, HttpState> http_;
};

// If the payload opens an HTTP/1.x request line, bumps the stream's request
// counter and returns (request_number, frame of the previous request in the
// stream or Missing); otherwise (Missing, Missing).
std::pair<FeatureValue, FeatureValue> http_state_update(ConversationTracker& tracker,
                                                        std::int64_t tcp_stream,
                                                        std::span<const std::uint8_t> payload,
                                                        std::uint32_t frame_number);

// The full-24 field array for one packet plus its source MAC.
struct PacketFields {
  std::array<FeatureValue, kFullFieldCount> values;
  std::array<std::uint8_t, 6> src_mac{};
  std::uint32_t frame_number = 0;
};

std::string mac_to_string(const std::array<std::uint8_t, 6>& mac);

// Why a packet was skipped, and how many of each; dissection never aborts a
// capture.
struct DissectStats {
  std::uint64_t total = 0;
  std::uint64_t emitted = 0;
  std::uint64_t non_ethernet = 0;
  std::uint64_t vlan = 0;
  std::uint64_t non_ipv4 = 0;
  std::uint64_t non_tcp_udp = 0;
  std::uint64_t fragment = 0;
  std::uint64_t malformed = 0;
};

// Ethernet -> IPv4 -> TCP/UDP. Non-IPv4, non-TCP/UDP, VLAN-tagged, fragment
// continuations, and headers shorter than their declared length all yield
// nullopt (Skip) with the matching counter bumped.
std::optional<PacketFields> dissect_packet(const RawPacket& packet,
                                           ConversationTracker& tracker,
                                           DissectStats& stats);

}  // namespace dfp

#endif
