#include "dfp/dissect.hpp"

#include <algorithm>
#include <cstdio>
#include <string_view>

namespace dfp {

namespace {

std::uint16_t be16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

std::uint32_t be32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

constexpr std::uint16_t kEthertypeIpv4 = 0x0800;
constexpr std::uint16_t kEthertypeVlan = 0x8100;
constexpr std::uint8_t kProtoTcp = 6;
constexpr std::uint8_t kProtoUdp = 17;
constexpr std::uint8_t kTcpFlagSyn = 0x02;

constexpr std::string_view kHttpMethods[] = {
    "GET ",  "POST ",    "PUT ",   "DELETE ", "HEAD ",
    "OPTIONS ", "PATCH ", "CONNECT ", "TRACE ",
};

}  // namespace

std::int64_t ConversationTracker::stream_index(Transport transport, Endpoint a, Endpoint b) {
  ConvKey key = a <= b ? ConvKey{a, b} : ConvKey{b, a};
  auto& streams = transport == Transport::kTcp ? tcp_streams_ : udp_streams_;
  auto& next = transport == Transport::kTcp ? next_tcp_ : next_udp_;
  auto [it, inserted] = streams.try_emplace(key, next);
  if (inserted) ++next;
  return it->second;
}

ConversationTracker::WindowScale& ConversationTracker::window_scale(std::int64_t tcp_stream,
                                                                    Endpoint src) {
  return window_scale_[{tcp_stream, src}];
}

std::pair<FeatureValue, FeatureValue> http_state_update(ConversationTracker& tracker,
                                                        std::int64_t tcp_stream,
                                                        std::span<const std::uint8_t> payload,
                                                        std::uint32_t frame_number) {
  const auto missing = std::make_pair(FeatureValue::missing(), FeatureValue::missing());
  if (payload.empty()) return missing;

  std::string_view text(reinterpret_cast<const char*>(payload.data()), payload.size());
  bool is_method = false;
  for (std::string_view method : kHttpMethods) {
    if (text.starts_with(method)) {
      is_method = true;
      break;
    }
  }
  if (!is_method) return missing;

  std::string_view line = text;
  if (auto nl = text.find('\n'); nl != std::string_view::npos) line = text.substr(0, nl);
  if (line.ends_with('\r')) line.remove_suffix(1);
  if (!line.ends_with("HTTP/1.0") && !line.ends_with("HTTP/1.1")) return missing;

  auto& state = tracker.http_state(tcp_stream);
  const std::int64_t previous_frame = state.last_request_frame;
  state.request_count += 1;
  state.last_request_frame = frame_number;
  return {FeatureValue(state.request_count),
          previous_frame > 0 ? FeatureValue(previous_frame) : FeatureValue::missing()};
}

std::string mac_to_string(const std::array<std::uint8_t, 6>& mac) {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", mac[0], mac[1], mac[2],
                mac[3], mac[4], mac[5]);
  return std::string(buf);
}

std::optional<PacketFields> dissect_packet(const RawPacket& packet,
                                           ConversationTracker& tracker,
                                           DissectStats& stats) {
  ++stats.total;
  const std::uint8_t* data = packet.bytes.data();
  const std::size_t size = packet.bytes.size();

  if (packet.link_type != 1) {
    ++stats.non_ethernet;
    return std::nullopt;
  }
  if (size < 14) {
    ++stats.malformed;
    return std::nullopt;
  }
  const std::uint16_t ethertype = be16(data + 12);
  if (ethertype == kEthertypeVlan) {
    ++stats.vlan;
    return std::nullopt;
  }
  if (ethertype != kEthertypeIpv4) {
    ++stats.non_ipv4;
    return std::nullopt;
  }

  const std::uint8_t* ip = data + 14;
  const std::size_t ip_avail = size - 14;
  if (ip_avail < 20) {
    ++stats.malformed;
    return std::nullopt;
  }
  const std::uint8_t version = ip[0] >> 4;
  const std::size_t ip_hdr_len = static_cast<std::size_t>(ip[0] & 0x0f) * 4;
  if (version != 4 || ip_hdr_len < 20 || ip_hdr_len > ip_avail) {
    ++stats.malformed;
    return std::nullopt;
  }
  const std::uint8_t dsfield = ip[1];
  const std::uint16_t total_len = be16(ip + 2);
  const std::uint16_t ip_id = be16(ip + 4);
  const std::uint16_t flags_frag = be16(ip + 6);
  const std::uint8_t ttl = ip[8];
  const std::uint8_t proto = ip[9];
  const std::uint32_t src_ip = be32(ip + 12);
  const std::uint32_t dst_ip = be32(ip + 16);
  if (total_len < ip_hdr_len) {
    ++stats.malformed;
    return std::nullopt;
  }
  if ((flags_frag & 0x1fff) != 0) {
    // Continuation fragment: no transport header to dissect.
    ++stats.fragment;
    return std::nullopt;
  }

  PacketFields out;
  std::copy(data + 6, data + 12, out.src_mac.begin());
  out.frame_number = packet.frame_number;
  out.values[kFieldIpLen] = FeatureValue(total_len);
  out.values[kFieldIpDscp] = FeatureValue(dsfield >> 2);
  out.values[kFieldIpHdrLen] = FeatureValue(static_cast<std::int64_t>(ip_hdr_len));
  out.values[kFieldIpDsfield] = FeatureValue(dsfield);
  out.values[kFieldIpId] = FeatureValue(ip_id);
  out.values[kFieldIpTtl] = FeatureValue(ttl);
  out.values[kFieldIpProto] = FeatureValue(proto);

  // Transport bytes end where the IP datagram says it does, clamped to what
  // was actually captured.
  const std::size_t ip_end = std::min(ip_avail, static_cast<std::size_t>(total_len));
  const std::uint8_t* transport = ip + ip_hdr_len;
  const std::size_t transport_avail = ip_end > ip_hdr_len ? ip_end - ip_hdr_len : 0;

  if (proto == kProtoTcp) {
    if (transport_avail < 20) {
      ++stats.malformed;
      return std::nullopt;
    }
    const std::uint16_t src_port = be16(transport);
    const std::uint16_t dst_port = be16(transport + 2);
    const std::uint32_t ack = be32(transport + 8);
    const std::size_t tcp_hdr_len = static_cast<std::size_t>(transport[12] >> 4) * 4;
    const std::uint8_t flags = transport[13];
    const std::uint16_t raw_window = be16(transport + 14);
    if (tcp_hdr_len < 20 || tcp_hdr_len > transport_avail) {
      ++stats.malformed;
      return std::nullopt;
    }

    const Endpoint src{src_ip, src_port};
    const Endpoint dst{dst_ip, dst_port};
    const std::int64_t stream =
        tracker.stream_index(ConversationTracker::Transport::kTcp, src, dst);

    // Option walk for window scale (kind 3) and timestamps (kind 8). A bad
    // option length stops the walk but keeps the packet.
    std::optional<int> ws_shift;
    std::optional<std::uint32_t> ts_val, ts_ecr;
    const std::uint8_t* opt = transport + 20;
    const std::uint8_t* opt_end = transport + tcp_hdr_len;
    while (opt < opt_end) {
      const std::uint8_t kind = opt[0];
      if (kind == 0) break;  // EOL
      if (kind == 1) {       // NOP
        ++opt;
        continue;
      }
      if (opt + 1 >= opt_end) break;
      const std::uint8_t len = opt[1];
      if (len < 2 || opt + len > opt_end) break;
      if (kind == 3 && len == 3) {
        ws_shift = std::min<int>(opt[2], 14);  // RFC 7323: shifts above 14 count as 14
      } else if (kind == 8 && len == 10) {
        ts_val = be32(opt + 2);
        ts_ecr = be32(opt + 6);
      }
      opt += len;
    }

    const bool is_syn = (flags & kTcpFlagSyn) != 0;
    auto& scale_state = tracker.window_scale(stream, src);
    if (is_syn) {
      scale_state.syn_seen = true;
      scale_state.shift = ws_shift;
    }

    std::int64_t scale_factor;
    if (!scale_state.syn_seen) {
      scale_factor = -1;  // handshake not observed
    } else if (!scale_state.shift) {
      scale_factor = -2;  // handshake seen, option absent
    } else {
      scale_factor = std::int64_t{1} << *scale_state.shift;
    }

    // Scaling never applies to the SYN itself.
    std::int64_t window_size = raw_window;
    if (!is_syn && scale_factor >= 1) window_size = raw_window * scale_factor;

    out.values[kFieldTcpSrcPort] = FeatureValue(src_port);
    out.values[kFieldTcpStream] = FeatureValue(stream);
    out.values[kFieldTcpDstPort] = FeatureValue(dst_port);
    out.values[kFieldTcpWindowSize] = FeatureValue(window_size);
    out.values[kFieldTcpAck] = FeatureValue(static_cast<std::int64_t>(ack));
    out.values[kFieldTcpWindowScaleFactor] = FeatureValue(scale_factor);
    out.values[kFieldTcpWindowSizeValue] = FeatureValue(raw_window);
    if (ts_val) out.values[kFieldTcpTsVal] = FeatureValue(static_cast<std::int64_t>(*ts_val));
    if (ts_ecr) out.values[kFieldTcpTsEcr] = FeatureValue(static_cast<std::int64_t>(*ts_ecr));

    const std::span<const std::uint8_t> payload(transport + tcp_hdr_len,
                                                transport_avail - tcp_hdr_len);
    auto [request_number, prev_request_in] =
        http_state_update(tracker, stream, payload, packet.frame_number);
    out.values[kFieldHttpRequestNumber] = request_number;
    out.values[kFieldHttpPrevRequestIn] = prev_request_in;
  } else if (proto == kProtoUdp) {
    if (transport_avail < 8) {
      ++stats.malformed;
      return std::nullopt;
    }
    const std::uint16_t src_port = be16(transport);
    const std::uint16_t dst_port = be16(transport + 2);
    const std::uint16_t udp_len = be16(transport + 4);
    const std::uint16_t checksum = be16(transport + 6);
    const std::int64_t stream = tracker.stream_index(ConversationTracker::Transport::kUdp,
                                                     {src_ip, src_port}, {dst_ip, dst_port});
    out.values[kFieldUdpSrcPort] = FeatureValue(src_port);
    out.values[kFieldUdpStream] = FeatureValue(stream);
    out.values[kFieldUdpLength] = FeatureValue(udp_len);
    out.values[kFieldUdpDstPort] = FeatureValue(dst_port);
    out.values[kFieldUdpChecksum] = FeatureValue(checksum);
  } else {
    ++stats.non_tcp_udp;
    return std::nullopt;
  }

  ++stats.emitted;
  return out;
}

}  // namespace dfp
