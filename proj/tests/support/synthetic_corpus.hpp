// Synthetic 5-device capture with device-distinct TTL / window / port
// signatures; separable by construction, so the end-to-end pipeline must
// reach accuracy 1.0 on it.
#ifndef DFP_TESTS_SYNTHETIC_CORPUS_HPP
#define DFP_TESTS_SYNTHETIC_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "support/packets.hpp"

namespace dfp::synth {

struct Corpus {
  testpkt::Bytes pcap;
  std::string device_csv;
  std::size_t packets_per_device = 40;
  std::size_t devices = 5;
};

inline Corpus make_corpus() {
  using namespace testpkt;

  constexpr std::uint8_t kTtl[5] = {32, 64, 99, 128, 255};
  constexpr std::uint16_t kWindow[5] = {1000, 1500, 2000, 2500, 3000};

  Corpus corpus;
  corpus.device_csv = "mac,device\n";
  std::vector<PcapRecord> records;

  for (std::size_t d = 0; d < corpus.devices; ++d) {
    char mac_text[18];
    std::snprintf(mac_text, sizeof(mac_text), "02:00:00:00:01:%02zx", d);
    corpus.device_csv += std::string(mac_text) + ",device-" + std::to_string(d) + "\n";
  }

  std::uint32_t ts = 0;
  for (std::size_t k = 0; k < corpus.packets_per_device; ++k) {
    for (std::size_t d = 0; d < corpus.devices; ++d) {
      const Mac src{0x02, 0, 0, 0, 0x01, static_cast<std::uint8_t>(d)};
      FrameSpec spec;
      spec.src_mac = src;
      spec.ip.src_ip = 0x0a010000u + static_cast<std::uint32_t>(d);
      spec.ip.dst_ip = 0x0a090909u;
      spec.ip.ttl = kTtl[d];
      spec.ip.dsfield = static_cast<std::uint8_t>(d << 2);
      spec.ip.id = static_cast<std::uint16_t>(0x2000 + ts);

      if (d >= 3 && k % 2 == 1) {
        // The last two devices alternate onto UDP.
        UdpSpec u;
        u.src_port = static_cast<std::uint16_t>(30000 + d * 100 + (k % 10));
        u.dst_port = static_cast<std::uint16_t>(500 + d);
        u.checksum = static_cast<std::uint16_t>(0x4000 + d);
        u.payload.resize(d);
        spec.ip.proto = 17;
        spec.transport = udp(u);
      } else {
        TcpSpec t;
        t.src_port = static_cast<std::uint16_t>(40000 + d * 100 + (k % 10));
        t.dst_port = static_cast<std::uint16_t>(80 + d);
        t.ack = static_cast<std::uint32_t>(1000 * d + k);
        t.flags = 0x10;
        t.window = static_cast<std::uint16_t>(kWindow[d] + (k % 3));
        spec.ip.proto = 6;
        spec.transport = tcp(t);
      }
      records.push_back({1710000000 + ts / 5, (ts % 5) * 200000, frame(spec)});
      ++ts;
    }
  }
  corpus.pcap = encode_pcap(records, false, false);
  return corpus;
}

}  // namespace dfp::synth

#endif
