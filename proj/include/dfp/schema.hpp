#ifndef DFP_SCHEMA_HPP
#define DFP_SCHEMA_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dfp {

enum class Protocol { kHttp, kUdp, kTcp, kIp };
enum class OsiLayer { kApplication, kTransport, kNetwork };

std::string_view to_string(Protocol p);
std::string_view to_string(OsiLayer l);
Protocol protocol_from_string(std::string_view s);   // throws DataError
OsiLayer osi_layer_from_string(std::string_view s);  // throws DataError

// The layer each protocol's fields live on: HTTP -> Application,
// UDP/TCP -> Transport, IP -> Network.
OsiLayer layer_for(Protocol p);

struct FeatureDef {
  std::string name;  // dissector-style identifier, e.g. "ip.ttl"
  Protocol protocol = Protocol::kIp;
  OsiLayer osi_layer = OsiLayer::kNetwork;

  friend bool operator==(const FeatureDef&, const FeatureDef&) = default;
};

// Ordered, duplicate-free feature list; the fingerprint dimensionality
// contract shared by datasets, trained models, and the dissector.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  // Throws DataError on duplicate names or a protocol/layer pair that
  // contradicts layer_for().
  explicit FeatureSchema(std::vector<FeatureDef> features);

  std::size_t size() const { return features_.size(); }
  bool empty() const { return features_.empty(); }
  const FeatureDef& at(std::size_t i) const { return features_.at(i); }
  const std::vector<FeatureDef>& features() const { return features_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const {
    return index_of(name).has_value();
  }
  std::vector<std::string> names() const;

  // Order-sensitive FNV-1a over the names; embedded in saved models so a
  // model refuses vectors from a different schema.
  std::uint64_t fingerprint() const;

  friend bool operator==(const FeatureSchema& a, const FeatureSchema& b) {
    return a.features_ == b.features_;
  }

 private:
  std::vector<FeatureDef> features_;
  std::unordered_map<std::string, std::size_t> index_;
};

// The built-in feature sets. kReduced22 is the published fingerprint: the
// distinct Table-of-features names in table order (21 distinct names; the
// source table repeats ip.dsfield.dscp). kFull24 appends the two TCP
// timestamp option fields that the reduced set drops.
enum class SchemaMode { kFull24, kReduced22 };

FeatureSchema canonical_schema(SchemaMode mode);

// Parses "full24"/"reduced22"; anything else is nullopt.
std::optional<SchemaMode> schema_mode_from_string(std::string_view s);

// Schema files: a JSON array of {"name","protocol","osi_layer"} objects.
FeatureSchema load_schema_json(std::istream& in);
void save_schema_json(const FeatureSchema& schema, std::ostream& out);

// Infers a FeatureDef from a bare column name by its prefix ("http." /
// "udp." / "tcp." / "ip."); unknown prefixes default to IP/Network.
FeatureDef feature_def_from_name(std::string_view name);

namespace feature_names {
inline constexpr std::string_view kHttpRequestNumber = "http.request_number";
inline constexpr std::string_view kHttpPrevRequestIn = "http.prev_request_in";
inline constexpr std::string_view kUdpSrcPort = "udp.srcport";
inline constexpr std::string_view kUdpStream = "udp.stream";
inline constexpr std::string_view kUdpLength = "udp.length";
inline constexpr std::string_view kUdpDstPort = "udp.dstport";
inline constexpr std::string_view kUdpChecksum = "udp.checksum";
inline constexpr std::string_view kTcpSrcPort = "tcp.srcport";
inline constexpr std::string_view kTcpStream = "tcp.stream";
inline constexpr std::string_view kTcpDstPort = "tcp.dstport";
inline constexpr std::string_view kTcpWindowSize = "tcp.window_size";
inline constexpr std::string_view kTcpAck = "tcp.ack";
inline constexpr std::string_view kTcpWindowScaleFactor =
    "tcp.window_size_scalefactor";
inline constexpr std::string_view kTcpWindowSizeValue = "tcp.window_size_value";
inline constexpr std::string_view kIpLen = "ip.len";
inline constexpr std::string_view kIpDscp = "ip.dsfield.dscp";
inline constexpr std::string_view kIpHdrLen = "ip.hdr_len";
inline constexpr std::string_view kIpDsfield = "ip.dsfield";
inline constexpr std::string_view kIpId = "ip.id";
inline constexpr std::string_view kIpTtl = "ip.ttl";
inline constexpr std::string_view kIpProto = "ip.proto";
inline constexpr std::string_view kTcpTsVal = "tcp.options.timestamp.tsval";
inline constexpr std::string_view kTcpTsEcr = "tcp.options.timestamp.tsecr";
}  // namespace feature_names

}  // namespace dfp

#endif
