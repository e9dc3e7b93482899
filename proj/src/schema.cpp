#include "dfp/schema.hpp"

#include <array>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "dfp/errors.hpp"

namespace dfp {

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::kHttp: return "HTTP";
    case Protocol::kUdp: return "UDP";
    case Protocol::kTcp: return "TCP";
    case Protocol::kIp: return "IP";
  }
  return "IP";
}

std::string_view to_string(OsiLayer l) {
  switch (l) {
    case OsiLayer::kApplication: return "Application";
    case OsiLayer::kTransport: return "Transport";
    case OsiLayer::kNetwork: return "Network";
  }
  return "Network";
}

Protocol protocol_from_string(std::string_view s) {
  if (s == "HTTP") return Protocol::kHttp;
  if (s == "UDP") return Protocol::kUdp;
  if (s == "TCP") return Protocol::kTcp;
  if (s == "IP") return Protocol::kIp;
  throw DataError("unknown protocol: '" + std::string(s) + "'");
}

OsiLayer osi_layer_from_string(std::string_view s) {
  if (s == "Application") return OsiLayer::kApplication;
  if (s == "Transport") return OsiLayer::kTransport;
  if (s == "Network") return OsiLayer::kNetwork;
  throw DataError("unknown OSI layer: '" + std::string(s) + "'");
}

OsiLayer layer_for(Protocol p) {
  switch (p) {
    case Protocol::kHttp: return OsiLayer::kApplication;
    case Protocol::kUdp:
    case Protocol::kTcp: return OsiLayer::kTransport;
    case Protocol::kIp: return OsiLayer::kNetwork;
  }
  return OsiLayer::kNetwork;
}

FeatureSchema::FeatureSchema(std::vector<FeatureDef> features)
    : features_(std::move(features)) {
  index_.reserve(features_.size());
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const FeatureDef& def = features_[i];
    if (def.name.empty()) throw DataError("schema feature name must be non-empty");
    if (def.osi_layer != layer_for(def.protocol)) {
      throw DataError("feature '" + def.name + "': protocol " +
                      std::string(to_string(def.protocol)) +
                      " cannot sit on layer " +
                      std::string(to_string(def.osi_layer)));
    }
    if (!index_.emplace(def.name, i).second) {
      throw DataError("duplicate feature name in schema: '" + def.name + "'");
    }
  }
}

std::optional<std::size_t> FeatureSchema::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(features_.size());
  for (const FeatureDef& def : features_) out.push_back(def.name);
  return out;
}

std::uint64_t FeatureSchema::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const FeatureDef& def : features_) {
    for (char c : def.name) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= 0x1fu;  // name separator
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct CanonicalRow {
  std::string_view name;
  Protocol protocol;
};

// The published feature table, in table order, de-duplicated (the source
// lists ip.dsfield.dscp twice).
constexpr std::array<CanonicalRow, 21> kReducedRows = {{
    {feature_names::kHttpRequestNumber, Protocol::kHttp},
    {feature_names::kHttpPrevRequestIn, Protocol::kHttp},
    {feature_names::kUdpSrcPort, Protocol::kUdp},
    {feature_names::kUdpStream, Protocol::kUdp},
    {feature_names::kUdpLength, Protocol::kUdp},
    {feature_names::kUdpDstPort, Protocol::kUdp},
    {feature_names::kUdpChecksum, Protocol::kUdp},
    {feature_names::kTcpSrcPort, Protocol::kTcp},
    {feature_names::kTcpStream, Protocol::kTcp},
    {feature_names::kTcpDstPort, Protocol::kTcp},
    {feature_names::kTcpWindowSize, Protocol::kTcp},
    {feature_names::kTcpAck, Protocol::kTcp},
    {feature_names::kTcpWindowScaleFactor, Protocol::kTcp},
    {feature_names::kTcpWindowSizeValue, Protocol::kTcp},
    {feature_names::kIpLen, Protocol::kIp},
    {feature_names::kIpDscp, Protocol::kIp},
    {feature_names::kIpHdrLen, Protocol::kIp},
    {feature_names::kIpDsfield, Protocol::kIp},
    {feature_names::kIpId, Protocol::kIp},
    {feature_names::kIpTtl, Protocol::kIp},
    {feature_names::kIpProto, Protocol::kIp},
}};

}  // namespace

FeatureSchema canonical_schema(SchemaMode mode) {
  std::vector<FeatureDef> defs;
  defs.reserve(kReducedRows.size() + 2);
  for (const CanonicalRow& row : kReducedRows) {
    defs.push_back({std::string(row.name), row.protocol, layer_for(row.protocol)});
  }
  if (mode == SchemaMode::kFull24) {
    defs.push_back({std::string(feature_names::kTcpTsVal), Protocol::kTcp,
                    OsiLayer::kTransport});
    defs.push_back({std::string(feature_names::kTcpTsEcr), Protocol::kTcp,
                    OsiLayer::kTransport});
  }
  return FeatureSchema(std::move(defs));
}

std::optional<SchemaMode> schema_mode_from_string(std::string_view s) {
  if (s == "full24") return SchemaMode::kFull24;
  if (s == "reduced22") return SchemaMode::kReduced22;
  return std::nullopt;
}

FeatureDef feature_def_from_name(std::string_view name) {
  Protocol proto = Protocol::kIp;
  if (name.starts_with("http.")) proto = Protocol::kHttp;
  else if (name.starts_with("udp.")) proto = Protocol::kUdp;
  else if (name.starts_with("tcp.")) proto = Protocol::kTcp;
  return {std::string(name), proto, layer_for(proto)};
}

FeatureSchema load_schema_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("schema file: ") + e.what(), e.byte);
  }
  if (!doc.is_array()) throw DataError("schema file: top level must be a JSON array");
  std::vector<FeatureDef> defs;
  defs.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("name")) {
      throw DataError("schema file: each entry needs at least a \"name\"");
    }
    const std::string name = item.at("name").get<std::string>();
    FeatureDef def;
    if (item.contains("protocol")) {
      def.name = name;
      def.protocol = protocol_from_string(item.at("protocol").get<std::string>());
      def.osi_layer = item.contains("osi_layer")
                          ? osi_layer_from_string(item.at("osi_layer").get<std::string>())
                          : layer_for(def.protocol);
    } else {
      def = feature_def_from_name(name);
    }
    defs.push_back(std::move(def));
  }
  return FeatureSchema(std::move(defs));
}

void save_schema_json(const FeatureSchema& schema, std::ostream& out) {
  nlohmann::json doc = nlohmann::json::array();
  for (const FeatureDef& def : schema.features()) {
    doc.push_back({{"name", def.name},
                   {"protocol", std::string(to_string(def.protocol))},
                   {"osi_layer", std::string(to_string(def.osi_layer))}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace dfp
