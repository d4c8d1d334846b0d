#include "kvd/trace.hpp"

#include <array>
#include <ostream>

#include "json.hpp"

namespace kvd {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<AttachMode, std::string_view>, 6> kModes = {{
    {AttachMode::Init, "init"},
    {AttachMode::Direct, "direct"},
    {AttachMode::Recall, "recall"},
    {AttachMode::Replace, "replace"},
    {AttachMode::Persist, "persist"},
    {AttachMode::Reset, "reset"},
}};

json increments_to_json(const std::map<PropId, double>& m) {
  json arr = json::array();
  for (const auto& [id, v] : m) arr.push_back(json::array({id, v}));
  return arr;
}

std::map<PropId, double> increments_from_json(const json& arr) {
  std::map<PropId, double> out;
  for (const auto& e : arr) out[e.at(0).get<PropId>()] = e.at(1).get<double>();
  return out;
}

}  // namespace

std::string_view to_string(AttachMode mode) {
  for (const auto& [m, name] : kModes)
    if (m == mode) return name;
  return "init";
}

std::optional<AttachMode> parse_attach_mode(std::string_view name) {
  for (const auto& [m, n] : kModes)
    if (n == name) return m;
  return std::nullopt;
}

std::string cycle_to_json(const CycleRecord& r, std::string_view doc_id, std::string_view system) {
  json j;
  j["doc_id"] = doc_id;
  j["system"] = system;
  j["cycle"] = r.cycle;
  j["sentence_id"] = r.sentence_id;
  j["mode"] = to_string(r.mode);
  j["scored"] = r.scored;
  j["persistence"] = r.persistence;
  j["incoming"] = r.incoming;
  j["kept"] = r.kept;
  j["root"] = r.root ? json(*r.root) : json(nullptr);
  json edges = json::array();
  for (auto [a, b] : r.kept_edges) edges.push_back(json::array({a, b}));
  j["kept_edges"] = edges;
  j["recalled"] = r.recalled;
  j["pruned"] = r.pruned;
  j["enriched"] = r.enriched;
  j["member_increments"] = increments_to_json(r.member_increments);
  j["neighbour_increments"] = increments_to_json(r.neighbour_increments);
  return j.dump();
}

CycleRecord cycle_from_json(const std::string& line) {
  const json j = json::parse(line);
  CycleRecord r;
  r.cycle = j.at("cycle").get<std::size_t>();
  r.sentence_id = j.at("sentence_id").get<std::size_t>();
  const auto mode = parse_attach_mode(j.at("mode").get<std::string>());
  if (!mode) throw std::runtime_error("trace: unknown attach mode");
  r.mode = *mode;
  r.scored = j.at("scored").get<bool>();
  r.persistence = j.at("persistence").get<std::size_t>();
  r.incoming = j.at("incoming").get<std::vector<PropId>>();
  r.kept = j.at("kept").get<std::vector<PropId>>();
  if (!j.at("root").is_null()) r.root = j.at("root").get<PropId>();
  for (const auto& e : j.at("kept_edges")) r.kept_edges.emplace_back(e.at(0).get<PropId>(), e.at(1).get<PropId>());
  r.recalled = j.at("recalled").get<std::vector<PropId>>();
  r.pruned = j.at("pruned").get<std::vector<PropId>>();
  r.enriched = j.at("enriched").get<std::vector<PropId>>();
  r.member_increments = increments_from_json(j.at("member_increments"));
  r.neighbour_increments = increments_from_json(j.at("neighbour_increments"));
  return r;
}

void write_trace(std::ostream& out, const std::vector<CycleRecord>& trace, std::string_view doc_id,
                 std::string_view system) {
  for (const auto& r : trace) out << cycle_to_json(r, doc_id, system) << '\n';
}

}  // namespace kvd
