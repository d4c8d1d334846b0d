#pragma once
// Per-cycle simulation records and their JSON Lines form.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kvd/memory.hpp"

namespace kvd {

// init:    memory was empty, the incoming tree is installed
// direct:  incoming tree attached to memory by overlap
// recall:  attached through propositions pulled back from long-term memory
// replace: memory replaced by the incoming tree
// persist: nothing attached, memory kept unchanged
// reset:   persistence cap reached, memory discarded
enum class AttachMode { Init, Direct, Recall, Replace, Persist, Reset };

std::string_view to_string(AttachMode mode);
std::optional<AttachMode> parse_attach_mode(std::string_view name);

struct CycleRecord {
  std::size_t cycle = 0;
  std::size_t sentence_id = 0;
  AttachMode mode = AttachMode::Init;
  bool scored = false;
  std::size_t persistence = 0;  // psi after the cycle
  std::vector<PropId> incoming;
  std::vector<PropId> kept;  // memory tree after the cycle, ascending
  std::optional<PropId> root;
  std::vector<std::pair<PropId, PropId>> kept_edges;  // parent -> child
  std::vector<PropId> recalled;
  std::vector<PropId> pruned;
  std::vector<PropId> enriched;
  std::map<PropId, double> member_increments;
  std::map<PropId, double> neighbour_increments;

  bool operator==(const CycleRecord&) const = default;
};

struct SimulationResult {
  ScoreTable scores;
  std::vector<CycleRecord> trace;
};

/// Read-only snapshot handed to observers at the end of every cycle.
struct CycleView {
  const CycleRecord& record;
  const MemoryTree& tree;
  const ScoreTable& scores;
  const std::vector<PropId>& long_term;  // ascending ids held in long-term memory
  const Adjacency* graph = nullptr;      // GraphKvD long-term graph
};

using CycleObserver = std::function<void(const CycleView&)>;

std::string cycle_to_json(const CycleRecord& record, std::string_view doc_id, std::string_view system);
CycleRecord cycle_from_json(const std::string& line);
void write_trace(std::ostream& out, const std::vector<CycleRecord>& trace, std::string_view doc_id,
                 std::string_view system);

}  // namespace kvd
