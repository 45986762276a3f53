#include "humaq/types.hpp"

#include <string>

#include "humaq/error.hpp"

namespace humaq {

std::string_view to_string(AgentId id) {
  switch (id) {
    case AgentId::hunger: return "hunger";
    case AgentId::goal: return "goal";
    case AgentId::obstacle: return "obstacle";
    case AgentId::grid: return "grid";
  }
  return "?";
}

AgentId agent_from_string(std::string_view name) {
  if (name == "hunger") return AgentId::hunger;
  if (name == "goal") return AgentId::goal;
  if (name == "obstacle") return AgentId::obstacle;
  if (name == "grid") return AgentId::grid;
  throw InputError("unknown agent id '" + std::string(name) + "'");
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::move: return "move";
    case ActionKind::standstill: return "standstill";
    case ActionKind::shutdown: return "shutdown";
  }
  return "?";
}

}  // namespace humaq
