#pragma once

#include <string>

namespace pdef {

// Strong integer ids. Defender ids double as auction agent ids; task ids are
// the ids of the intruders they were derived from.
enum class AgentId : int {};
enum class TaskId : int {};

constexpr int to_int(AgentId a) { return static_cast<int>(a); }
constexpr int to_int(TaskId t) { return static_cast<int>(t); }

inline std::string to_string(AgentId a) { return std::to_string(to_int(a)); }
inline std::string to_string(TaskId t) { return std::to_string(to_int(t)); }

}  // namespace pdef
