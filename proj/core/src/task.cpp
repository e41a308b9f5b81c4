#include "stlf/task.hpp"

#include "stlf/errors.hpp"
#include "stlf/stl/robustness.hpp"

namespace stlf {

std::string_view to_string(TaskId id) noexcept {
  switch (id) {
    case TaskId::PR: return "PR";
    case TaskId::CS: return "CS";
    case TaskId::PH: return "PH";
    case TaskId::BB: return "BB";
    case TaskId::BC: return "BC";
    case TaskId::BP: return "BP";
    case TaskId::DO: return "DO";
    case TaskId::CP: return "CP";
  }
  return "??";
}

std::optional<TaskId> parse_task_id(std::string_view text) noexcept {
  for (TaskId id : kAllTasks) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

std::string task_id_list() {
  std::string out;
  for (TaskId id : kAllTasks) {
    if (!out.empty()) out += ", ";
    out += to_string(id);
  }
  return out;
}

void TaskSpec::validate() const {
  if (episode_steps == 0) throw ArgumentError(name + ": episode_steps must be positive");
  if (stl_stride == 0) throw ArgumentError(name + ": stl_stride must be positive");
  for (const auto& decl : signal_schema) {
    if (!is_identifier(decl.name)) throw SchemaError(name + ": invalid signal name '" + decl.name + "'");
    if (decl.dim == 0) throw SchemaError(name + ": signal '" + decl.name + "' has dimension 0");
  }
  for (const auto* spec : {&success_spec, &danger_spec}) {
    if (!*spec) continue;
    stl::check_schema(**spec, signal_schema);
    const std::size_t h = stl::horizon(**spec);
    if (episode_steps / stl_stride < h) {
      throw ArgumentError(name + ": formula horizon " + std::to_string(h) + " exceeds " +
                          std::to_string(episode_steps / stl_stride) + " STL steps per episode");
    }
  }
}

void TaskSpec::check_trace(const Trace& trace) const {
  if (trace.length() != episode_steps + 1) {
    throw SchemaError(name + ": trace has " + std::to_string(trace.length()) + " samples, expected " +
                      std::to_string(episode_steps + 1));
  }
  for (const auto& decl : signal_schema) {
    const Signal* s = trace.find(decl.name);
    if (!s) throw SchemaError(name + ": signal '" + decl.name + "' missing from trace");
    if (s->dim != decl.dim) {
      throw SchemaError(name + ": signal '" + decl.name + "' has dimension " + std::to_string(s->dim) +
                        ", expected " + std::to_string(decl.dim));
    }
  }
  if (trace.signals().size() != signal_schema.size()) {
    for (const auto& s : trace.signals()) {
      bool declared = false;
      for (const auto& decl : signal_schema) declared = declared || decl.name == s.name;
      if (!declared) throw SchemaError(name + ": undeclared signal '" + s.name + "' in trace");
    }
  }
}

}  // namespace stlf
