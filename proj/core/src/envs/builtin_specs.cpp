#include "stlf/envs/builtin_specs.hpp"

#include <cctype>

#include "stlf/stl/parser.hpp"

namespace stlf::envs {

namespace {

struct Entry {
  TaskId id;
  std::string_view success;
  std::string_view danger;
};

constexpr Entry kSpecs[] = {
    {TaskId::PR, "G[0,30](norm(finger_pos - point_pos) <= 0.3)",
     "G[0,30](norm(finger_pos - point_pos) <= 0.12)"},
    {TaskId::CS, "F[0,30](norm(cube_pos - target_pos) <= 0.024 and norm(cube_pos_z - target_pos_z) >= 0)",
     "G[0,30](norm(cube_pos - target_pos) <= 0.35 or norm(cube_pos_z - target_pos_z) >= 0.02)"},
    {TaskId::PH, "G[25,30](norm(obj_pos - hole_pos) <= 0.12)", "G[25,30](norm(obj_pos - hole_pos) <= 0.37)"},
    {TaskId::BB, "G[5,20](norm(ball_pos - tray_pos) <= 0.25)", "G[5,20](norm(ball_pos - tray_pos) <= 0.2)"},
    {TaskId::BC, "G[5,30](norm(ball_pos - tool_pos) <= 0.1)", "G[5,30](norm(ball_pos - tool_pos) <= 0.2)"},
    {TaskId::BP, "F[0,30](norm(ball_pos - hole_pos) <= 0.3)", "F[0,30](norm(ball_pos - hole_pos) <= 0.5)"},
    {TaskId::DO, "F[0,30](door_yaw >= 20)", "F[0,30](door_yaw >= 0.1)"},
    {TaskId::CP, "F[0,30](norm(cloth_pos - table_pos) <= 0.25)",
     "G[0,30](norm(cloth_pos - table_pos) <= 0.3 or norm(cloth_pos_z - ground_pos_z) >= 0.02)"},
};

}  // namespace

std::string_view to_string(SpecKind k) noexcept { return k == SpecKind::Success ? "success" : "danger"; }

std::string_view builtin_spec_text(TaskId id, SpecKind kind) noexcept {
  for (const auto& e : kSpecs) {
    if (e.id == id) return kind == SpecKind::Success ? e.success : e.danger;
  }
  return {};
}

stl::Formula builtin_spec(TaskId id, SpecKind kind) { return stl::parse(builtin_spec_text(id, kind)); }

std::string builtin_spec_filename(TaskId id, SpecKind kind) {
  std::string name(to_string(id));
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return name + "_" + std::string(to_string(kind)) + ".stl";
}

}  // namespace stlf::envs
