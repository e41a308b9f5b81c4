#pragma once

#include <string_view>

#include "stlf/stl/formula.hpp"
#include "stlf/task.hpp"

namespace stlf::envs {

enum class SpecKind { Success, Danger };

std::string_view to_string(SpecKind k) noexcept;

/// Concrete syntax of a built-in specification (ASCII spelling).
std::string_view builtin_spec_text(TaskId id, SpecKind kind) noexcept;

/// Parsed built-in specification.
stl::Formula builtin_spec(TaskId id, SpecKind kind);

/// File name of the shipped spec file, e.g. "pr_success.stl".
std::string builtin_spec_filename(TaskId id, SpecKind kind);

}  // namespace stlf::envs
