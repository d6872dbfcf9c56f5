#pragma once

#include <string>
#include <string_view>

#include "gptdyn/solver.hpp"
#include "gptdyn/theory.hpp"

namespace gptdyn {

/// Theory from JSON config text:
///
///   {"name": "...",                       (optional)
///    "measurements": [{"label": "Z", "outcomes": 2, "role": "branch"}, ...],
///    "state_space": {"type": "polytope_v", "vertices": [["1/1", ...], ...],
///                    "halfspaces": [{"a": [...], "b": "p/q"}, ...]}}   (optional)
///
/// `state_space.type` is polytope_v, polytope_h (halfspaces only) or ball.
/// Rationals are "p/q" strings or JSON integers; floats are rejected.
/// Syntax and shape errors throw ParseError with the offending line;
/// invariant violations surface from TheorySpec::create as ValidationError.
TheorySpec load_theory(std::string_view config_text, std::string default_name = "theory");

/// Reads the file (ArgumentError when it cannot be opened) and names the
/// theory after the file stem unless the config names it.
TheorySpec load_theory_file(const std::string &path);

/// {"rows": [["p/q", ...], ...]} in minimal representation.
Transformation parse_transformation(std::string_view text);
Transformation load_transformation_file(const std::string &path);
std::string serialize_transformation(const Transformation &T);

/// Config text for an existing theory (vertices and halfspaces included).
std::string serialize_theory(const TheorySpec &t);

}  // namespace gptdyn
