#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gptdyn/mub.hpp"
#include "gptdyn/restriction.hpp"
#include "gptdyn/solver.hpp"

namespace gptdyn {

enum class Format { Text, Json };

// Machine-readable reports. Objects use sorted keys and rationals are "p/q"
// strings, so dumping a parsed report reproduces it byte for byte.
nlohmann::json restriction_json(const RestrictionReport &r, const TheorySpec &t);
nlohmann::json mub_json(const MubReport &r);
nlohmann::json solver_json(const AllowedTransformSet &a, const TheorySpec &t);
nlohmann::json verification_json(const VerificationReport &r, size_t branch, const TheorySpec &t);
nlohmann::json theorem_json(const TheoremReport &r, const TheorySpec &t);
nlohmann::json monotonicity_json(const MonotonicityReport &r, const TheorySpec &less,
                                 const TheorySpec &more);

/// Two-space indented dump plus trailing newline.
std::string dump_report(const nlohmann::json &j);

// Human-readable tables.
std::string restriction_text(const RestrictionReport &r, const TheorySpec &t);
std::string mub_text(const MubReport &r);
std::string solver_text(const std::vector<AllowedTransformSet> &branches, const TheorySpec &t);
std::string verification_text(const VerificationReport &r, size_t branch, const TheorySpec &t);
std::string theorem_text(const TheoremReport &r, const TheorySpec &t);
std::string monotonicity_text(const MonotonicityReport &r, const TheorySpec &less,
                              const TheorySpec &more);

}  // namespace gptdyn
