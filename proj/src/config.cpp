#include "gptdyn/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gptdyn/errors.hpp"

namespace gptdyn {

using nlohmann::json;

namespace {

int line_at(std::string_view text, size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Line of the nth occurrence of "key"; line 1 when absent. JSON objects lose positions once parsed, so semantic errors are
// located by searching the source for the key they concern.
class Locator {
   public:
    explicit Locator(std::string_view text) : text_(text) {}

    int key(std::string_view k, size_t nth = 0) const {
        std::string quoted = "\"" + std::string(k) + "\"";
        size_t pos = 0;
        for (size_t i = 0;; i++) {
            pos = text_.find(quoted, pos);
            if (pos == std::string_view::npos) {
                return 1;
            }
            if (i == nth) {
                return line_at(text_, pos);
            }
            pos += quoted.size();
        }
    }

   private:
    std::string_view text_;
};

Rat parse_rational(const json &j, const std::string &where, int line) {
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const ArgumentError &e) {
            throw ParseError(where + ": " + e.what(), line);
        }
    }
    if (j.is_number_integer()) {
        return Rat(j.get<int64_t>());
    }
    if (j.is_number_float()) {
        throw ParseError(where + ": floating-point numbers are not accepted; write rationals as \"p/q\" strings",
                         line);
    }
    throw ParseError(where + ": expected a rational \"p/q\" string, got " + j.dump(), line);
}

RVec parse_vector(const json &j, const std::string &where, int line) {
    if (!j.is_array()) {
        throw ParseError(where + ": expected an array of rationals", line);
    }
    RVec v;
    for (size_t i = 0; i < j.size(); i++) {
        v.push_back(parse_rational(j[i], where + "[" + std::to_string(i) + "]", line));
    }
    return v;
}

const json &require(const json &obj, const char *key, const std::string &where, int line) {
    if (!obj.is_object()) {
        throw ParseError(where + " must be an object", line);
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(where + " is missing \"" + key + "\"", line);
    }
    return *it;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(e.what(), line_at(text, e.byte > 0 ? e.byte - 1 : 0));
    }
}

json rat_json(const Rat &r) { return r.to_string(); }

json vec_json(const RVec &v) {
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(rat_json(x));
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TheorySpec load_theory(std::string_view config_text, std::string default_name) {
    const json root = parse_json(config_text);
    const Locator loc(config_text);
    if (!root.is_object()) {
        throw ParseError("config must be a JSON object", 1);
    }
    std::string name = std::move(default_name);
    if (auto it = root.find("name"); it != root.end()) {
        if (!it->is_string()) {
            throw ParseError("\"name\" must be a string", loc.key("name"));
        }
        name = it->get<std::string>();
    }

    const int ml = loc.key("measurements");
    const json &ms = require(root, "measurements", "config", 1);
    if (!ms.is_array()) {
        throw ParseError("\"measurements\" must be an array", ml);
    }
    if (ms.empty()) {
        throw ParseError("\"measurements\" is empty; a theory needs a branch measurement", ml);
    }
    std::vector<MeasurementSpec> measurements;
    for (size_t i = 0; i < ms.size(); i++) {
        const std::string where = "measurements[" + std::to_string(i) + "]";
        const int line = std::max(loc.key("label", i), ml);
        const json &m = ms[i];
        const json &label = require(m, "label", where, line);
        const json &outcomes = require(m, "outcomes", where, line);
        const json &role = require(m, "role", where, line);
        if (!label.is_string()) {
            throw ParseError(where + ".label must be a string", line);
        }
        if (!outcomes.is_number_integer() || outcomes.get<int64_t>() < 0) {
            throw ParseError(where + ".outcomes must be a non-negative integer", line);
        }
        if (!role.is_string() || (role != "branch" && role != "fiducial")) {
            throw ParseError(where + ".role must be \"branch\" or \"fiducial\"", line);
        }
        measurements.push_back({label.get<std::string>(), outcomes.get<size_t>(),
                                role == "branch" ? Role::Branch : Role::Fiducial});
    }

    const int sl = loc.key("state_space");
    const json &sj = require(root, "state_space", "config", 1);
    const json &type = require(sj, "type", "state_space", sl);
    StateSpaceSpec ss;
    auto read_halfspaces = [&](const json &hs) {
        const int hl = loc.key("halfspaces");
        if (!hs.is_array()) {
            throw ParseError("state_space.halfspaces must be an array", hl);
        }
        for (size_t i = 0; i < hs.size(); i++) {
            const std::string where = "halfspaces[" + std::to_string(i) + "]";
            ss.halfspaces.push_back({parse_vector(require(hs[i], "a", where, hl), where + ".a", hl),
                                     parse_rational(require(hs[i], "b", where, hl), where + ".b", hl)});
        }
    };
    if (type == "ball") {
        ss.kind = StateSpaceSpec::Kind::Ball;
    } else if (type == "polytope_v") {
        ss.kind = StateSpaceSpec::Kind::PolytopeV;
        const int vl = loc.key("vertices");
        const json &vs = require(sj, "vertices", "state_space", sl);
        if (!vs.is_array()) {
            throw ParseError("state_space.vertices must be an array", vl);
        }
        for (size_t i = 0; i < vs.size(); i++) {
            ss.vertices.push_back(parse_vector(vs[i], "vertices[" + std::to_string(i) + "]", vl));
        }
        if (auto it = sj.find("halfspaces"); it != sj.end()) {
            read_halfspaces(*it);
        }
    } else if (type == "polytope_h") {
        ss.kind = StateSpaceSpec::Kind::PolytopeH;
        read_halfspaces(require(sj, "halfspaces", "state_space", sl));
    } else {
        throw ParseError("state_space.type must be polytope_v, polytope_h or ball, got " + type.dump(),
                         loc.key("type"));
    }
    return TheorySpec::create(std::move(name), std::move(measurements), std::move(ss));
}

TheorySpec load_theory_file(const std::string &path) {
    return load_theory(read_file(path), std::filesystem::path(path).stem().string());
}

Transformation parse_transformation(std::string_view text) {
    const json root = parse_json(text);
    const Locator loc(text);
    const int rl = loc.key("rows");
    const json &rows = require(root, "rows", "transformation", 1);
    if (!rows.is_array() || rows.empty()) {
        throw ParseError("\"rows\" must be a non-empty array", rl);
    }
    std::vector<RVec> parsed;
    for (size_t i = 0; i < rows.size(); i++) {
        parsed.push_back(parse_vector(rows[i], "rows[" + std::to_string(i) + "]", rl));
        if (parsed.back().size() != rows.size()) {
            throw ParseError("transformation must be square: row " + std::to_string(i) + " has " +
                                 std::to_string(parsed.back().size()) + " entries, expected " +
                                 std::to_string(rows.size()),
                             rl);
        }
    }
    return RMat::from_rows(parsed, rows.size());
}

Transformation load_transformation_file(const std::string &path) {
    return parse_transformation(read_file(path));
}

std::string serialize_transformation(const Transformation &T) {
    json rows = json::array();
    for (size_t r = 0; r < T.rows(); r++) {
        rows.push_back(vec_json(T.row(r)));
    }
    return json{{"rows", rows}}.dump(2) + "\n";
}

std::string serialize_theory(const TheorySpec &t) {
    json ms = json::array();
    for (const auto &m : t.measurements()) {
        ms.push_back({{"label", m.label},
                      {"outcomes", m.outcomes},
                      {"role", m.role == Role::Branch ? "branch" : "fiducial"}});
    }
    json ss;
    if (t.state_space().is_ball()) {
        ss = {{"type", "ball"}};
    } else {
        json vs = json::array();
        for (const auto &v : t.state_space().vertices) {
            vs.push_back(vec_json(v));
        }
        json hs = json::array();
        for (const auto &h : t.state_space().halfspaces) {
            hs.push_back({{"a", vec_json(h.a)}, {"b", rat_json(h.b)}});
        }
        ss = {{"type", "polytope_v"}, {"vertices", vs}, {"halfspaces", hs}};
    }
    return json{{"name", t.name()}, {"measurements", ms}, {"state_space", ss}}.dump(2) + "\n";
}

}  // namespace gptdyn
