#include "flatctc/io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flatctc/errors.hpp"
#include "json.hpp"

namespace flatctc {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError(std::string(what) + " must be finite");
    return x;
}

std::array<double, 3> triple(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ParseError(std::string(what) + " must be an array of 3 numbers");
    return {number(j[0], what), number(j[1], what), number(j[2], what)};
}

NamedIsometry isometry_from(const json& j, Admit admit) {
    if (!j.is_object()) throw ParseError("isometry must be an object");
    if (!j.contains("linear")) throw ParseError("isometry is missing \"linear\"");
    if (!j.contains("translation")) throw ParseError("isometry is missing \"translation\"");
    const json& lin = j.at("linear");
    if (!lin.is_array() || lin.size() != 3) throw ParseError("\"linear\" must be a 3x3 row-major array");
    std::array<std::array<double, 3>, 3> rows{};
    for (int r = 0; r < 3; ++r) rows[r] = triple(lin[r], "linear row");
    const auto t = triple(j.at("translation"), "translation");

    NamedIsometry out;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError("\"name\" must be a string");
        out.name = j.at("name").get<std::string>();
    }
    out.element = Isometry(Mat3::from_rows(rows), MVec(t[0], t[1], t[2]), admit);
    return out;
}

json isometry_to(const NamedIsometry& g) {
    json j;
    if (!g.name.empty()) j["name"] = g.name;
    json lin = json::array();
    for (int r = 0; r < 3; ++r) {
        lin.push_back({g.element.linear()(r, 0), g.element.linear()(r, 1), g.element.linear()(r, 2)});
    }
    j["linear"] = lin;
    const MVec& v = g.element.translation();
    j["translation"] = {v.x(), v.y(), v.z()};
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

NamedIsometry parse_isometry(const std::string& text, Admit admit) { return isometry_from(parse_json(text), admit); }

GroupPresentation parse_group(const std::string& text, Admit admit) {
    const json j = parse_json(text);
    GroupPresentation out;
    if (j.is_object()) {
        out.generators.push_back(isometry_from(j, admit));
    } else if (j.is_array()) {
        for (const auto& item : j) out.generators.push_back(isometry_from(item, admit));
    } else {
        throw ParseError("group must be an array of isometry objects");
    }
    if (out.generators.empty()) throw ParseError("group has no generators");
    for (std::size_t i = 0; i < out.generators.size(); ++i) {
        if (out.generators[i].name.empty()) out.generators[i].name = "g" + std::to_string(i + 1);
    }
    return out;
}

NamedIsometry load_isometry(const std::string& path, Admit admit) { return parse_isometry(read_file(path), admit); }

GroupPresentation load_group(const std::string& path, Admit admit) { return parse_group(read_file(path), admit); }

std::string serialize_isometry(const NamedIsometry& g) { return isometry_to(g).dump(2); }

std::string serialize_group(const GroupPresentation& group) {
    json arr = json::array();
    for (const auto& g : group.generators) arr.push_back(isometry_to(g));
    return arr.dump(2);
}

std::string serialize_witness(const CtcWitness& w) {
    json j;
    j["word"] = w.word().signed_indices();
    j["power"] = w.power();
    const MVec& d = w.displacement();
    j["displacement"] = {d.x(), d.y(), d.z()};
    j["b"] = w.b_value();
    return j.dump();
}

}  // namespace flatctc
