#include "monoqp/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace monoqp {

namespace {

// Next content line: comments and blank lines skipped.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == '#') continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }
    return false;
}

}  // namespace

MonounaryAlgebra read_map(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw ParseError("missing carrier size line");
    long n = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> n)) throw ParseError("carrier size is not a number: '" + line + "'");
        std::string extra;
        if (ss >> extra) throw ParseError("unexpected token after carrier size: '" + extra + "'");
    }
    if (n < 1) throw ParseError("carrier size must be positive, got " + std::to_string(n));

    if (!next_line(in, line)) throw ParseError("missing image line");
    std::istringstream ss(line);
    std::vector<int> images;
    images.reserve(n);
    for (long i = 1; i <= n; ++i) {
        long v = 0;
        if (!(ss >> v))
            throw ParseError("image " + std::to_string(i) + " of " + std::to_string(n) +
                             " missing or malformed");
        if (v < 1 || v > n)
            throw ParseError("image " + std::to_string(v) + " at position " + std::to_string(i) +
                             " out of range 1.." + std::to_string(n));
        images.push_back(static_cast<int>(v));
    }
    std::string extra;
    if (ss >> extra) throw ParseError("trailing token after images: '" + extra + "'");
    return parse_map(static_cast<int>(n), images);
}

MonounaryAlgebra read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_map(in);
}

std::string write_map(const MonounaryAlgebra& a) {
    std::string out = std::to_string(a.size());
    out += '\n';
    for (int x = 0; x < a.size(); ++x) {
        if (x) out += ' ';
        out += std::to_string(a.step(x) + 1);
    }
    out += '\n';
    return out;
}

namespace {

using nlohmann::json;

json tree_to_json(const BranchTree& t) {
    json kids = json::array();
    for (const auto& c : t.children) kids.push_back(tree_to_json(c));
    return json{{"children", std::move(kids)}, {"infinite_tail", t.infinite_tail}};
}

BranchTree tree_from_json(const json& v) {
    if (!v.is_object()) throw ParseError("tree must be an object");
    if (!v.contains("children") || !v["children"].is_array())
        throw ParseError("tree needs a 'children' array");
    if (!v.contains("infinite_tail") || !v["infinite_tail"].is_boolean())
        throw ParseError("tree needs a boolean 'infinite_tail'");
    BranchTree t;
    t.infinite_tail = v["infinite_tail"].get<bool>();
    for (const auto& c : v["children"]) t.children.push_back(tree_from_json(c));
    return t;
}

}  // namespace

std::string write_schema(const Schema& s) {
    json comps = json::array();
    for (const auto& comp : s.components) {
        if (const auto* wc = std::get_if<WithCycle>(&comp)) {
            json atts = json::array();
            for (const auto& [off, tree] : wc->attachments)
                atts.push_back(json{{"offset", off}, {"tree", tree_to_json(tree)}});
            comps.push_back(json{{"cycle", wc->cn}, {"attachments", std::move(atts)}});
        } else {
            const auto& cf = std::get<CycleFree>(comp);
            json decs = json::array();
            for (const auto& [idx, tree] : cf.decorations)
                decs.push_back(json{{"index", idx}, {"tree", tree_to_json(tree)}});
            comps.push_back(json{
                {"chain", json{{"backward_infinite", cf.backward_infinite},
                               {"decorations", std::move(decs)}}}});
        }
    }
    return json{{"components", std::move(comps)}}.dump(2) + "\n";
}

Schema read_schema(std::istream& in) {
    json v;
    try {
        v = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("schema JSON: ") + e.what());
    }
    if (!v.is_object() || !v.contains("components") || !v["components"].is_array())
        throw ParseError("schema needs a 'components' array");

    Schema s;
    for (const auto& comp : v["components"]) {
        if (!comp.is_object()) throw ParseError("component must be an object");
        if (comp.contains("cycle")) {
            WithCycle wc;
            if (!comp["cycle"].is_number_integer())
                throw ParseError("'cycle' must be an integer");
            wc.cn = comp["cycle"].get<int>();
            if (comp.contains("attachments")) {
                if (!comp["attachments"].is_array())
                    throw ParseError("'attachments' must be an array");
                for (const auto& att : comp["attachments"]) {
                    if (!att.contains("offset") || !att["offset"].is_number_integer())
                        throw ParseError("attachment needs an integer 'offset'");
                    if (!att.contains("tree")) throw ParseError("attachment needs a 'tree'");
                    const int off = att["offset"].get<int>();
                    if (!wc.attachments.emplace(off, tree_from_json(att["tree"])).second)
                        throw ParseError("duplicate attachment offset " + std::to_string(off));
                }
            }
            s.components.emplace_back(std::move(wc));
        } else if (comp.contains("chain")) {
            const auto& ch = comp["chain"];
            if (!ch.is_object()) throw ParseError("'chain' must be an object");
            CycleFree cf;
            if (!ch.contains("backward_infinite") || !ch["backward_infinite"].is_boolean())
                throw ParseError("chain needs a boolean 'backward_infinite'");
            cf.backward_infinite = ch["backward_infinite"].get<bool>();
            if (ch.contains("decorations")) {
                if (!ch["decorations"].is_array())
                    throw ParseError("'decorations' must be an array");
                for (const auto& dec : ch["decorations"]) {
                    if (!dec.contains("index") || !dec["index"].is_number_integer())
                        throw ParseError("decoration needs an integer 'index'");
                    if (!dec.contains("tree")) throw ParseError("decoration needs a 'tree'");
                    const long idx = dec["index"].get<long>();
                    if (!cf.decorations.emplace(idx, tree_from_json(dec["tree"])).second)
                        throw ParseError("duplicate decoration index " + std::to_string(idx));
                }
            }
            s.components.emplace_back(std::move(cf));
        } else {
            throw ParseError("component needs 'cycle' or 'chain'");
        }
    }
    try {
        validate(s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return s;
}

Schema read_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_schema(in);
}

std::string to_dot(const MonounaryAlgebra& a) {
    const ComponentAnalysis an = analyze(a);
    std::string out = "digraph algebra {\n";
    for (int x = 0; x < a.size(); ++x) {
        out += "  " + std::to_string(x + 1);
        if (an.is_cyclic[x]) out += " [shape=doublecircle]";
        out += ";\n";
    }
    for (int x = 0; x < a.size(); ++x)
        out += "  " + std::to_string(x + 1) + " -> " + std::to_string(a.step(x) + 1) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace monoqp
