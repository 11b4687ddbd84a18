#include "monoqp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "monoqp/decider.hpp"
#include "monoqp/enumerate.hpp"
#include "monoqp/io.hpp"
#include "monoqp/oracle.hpp"

namespace monoqp::cli {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

int env_max_n(int fallback) {
    if (const char* v = std::getenv("MONOQP_MAX_N")) {
        char* end = nullptr;
        const long parsed = std::strtol(v, &end, 10);
        if (end && *end == '\0' && parsed >= 1) return static_cast<int>(parsed);
    }
    return fallback;
}

std::string echo(const std::vector<std::string>& args) {
    std::string out;
    for (const auto& a : args) {
        if (!out.empty()) out += ' ';
        out += a;
    }
    return out;
}

std::string one_based(const std::vector<int>& m) {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(m[i] + 1);
    }
    return out;
}

json images_json(const MonounaryAlgebra& a) {
    json v = json::array();
    for (int x = 0; x < a.size(); ++x) v.push_back(a.step(x) + 1);
    return v;
}

std::string describe_sites(const QpVerdict& verdict) {
    std::string out;
    for (const auto& s : verdict.sites) {
        out += "  site: component " + std::to_string(s.component);
        if (s.offset >= 0) out += ", offset " + std::to_string(s.offset);
        if (s.length != -1)
            out += ", length " + (is_infinite(s.length) ? std::string("inf")
                                                        : std::to_string(s.length));
        out += '\n';
    }
    return out;
}

json verdict_json(const QpVerdict& verdict) {
    json v;
    v["quasi_projective"] = verdict.quasi_projective();
    if (!verdict.quasi_projective()) {
        v["violation"] = to_string(*verdict.violation);
        v["detail"] = verdict.detail;
        json sites = json::array();
        for (const auto& s : verdict.sites) {
            json site;
            site["component"] = s.component;
            if (s.offset >= 0) site["offset"] = s.offset;
            if (s.length != -1)
                site["length"] = is_infinite(s.length) ? json("inf") : json(s.length);
            sites.push_back(std::move(site));
        }
        v["sites"] = std::move(sites);
    }
    return v;
}

// ----- analyze --------------------------------------------------------------

json analysis_json(const MonounaryAlgebra& a) {
    const ComponentAnalysis an = analyze(a);
    const Schema s = to_schema(a);
    json comps = json::array();
    for (size_t ci = 0; ci < an.components.size(); ++ci) {
        const auto& comp = an.components[ci];
        json cycle = json::array();
        for (int c : comp.cycle) cycle.push_back(c + 1);
        json elements = json::array();
        for (int e : comp.elements) elements.push_back(e + 1);
        json branches = json::array();
        for (const auto& rec : branch_inventory(s)) {
            if (rec.component != static_cast<int>(ci)) continue;
            branches.push_back(json{{"offset", rec.offset},
                                    {"length", rec.length},
                                    {"simple_path", rec.is_simple_path},
                                    {"branch_count", rec.branch_count}});
        }
        comps.push_back(json{{"cn", comp.cn()},
                             {"cycle", std::move(cycle)},
                             {"elements", std::move(elements)},
                             {"branches", std::move(branches)}});
    }
    json elems = json::array();
    for (int x = 0; x < a.size(); ++x) {
        if (an.is_cyclic[x]) continue;
        elems.push_back(json{{"element", x + 1},
                             {"height", an.height[x]},
                             {"depth", an.depth[x]},
                             {"leaf", static_cast<bool>(an.is_leaf[x])}});
    }
    return json{{"input", json{{"n", a.size()}, {"images", images_json(a)}}},
                {"components", std::move(comps)},
                {"acyclic_elements", std::move(elems)}};
}

void analyze_text(const MonounaryAlgebra& a, std::ostream& out) {
    const ComponentAnalysis an = analyze(a);
    const Schema s = to_schema(a);
    const auto inventory = branch_inventory(s);
    out << "n: " << a.size() << "\ncomponents: " << an.components.size() << "\n";
    for (size_t ci = 0; ci < an.components.size(); ++ci) {
        const auto& comp = an.components[ci];
        out << "component " << ci << ": cn=" << comp.cn() << ", size=" << comp.elements.size()
            << ", cycle=(";
        for (size_t i = 0; i < comp.cycle.size(); ++i)
            out << (i ? " " : "") << comp.cycle[i] + 1;
        out << ")\n";
        for (const auto& rec : inventory) {
            if (rec.component != static_cast<int>(ci)) continue;
            out << "  branch at offset " << rec.offset << ": length " << rec.length
                << ", simple=" << (rec.is_simple_path ? "yes" : "no") << ", count "
                << rec.branch_count << "\n";
        }
    }
    for (int x = 0; x < a.size(); ++x) {
        if (an.is_cyclic[x]) continue;
        out << "element " << x + 1 << ": l_h=" << an.height[x] << ", l_d=" << an.depth[x]
            << (an.is_leaf[x] ? ", leaf" : "") << "\n";
    }
}

std::string fmt_len(long v) { return is_infinite(v) ? "inf" : std::to_string(v); }

void analyze_schema_text(const Schema& s, std::ostream& out) {
    out << "components: " << s.components.size() << "\n";
    const auto inventory = branch_inventory(s);
    for (size_t ci = 0; ci < s.components.size(); ++ci) {
        if (const auto* wc = std::get_if<WithCycle>(&s.components[ci]))
            out << "component " << ci << ": cn=" << wc->cn << "\n";
        else {
            const auto& cf = std::get<CycleFree>(s.components[ci]);
            out << "component " << ci << ": cycle-free "
                << (cf.backward_infinite ? "bi-infinite chain" : "chain with a backward end")
                << "\n";
        }
        for (const auto& rec : inventory) {
            if (rec.component != static_cast<int>(ci)) continue;
            out << "  " << (rec.kind == ComponentKind::WithCycle ? "branch at offset "
                                                                 : "decoration at index ")
                << rec.offset << ": length " << fmt_len(rec.length)
                << ", simple=" << (rec.is_simple_path ? "yes" : "no") << ", count "
                << (is_infinite(rec.branch_count) ? "inf" : std::to_string(rec.branch_count))
                << "\n";
        }
    }
}

json schema_analysis_json(const Schema& s) {
    json comps = json::array();
    const auto inventory = branch_inventory(s);
    for (size_t ci = 0; ci < s.components.size(); ++ci) {
        json c;
        if (const auto* wc = std::get_if<WithCycle>(&s.components[ci])) {
            c["cn"] = wc->cn;
        } else {
            const auto& cf = std::get<CycleFree>(s.components[ci]);
            c["cn"] = "inf";
            c["backward_infinite"] = cf.backward_infinite;
        }
        json branches = json::array();
        for (const auto& rec : inventory) {
            if (rec.component != static_cast<int>(ci)) continue;
            branches.push_back(
                json{{"offset", rec.offset},
                     {"length", is_infinite(rec.length) ? json("inf") : json(rec.length)},
                     {"simple_path", rec.is_simple_path},
                     {"branch_count", rec.branch_count}});
        }
        c["branches"] = std::move(branches);
        comps.push_back(std::move(c));
    }
    return json{{"components", std::move(comps)}};
}

// ----- verify ---------------------------------------------------------------

void witness_text(const OracleWitness& w, std::ostream& out) {
    out << "target kind: " << w.target_kind << "\n";
    if (!w.theta_class_id.empty()) {
        std::vector<std::vector<int>> classes(
            1 + *std::max_element(w.theta_class_id.begin(), w.theta_class_id.end()));
        for (size_t x = 0; x < w.theta_class_id.size(); ++x)
            classes[w.theta_class_id[x]].push_back(static_cast<int>(x));
        out << "theta classes:";
        for (const auto& cls : classes) {
            out << " {";
            for (size_t i = 0; i < cls.size(); ++i) out << (i ? "," : "") << cls[i] + 1;
            out << "}";
        }
        out << "\n";
    }
    if (!w.subalgebra.empty()) {
        out << "subalgebra U: {";
        for (size_t i = 0; i < w.subalgebra.size(); ++i)
            out << (i ? "," : "") << w.subalgebra[i] + 1;
        out << "}\n";
    }
    out << "target images: " << one_based(w.target.images()) << "\n";
    out << "j: " << one_based(w.j.map) << "\n";
    out << "f: " << one_based(w.f.map) << "\n";
}

json witness_json(const OracleWitness& w) {
    json v;
    v["target_kind"] = w.target_kind;
    if (!w.theta_class_id.empty()) v["theta_class_id"] = w.theta_class_id;
    if (!w.subalgebra.empty()) {
        json u = json::array();
        for (int x : w.subalgebra) u.push_back(x + 1);
        v["subalgebra"] = std::move(u);
    }
    v["target_images"] = images_json(w.target);
    json jm = json::array(), fm = json::array();
    for (int x : w.j.map) jm.push_back(x + 1);
    for (int x : w.f.map) fm.push_back(x + 1);
    v["j"] = std::move(jm);
    v["f"] = std::move(fm);
    return v;
}

json stats_json(const OracleStats& st) {
    return json{{"targets", st.targets},
                {"epis", st.epis},
                {"homs", st.homs},
                {"lift_searches", st.lift_searches}};
}

void oracle_text(const std::string& name, const OracleVerdict& v, std::ostream& out) {
    out << name << ": " << (v.quasi_projective ? "quasi-projective" : "not quasi-projective")
        << "\n";
    if (v.witness) witness_text(*v.witness, out);
    out << "stats: targets=" << v.stats.targets << ", epis=" << v.stats.epis
        << ", homs=" << v.stats.homs << ", lift_searches=" << v.stats.lift_searches << "\n";
}

json oracle_json(const OracleVerdict& v) {
    json out;
    out["quasi_projective"] = v.quasi_projective;
    if (v.witness) out["witness"] = witness_json(*v.witness);
    out["stats"] = stats_json(v.stats);
    return out;
}

struct Options {
    std::string file;
    std::string file2;
    std::string out_path;
    std::string definition = "both";
    std::string subalgebra;
    bool schema = false;
    bool json_mode = false;
    bool epi = false;
    bool endo = false;
    bool count = false;
    bool qp_only = false;
    bool canonical_only = false;
    int max_n = 0;
    int n = 0;
};

std::vector<int> parse_element_list(const std::string& text, int n) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad element '" + item + "' in subalgebra list");
        }
        if (pos != item.size()) throw ParseError("bad element '" + item + "' in subalgebra list");
        if (v < 1 || v > n)
            throw ParseError("element " + std::to_string(v) + " out of range 1.." +
                             std::to_string(n));
        out.push_back(v - 1);
    }
    if (out.empty()) throw ParseError("empty subalgebra list");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"monounary algebra analysis and quasi-projectivity"};
    app.require_subcommand(1);
    Options o;

    auto* analyze_cmd = app.add_subcommand("analyze", "structural report for a map file");
    analyze_cmd->add_option("file", o.file)->required();
    analyze_cmd->add_flag("--schema", o.schema, "input is schema JSON");
    analyze_cmd->add_flag("--json", o.json_mode);

    auto* decide_cmd = app.add_subcommand("decide", "structural quasi-projectivity verdict");
    decide_cmd->add_option("file", o.file)->required();
    decide_cmd->add_flag("--schema", o.schema, "input is schema JSON");
    decide_cmd->add_flag("--json", o.json_mode);

    auto* verify_cmd = app.add_subcommand("verify", "brute-force verdict from the definition");
    verify_cmd->add_option("file", o.file)->required();
    verify_cmd->add_option("--definition", o.definition)
        ->check(CLI::IsMember({"general", "js", "both"}));
    verify_cmd->add_option("--max-n", o.max_n, "size guard override");
    verify_cmd->add_flag("--canonical-only", o.canonical_only,
                         "restrict j to the canonical projection");
    verify_cmd->add_flag("--json", o.json_mode);

    auto* quotient_cmd = app.add_subcommand("quotient", "collapse a subalgebra per component");
    quotient_cmd->add_option("file", o.file)->required();
    quotient_cmd->add_option("--subalgebra", o.subalgebra, "1-based elements, e.g. 1,2")
        ->required();
    quotient_cmd->add_flag("--json", o.json_mode);

    auto* homs_cmd = app.add_subcommand("homs", "enumerate homomorphisms");
    homs_cmd->add_option("src", o.file)->required();
    homs_cmd->add_option("tgt", o.file2);
    homs_cmd->add_flag("--epi", o.epi, "surjective only");
    homs_cmd->add_flag("--endo", o.endo, "endomorphisms of src");
    homs_cmd->add_flag("--count", o.count, "print the count only");
    homs_cmd->add_flag("--json", o.json_mode);

    auto* enum_cmd = app.add_subcommand("enumerate", "isomorphism classes of a given size");
    enum_cmd->add_option("n", o.n)->required();
    enum_cmd->add_flag("--qp-only", o.qp_only, "keep the quasi-projective ones");
    enum_cmd->add_option("--out", o.out_path, "write map files into this directory");
    enum_cmd->add_flag("--json", o.json_mode);

    auto* dot_cmd = app.add_subcommand("export-dot", "DOT diagram of a map file");
    dot_cmd->add_option("file", o.file)->required();
    dot_cmd->add_option("-o,--output", o.out_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string cmd_echo = echo(args);

    try {
        if (app.got_subcommand(analyze_cmd)) {
            if (o.schema) {
                const Schema s = read_schema_file(o.file);
                if (o.json_mode) {
                    json v = schema_analysis_json(s);
                    v["format"] = kFormatVersion;
                    v["command"] = cmd_echo;
                    out << v.dump(2) << "\n";
                } else {
                    out << "command: " << cmd_echo << "\n";
                    analyze_schema_text(s, out);
                }
            } else {
                const MonounaryAlgebra a = read_map_file(o.file);
                if (o.json_mode) {
                    json v = analysis_json(a);
                    v["format"] = kFormatVersion;
                    v["command"] = cmd_echo;
                    out << v.dump(2) << "\n";
                } else {
                    out << "command: " << cmd_echo << "\n";
                    analyze_text(a, out);
                }
            }
            return 0;
        }

        if (app.got_subcommand(decide_cmd)) {
            const QpVerdict verdict =
                o.schema ? decide(read_schema_file(o.file)) : decide_finite(read_map_file(o.file));
            if (o.json_mode) {
                json v = verdict_json(verdict);
                v["format"] = kFormatVersion;
                v["command"] = cmd_echo;
                out << v.dump(2) << "\n";
            } else {
                out << "command: " << cmd_echo << "\n";
                if (verdict.quasi_projective()) {
                    out << "quasi-projective\n";
                } else {
                    out << "not quasi-projective: " << to_string(*verdict.violation) << "\n"
                        << verdict.detail << "\n"
                        << describe_sites(verdict);
                }
            }
            return verdict.quasi_projective() ? 0 : 1;
        }

        if (app.got_subcommand(verify_cmd)) {
            const MonounaryAlgebra a = read_map_file(o.file);
            OracleOptions opts;
            opts.max_n = o.max_n > 0 ? o.max_n : env_max_n(opts.max_n);
            opts.canonical_only = o.canonical_only;

            std::optional<OracleVerdict> general, js;
            if (o.definition == "general" || o.definition == "both")
                general = oracle_general(a, opts);
            if (o.definition == "js" || o.definition == "both") js = oracle_js(a, opts);
            const bool disagree =
                general && js && general->quasi_projective != js->quasi_projective;
            const bool qp = general ? general->quasi_projective : js->quasi_projective;
            if (o.json_mode) {
                json v;
                v["format"] = kFormatVersion;
                v["command"] = cmd_echo;
                if (!disagree) v["quasi_projective"] = qp;
                if (general) v["general"] = oracle_json(*general);
                if (js) v["js"] = oracle_json(*js);
                if (general && js) v["agreement"] = !disagree;
                out << v.dump(2) << "\n";
            } else {
                out << "command: " << cmd_echo << "\n";
                if (general) oracle_text("general", *general, out);
                if (js) oracle_text("js", *js, out);
                if (general && js) out << "agreement: " << (disagree ? "no" : "yes") << "\n";
            }
            if (disagree) {
                // The notions genuinely differ on some disconnected algebras;
                // factor algebras never merge components.
                err << "error: the two definitions disagree on this input\n";
                return 2;
            }
            return qp ? 0 : 1;
        }

        if (app.got_subcommand(quotient_cmd)) {
            const MonounaryAlgebra a = read_map_file(o.file);
            const std::vector<int> u = parse_element_list(o.subalgebra, a.size());
            const Congruence theta = theta_u(a, u);
            const QuotientAlgebra q = quotient(a, theta);
            if (o.json_mode) {
                json classes = json::array();
                for (const auto& cls : theta.classes()) {
                    json c = json::array();
                    for (int x : cls) c.push_back(x + 1);
                    classes.push_back(std::move(c));
                }
                json v;
                v["format"] = kFormatVersion;
                v["command"] = cmd_echo;
                v["classes"] = std::move(classes);
                v["quotient"] = json{{"n", q.algebra.size()}, {"images", images_json(q.algebra)}};
                out << v.dump(2) << "\n";
            } else {
                out << "command: " << cmd_echo << "\n";
                out << "classes:";
                for (const auto& cls : theta.classes()) {
                    out << " {";
                    for (size_t i = 0; i < cls.size(); ++i) out << (i ? "," : "") << cls[i] + 1;
                    out << "}";
                }
                out << "\nquotient map:\n" << write_map(q.algebra);
            }
            return 0;
        }

        if (app.got_subcommand(homs_cmd)) {
            const MonounaryAlgebra src = read_map_file(o.file);
            if (!o.endo && o.file2.empty())
                throw ParseError("homs needs a target file unless --endo is given");
            const MonounaryAlgebra tgt = o.endo ? src : read_map_file(o.file2);
            std::vector<Homomorphism> hs =
                o.epi ? enumerate_epis(src, tgt) : enumerate_homs(src, tgt);
            if (o.json_mode) {
                json v;
                v["format"] = kFormatVersion;
                v["command"] = cmd_echo;
                v["count"] = hs.size();
                if (!o.count) {
                    json maps = json::array();
                    for (const auto& h : hs) {
                        json m = json::array();
                        for (int x : h.map) m.push_back(x + 1);
                        maps.push_back(std::move(m));
                    }
                    v["maps"] = std::move(maps);
                }
                out << v.dump(2) << "\n";
            } else {
                out << "command: " << cmd_echo << "\n";
                out << "count: " << hs.size() << "\n";
                if (!o.count)
                    for (const auto& h : hs) out << one_based(h.map) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(enum_cmd)) {
            const AlgebraCatalog cat = all_algebras(o.n, env_max_n(7));
            std::vector<size_t> keep;
            for (size_t i = 0; i < cat.size(); ++i)
                if (!o.qp_only || decide_finite(cat.representatives[i]).quasi_projective())
                    keep.push_back(i);
            if (!o.out_path.empty()) {
                std::filesystem::create_directories(o.out_path);
                for (size_t i : keep) {
                    char name[32];
                    std::snprintf(name, sizeof name, "%016llx",
                                  static_cast<unsigned long long>(fnv1a64(cat.keys[i])));
                    std::ofstream f(std::filesystem::path(o.out_path) /
                                    (std::string(name) + ".map"));
                    f << write_map(cat.representatives[i]);
                }
            }
            if (o.json_mode) {
                json v;
                v["format"] = kFormatVersion;
                v["command"] = cmd_echo;
                v["n"] = o.n;
                v["count"] = keep.size();
                json items = json::array();
                for (size_t i : keep)
                    items.push_back(json{{"key_hash", fnv1a64(cat.keys[i])},
                                         {"images", images_json(cat.representatives[i])}});
                v["classes"] = std::move(items);
                out << v.dump(2) << "\n";
            } else {
                out << "command: " << cmd_echo << "\n";
                out << "classes: " << keep.size() << "\n";
                for (size_t i : keep)
                    out << one_based(cat.representatives[i].images()) << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(dot_cmd)) {
            const MonounaryAlgebra a = read_map_file(o.file);
            const std::string dot = to_dot(a);
            if (o.out_path.empty()) {
                out << dot;
            } else {
                std::ofstream f(o.out_path);
                if (!f) throw ParseError("cannot write '" + o.out_path + "'");
                f << dot;
            }
            return 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    err << "error: no command\n";
    return 2;
}

}  // namespace monoqp::cli
