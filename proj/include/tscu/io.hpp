#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "graph.hpp"
#include "planar.hpp"
#include "xcsp.hpp"

namespace tscu {

/// Instance file error; `line` is 1-based, 0 when not tied to a line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what), line(line_no) {}
};

enum class ProblemKind { cutuncut, xcsp, diversion, glcsp };

inline const char* kind_name(ProblemKind k) {
    switch (k) {
    case ProblemKind::cutuncut: return "cutuncut";
    case ProblemKind::xcsp: return "xcsp";
    case ProblemKind::diversion: return "diversion";
    case ProblemKind::glcsp: return "glcsp";
    }
    return "?";
}

/// Parsed instance, ids 0-based. Sections that were absent stay empty.
struct InstanceFile {
    ProblemKind kind = ProblemKind::cutuncut;
    Multigraph graph;
    std::optional<std::vector<std::vector<DartId>>> rotation;
    std::optional<int> outer_face;
    std::vector<VertexId> S;
    std::vector<VertexId> T;
    bool has_s = false;
    bool has_t = false;
    int dimension = 0;
    std::vector<GroupVec> labels;
    std::optional<GroupVec> target;
    std::vector<std::vector<VertexId>> x_sets;
    std::vector<EdgeId> B;
    std::vector<int> FA;
    std::vector<int> FB;
    std::optional<int> k;
};

namespace detail {

inline std::vector<std::string> split_words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

inline long long parse_int(const std::string& word, int line) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(word, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + word + "'");
    }
    if (used != word.size()) throw ParseError(line, "expected an integer, got '" + word + "'");
    return value;
}

/// Bitstring over {0,1}; character i is coordinate i + 1.
inline GroupVec parse_bits(const std::string& word, int line, int& dimension) {
    if (word.empty() || word.size() > 62) throw ParseError(line, "bitstring must have 1 to 62 characters");
    GroupVec bits = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] == '1') bits |= GroupVec{1} << i;
        else if (word[i] != '0') throw ParseError(line, "bitstring may only contain 0 and 1");
    }
    if (dimension != 0 && dimension != static_cast<int>(word.size()))
        throw ParseError(line, "bitstring length differs from earlier labels");
    dimension = static_cast<int>(word.size());
    return bits;
}

inline std::string format_bits(GroupVec bits, int dimension) {
    std::string out;
    for (int i = 0; i < dimension; ++i) out += ((bits >> i) & 1u) ? '1' : '0';
    return out;
}

} // namespace detail

/// Parses the line-oriented instance format (ids 1-based on disk):
///   p <kind> <n> <m>, e <u> <v>, r <v> <eid>*, o <faceid>, s <v>*, t <v>*,
///   g <eid> <bits>, c <bits>, x <v>*, b <eid>*, fa <faceid>*, fb <faceid>*,
///   k <int>, # comment.
/// A loop listed in a rotation names its dart leaving from u first.
inline InstanceFile parse_instance(const std::string& text) {
    InstanceFile inst;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool header = false;
    int n = 0, m = 0;
    std::set<std::string> once;
    std::map<VertexId, int> rotation_line;
    std::vector<char> label_seen;

    auto vertex = [&](const std::string& w) {
        const long long v = detail::parse_int(w, line);
        if (v < 1 || v > n) throw ParseError(line, "vertex " + w + " out of range 1.." + std::to_string(n));
        return static_cast<VertexId>(v - 1);
    };
    auto edge = [&](const std::string& w) {
        const long long e = detail::parse_int(w, line);
        if (e < 1 || e > inst.graph.edge_count())
            throw ParseError(line, "edge " + w + " does not refer to an edge declared so far");
        return static_cast<EdgeId>(e - 1);
    };
    auto vertex_list = [&](const std::vector<std::string>& words, std::size_t from) {
        std::vector<VertexId> out;
        for (std::size_t i = from; i < words.size(); ++i) out.push_back(vertex(words[i]));
        return out;
    };
    auto single = [&](const std::string& key) {
        if (!once.insert(key).second) throw ParseError(line, "duplicate '" + key + "' section");
    };

    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto words = detail::split_words(raw);
        if (words.empty()) continue;
        const std::string& key = words[0];
        if (key == "p") {
            if (header) throw ParseError(line, "duplicate 'p' line");
            if (words.size() != 4) throw ParseError(line, "expected 'p <kind> <n> <m>'");
            const std::string& kind = words[1];
            if (kind == "cutuncut") inst.kind = ProblemKind::cutuncut;
            else if (kind == "xcsp") inst.kind = ProblemKind::xcsp;
            else if (kind == "diversion") inst.kind = ProblemKind::diversion;
            else if (kind == "glcsp") inst.kind = ProblemKind::glcsp;
            else throw ParseError(line, "unknown problem kind '" + kind + "'");
            const long long nn = detail::parse_int(words[2], line), mm = detail::parse_int(words[3], line);
            if (nn < 1 || nn > 10'000'000 || mm < 0 || mm > 10'000'000) throw ParseError(line, "bad vertex or edge count");
            n = static_cast<int>(nn);
            m = static_cast<int>(mm);
            inst.graph = Multigraph(n);
            header = true;
            continue;
        }
        if (!header) throw ParseError(line, "'p' line must come first");
        if (key == "e") {
            if (words.size() != 3) throw ParseError(line, "expected 'e <u> <v>'");
            if (inst.graph.edge_count() == m) throw ParseError(line, "more edges than declared");
            inst.graph.add_edge(vertex(words[1]), vertex(words[2]));
        } else if (key == "r") {
            if (words.size() < 2) throw ParseError(line, "expected 'r <v> <eid>*'");
            const VertexId v = vertex(words[1]);
            if (!rotation_line.emplace(v, line).second) throw ParseError(line, "duplicate rotation for vertex " + words[1]);
            if (!inst.rotation) inst.rotation.emplace(static_cast<std::size_t>(n));
            std::map<EdgeId, int> uses;
            for (std::size_t i = 2; i < words.size(); ++i) {
                const EdgeId e = edge(words[i]);
                const Edge& ed = inst.graph.edge(e);
                if (ed.u != v && ed.v != v) throw ParseError(line, "edge " + words[i] + " is not incident to vertex " + words[1]);
                const int use = uses[e]++;
                if (use > 1 || (use == 1 && !ed.is_loop())) throw ParseError(line, "edge " + words[i] + " listed too often");
                (*inst.rotation)[v].push_back(ed.is_loop() ? 2 * e + use : dart_from(inst.graph, e, v));
            }
        } else if (key == "o") {
            single(key);
            if (words.size() != 2) throw ParseError(line, "expected 'o <faceid>'");
            const long long f = detail::parse_int(words[1], line);
            if (f < 1) throw ParseError(line, "face id must be positive");
            inst.outer_face = static_cast<int>(f - 1);
        } else if (key == "s" || key == "t") {
            single(key);
            auto vs = vertex_list(words, 1);
            if (vs.empty()) throw ParseError(line, "'" + key + "' needs at least one vertex");
            if ((inst.kind == ProblemKind::diversion || inst.kind == ProblemKind::glcsp || inst.kind == ProblemKind::xcsp) &&
                vs.size() != 1)
                throw ParseError(line, "'" + key + "' takes a single vertex for " + kind_name(inst.kind));
            (key == "s" ? inst.S : inst.T) = vs;
            (key == "s" ? inst.has_s : inst.has_t) = true;
        } else if (key == "g") {
            if (words.size() != 3) throw ParseError(line, "expected 'g <eid> <bits>'");
            const EdgeId e = edge(words[1]);
            if (label_seen.size() <= static_cast<std::size_t>(e)) label_seen.resize(static_cast<std::size_t>(e) + 1, 0);
            if (label_seen[e]) throw ParseError(line, "duplicate label for edge " + words[1]);
            label_seen[e] = 1;
            if (inst.labels.size() < static_cast<std::size_t>(m)) inst.labels.resize(static_cast<std::size_t>(m), 0);
            inst.labels[e] = detail::parse_bits(words[2], line, inst.dimension);
        } else if (key == "c") {
            single(key);
            if (words.size() != 2) throw ParseError(line, "expected 'c <bits>'");
            inst.target = detail::parse_bits(words[1], line, inst.dimension);
        } else if (key == "x") {
            auto xs = vertex_list(words, 1);
            if (xs.empty()) throw ParseError(line, "'x' needs at least one vertex");
            inst.x_sets.push_back(std::move(xs));
        } else if (key == "b") {
            single(key);
            for (std::size_t i = 1; i < words.size(); ++i) inst.B.push_back(edge(words[i]));
        } else if (key == "fa" || key == "fb") {
            single(key);
            auto& out = key == "fa" ? inst.FA : inst.FB;
            for (std::size_t i = 1; i < words.size(); ++i) {
                const long long f = detail::parse_int(words[i], line);
                if (f < 1) throw ParseError(line, "face id must be positive");
                out.push_back(static_cast<int>(f - 1));
            }
        } else if (key == "k") {
            single(key);
            if (words.size() != 2) throw ParseError(line, "expected 'k <int>'");
            const long long k = detail::parse_int(words[1], line);
            if (k < 0 || k > INT_MAX) throw ParseError(line, "k out of range");
            inst.k = static_cast<int>(k);
        } else {
            throw ParseError(line, "unknown line type '" + key + "'");
        }
    }
    if (!header) throw ParseError(line, "missing 'p' line");
    if (inst.graph.edge_count() != m)
        throw ParseError(0, "declared " + std::to_string(m) + " edges, found " + std::to_string(inst.graph.edge_count()));
    inst.labels.resize(static_cast<std::size_t>(m), 0);
    switch (inst.kind) {
    case ProblemKind::cutuncut:
        if (!inst.has_s || !inst.has_t) throw ParseError(0, "cutuncut needs 's' and 't' lines");
        break;
    case ProblemKind::xcsp:
        if (inst.has_s != inst.has_t) throw ParseError(0, "xcsp needs both 's' and 't' or neither");
        if (!inst.target) throw ParseError(0, "xcsp needs a 'c' line");
        break;
    case ProblemKind::diversion:
        if (!inst.has_s || !inst.has_t) throw ParseError(0, "diversion needs 's' and 't' lines");
        if (inst.B.empty()) throw ParseError(0, "diversion needs a nonempty 'b' line");
        break;
    case ProblemKind::glcsp:
        if (!inst.has_s || !inst.has_t) throw ParseError(0, "glcsp needs 's' and 't' lines");
        break;
    }
    return inst;
}

/// Canonical text of an instance; parse_instance(write_instance(x)) == x.
inline std::string write_instance(const InstanceFile& inst) {
    std::ostringstream out;
    const auto& g = inst.graph;
    out << "p " << kind_name(inst.kind) << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    if (inst.rotation)
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if ((*inst.rotation)[v].empty()) continue;
            out << "r " << v + 1;
            for (DartId d : (*inst.rotation)[v]) out << ' ' << dart_edge(d) + 1;
            out << '\n';
        }
    if (inst.outer_face) out << "o " << *inst.outer_face + 1 << '\n';
    auto list = [&](const char* key, const std::vector<int>& xs) {
        out << key;
        for (int x : xs) out << ' ' << x + 1;
        out << '\n';
    };
    if (inst.has_s) list("s", inst.S);
    if (inst.has_t) list("t", inst.T);
    if (inst.dimension > 0)
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (inst.labels[e] != 0) out << "g " << e + 1 << ' ' << detail::format_bits(inst.labels[e], inst.dimension) << '\n';
    if (inst.target) out << "c " << detail::format_bits(*inst.target, std::max(inst.dimension, 1)) << '\n';
    for (const auto& x : inst.x_sets) list("x", x);
    if (!inst.B.empty()) list("b", inst.B);
    if (!inst.FA.empty()) list("fa", inst.FA);
    if (!inst.FB.empty()) list("fb", inst.FB);
    if (inst.k) out << "k " << *inst.k << '\n';
    return out.str();
}

// ----------------------------------------------------------------------------
// Results

struct Infeasible {};

/// A solver answer plus, for randomized solvers, the repetition count behind it.
struct SolveResult {
    std::variant<Infeasible, Cut, Path, XcspCycle> answer;
    std::optional<int> repetitions;
};

/// Renders a result with 1-based ids. INFEASIBLE from a randomized solver
/// carries its confidence line.
inline std::string emit_result(const SolveResult& result) {
    std::ostringstream out;
    auto list = [&](const char* key, const std::vector<int>& xs) {
        out << key << ':';
        for (int x : xs) out << ' ' << x + 1;
        out << '\n';
    };
    if (const auto* cut = std::get_if<Cut>(&result.answer)) {
        out << "CUT " << cut->size() << '\n';
        list("edges", cut->edges);
        list("sideA", cut->side_a);
    } else if (const auto* path = std::get_if<Path>(&result.answer)) {
        out << "PATH " << path->length() << '\n';
        list("vertices", path->vertices);
    } else if (const auto* cycle = std::get_if<XcspCycle>(&result.answer)) {
        out << "CYCLE " << cycle->length() << '\n';
        list("vertices", cycle->vertices);
    } else {
        out << "INFEASIBLE\n";
        if (result.repetitions) out << "confidence: 1-2^-" << *result.repetitions << '\n';
    }
    return out.str();
}

} // namespace tscu
