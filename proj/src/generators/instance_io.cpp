#include "spp/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spp {

using nlohmann::json;

namespace {

class FieldReader {
  public:
    explicit FieldReader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw ParseError(source_ + ": field '" + field + "': " + what);
    }

    const json& require(const json& obj, const std::string& key, const std::string& path) const {
        if (!obj.is_object()) fail(path, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
        return *it;
    }

    int integer(const json& v, const std::string& field) const {
        if (!v.is_number_integer()) fail(field, "expected an integer");
        const auto x = v.get<std::int64_t>();
        if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
            fail(field, "integer out of range");
        }
        return static_cast<int>(x);
    }

    double real(const json& v, const std::string& field) const {
        if (!v.is_number()) fail(field, "expected a number");
        return v.get<double>();
    }

    /// Reads an L x S matrix from nested rows or a flat row-major array.
    template <typename Matrix, typename Get>
    Matrix matrix(const json& v, const std::string& field, int rows, int cols, Get get) const {
        if (!v.is_array()) fail(field, "expected an array");
        Matrix m(rows, cols);
        const bool flat = !v.empty() && !v.front().is_array();
        if (flat) {
            if (v.size() != static_cast<std::size_t>(rows) * cols) {
                fail(field, "expected " + std::to_string(rows * cols) + " entries, got " +
                                std::to_string(v.size()));
            }
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) {
                    m(r, c) = get(v[static_cast<std::size_t>(r) * cols + c],
                                  field + "[" + std::to_string(r * cols + c) + "]");
                }
            }
            return m;
        }
        if (v.size() != static_cast<std::size_t>(rows)) {
            fail(field, "expected " + std::to_string(rows) + " rows, got " +
                            std::to_string(v.size()));
        }
        for (int r = 0; r < rows; ++r) {
            const std::string row_field = field + "[" + std::to_string(r) + "]";
            const json& row = v[r];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
                fail(row_field, "expected an array of " + std::to_string(cols) + " entries");
            }
            for (int c = 0; c < cols; ++c) {
                m(r, c) = get(row[c], row_field + "[" + std::to_string(c) + "]");
            }
        }
        return m;
    }

    const std::string& source() const { return source_; }

  private:
    std::string source_;
};

json parse_document(std::string_view text, const std::string& source) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < limit; ++i) {
            if (text[i] == '\n') ++line;
        }
        throw ParseError(source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() +
                         ")");
    }
}

void append_int_matrix(std::string& out, const IntMatrix& m) {
    out += '[';
    for (int r = 0; r < m.rows(); ++r) {
        out += r ? ",\n      [" : "\n      [";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += std::to_string(m(r, c));
        }
        out += ']';
    }
    out += "\n    ]";
}

void append_real_matrix(std::string& out, const RealMatrix& m) {
    out += '[';
    for (int r = 0; r < m.rows(); ++r) {
        out += r ? ",\n      [" : "\n      [";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += format_real(m(r, c));
        }
        out += ']';
    }
    out += "\n    ]";
}

}  // namespace

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string instance_to_json(const Instance& inst) {
    std::string out = "{\n  \"L\": " + std::to_string(inst.num_cells()) +
                      ",\n  \"S\": " + std::to_string(inst.num_channels()) +
                      ",\n  \"constraints\": [";
    bool first = true;
    for (auto [from, to] : inst.constraints().directed_edges()) {
        out += first ? "" : ", ";
        first = false;
        out += "[" + std::to_string(from + 1) + ", " + std::to_string(to + 1) + "]";
    }
    out += "],\n";
    if (inst.has_ranking()) {
        out += "  \"ranking\": {\n    \"RL\": ";
        append_int_matrix(out, inst.ranking().cell_ranks);
        out += ",\n    \"RS\": ";
        append_int_matrix(out, inst.ranking().channel_ranks);
    } else {
        out += "  \"utility\": {\n    \"U\": ";
        append_real_matrix(out, inst.utility().utilities);
    }
    out += "\n  }\n}\n";
    return out;
}

Instance instance_from_json(std::string_view text, const std::string& source) {
    const json doc = parse_document(text, source);
    const FieldReader rd(source);
    if (!doc.is_object()) rd.fail("<root>", "expected an object");

    const int L = rd.integer(rd.require(doc, "L", ""), "L");
    const int S = rd.integer(rd.require(doc, "S", ""), "S");
    if (L < 1) throw ValidationError(source + ": L must be at least 1");
    if (S < 2) throw ValidationError(source + ": S must be at least 2");

    const json& cons = rd.require(doc, "constraints", "");
    if (!cons.is_array()) rd.fail("constraints", "expected an array of [from, to] pairs");
    AdjacencyLists sets(L);
    for (std::size_t i = 0; i < cons.size(); ++i) {
        const std::string field = "constraints[" + std::to_string(i) + "]";
        const json& e = cons[i];
        if (!e.is_array() || e.size() != 2) rd.fail(field, "expected a [from, to] pair");
        const int from = rd.integer(e[0], field + "[0]");
        const int to = rd.integer(e[1], field + "[1]");
        if (from < 1 || from > L || to < 1 || to > L) {
            throw ValidationError(source + ": " + field + " references a cell outside 1.." +
                                  std::to_string(L));
        }
        if (from == to) throw ValidationError(source + ": " + field + " is a self-loop");
        sets[from - 1].push_back(to - 1);
    }

    const bool has_ranking = doc.contains("ranking");
    const bool has_utility = doc.contains("utility");
    if (has_ranking == has_utility) {
        rd.fail("ranking|utility", "exactly one preference profile is required");
    }
    Profile profile;
    if (has_ranking) {
        const json& r = doc["ranking"];
        auto get_int = [&](const json& v, const std::string& f) { return rd.integer(v, f); };
        RankingProfile p{
            rd.matrix<IntMatrix>(rd.require(r, "RL", "ranking"), "ranking.RL", L, S, get_int),
            rd.matrix<IntMatrix>(rd.require(r, "RS", "ranking"), "ranking.RS", L, S, get_int)};
        profile = std::move(p);
    } else {
        const json& u = doc["utility"];
        auto get_real = [&](const json& v, const std::string& f) { return rd.real(v, f); };
        profile = UtilityProfile{
            rd.matrix<RealMatrix>(rd.require(u, "U", "utility"), "utility.U", L, S, get_real)};
    }
    try {
        return Instance(L, S, ConstraintGraph(std::move(sets)), std::move(profile));
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    write_text_file(path, instance_to_json(inst));
}

Instance load_instance(const std::filesystem::path& path) {
    return instance_from_json(read_text_file(path), path.string());
}

std::string matching_to_json(const Matching& matching) {
    std::string out = "{\"assignment\": [";
    for (int l = 0; l < matching.size(); ++l) {
        if (l) out += ", ";
        out += std::to_string(matching[l] + 1);
    }
    out += "]}\n";
    return out;
}

Matching matching_from_json(std::string_view text, const Instance& inst,
                            const std::string& source) {
    const json doc = parse_document(text, source);
    const FieldReader rd(source);
    const json& a = rd.require(doc, "assignment", "");
    if (!a.is_array()) rd.fail("assignment", "expected an array");
    Matching m;
    m.assignment.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string field = "assignment[" + std::to_string(i) + "]";
        if (a[i].is_null()) {
            throw ValidationError(source + ": " + field + " is unassigned (matching must be total)");
        }
        m.assignment.push_back(rd.integer(a[i], field) - 1);
    }
    try {
        m.validate(inst);
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
    return m;
}

void save_matching(const Matching& matching, const std::filesystem::path& path) {
    write_text_file(path, matching_to_json(matching));
}

Matching load_matching(const std::filesystem::path& path, const Instance& inst) {
    return matching_from_json(read_text_file(path), inst, path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace spp
