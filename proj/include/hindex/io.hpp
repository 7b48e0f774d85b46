#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hindex/common.hpp"

// Citation-data ingestion and table emission for the CLI.
//
// CSV input is one paper per line, `scholar_id,count`, optional header,
// UTF-8, LF or CRLF. JSON input is an object mapping scholar_id to an array
// of nonnegative integers. Records keep first-appearance order.

namespace hindex {

struct scholar_record {
    std::string id;
    std::vector<long long> counts;
};

enum class citation_format { csv, json };

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_nonneg_integer(std::string_view s, long long& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last && out >= 0;
}

// any numeric token at all (used only to tell a header line from data)
inline bool looks_numeric(std::string_view s) {
    if (s.empty()) return false;
    char* end = nullptr;
    const std::string tmp(s);
    std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size() && end != tmp.c_str();
}

class record_builder {
public:
    void add(const std::string& id, long long count) {
        const auto [it, inserted] = index_.try_emplace(id, records_.size());
        if (inserted) records_.push_back({id, {}});
        records_[it->second].counts.push_back(count);
    }
    void add_empty(const std::string& id) {
        const auto [it, inserted] = index_.try_emplace(id, records_.size());
        if (inserted) records_.push_back({id, {}});
    }
    std::vector<scholar_record> take() { return std::move(records_); }

private:
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<scholar_record> records_;
};

} // namespace detail

inline std::vector<scholar_record> parse_citation_csv(std::istream& in) {
    detail::record_builder builder;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view full = detail::trim(line);
        if (full.empty()) continue;
        const auto comma = full.find(',');
        if (comma == std::string_view::npos)
            throw parse_error("line " + std::to_string(line_no) +
                              ": expected 'scholar_id,count'");
        const std::string_view id = detail::trim(full.substr(0, comma));
        const std::string_view rest = full.substr(comma + 1);
        if (rest.find(',') != std::string_view::npos)
            throw parse_error("line " + std::to_string(line_no) +
                              ": expected exactly two fields");
        const std::string_view value = detail::trim(rest);
        if (id.empty())
            throw parse_error("line " + std::to_string(line_no) + ": empty scholar id");
        long long count = 0;
        if (!detail::parse_nonneg_integer(value, count)) {
            // a first line whose count field is not numeric at all is a header
            if (line_no == 1 && !detail::looks_numeric(value)) continue;
            throw parse_error("line " + std::to_string(line_no) +
                              ": negative or non-integer count '" + std::string(value) +
                              "' for scholar '" + std::string(id) + "'");
        }
        builder.add(std::string(id), count);
    }
    return builder.take();
}

inline std::vector<scholar_record> parse_citation_json(std::istream& in) {
    using json = nlohmann::ordered_json;
    std::set<std::string> seen;
    const json::parser_callback_t dup_check = [&](int depth, json::parse_event_t event,
                                                  json& parsed) {
        if (event == json::parse_event_t::key && depth == 1) {
            const auto key = parsed.get<std::string>();
            if (!seen.insert(key).second)
                throw parse_error("duplicate scholar key '" + key + "'");
        }
        return true;
    };
    json doc;
    try {
        doc = json::parse(in, dup_check);
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw parse_error("expected a JSON object of scholar -> counts");

    detail::record_builder builder;
    for (const auto& [id, value] : doc.items()) {
        if (!value.is_array())
            throw parse_error("scholar '" + id + "': counts must be an array");
        if (value.empty()) builder.add_empty(id);
        for (const auto& item : value) {
            if (!item.is_number_integer() || item.get<long long>() < 0)
                throw parse_error("scholar '" + id + "': negative or non-integer count " +
                                  item.dump());
            builder.add(id, item.get<long long>());
        }
    }
    return builder.take();
}

inline std::vector<scholar_record> parse_citation_file(std::istream& in, citation_format fmt) {
    return fmt == citation_format::csv ? parse_citation_csv(in) : parse_citation_json(in);
}

inline std::vector<scholar_record> parse_citation_file(const std::string& path,
                                                       citation_format fmt) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    return parse_citation_file(in, fmt);
}

inline citation_format infer_citation_format(const std::string& path) {
    const auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".json") return citation_format::json;
    return citation_format::csv;
}

// A column-ordered table of strings, integers and reals.
struct report_table {
    using cell = std::variant<std::string, long long, double>;

    std::vector<std::string> columns;
    std::vector<std::vector<cell>> rows;

    void add_row(std::vector<cell> row) {
        if (row.size() != columns.size())
            throw std::invalid_argument("report_table: row width does not match columns");
        rows.push_back(std::move(row));
    }
};

enum class table_format { text, tsv, json };

namespace detail {

inline std::string format_double(double x, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

inline std::string cell_to_string(const report_table::cell& c, table_format fmt) {
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    // full precision round-trips through parsing; text stays readable
    return format_double(std::get<double>(c), fmt == table_format::text ? "%.6g" : "%.17g");
}

} // namespace detail

inline void emit_table(const report_table& table, table_format fmt, std::ostream& os) {
    switch (fmt) {
    case table_format::tsv: {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            os << (c ? "\t" : "") << table.columns[c];
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "\t" : "") << detail::cell_to_string(row[c], fmt);
            os << '\n';
        }
        break;
    }
    case table_format::json: {
        using json = nlohmann::ordered_json;
        json out = json::array();
        for (const auto& row : table.rows) {
            json obj = json::object();
            for (std::size_t c = 0; c < row.size(); ++c) {
                const auto& cell = row[c];
                if (std::holds_alternative<std::string>(cell))
                    obj[table.columns[c]] = std::get<std::string>(cell);
                else if (std::holds_alternative<long long>(cell))
                    obj[table.columns[c]] = std::get<long long>(cell);
                else
                    obj[table.columns[c]] = std::get<double>(cell);
            }
            out.push_back(std::move(obj));
        }
        os << out.dump(2) << '\n';
        break;
    }
    case table_format::text: {
        std::vector<std::size_t> width(table.columns.size());
        std::vector<std::vector<std::string>> cells;
        cells.reserve(table.rows.size());
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            width[c] = table.columns[c].size();
        for (const auto& row : table.rows) {
            std::vector<std::string> line;
            line.reserve(row.size());
            for (std::size_t c = 0; c < row.size(); ++c) {
                line.push_back(detail::cell_to_string(row[c], fmt));
                width[c] = std::max(width[c], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        const auto put = [&](const std::string& s, std::size_t c, bool left) {
            const std::size_t pad = width[c] - s.size();
            if (left) {
                os << s;
                if (c + 1 < width.size()) os << std::string(pad, ' ');
            } else {
                os << std::string(pad, ' ') << s;
            }
        };
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) os << "  ";
            put(table.columns[c], c, true);
        }
        os << '\n';
        for (std::size_t r = 0; r < cells.size(); ++r) {
            for (std::size_t c = 0; c < cells[r].size(); ++c) {
                if (c) os << "  ";
                const bool left = std::holds_alternative<std::string>(table.rows[r][c]);
                put(cells[r][c], c, left);
            }
            os << '\n';
        }
        break;
    }
    }
    if (!os) throw std::ios_base::failure("emit_table: write failed");
}

// Table III style confidence-set rendering: "{lo,...,hi}".
inline std::string format_confidence_set(long long lo, long long hi) {
    if (lo == hi) return "{" + std::to_string(lo) + "}";
    return "{" + std::to_string(lo) + ",...," + std::to_string(hi) + "}";
}

} // namespace hindex
