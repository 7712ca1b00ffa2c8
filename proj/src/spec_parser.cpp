// SPDX-License-Identifier: Apache-2.0
//
// Reader for design specification files. The format is the subset of TOML
// the schema needs: [table] and [[array-of-tables]] headers, `key = value`
// lines with integer, float, string or boolean values, and # comments.

#include "risbeam/errors.hpp"
#include "risbeam/pattern_spec.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace risbeam
{

namespace
{

struct Value
{
    std::variant<long long, double, std::string, bool> data;
    int line = 0;
};

struct Table
{
    std::string name;
    int line = 0;
    std::map<std::string, Value> entries;
};

struct Document
{
    std::map<std::string, Table> tables;
    std::map<std::string, std::vector<Table>> arrays;
};

[[noreturn]] void fail(int line, const std::string &msg)
{
    throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(std::string_view line)
{
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quote)
        {
            if (c == '\\' && quote == '"')
                ++i;
            else if (c == quote)
                quote = 0;
        }
        else if (c == '"' || c == '\'')
            quote = c;
        else if (c == '#')
            return std::string(line.substr(0, i));
    }
    return std::string(line);
}

bool is_bare_key(std::string_view key)
{
    if (key.empty())
        return false;
    for (char c : key)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
            return false;
    return true;
}

Value parse_value(std::string_view text, int line)
{
    Value v;
    v.line = line;
    if (text.empty())
        fail(line, "missing value");
    if (text.front() == '"')
    {
        std::string out;
        std::size_t i = 1;
        for (; i < text.size() && text[i] != '"'; ++i)
        {
            if (text[i] != '\\')
            {
                out += text[i];
                continue;
            }
            if (++i >= text.size())
                fail(line, "unterminated string");
            switch (text[i])
            {
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            default: fail(line, std::string("unsupported escape '\\") + text[i] + "'");
            }
        }
        if (i >= text.size() || i + 1 != text.size())
            fail(line, "malformed string value");
        v.data = out;
        return v;
    }
    if (text.front() == '\'')
    {
        const auto close = text.find('\'', 1);
        if (close == std::string_view::npos || close + 1 != text.size())
            fail(line, "malformed string value");
        v.data = std::string(text.substr(1, close - 1));
        return v;
    }
    if (text == "true" || text == "false")
    {
        v.data = text == "true";
        return v;
    }

    std::string number;
    for (char c : text)
        if (c != '_')
            number += c;
    const char *first = number.data() + (number.front() == '+' ? 1 : 0);
    const char *last = number.data() + number.size();
    if (number.find_first_of(".eE") == std::string::npos)
    {
        long long i = 0;
        const auto res = std::from_chars(first, last, i);
        if (res.ec == std::errc() && res.ptr == last)
        {
            v.data = i;
            return v;
        }
    }
    double d = 0.0;
    const auto res = std::from_chars(first, last, d);
    if (res.ec != std::errc() || res.ptr != last)
        fail(line, "cannot parse value '" + std::string(text) + "'");
    v.data = d;
    return v;
}

Document parse_document(std::string_view text)
{
    static const std::set<std::string> kTables{"ris", "grid"};
    static const std::set<std::string> kArrays{"incident", "spot"};

    Document doc;
    Table *current = nullptr;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw))
    {
        ++line;
        const std::string stripped = strip_comment(raw);
        const std::string_view t = trim(stripped);
        if (t.empty())
            continue;

        if (t.starts_with("[["))
        {
            if (!t.ends_with("]]"))
                fail(line, "malformed array-of-tables header");
            const std::string name(trim(t.substr(2, t.size() - 4)));
            if (kTables.count(name))
                fail(line, "[" + name + "] is a single table, not an array");
            if (!kArrays.count(name))
                fail(line, "unknown section [[" + name + "]]");
            auto &list = doc.arrays[name];
            list.push_back(Table{name, line, {}});
            current = &list.back();
            continue;
        }
        if (t.starts_with("["))
        {
            if (!t.ends_with("]"))
                fail(line, "malformed table header");
            const std::string name(trim(t.substr(1, t.size() - 2)));
            if (kArrays.count(name))
                fail(line, "[[" + name + "]] must be written as an array of tables");
            if (!kTables.count(name))
                fail(line, "unknown section [" + name + "]");
            if (doc.tables.count(name))
                fail(line, "duplicate section [" + name + "]");
            current = &doc.tables.emplace(name, Table{name, line, {}}).first->second;
            continue;
        }

        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            fail(line, "expected 'key = value'");
        const std::string key(trim(t.substr(0, eq)));
        if (!is_bare_key(key))
            fail(line, "invalid key '" + key + "'");
        if (!current)
            fail(line, "key '" + key + "' outside of any section");
        if (current->entries.count(key))
            fail(line, "duplicate key '" + key + "' in [" + current->name + "]");
        current->entries.emplace(key, parse_value(trim(t.substr(eq + 1)), line));
    }
    return doc;
}

// Typed access to a table that remembers which keys were consumed.
class Reader
{
public:
    explicit Reader(const Table &table) : table_(table) {}

    bool has(const std::string &key) const { return table_.entries.count(key) != 0; }

    std::optional<double> number(const std::string &key)
    {
        const Value *v = take(key);
        if (!v)
            return std::nullopt;
        if (const auto *d = std::get_if<double>(&v->data))
            return *d;
        if (const auto *i = std::get_if<long long>(&v->data))
            return static_cast<double>(*i);
        fail(v->line, where(key) + " must be a number");
    }

    double required_number(const std::string &key)
    {
        if (auto v = number(key))
            return *v;
        throw InputError(missing(key));
    }

    std::optional<int> integer(const std::string &key)
    {
        const Value *v = take(key);
        if (!v)
            return std::nullopt;
        const auto *i = std::get_if<long long>(&v->data);
        if (!i)
            fail(v->line, where(key) + " must be an integer");
        if (*i < -(1LL << 30) || *i > (1LL << 30))
            fail(v->line, where(key) + " is out of range");
        return static_cast<int>(*i);
    }

    int required_integer(const std::string &key)
    {
        if (auto v = integer(key))
            return *v;
        throw InputError(missing(key));
    }

    std::optional<std::string> string(const std::string &key)
    {
        const Value *v = take(key);
        if (!v)
            return std::nullopt;
        const auto *s = std::get_if<std::string>(&v->data);
        if (!s)
            fail(v->line, where(key) + " must be a string");
        return *s;
    }

    std::string required_string(const std::string &key)
    {
        if (auto v = string(key))
            return *v;
        throw InputError(missing(key));
    }

    int line_of(const std::string &key) const { return table_.entries.at(key).line; }

    // Rejects every key that was not consumed.
    void finish() const
    {
        for (const auto &[key, value] : table_.entries)
            if (!used_.count(key))
                fail(value.line, "unknown key '" + key + "' in " + section());
    }

    std::string section() const
    {
        const bool array = table_.name == "incident" || table_.name == "spot";
        return array ? "[[" + table_.name + "]] (line " + std::to_string(table_.line) + ")" : "[" + table_.name + "]";
    }

private:
    const Value *take(const std::string &key)
    {
        const auto it = table_.entries.find(key);
        if (it == table_.entries.end())
            return nullptr;
        used_.insert(key);
        return &it->second;
    }

    std::string where(const std::string &key) const { return "'" + key + "' in " + section(); }
    std::string missing(const std::string &key) const { return section() + ": missing required key '" + key + "'"; }

    const Table &table_;
    std::set<std::string> used_;
};

// Re-raises validation failures with the section and line they belong to.
template <typename F>
void with_context(const Reader &r, int line, F &&f)
{
    try
    {
        f();
    }
    catch (const InputError &e)
    {
        fail(line, r.section() + ": " + e.what());
    }
}

BeamSpot read_spot(Reader &r, const Table &table, const std::filesystem::path &base_dir)
{
    const std::string kind = r.required_string("kind");
    BeamSpot spot;
    spot.magnitude = r.number("magnitude").value_or(1.0);
    spot.transition_width = r.number("transition_width").value_or(0.0);

    if (kind == "rect")
    {
        RectShape rect;
        rect.center_azimuth = r.required_number("center_azimuth");
        rect.center_elevation = r.required_number("center_elevation");
        rect.width_azimuth = r.required_number("width_azimuth");
        rect.width_elevation = r.required_number("width_elevation");
        spot.shape = rect;
    }
    else if (kind == "circle")
    {
        CircleShape circle;
        circle.center_azimuth = r.required_number("center_azimuth");
        circle.center_elevation = r.required_number("center_elevation");
        circle.diameter = r.required_number("diameter");
        spot.shape = circle;
    }
    else if (kind == "custom")
    {
        std::filesystem::path path = r.required_string("table_path");
        if (path.is_relative() && !base_dir.empty())
            path = base_dir / path;
        with_context(r, r.line_of("table_path"), [&] { spot.shape = load_custom_table(path); });
    }
    else
    {
        fail(table.entries.at("kind").line, "kind must be \"rect\", \"circle\" or \"custom\", got \"" + kind + "\"");
    }
    r.finish();
    with_context(r, table.line, [&] { validate(spot); });
    return spot;
}

} // namespace

DesignInputs parse_spec(std::string_view text, const std::filesystem::path &base_dir)
{
    const Document doc = parse_document(text);
    DesignInputs inputs;

    const auto ris = doc.tables.find("ris");
    if (ris == doc.tables.end())
        throw InputError("missing required section [ris]");
    {
        Reader r(ris->second);
        inputs.ris.n_x = r.required_integer("n_x");
        inputs.ris.n_y = r.required_integer("n_y");
        inputs.ris.spacing_over_lambda = r.number("spacing_over_lambda").value_or(0.5);
        r.finish();
        with_context(r, ris->second.line, [&] { validate(inputs.ris); });
    }

    if (const auto grid = doc.tables.find("grid"); grid != doc.tables.end())
    {
        Reader r(grid->second);
        inputs.grid.m_1 = r.integer("m_1").value_or(4 * inputs.ris.n_x);
        inputs.grid.m_2 = r.integer("m_2").value_or(4 * inputs.ris.n_y);
        r.finish();
        with_context(r, grid->second.line, [&] { validate(inputs.grid, inputs.ris); });
    }
    else
    {
        inputs.grid = {4 * inputs.ris.n_x, 4 * inputs.ris.n_y};
    }

    if (const auto it = doc.arrays.find("incident"); it != doc.arrays.end())
    {
        for (const auto &table : it->second)
        {
            Reader r(table);
            Direction dir;
            dir.azimuth = r.required_number("azimuth");
            dir.elevation = r.required_number("elevation");
            r.finish();
            with_context(r, table.line, [&] { validate(dir); });
            inputs.incidents.push_back(dir);
        }
    }
    if (inputs.incidents.empty())
        inputs.incidents.push_back(Direction{0.0, 0.0});

    if (const auto it = doc.arrays.find("spot"); it != doc.arrays.end())
    {
        for (const auto &table : it->second)
        {
            Reader r(table);
            inputs.pattern.spots.push_back(read_spot(r, table, base_dir));
        }
    }
    return inputs;
}

DesignInputs load_spec(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open spec file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try
    {
        return parse_spec(ss.str(), path.parent_path());
    }
    catch (const InputError &e)
    {
        throw InputError(path.string() + ": " + e.what());
    }
}

} // namespace risbeam
