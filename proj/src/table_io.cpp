#include "bell/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bell {

namespace {

struct Cell {
    double value;
    long long integer;
    bool is_integer;
};

Cell parse_cell(const std::string& tok)
{
    Cell c{};
    {
        const char* begin = tok.data();
        const char* end = tok.data() + tok.size();
        auto [p, ec] = std::from_chars(begin, end, c.integer);
        if (ec == std::errc() && p == end) {
            c.is_integer = true;
            c.value = static_cast<double>(c.integer);
            return c;
        }
    }
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(begin, end, c.value);
    if (ec != std::errc() || p != end)
        throw std::invalid_argument("parse_table: non-numeric cell '" + tok + "'");
    c.is_integer = false;
    return c;
}

bool is_block_separator(const std::string& line)
{
    bool saw_dash = false;
    for (char ch : line) {
        if (ch == '-') saw_dash = true;
        else if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return saw_dash;
}

}  // namespace

BellExpression parse_table(const std::string& text)
{
    // rows[block][row][group] = cells
    std::vector<std::vector<std::vector<std::vector<Cell>>>> blocks(1);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (is_block_separator(line)) {
            if (!blocks.back().empty()) blocks.emplace_back();
            continue;
        }
        std::vector<std::vector<Cell>> groups;
        std::string group_text;
        std::istringstream ls(line);
        auto flush_group = [&]() {
            std::istringstream gs(group_text);
            std::vector<Cell> cells;
            std::string tok;
            while (gs >> tok) cells.push_back(parse_cell(tok));
            groups.push_back(std::move(cells));
            group_text.clear();
        };
        for (char ch : line) {
            if (ch == '|') flush_group();
            else group_text.push_back(ch);
        }
        flush_group();
        bool any = false;
        for (const auto& g : groups) any = any || !g.empty();
        if (!any) continue;  // blank line
        blocks.back().push_back(std::move(groups));
    }
    if (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
    if (blocks.empty()) throw std::invalid_argument("parse_table: empty input");

    const std::size_t m_a = blocks.size();
    const std::size_t n_a = blocks[0].size();
    const std::size_t m_b = blocks[0][0].size();
    const std::size_t n_b = blocks[0][0][0].size();
    if (n_a == 0 || m_b == 0 || n_b == 0)
        throw std::invalid_argument("parse_table: empty block");
    for (const auto& blk : blocks) {
        if (blk.size() != n_a)
            throw std::invalid_argument("parse_table: ragged block heights");
        for (const auto& row : blk) {
            if (row.size() != m_b)
                throw std::invalid_argument("parse_table: ragged column groups");
            for (const auto& grp : row)
                if (grp.size() != n_b)
                    throw std::invalid_argument("parse_table: ragged rows");
        }
    }

    Scenario s = bipartite_scenario(static_cast<int>(m_a), static_cast<int>(m_b),
                                    static_cast<int>(n_a), static_cast<int>(n_b));
    bool all_int = true;
    for (const auto& blk : blocks)
        for (const auto& row : blk)
            for (const auto& grp : row)
                for (const Cell& c : grp) all_int = all_int && c.is_integer;

    auto idx = [&](int a, int b, int x, int y) {
        const int outs[2] = {a, b};
        const int ins[2] = {x, y};
        return s.index(outs, ins);
    };

    if (all_int) {
        std::vector<long long> v(s.table_size(), 0);
        for (std::size_t x = 0; x < m_a; ++x)
            for (std::size_t a = 0; a < n_a; ++a)
                for (std::size_t y = 0; y < m_b; ++y)
                    for (std::size_t b = 0; b < n_b; ++b)
                        v[idx((int)a, (int)b, (int)x, (int)y)] =
                            blocks[x][a][y][b].integer;
        return BellExpression::from_integers(s, std::move(v));
    }
    Eigen::ArrayXd v(static_cast<Eigen::Index>(s.table_size()));
    for (std::size_t x = 0; x < m_a; ++x)
        for (std::size_t a = 0; a < n_a; ++a)
            for (std::size_t y = 0; y < m_b; ++y)
                for (std::size_t b = 0; b < n_b; ++b)
                    v(static_cast<Eigen::Index>(idx((int)a, (int)b, (int)x, (int)y))) =
                        blocks[x][a][y][b].value;
    return BellExpression(s, std::move(v));
}

std::string format_number(double v)
{
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

namespace {

std::string format_impl(const BellExpression& expr, bool align)
{
    const Scenario& s = expr.scenario();
    if (!s.is_bipartite())
        throw std::invalid_argument("format_table: bipartite tables only");

    auto cell_text = [&](int a, int b, int x, int y) -> std::string {
        const int outs[2] = {a, b};
        const int ins[2] = {x, y};
        if (expr.exact()) {
            const long long i = (*expr.exact())[s.index(outs, ins)];
            return std::to_string(i);
        }
        return format_number(expr.coeff(outs, ins));
    };

    std::size_t width = 0;
    if (align) {
        for (int x = 0; x < s.inputs(0); ++x)
            for (int a = 0; a < s.outputs(0); ++a)
                for (int y = 0; y < s.inputs(1); ++y)
                    for (int b = 0; b < s.outputs(1); ++b)
                        width = std::max(width, cell_text(a, b, x, y).size());
    }

    std::ostringstream out;
    for (int x = 0; x < s.inputs(0); ++x) {
        if (x > 0) out << "---\n";
        for (int a = 0; a < s.outputs(0); ++a) {
            for (int y = 0; y < s.inputs(1); ++y) {
                if (y > 0) out << " | ";
                for (int b = 0; b < s.outputs(1); ++b) {
                    if (b > 0) out << ' ';
                    std::string t = cell_text(a, b, x, y);
                    if (align && t.size() < width)
                        t.insert(0, width - t.size(), ' ');
                    out << t;
                }
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace

std::string format_table(const BellExpression& expr) { return format_impl(expr, false); }

std::string render_table(const BellExpression& expr) { return format_impl(expr, true); }

}  // namespace bell
