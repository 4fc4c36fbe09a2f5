#include "rxnet/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>

#include "rxnet/errors.hpp"

namespace rxnet {

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start + 1)});
    }
    return tokens;
}

std::optional<double> parse_double(const std::string& text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_count(const std::string& text) {
    // Accepts integers and exact integral floats such as 1e8.
    auto v = parse_double(text);
    if (!v || !(*v >= 0.0) || *v != std::floor(*v) || *v > 1e18) return std::nullopt;
    return static_cast<std::uint64_t>(*v);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario scenario;
    int line_no = 0;
    std::size_t pos = 0;
    auto fail = [&](int column, const std::string& msg) -> void {
        throw ParseError(ParseErrorKind::Syntax, line_no, column, msg);
    };
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = tokenize(line);
        if (!tokens.empty()) {
            const std::string& directive = tokens[0].text;
            auto need = [&](std::size_t count) {
                if (tokens.size() != count)
                    fail(tokens[0].column, "directive '" + directive + "' expects " +
                                               std::to_string(count - 1) + " argument(s)");
            };
            auto number = [&](std::size_t i) -> double {
                auto v = parse_double(tokens[i].text);
                if (!v) fail(tokens[i].column, "malformed number '" + tokens[i].text + "'");
                return *v;
            };
            if (directive == "init") {
                need(3);
                double conc = number(2);
                if (conc < 0.0) fail(tokens[2].column, "initial concentration must be >= 0");
                scenario.initial[tokens[1].text] = conc;
            } else if (directive == "volume") {
                need(2);
                double v = number(1);
                if (!(v > 0.0)) fail(tokens[1].column, "volume must be > 0");
                scenario.volume = v;
            } else if (directive == "at") {
                if (tokens.size() < 3) fail(tokens[0].column, "incomplete event line");
                double when = number(1);
                if (when < 0.0) fail(tokens[1].column, "event time must be >= 0");
                const std::string& kind = tokens[2].text;
                if (kind == "add") {
                    // at <t> add <species> <mol> in <L>
                    need(7);
                    if (tokens[5].text != "in")
                        fail(tokens[5].column, "expected 'in' before the solvent volume");
                    double amount = number(4);
                    double solvent = number(6);
                    if (amount < 0.0) fail(tokens[4].column, "amount must be >= 0");
                    if (!(solvent > 0.0)) fail(tokens[6].column, "solvent volume must be > 0");
                    scenario.events.push_back({when, Addition{tokens[3].text, amount, solvent}});
                } else if (kind == "dilute") {
                    need(4);
                    double water = number(3);
                    if (!(water > 0.0)) fail(tokens[3].column, "added water must be > 0");
                    scenario.events.push_back({when, Dilution{water}});
                } else {
                    fail(tokens[2].column, "unknown event '" + kind + "' (add|dilute)");
                }
            } else if (directive == "dt") {
                need(2);
                double v = number(1);
                if (!(v > 0.0)) fail(tokens[1].column, "dt must be > 0");
                scenario.dt = v;
            } else if (directive == "max_steps") {
                need(2);
                auto v = parse_count(tokens[1].text);
                if (!v || *v == 0)
                    fail(tokens[1].column, "max_steps must be a positive integer");
                scenario.max_steps = *v;
            } else if (directive == "tolerance") {
                need(2);
                double v = number(1);
                if (!(v > 0.0)) fail(tokens[1].column, "tolerance must be > 0");
                scenario.tolerance = v;
            } else if (directive == "sample_every") {
                need(2);
                auto v = parse_count(tokens[1].text);
                if (!v || *v == 0)
                    fail(tokens[1].column, "sample_every must be a positive integer");
                scenario.sample_every = *v;
            } else {
                fail(tokens[0].column, "unknown directive '" + directive + "'");
            }
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    std::stable_sort(scenario.events.begin(), scenario.events.end(),
                     [](const Event& a, const Event& b) { return a.time < b.time; });
    return scenario;
}

}  // namespace rxnet
