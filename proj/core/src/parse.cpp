#include "rxnet/parse.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <unordered_map>

#include "model_checks.hpp"
#include "rxnet/errors.hpp"

namespace rxnet {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
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

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

bool valid_species_name(const std::string& name) {
    bool has_letter = false;
    for (char ch : name) {
        if (std::isalpha(static_cast<unsigned char>(ch)))
            has_letter = true;
        else if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '+' && ch != '-' &&
                 ch != '(' && ch != ')')
            return false;
    }
    return has_letter;
}

std::optional<double> parse_double(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::optional<long> parse_int(const std::string& text) {
    std::string_view sv = text;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    long value = 0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc() || ptr != sv.data() + sv.size()) return std::nullopt;
    return value;
}

class ModelBuilder {
public:
    ModelDefinition take() && { return std::move(model_); }

    void parse_line(std::string_view raw, int line_no) {
        line_ = line_no;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto tokens = tokenize(raw);
        if (tokens.empty()) return;
        if (tokens[0].text == "species")
            parse_species(tokens);
        else if (tokens[0].text == "reaction")
            parse_reaction(tokens);
        else
            fail(ParseErrorKind::Syntax, tokens[0].column,
                 "unknown statement '" + tokens[0].text + "' (expected species or reaction)");
    }

private:
    [[noreturn]] void fail(ParseErrorKind kind, int column, const std::string& msg) const {
        throw ParseError(kind, line_, column, msg);
    }

    Formula parse_formula(const std::string& text, int column) const {
        Formula formula;
        std::size_t i = 0;
        while (i < text.size()) {
            if (!std::isupper(static_cast<unsigned char>(text[i])))
                fail(ParseErrorKind::Syntax, column,
                     "malformed formula '" + text + "' (expected element symbol)");
            std::string element(1, text[i++]);
            if (i < text.size() && std::islower(static_cast<unsigned char>(text[i])))
                element += text[i++];
            long count = 1;
            std::size_t digits = i;
            while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits])))
                ++digits;
            if (digits > i) {
                count = *parse_int(text.substr(i, digits - i));
                i = digits;
            }
            if (count < 1)
                fail(ParseErrorKind::Syntax, column,
                     "formula '" + text + "': element count must be >= 1");
            formula[element] += static_cast<int>(count);
        }
        if (formula.empty())
            fail(ParseErrorKind::Syntax, column, "formula must list at least one element");
        return formula;
    }

    void parse_species(const std::vector<Token>& tokens) {
        if (tokens.size() < 2)
            fail(ParseErrorKind::Syntax, tokens[0].column, "species statement needs a name");
        Species species;
        species.name = tokens[1].text;
        if (!valid_species_name(species.name))
            fail(ParseErrorKind::Syntax, tokens[1].column,
                 "invalid species name '" + species.name +
                     "' (letters, digits, '+', '-', '(', ')' allowed; at least one letter)");
        if (index_.count(species.name))
            fail(ParseErrorKind::DuplicateSpecies, tokens[1].column,
                 "duplicate species name " + species.name);

        std::set<std::string> seen;
        bool have_charge = false, have_formula = false;
        for (std::size_t i = 2; i < tokens.size(); ++i) {
            const auto& tok = tokens[i];
            auto eq = tok.text.find('=');
            if (eq == std::string::npos || eq == 0)
                fail(ParseErrorKind::Syntax, tok.column,
                     "expected key=value attribute, got '" + tok.text + "'");
            std::string key = tok.text.substr(0, eq);
            std::string value = tok.text.substr(eq + 1);
            if (!seen.insert(key).second)
                fail(ParseErrorKind::Syntax, tok.column, "duplicate attribute " + key);
            if (key == "charge") {
                auto v = parse_int(value);
                if (!v) fail(ParseErrorKind::Syntax, tok.column, "malformed charge '" + value + "'");
                species.charge = static_cast<int>(*v);
                have_charge = true;
            } else if (key == "phase") {
                auto p = phase_from_string(value);
                if (!p)
                    fail(ParseErrorKind::Syntax, tok.column,
                         "unknown phase '" + value + "' (aqueous|solid|liquid)");
                species.phase = *p;
            } else if (key == "formula") {
                species.formula = parse_formula(value, tok.column);
                have_formula = true;
            } else if (key == "molar_mass") {
                auto v = parse_double(value);
                if (!v || !(*v > 0.0))
                    fail(ParseErrorKind::Syntax, tok.column,
                         "molar_mass must be a positive number, got '" + value + "'");
                species.molar_mass = *v;
            } else {
                fail(ParseErrorKind::Syntax, tok.column, "unknown species attribute " + key);
            }
        }
        if (!have_charge)
            fail(ParseErrorKind::Syntax, tokens[0].column,
                 "species " + species.name + " is missing charge=");
        if (!have_formula)
            fail(ParseErrorKind::Syntax, tokens[0].column,
                 "species " + species.name + " is missing formula=");

        index_.emplace(species.name, model_.species.size());
        model_.species.push_back(std::move(species));
    }

    // Parses "[<n>] <name> [+ [<n>] <name>]..." starting at *i; stops at the
    // first token for which `stop` returns true (without consuming it).
    template <typename Stop>
    std::vector<Participant> parse_side(const std::vector<Token>& tokens, std::size_t* i,
                                        const std::string& reaction_id, Stop stop) {
        std::vector<Participant> side;
        bool expect_term = true;
        while (*i < tokens.size() && !stop(tokens[*i].text)) {
            const auto& tok = tokens[*i];
            if (tok.text == "+" && !expect_term) {
                expect_term = true;
                ++*i;
                continue;
            }
            if (!expect_term)
                fail(ParseErrorKind::Syntax, tok.column,
                     "expected '+', arrow or rate in reaction " + reaction_id);
            int stoich = 1;
            std::size_t j = *i;
            if (all_digits(tokens[j].text)) {
                auto v = parse_int(tokens[j].text);
                if (!v || *v < 1)
                    fail(ParseErrorKind::Syntax, tokens[j].column,
                         "stoichiometry must be a positive integer");
                stoich = static_cast<int>(*v);
                ++j;
                if (j >= tokens.size() || stop(tokens[j].text))
                    fail(ParseErrorKind::Syntax, tokens[j - 1].column,
                         "stoichiometry without species name in reaction " + reaction_id);
            }
            const auto& name_tok = tokens[j];
            if (!valid_species_name(name_tok.text))
                fail(ParseErrorKind::Syntax, name_tok.column,
                     "invalid species name '" + name_tok.text + "' in reaction " + reaction_id);
            if (!index_.count(name_tok.text))
                fail(ParseErrorKind::UndeclaredSpecies, name_tok.column,
                     "reaction " + reaction_id + " references undeclared species " +
                         name_tok.text);
            bool merged = false;
            for (auto& part : side) {
                if (part.species == name_tok.text) {
                    part.stoichiometry += stoich;
                    merged = true;
                    break;
                }
            }
            if (!merged) side.push_back({name_tok.text, stoich});
            *i = j + 1;
            expect_term = false;
        }
        if (expect_term)
            fail(ParseErrorKind::Syntax,
                 *i < tokens.size() ? tokens[*i].column : tokens.back().column,
                 "reaction " + reaction_id + " has an empty side");
        return side;
    }

    void parse_reaction(const std::vector<Token>& tokens) {
        std::size_t i = 1;
        if (tokens.size() < 2)
            fail(ParseErrorKind::Syntax, tokens[0].column, "reaction statement needs an id");
        std::string id = tokens[i].text;
        int id_col = tokens[i].column;
        ++i;
        if (!id.empty() && id.back() == ':') {
            id.pop_back();
        } else if (i < tokens.size() && tokens[i].text == ":") {
            ++i;
        } else {
            fail(ParseErrorKind::Syntax, id_col, "reaction id must be followed by ':'");
        }
        if (id.empty() || id.find('=') != std::string::npos)
            fail(ParseErrorKind::Syntax, id_col, "invalid reaction id");
        if (reaction_ids_.count(id))
            fail(ParseErrorKind::DuplicateReactionId, id_col, "duplicate reaction id " + id);

        Reaction reaction;
        reaction.id = id;

        auto is_arrow = [](const std::string& t) { return t == "->" || t == "<->"; };
        reaction.reactants = parse_side(tokens, &i, id, is_arrow);
        if (i >= tokens.size())
            fail(ParseErrorKind::Syntax, tokens.back().column,
                 "reaction " + id + " is missing an arrow (-> or <->)");
        bool reversible_arrow = tokens[i].text == "<->";
        ++i;
        auto is_rate = [](const std::string& t) { return t.find('=') != std::string::npos; };
        reaction.products = parse_side(tokens, &i, id, is_rate);

        // Rate attributes.
        std::unordered_map<std::string, double> rates;
        std::vector<int> rate_cols;
        while (i < tokens.size() && is_rate(tokens[i].text)) {
            const auto& tok = tokens[i];
            auto eq = tok.text.find('=');
            std::string key = tok.text.substr(0, eq);
            std::string value = tok.text.substr(eq + 1);
            if (key != "kf" && key != "kb" && key != "K" && key != "c")
                fail(ParseErrorKind::Syntax, tok.column, "unknown rate attribute " + key);
            if (rates.count(key))
                fail(ParseErrorKind::BadRate, tok.column, "duplicate rate attribute " + key);
            auto v = parse_double(value);
            if (!v)
                fail(ParseErrorKind::BadRate, tok.column,
                     "malformed rate constant " + key + "='" + value + "'");
            rates.emplace(key, *v);
            rate_cols.push_back(tok.column);
            ++i;
        }
        if (i < tokens.size() && tokens[i].text == "paper_compat") {
            reaction.paper_compat = true;
            ++i;
        }
        if (i < tokens.size())
            fail(ParseErrorKind::Syntax, tokens[i].column,
                 "unexpected trailing token '" + tokens[i].text + "'");

        int rate_col = rate_cols.empty() ? id_col : rate_cols.front();
        if (rates.count("kf") && rates.count("kb") && rates.size() == 2) {
            if (rates["kf"] < 0.0 || rates["kb"] < 0.0)
                fail(ParseErrorKind::BadRate, rate_col,
                     "negative rate constant in reaction " + id);
            reaction.rate = RateSpec::explicit_pair(rates["kf"], rates["kb"]);
        } else if (rates.count("K") && rates.count("c") && rates.size() == 2) {
            if (!(rates["K"] > 0.0))
                fail(ParseErrorKind::BadRate, rate_col,
                     "equilibrium constant K must be > 0 in reaction " + id);
            if (!(rates["c"] > 0.0) || rates["c"] > 1000.0)
                fail(ParseErrorKind::BadRate, rate_col,
                     "correction coefficient c must be in (0, 1000] in reaction " + id);
            reaction.rate = RateSpec::derived(rates["K"], rates["c"]);
        } else {
            fail(ParseErrorKind::BadRate, rate_col,
                 "reaction " + id + " needs either kf= kb= or K= c=");
        }

        if (!reversible_arrow && !reaction.rate.irreversible())
            fail(ParseErrorKind::BadRate, rate_col,
                 "reaction " + id + " uses -> but has a nonzero backward rate");
        if (reversible_arrow && reaction.rate.irreversible())
            fail(ParseErrorKind::BadRate, rate_col,
                 "reaction " + id + " uses <-> but its backward rate is 0");

        auto lookup = detail::make_lookup(model_);
        if (auto issue = detail::reaction_issue(lookup, reaction))
            fail(issue->kind, tokens[0].column, issue->message);

        reaction_ids_.insert(id);
        model_.reactions.push_back(std::move(reaction));
    }

    ModelDefinition model_;
    std::unordered_map<std::string, std::size_t> index_;
    std::set<std::string> reaction_ids_;
    int line_ = 0;
};

}  // namespace

ModelDefinition parse_model(std::string_view text) {
    ModelBuilder builder;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        builder.parse_line(line, line_no);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return std::move(builder).take();
}

}  // namespace rxnet
