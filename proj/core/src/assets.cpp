#include "rxnet/assets.hpp"

#include <charconv>
#include <map>

#include "rxnet/errors.hpp"
#include "rxnet/parse.hpp"

namespace rxnet::assets {

namespace data {
extern const char kModel[];
extern const char kGoldens[];
extern const char* const kScenarios[10];
}  // namespace data

// Frozen over the asset files; update when the bundled assets change.
constexpr std::uint64_t kModelChecksum = 0x84c682e5ac64f633ULL;
constexpr std::uint64_t kAuxChecksum = 0xb61db19d2b22a951ULL;

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char byte : data) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    return hash;
}

namespace {

void verify_aux_checksum() {
    std::uint64_t hash = 14695981039346656037ULL;
    auto mix = [&hash](std::string_view text) {
        for (unsigned char byte : text) {
            hash ^= byte;
            hash *= 1099511628211ULL;
        }
    };
    for (int i = 0; i < 10; ++i) mix(data::kScenarios[i]);
    mix(data::kGoldens);
    if (hash != kAuxChecksum)
        throw AssetError("bundled scenario/golden assets corrupted (checksum mismatch)");
}

bool water_derived_formula(const Formula& formula) {
    for (const auto& [element, count] : formula)
        if (element != "H" && element != "O") return false;
    return true;
}

}  // namespace

std::string_view reference_model_text() { return data::kModel; }

ModelDefinition load_reference_model() {
    std::string_view text = reference_model_text();
    if (fnv1a64(text) != kModelChecksum)
        throw AssetError("reference model asset corrupted (checksum mismatch)");
    return parse_model(text);
}

Scenario reference_scenario(int model_step) {
    if (model_step < 1 || model_step > 10)
        throw ValidationError("reference scenario step must be in [1, 10]");
    verify_aux_checksum();
    return parse_scenario(data::kScenarios[model_step - 1]);
}

std::vector<Scenario> reference_scenarios() {
    std::vector<Scenario> scenarios;
    scenarios.reserve(10);
    for (int step = 1; step <= 10; ++step) scenarios.push_back(reference_scenario(step));
    return scenarios;
}

std::vector<GoldenCase> parse_goldens_csv(std::string_view csv) {
    std::map<int, GoldenCase> by_step;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t nl = csv.find('\n', pos);
        std::string_view line =
            csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
        if (!line.empty() && line.substr(0, 5) != "step,") {  // skip the header row
            std::vector<std::string> fields;
            std::size_t start = 0;
            while (true) {
                std::size_t comma = line.find(',', start);
                fields.emplace_back(line.substr(
                    start, comma == std::string_view::npos ? line.size() - start : comma - start));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            if (fields.size() != 4)
                throw ParseError(ParseErrorKind::Syntax, line_no, 1,
                                 "expected step,species,expected_mmol_per_L,tolerance");
            auto number = [&](const std::string& text, double& out) {
                auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
                if (ec != std::errc() || ptr != text.data() + text.size())
                    throw ParseError(ParseErrorKind::Syntax, line_no, 1,
                                     "malformed number '" + text + "'");
            };
            double step_value = 0.0, expected = 0.0, tolerance = 0.0;
            number(fields[0], step_value);
            number(fields[2], expected);
            number(fields[3], tolerance);
            const int step = static_cast<int>(step_value);
            auto& entry = by_step[step];
            entry.step = step;
            entry.expected.push_back({fields[1], expected, tolerance});
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    std::vector<GoldenCase> cases;
    cases.reserve(by_step.size());
    for (auto& [step, entry] : by_step) cases.push_back(std::move(entry));
    return cases;
}

std::vector<GoldenCase> golden_cases() {
    verify_aux_checksum();
    ModelDefinition model = load_reference_model();
    std::vector<GoldenCase> cases = parse_goldens_csv(data::kGoldens);
    for (auto& golden : cases) {
        Scenario scenario = reference_scenario(golden.step);
        for (const auto& [name, conc] : scenario.initial) {
            const Species* species = model.find_species(name);
            if (species && !water_derived_formula(species->formula))
                golden.inputs_mmol[name] = conc * 1000.0;
        }
    }
    return cases;
}

const std::vector<ReferenceConstant>& reference_constants() {
    // Literature constants behind the bundled coefficient pairs. Several
    // pairs are known not to reproduce these values through kf/kb; the
    // `consistent` flag records the expected verdict.
    static const std::vector<ReferenceConstant> constants = {
        {"r1", ConstantKind::Kw, 1e-14, true},
        {"r2", ConstantKind::Ksp, 14.26460597, false},   // irreversible dissolution
        {"r3", ConstantKind::Ksp, 2679.232594, false},   // irreversible dissolution
        {"r4", ConstantKind::Ksp, 12.262204, false},     // irreversible dissolution
        {"r5", ConstantKind::Ka, 0.00707946, false},
        {"r6", ConstantKind::Ka, 8.1283e-8, false},
        {"r7", ConstantKind::Ka, 4.7863e-13, false},
        {"r8", ConstantKind::Ksp, 2.14787e-6, false},
        {"r9", ConstantKind::Ksp, 9.22e-26, false},
        {"r10", ConstantKind::Ksp, 0.00591361, true},
    };
    return constants;
}

}  // namespace rxnet::assets
