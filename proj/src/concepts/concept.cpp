#include "ccc/concepts/concept.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace ccc::concepts {
namespace {

constexpr std::array<std::string_view, 22> kNames = {
    "Material",         "Imbalance",        "Pawns",           "White Knights",   "Black Knights",
    "White Bishop",     "Black Bishop",     "White Rooks",     "Black Rooks",     "White Queens",
    "Black Queens",     "White Mobility",   "Black Mobility",  "White Kingsafety", "Black Kingsafety",
    "White Threats",    "Black Threats",    "White Space",     "Black Space",     "White Passedpawns",
    "Black Passedpawns", "mate-in-one",
};

constexpr std::array<ConceptName, kTableConceptCount> kTable = [] {
    std::array<ConceptName, kTableConceptCount> out{};
    for (std::size_t i = 0; i < kTableConceptCount; ++i) out[i] = static_cast<ConceptName>(i);
    return out;
}();

constexpr std::array<ConceptName, 8> kAnalytic = {
    ConceptName::Material,        ConceptName::Pawns,           ConceptName::WhiteMobility,
    ConceptName::BlackMobility,   ConceptName::WhiteKingsafety, ConceptName::BlackKingsafety,
    ConceptName::WhitePassedpawns, ConceptName::BlackPassedpawns,
};

std::string squash(std::string_view s) {
    std::string out;
    for (char ch : s)
        if (ch != ' ' && ch != '_' && ch != '-') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    return out;
}

}  // namespace

std::string_view concept_display_name(ConceptName c) { return kNames[static_cast<std::size_t>(c)]; }

std::optional<ConceptName> parse_concept(std::string_view text) {
    const std::string want = squash(text);
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (squash(kNames[i]) == want) return static_cast<ConceptName>(i);
    return std::nullopt;
}

ConceptKind concept_kind(ConceptName c) {
    return static_cast<std::size_t>(c) < kTableConceptCount ? ConceptKind::table : ConceptKind::hint;
}

std::span<const ConceptName> table_concepts() { return kTable; }

std::span<const ConceptName> analytic_concepts() { return kAnalytic; }

bool has_analytic_labeler(ConceptName c) {
    const auto a = analytic_concepts();
    return std::find(a.begin(), a.end(), c) != a.end();
}

}  // namespace ccc::concepts
