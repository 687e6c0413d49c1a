#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace stylo {

enum class ClassLabel : std::uint8_t { R = 0, U = 1, S = 2 };

inline constexpr std::array<ClassLabel, 3> kAllLabels{ClassLabel::R, ClassLabel::U, ClassLabel::S};

enum class Language : std::uint8_t { En, Pt };

std::string_view to_string(ClassLabel label);
std::string_view to_string(Language lang);
std::optional<ClassLabel> parse_label(std::string_view s);
std::optional<Language> parse_language(std::string_view s);

/// Ordered pair of classes. For statistics the canonical orientations are
/// (R,U), (R,S) and (U,S); effect sizes are first minus second.
struct ClassPair {
  ClassLabel first;
  ClassLabel second;

  friend constexpr bool operator==(ClassPair, ClassPair) = default;
  friend constexpr auto operator<=>(ClassPair, ClassPair) = default;
};

inline constexpr std::array<ClassPair, 3> kCanonicalPairs{
    ClassPair{ClassLabel::R, ClassLabel::U},
    ClassPair{ClassLabel::R, ClassLabel::S},
    ClassPair{ClassLabel::U, ClassLabel::S},
};

/// "R,U" style rendering used in reports and on the command line.
std::string to_string(ClassPair pair);
/// Accepts "R,U", "RU", "R-U" and "R/U".
std::optional<ClassPair> parse_pair(std::string_view s);

}  // namespace stylo
