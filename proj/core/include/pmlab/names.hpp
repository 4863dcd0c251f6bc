#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pmlab {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

// Time and cell indices. Signed so that differences such as t - w(t) stay
// well-defined; all values handled by the library are non-negative.
using Time = std::int64_t;

// Reserved display tokens used by machine files and relation dumps.
inline constexpr std::string_view kLeftEndToken = "^";
inline constexpr std::string_view kRightEndToken = "$";
inline constexpr std::string_view kBlankToken = "_";

// Thrown when a machine, geometry or run violates a structural precondition.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Direction : std::int8_t { L = -1, R = +1 };

constexpr int offset(Direction d) { return static_cast<int>(d); }
constexpr Direction reverse(Direction d) { return d == Direction::L ? Direction::R : Direction::L; }
constexpr char to_char(Direction d) { return d == Direction::L ? 'L' : 'R'; }

// Bidirectional interning of display names. Ids are dense and assigned in
// insertion order.
class NameTable {
public:
    NameTable() = default;
    explicit NameTable(const std::vector<std::string>& names);

    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    std::uint32_t at(std::string_view name) const;

    const std::string& name(std::uint32_t id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const NameTable& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// A single diagnostic produced by a validator: the rule that was broken and
// the element that broke it.
struct Diagnostic {
    std::string rule;
    std::string detail;

    bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);

}  // namespace pmlab
