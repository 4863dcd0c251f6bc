#include "pmlab/names.hpp"

namespace pmlab {

NameTable::NameTable(const std::vector<std::string>& names) {
    for (const auto& n : names) {
        if (find(n)) throw ModelError("duplicate name '" + n + "'");
        intern(n);
    }
}

std::uint32_t NameTable::intern(std::string_view name) {
    std::string key(name);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<std::uint32_t> NameTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t NameTable::at(std::string_view name) const {
    auto id = find(name);
    if (!id) throw ModelError("unknown name '" + std::string(name) + "'");
    return *id;
}

std::string to_string(const Diagnostic& d) {
    if (d.detail.empty()) return d.rule;
    return d.rule + ": " + d.detail;
}

}  // namespace pmlab
