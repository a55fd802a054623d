#include "cuspfol/context.hpp"

#include "cuspfol/errors.hpp"

#include <algorithm>
#include <set>

namespace cuspfol {

VarContext::VarContext(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.empty())
        throw ValidationError("variable context must declare at least one variable");
    if (static_cast<int>(names_.size()) > max_variables)
        throw ValidationError("variable context exceeds the limit of " +
                              std::to_string(max_variables) + " variables");
    std::set<std::string_view> seen;
    for (const auto& n : names_) {
        if (n.empty())
            throw ValidationError("variable name must be nonempty");
        if (!seen.insert(n).second)
            throw ValidationError("duplicate variable name '" + n + "'");
    }
}

const std::string& VarContext::name(int i) const
{
    if (i < 0 || i >= size())
        throw StructuralError("variable index " + std::to_string(i) + " out of range");
    return names_[static_cast<size_t>(i)];
}

std::optional<int> VarContext::index_of(std::string_view name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

VarContext VarContext::prefix(int k) const
{
    if (k < 1 || k > size())
        throw StructuralError("invalid prefix length " + std::to_string(k));
    return VarContext(std::vector<std::string>(names_.begin(), names_.begin() + k));
}

VarContext VarContext::extended(const std::string& name) const
{
    auto names = names_;
    names.push_back(name);
    return VarContext(std::move(names));
}

} // namespace cuspfol
