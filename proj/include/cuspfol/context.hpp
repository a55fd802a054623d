#ifndef CUSPFOL_CONTEXT_HPP
#define CUSPFOL_CONTEXT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cuspfol {

// Ordered list of distinct variable names. Every polynomial and form carries
// one; operations on two values require equal contexts.
class VarContext {
public:
    static constexpr int max_variables = 12;

    explicit VarContext(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const;
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(std::string_view name) const;

    // Context of the first k variables.
    VarContext prefix(int k) const;
    // Context with one more variable appended.
    VarContext extended(const std::string& name) const;

    bool operator==(const VarContext&) const = default;

private:
    std::vector<std::string> names_;
};

} // namespace cuspfol

#endif
