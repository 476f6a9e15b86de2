#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kinward
{

struct PedigreeRecord
{
    std::string id;
    std::string mother;  ///< "0" when unknown
    std::string father;  ///< "0" when unknown
};

/// Observed pedigree, topologically ordered: parents precede their children.
class Pedigree
{
public:
    /// Validates ids, parent references and ordering. Errors carry the 1-based
    /// record number as their line.
    static Pedigree from_records(const std::vector<PedigreeRecord>& records);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(members_.size()); }
    [[nodiscard]] const std::vector<std::string>& members() const noexcept { return members_; }
    [[nodiscard]] std::optional<int> mother(int i) const { return mother_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] std::optional<int> father(int i) const { return father_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] bool is_founder(int i) const { return !mother(i).has_value(); }
    [[nodiscard]] std::vector<int> founders() const;
    [[nodiscard]] std::vector<PedigreeRecord> records() const;

private:
    std::vector<std::string> members_;
    std::vector<std::optional<int>> mother_;
    std::vector<std::optional<int>> father_;
};

}  // namespace kinward
