#include "kinward/core/pedigree.h"

#include <array>
#include <unordered_map>

#include "kinward/core/error.h"

namespace kinward
{

namespace
{

constexpr const char* kUnknown = "0";

// True when following parent links from `start` returns to `start`.
bool on_cycle(int start, const std::vector<std::array<int, 2>>& parents)
{
    std::vector<char> seen(parents.size(), 0);
    std::vector<int> stack{start};
    while (!stack.empty())
    {
        const int v = stack.back();
        stack.pop_back();
        for (int parent : parents[static_cast<std::size_t>(v)])
        {
            if (parent < 0)
            {
                continue;
            }
            if (parent == start)
            {
                return true;
            }
            if (!seen[static_cast<std::size_t>(parent)])
            {
                seen[static_cast<std::size_t>(parent)] = 1;
                stack.push_back(parent);
            }
        }
    }
    return false;
}

}  // namespace

Pedigree Pedigree::from_records(const std::vector<PedigreeRecord>& records)
{
    std::unordered_map<std::string, int> position;
    for (std::size_t k = 0; k < records.size(); ++k)
    {
        const auto& id = records[k].id;
        if (id.empty() || id == kUnknown)
        {
            throw ParseError("invalid individual id '" + id + "'", static_cast<int>(k + 1));
        }
        if (!position.emplace(id, static_cast<int>(k)).second)
        {
            throw ParseError("duplicate individual id '" + id + "'", static_cast<int>(k + 1));
        }
    }

    std::vector<std::array<int, 2>> parents(records.size(), {-1, -1});
    for (std::size_t k = 0; k < records.size(); ++k)
    {
        const auto& r = records[k];
        const int line = static_cast<int>(k + 1);
        const bool no_mother = r.mother == kUnknown;
        const bool no_father = r.father == kUnknown;
        if (no_mother != no_father)
        {
            throw ParseError("individual '" + r.id + "' has exactly one recorded parent", line);
        }
        if (no_mother)
        {
            continue;
        }
        if (r.mother == r.father)
        {
            throw ParseError("individual '" + r.id + "' lists the same mother and father", line);
        }
        for (int side = 0; side < 2; ++side)
        {
            const auto& pid = side == 0 ? r.mother : r.father;
            auto it = position.find(pid);
            if (it == position.end())
            {
                throw ParseError("unknown parent id '" + pid + "'", line);
            }
            parents[k][static_cast<std::size_t>(side)] = it->second;
        }
    }

    for (std::size_t k = 0; k < records.size(); ++k)
    {
        const int line = static_cast<int>(k + 1);
        for (int parent : parents[k])
        {
            if (parent >= static_cast<int>(k))
            {
                if (on_cycle(static_cast<int>(k), parents))
                {
                    throw ParseError("cyclic pedigree through '" + records[k].id + "'", line);
                }
                throw ParseError("topological order violated: parent '" +
                                     records[static_cast<std::size_t>(parent)].id + "' listed after child '" +
                                     records[k].id + "'",
                                 line);
            }
        }
    }

    Pedigree ped;
    for (std::size_t k = 0; k < records.size(); ++k)
    {
        ped.members_.push_back(records[k].id);
        if (parents[k][0] < 0)
        {
            ped.mother_.emplace_back();
            ped.father_.emplace_back();
        }
        else
        {
            ped.mother_.emplace_back(parents[k][0]);
            ped.father_.emplace_back(parents[k][1]);
        }
    }
    return ped;
}

std::vector<int> Pedigree::founders() const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
    {
        if (is_founder(i))
        {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<PedigreeRecord> Pedigree::records() const
{
    std::vector<PedigreeRecord> out;
    out.reserve(members_.size());
    for (int i = 0; i < size(); ++i)
    {
        if (is_founder(i))
        {
            out.push_back({members_[static_cast<std::size_t>(i)], kUnknown, kUnknown});
        }
        else
        {
            out.push_back({members_[static_cast<std::size_t>(i)],
                           members_[static_cast<std::size_t>(*mother(i))],
                           members_[static_cast<std::size_t>(*father(i))]});
        }
    }
    return out;
}

}  // namespace kinward
