#pragma once
#include <memory>
#include <vector>

namespace lrp {

// Sorted sample nodes on [a, b]; declared discontinuities are always nodes.
struct Grid {
    std::vector<double> t;
    std::vector<char> brk;

    // about ppu nodes per unit length, plus the given break points
    static std::shared_ptr<const Grid> uniform(double a, double b, double ppu,
                                               const std::vector<double>& breaks = {});
    static std::shared_ptr<const Grid> from_nodes(std::vector<double> nodes,
                                                  const std::vector<double>& breaks = {});
    size_t size() const { return t.size(); }
    double lo() const { return t.front(); }
    double hi() const { return t.back(); }
    // k with t[k] < x <= t[k+1]; x == t[0] gives 0
    size_t locate(double x) const;
    // index of an exact node, or npos
    size_t node_index(double x) const;
    static constexpr size_t npos = size_t(-1);
};

using GridP = std::shared_ptr<const Grid>;

} // namespace lrp
