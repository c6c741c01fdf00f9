#include "lrp/grid.hpp"
#include "lrp/error.hpp"

#include <algorithm>
#include <cmath>

namespace lrp {

std::shared_ptr<const Grid> Grid::uniform(double a, double b, double ppu, const std::vector<double>& breaks) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("grid needs a finite interval");
    if (!(ppu > 0)) throw ConfigError("grid density must be positive");
    size_t n = size_t(std::ceil((b - a) * ppu - 1e-9));
    if (n < 1) n = 1;
    std::vector<double> nodes(n + 1);
    for (size_t k = 0; k <= n; ++k) nodes[k] = a + (b - a) * double(k) / double(n);
    nodes[n] = b;
    return from_nodes(std::move(nodes), breaks);
}

std::shared_ptr<const Grid> Grid::from_nodes(std::vector<double> nodes, const std::vector<double>& breaks) {
    if (nodes.size() < 2) throw DomainError("grid needs at least two nodes");
    std::sort(nodes.begin(), nodes.end());
    double a = nodes.front(), b = nodes.back();
    std::vector<double> br;
    for (double x : breaks)
        if (x >= a && x <= b) br.push_back(x);
    std::sort(br.begin(), br.end());
    // snap near-coincident uniform nodes onto break points
    double scale = std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
    for (double x : br) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
        bool snapped = false;
        for (auto jt : {it, it == nodes.begin() ? it : it - 1}) {
            if (jt != nodes.end() && std::fabs(*jt - x) <= 1e-12 * scale) {
                *jt = x;
                snapped = true;
                break;
            }
        }
        if (!snapped) nodes.insert(it, x);
    }
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    auto g = std::make_shared<Grid>();
    g->t = std::move(nodes);
    g->brk.assign(g->t.size(), 0);
    for (double x : br) {
        size_t k = g->node_index(x);
        if (k != npos) g->brk[k] = 1;
    }
    return g;
}

size_t Grid::locate(double x) const {
    if (x < t.front() || x > t.back()) throw DomainError("point outside grid");
    if (x == t.front()) return 0;
    auto it = std::lower_bound(t.begin(), t.end(), x);
    return size_t(it - t.begin()) - 1;
}

size_t Grid::node_index(double x) const {
    auto it = std::lower_bound(t.begin(), t.end(), x);
    if (it != t.end() && *it == x) return size_t(it - t.begin());
    return npos;
}

} // namespace lrp
