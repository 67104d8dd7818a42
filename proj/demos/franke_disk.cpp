// Minimal end-to-end usage: build a polar rule on the disk, assemble the
// weighted SVD basis for the IMQ kernel, project Franke's function, and
// compare the full projection against a truncated one on an evaluation grid.

#include "wsvd/wsvd.hpp"

#include <cstdio>
#include <vector>

int main() {
    using namespace wsvd;

    const Domain disk = Domain::disk();
    const CubatureRule rule = rule_for_budget(disk, "polar", 400);
    const Kernel kernel{KernelFamily::IMQ, 4.0};
    const WsvdBasis basis = build_basis(kernel, rule);

    const TestFunction franke = test_function(TestFunctionKind::Franke);
    std::vector<double> samples(basis.rule.nodes.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = franke(basis.rule.nodes[i]);

    const Approximant full = project(basis, samples);
    const Approximant reduced = truncate(full, TruncateOrder{80});

    const std::vector<Point> grid = uniform_grid(64, disk);
    std::printf("nodes: %td, usable basis functions: %td\n",
                static_cast<std::ptrdiff_t>(basis.size()),
                static_cast<std::ptrdiff_t>(basis.n_active));
    std::printf("rmse full (M=%td):    %.3e\n",
                static_cast<std::ptrdiff_t>(full.m_active), rmse(full, franke, grid));
    std::printf("rmse reduced (M=%td): %.3e\n",
                static_cast<std::ptrdiff_t>(reduced.m_active), rmse(reduced, franke, grid));
    return 0;
}
