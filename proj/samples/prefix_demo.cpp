// Builds a prefix of the construction and prints each insertion together
// with the visibility and collinearity figures of the result.

#include <cstdlib>
#include <iostream>

#include "blbc/blbc.hpp"

int main(int argc, char** argv) {
  const std::size_t count = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 12;
  const auto state = blbc::generate(blbc::default_seed(), count < 3 ? 3 : count);

  for (const auto& rec : state.trace()) {
    std::cout << "x" << rec.n << " = " << rec.point.str() << "  on " << rec.pair.str() << " at t=" << rec.t.str()
              << "  (" << rec.excluded_count << " excluded)\n";
  }
  const auto& ps = state.points();
  const auto graph = blbc::build_visibility_graph(ps);
  std::cout << ps.size() << " points, " << graph.edge_count() << " visible pairs, largest line "
            << blbc::max_collinear(ps).size << ", largest visible clique " << blbc::max_visible_clique(ps).size
            << ", " << state.pending().size() << " ordinary pairs pending\n";
}
