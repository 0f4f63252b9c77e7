"""Compare how trees and cycles fare in each geometry.

Embeds a depth-5 binary tree and a 50-cycle in hyperbolic, spherical and
Euclidean geometry, then prints a distortion table.  Trees thrive in
hyperbolic space (volume grows exponentially with radius, matching the
exponential growth of the tree); a cycle sits perfectly on a great
circle of the sphere and does fine in the Euclidean plane, but pays a
growing penalty in hyperbolic space.

Run:
    python3 demos/tree_vs_cycle.py
"""

from hyperlay import compare_geometries, format_comparison, generate


def main():
    for name, graph in [("binary tree, depth 5", generate("binary-tree", 5)),
                        ("cycle, 50 nodes", generate("cycle", 50))]:
        means, best, _ = compare_geometries(graph, seeds=range(10))
        print(f"== {name} ==")
        print(format_comparison(means, best))
        print(f"best geometry: {best}\n")


if __name__ == "__main__":
    main()
