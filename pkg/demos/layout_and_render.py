"""End-to-end layout: embed a graph, save the layout file, render an SVG.

Generates a random graph, runs the stochastic MDS solver in hyperbolic
geometry, writes the portable layout file, and renders the Poincare-disk
picture with geodesic-arc edges.

Run:
    python3 demos/layout_and_render.py
Outputs demo_layout.json and demo_layout.svg in the current directory.
"""

from hyperlay import (
    RenderStyle,
    SgdParams,
    apsp,
    evaluate,
    generate,
    render_svg,
    run_mds,
    write_layout_file,
)


def main():
    graph = generate("random", 77, 254, seed=5)
    layout, trace = run_mds(graph, "hyperbolic", SgdParams(seed=0))

    report = evaluate(layout, apsp(graph))
    print(f"stress    : {report.stress:.2f}")
    print(f"distortion: {report.distortion:.4f}")
    print("stress per iteration:",
          " ".join(f"{s:.0f}" for s in trace[:, 1]))

    write_layout_file("demo_layout.json", layout, graph, trace=trace)
    svg = render_svg(layout, graph, RenderStyle(edge_opacity=0.35))
    with open("demo_layout.svg", "w") as fh:
        fh.write(svg)
    print("wrote demo_layout.json and demo_layout.svg")


if __name__ == "__main__":
    main()
