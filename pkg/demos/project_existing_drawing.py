"""Carry an existing Euclidean drawing into the hyperbolic plane.

Lays out a 10x10 grid with classical coordinates, projects it through
the area-preserving radial map into the Poincare disk, and shows how the
coverage knob trades detail at the focus against context at the rim.

Run:
    python3 demos/project_existing_drawing.py
Outputs projected_cov*.svg files in the current directory.
"""

import numpy as np

from hyperlay import RenderStyle, generate, project_pipeline, render_svg


def main():
    rows = cols = 10
    xy = np.array([[c, r] for r in range(rows) for c in range(cols)],
                  dtype=float)
    graph = generate("grid", rows, cols)

    for coverage in (0.5, 1.0, 1.5):
        layout = project_pipeline(xy, coverage=coverage)
        name = f"projected_cov{coverage:.1f}.svg"
        with open(name, "w") as fh:
            fh.write(render_svg(layout, graph, RenderStyle(label_base_px=0.0)))
        rim = np.max(np.abs(np.tanh(
            np.arccosh(np.cosh(layout.coords[:, 0])
                       * np.cosh(layout.coords[:, 1])) / 2.0)))
        print(f"coverage={coverage:.1f}: outermost node at disk "
              f"radius {rim:.3f} -> {name}")


if __name__ == "__main__":
    main()
