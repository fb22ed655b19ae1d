#!/usr/bin/env python3
"""Emit the triangle fans at r=1 and r=2 as JSON plus SVG cross-sections.

The r=1 fan is the six permutation cones of the positive orthant; the r=2
fan refines parts of it and picks up a non-simplicial maximal cone.  Both
pictures are drawn in the barycentric slice x+y+z=1.
"""

import argparse
import json
import pathlib
from dataclasses import dataclass

from richfan import Graph, smoothness_report, weakly_rich_fan
from richfan.drawing import cross_section, render_svg


@dataclass
class Config:
    out_dir: pathlib.Path
    radii: tuple[int, ...]


def parse_args() -> Config:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="figures", type=pathlib.Path)
    ap.add_argument("--r", nargs="+", type=int, default=[1, 2])
    ns = ap.parse_args()
    return Config(out_dir=ns.out_dir, radii=tuple(ns.r))


def main() -> None:
    cfg = parse_args()
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    triangle = Graph.build([0, 1, 2], [(0, 0, 1), (1, 1, 2), (2, 2, 0)])
    for r in cfg.radii:
        fan = weakly_rich_fan(triangle, r)
        rep = smoothness_report(fan)
        cells = cross_section(fan)
        stem = cfg.out_dir / f"triangle_r{r}"
        stem.with_suffix(".json").write_text(
            json.dumps(fan.to_obj(), sort_keys=True, separators=(",", ":")) + "\n"
        )
        stem.with_suffix(".svg").write_text(render_svg(fan))
        shapes = sorted(len(p) for p in cells)
        print(
            f"r={r}: {len(fan.cones)} maximal cones, "
            f"section polygon sizes {shapes}, "
            f"smooth={rep.smooth}, complete={fan.is_complete_on_orthant()}"
        )
    print(f"wrote figures to {cfg.out_dir}/")


if __name__ == "__main__":
    main()
