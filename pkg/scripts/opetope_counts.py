"""Count opetopes by dimension and size, and pasting diagrams of the category of trees."""

import argparse
from collections import Counter
from dataclasses import dataclass

from opetope_forge.opetopia.pd import pd_hom, pd_objects
from opetope_forge.opetopia.tower import opetopes, size


@dataclass
class Config:
    max_dim: int = 4
    max_size: int = 4
    hom_objects: int = 3


def main(cfg: Config) -> None:
    for d in range(cfg.max_dim + 1):
        found = opetopes(d, cfg.max_size)
        by_size = Counter(size(d, o.payload) for o in found) if d >= 2 else Counter({1: len(found)})
        row = ", ".join(f"{k}: {by_size[k]}" for k in sorted(by_size))
        print(f"dim {d}: {len(found)} opetopes (by size {row})")
    objs = pd_objects(2, cfg.hom_objects)
    total = sum(len(pd_hom(2, a, b)) for a in objs for b in objs)
    print(f"category of trees on {len(objs)} trees of size <= {cfg.hom_objects}: {total} morphisms")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-dim", type=int, default=Config.max_dim)
    p.add_argument("--max-size", type=int, default=Config.max_size)
    p.add_argument("--hom-objects", type=int, default=Config.hom_objects)
    a = p.parse_args()
    main(Config(a.max_dim, a.max_size, a.hom_objects))
