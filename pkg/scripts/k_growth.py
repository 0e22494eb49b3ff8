"""How fast K grows in dimension 1: cells over each k-edge path by generator budget,
with all contraction generators and with the binary one only."""

import argparse
from dataclasses import dataclass

from opetope_forge.batanin import generate_K, generate_K_n
from opetope_forge.batanin.btree import from_json


@dataclass
class Config:
    max_edges: int = 4
    max_generators: int = 3


def path(k):
    return from_json([0] * k, 1)


def main(cfg: Config) -> None:
    header = "gens | " + " ".join(f"k={k:<5}" for k in range(cfg.max_edges + 1))
    for label, filt in (("all generators", None), ("binary only", lambda g: g.tree == path(2))):
        print(label)
        print(header)
        for gb in range(cfg.max_generators + 1):
            K = generate_K(1, cfg.max_edges, gb, gen_filter=filt)
            print(f"{gb:>4} | " + " ".join(f"{len(K.cells(path(k))):<7}" for k in range(cfg.max_edges + 1)))
        print()
    K1 = generate_K_n(1, cfg.max_edges, cfg.max_generators)
    print("K_1 (parallel top cells identified):",
          [len(K1.cells(path(k))) for k in range(cfg.max_edges + 1)])


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-edges", type=int, default=Config.max_edges)
    p.add_argument("--max-generators", type=int, default=Config.max_generators)
    a = p.parse_args()
    main(Config(a.max_edges, a.max_generators))
