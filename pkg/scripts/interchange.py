"""The two composites of a 2x2 grid of 2-cells in K: distinct cells joined by
contraction 3-cells, and identified once K is truncated at dimension 2."""

from dataclasses import dataclass

from opetope_forge.batanin import Gen, KId, bare, generate_K, generate_K_n, maximal_cells
from opetope_forge.batanin.btree import from_json
from opetope_forge.batanin.kgen import compose, shape, src, tgt
from opetope_forge.render import render


@dataclass
class Config:
    size_bound: tuple = (0, 2, 6, 6)
    gen_bound: tuple = (0, 1, 3, 1)


P2 = from_json([0, 0])
VERTICAL = from_json([[0, 0]])
HORIZONTAL = from_json([[0], [0]])
GRID3 = from_json([[[], []], [[], []]])


def composites():
    c = bare(Gen(P2, KId(0), KId(0)))
    v = bare(Gen(VERTICAL, KId(1), KId(1)))
    h = bare(Gen(HORIZONTAL, c, c))
    g1 = compose(h, dict(zip(maximal_cells(HORIZONTAL), (v, v))))
    g2 = compose(v, dict(zip(maximal_cells(VERTICAL), (h, h))))
    return g1, g2


def main(cfg: Config) -> None:
    keep = lambda g: g.tree in (P2, VERTICAL, HORIZONTAL, GRID3)  # noqa: E731
    K = generate_K(3, cfg.size_bound, cfg.gen_bound, gen_filter=keep)
    g1, g2 = composites()
    print("grid tree:")
    print(render(shape(g1)))
    print(f"gamma1 = {g1!r}")
    print(f"gamma2 = {g2!r}")
    print("distinct in K:", g1 != g2)
    joins = [x for x in K.all_cells(3) if {src(x), tgt(x)} == {g1, g2}]
    print(f"3-cells between them in the fragment: {len(joins)}")
    K2 = generate_K_n(2, cfg.size_bound[:3], cfg.gen_bound[:3], gen_filter=keep)
    print("identified in K_2:", K2.classify(g1) == K2.classify(g2))


if __name__ == "__main__":
    main(Config())
