"""Draw the verdict map of the modulation-to-Triebel-Lizorkin embedding in the terminal.

Each character is one rational cell of the (1/q, s) plane at p = 1/2, r = 2:
``#`` the embedding holds, ``.`` it fails, ``+`` the cell sits on a boundary
line where an infinitesimal move changes the verdict.

Run: python3 demos/region_map.py
"""

from fractions import Fraction

from fspace.embedding import Axis, region_scan


def main() -> None:
    step = Fraction(1, 4)
    axes = [Axis("1/q", Fraction(0), Fraction(4), step), Axis("s", Fraction(-1), Fraction(4), step)]
    cells = region_scan({"n": 1, "p": "1/2", "r": 2}, axes, "1.1")
    grid = {(c.x, c.y): c.verdict for c in cells}
    xs, ys = axes[0].values(), axes[1].values()
    print("s \\ 1/q " + "".join(str(int(x)) if x.denominator == 1 else " " for x in xs))
    for y in reversed(ys):
        row = "".join("+" if grid[x, y].boundary else ("#" if grid[x, y].holds else ".") for x in xs)
        print(f"{str(y):>7} {row}")
    print("\nBelow 1/q = 1/p the threshold s > 2 - 1/q is tilted; past it, s >= 0 suffices.")


if __name__ == "__main__":
    main()
