"""Compare the quasi-norms of a Gaussian as its width shrinks.

Narrow Gaussians spread their spectrum over many unit cubes, so the
modulation norm with q < 1 keeps growing, while the Triebel-Lizorkin norm
built on dyadic shells stays of the same size. The STFT version of the
modulation norm follows the discrete one up to a bounded factor.

Run: python3 demos/norm_tour.py
"""

from fspace import (
    build_dyadic_family,
    build_uniform_family,
    make_grid,
    sample_function,
    besov_norm,
    modulation_norm_discrete,
    modulation_norm_stft,
    triebel_lizorkin_norm,
)
from fspace.grid import Gaussian
from fspace.params import SpaceParams


def main() -> None:
    grid = make_grid(1, 64, 2 ** 14)
    uniform, dyadic = build_uniform_family(grid), build_dyadic_family(grid)
    params = SpaceParams(1, "1/2", "1/2", 2, 0)
    print(f"{params.label()}\n{'width':>6} {'M (cubes)':>12} {'M (STFT)':>12} {'B':>12} {'F':>12}")
    for width in (2.0, 1.0, 0.5, 0.25, 0.125):
        f = sample_function(Gaussian(width), grid)
        row = (
            modulation_norm_discrete(f, params, uniform),
            modulation_norm_stft(f, params),
            besov_norm(f, params, dyadic),
            triebel_lizorkin_norm(f, params, dyadic),
        )
        print(f"{width:>6} " + " ".join(f"{v:12.4g}" for v in row))


if __name__ == "__main__":
    main()
