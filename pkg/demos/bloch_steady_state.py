#!/usr/bin/env python3
"""Steady-state Bloch response of the driven two-level medium.

Maps the population difference r3 and the activity integrand
d(eta)/d(xi) = (r1^2 + r2^2)(R + L) over a grid of real field amplitudes.
The coherence needs BOTH movers: with one field absent the steady state is
the plain ground state r = (0, 0, -1) and the activity vanishes.  Writes
bloch_steady_state.png next to this script.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from psr.bloch import bloch_components
from psr.units import DimensionlessParams

OUT = Path(__file__).with_name("output")


def main():
    params = DimensionlessParams(gamma_plus=15.0, gamma_minus=0.64,
                                 tau1=1000.0, tau2=10.0)
    amps = np.linspace(0.0, 1.5, 301)
    eR, eL = np.meshgrid(amps, amps, indexing="ij")
    r1, r2, r3, _ = bloch_components(eR.astype(complex), eL.astype(complex), params)
    deta = (r1 ** 2 + r2 ** 2) * (eR ** 2 + eL ** 2)

    fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.2), constrained_layout=True)
    im0 = axes[0].pcolormesh(amps, amps, r3.T, shading="auto", cmap="viridis")
    axes[0].set_title(r"population difference $r_3$")
    im1 = axes[1].pcolormesh(amps, amps, deta.T, shading="auto", cmap="magma")
    axes[1].set_title(r"activity integrand $d\eta/d\xi$")
    for ax in axes:
        ax.set_xlabel(r"$e_R$")
        ax.set_ylabel(r"$e_L$")
    fig.colorbar(im0, ax=axes[0])
    fig.colorbar(im1, ax=axes[1])

    OUT.mkdir(exist_ok=True)
    path = OUT / "bloch_steady_state.png"
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")
    print(f"max d(eta)/d(xi) on the grid: {deta.max():.4f} "
          f"(needs both movers; zero on the axes)")


if __name__ == "__main__":
    main()
